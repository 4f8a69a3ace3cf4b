#ifndef TSDFPP_TRANSFORM_H_
#define TSDFPP_TRANSFORM_H_

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "tsdfpp/types.h"

namespace tsdfpp {

/// SE(3) pose: orthonormal rotation (det +1) plus translation in meters.
class RigidTransform {
 public:
  RigidTransform()
      : rotation_(Eigen::Matrix3d::Identity()), translation_(Vector3d::Zero()) {}
  RigidTransform(const Eigen::Matrix3d& rotation, const Vector3d& translation)
      : rotation_(rotation), translation_(translation) {}

  static RigidTransform identity() { return RigidTransform(); }

  static RigidTransform from_translation(const Vector3d& t) {
    return RigidTransform(Eigen::Matrix3d::Identity(), t);
  }

  /// Rotation encoded as axis times angle (radians); the config-file form.
  static RigidTransform from_axis_angle(const Vector3d& axis_angle,
                                        const Vector3d& t) {
    const double angle = axis_angle.norm();
    if (angle < 1e-300) return from_translation(t);
    return RigidTransform(
        Eigen::AngleAxisd(angle, axis_angle / angle).toRotationMatrix(), t);
  }

  static RigidTransform from_quaternion(const Eigen::Quaterniond& q,
                                        const Vector3d& t) {
    return RigidTransform(q.normalized().toRotationMatrix(), t);
  }

  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Vector3d& translation() const { return translation_; }
  Eigen::Quaterniond quaternion() const { return Eigen::Quaterniond(rotation_); }

  Vector3d operator*(const Vector3d& p) const {
    return rotation_ * p + translation_;
  }

  RigidTransform operator*(const RigidTransform& other) const {
    return RigidTransform(rotation_ * other.rotation_,
                          rotation_ * other.translation_ + translation_);
  }

  RigidTransform inverse() const {
    Eigen::Matrix3d rt = rotation_.transpose();
    return RigidTransform(rt, -(rt * translation_));
  }

  bool is_identity(double eps = 0.0) const {
    return (rotation_ - Eigen::Matrix3d::Identity()).lpNorm<Eigen::Infinity>() <=
               eps &&
           translation_.lpNorm<Eigen::Infinity>() <= eps;
  }

  /// Rotation angle in radians.
  double rotation_angle() const {
    const double c = std::clamp((rotation_.trace() - 1.0) * 0.5, -1.0, 1.0);
    return std::acos(c);
  }

  /// Upper bound on how far any point within `radius` of the origin moves.
  double max_displacement(double radius) const {
    return translation_.norm() + 2.0 * std::sin(0.5 * rotation_angle()) * radius;
  }

 private:
  Eigen::Matrix3d rotation_;
  Vector3d translation_;
};

/// Exponential-style increment used by the optimizer: rotation by axis-angle
/// omega, then translation. Composed onto the left of the current estimate.
inline RigidTransform se3_increment(const Vector3d& omega, const Vector3d& t) {
  return RigidTransform::from_axis_angle(omega, t);
}

}  // namespace tsdfpp

#endif  // TSDFPP_TRANSFORM_H_
