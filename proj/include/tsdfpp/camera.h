#ifndef TSDFPP_CAMERA_H_
#define TSDFPP_CAMERA_H_

#include <optional>
#include <stdexcept>

#include "tsdfpp/types.h"

namespace tsdfpp {

/// Pinhole intrinsics. Integer pixel (u, v) samples the ray through its
/// center (u + 0.5, v + 0.5); project() works in continuous coordinates.
struct PinholeCamera {
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;
  int width = 0, height = 0;

  void validate() const {
    if (fx <= 0.0 || fy <= 0.0)
      throw std::invalid_argument("focal lengths must be > 0");
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("image dimensions must be > 0");
    if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height)
      throw std::invalid_argument("principal point must lie inside the image");
  }

  /// (u, v) for a point in the camera frame, or nullopt when behind the
  /// camera or outside the image.
  std::optional<Eigen::Vector2d> project(const Vector3d& p_cam) const {
    if (p_cam.z() <= 0.0) return std::nullopt;
    const double u = fx * p_cam.x() / p_cam.z() + cx;
    const double v = fy * p_cam.y() / p_cam.z() + cy;
    if (u < 0.0 || u >= width || v < 0.0 || v >= height) return std::nullopt;
    return Eigen::Vector2d(u, v);
  }

  /// Point at depth z along the ray through continuous pixel (u, v).
  Vector3d unproject(double u, double v, double z) const {
    return Vector3d((u - cx) / fx * z, (v - cy) / fy * z, z);
  }

  /// Unit direction through the center of integer pixel (u, v), camera frame.
  Vector3d pixel_ray(int u, int v) const {
    Vector3d d((u + 0.5 - cx) / fx, (v + 0.5 - cy) / fy, 1.0);
    return d.normalized();
  }
};

}  // namespace tsdfpp

#endif  // TSDFPP_CAMERA_H_
