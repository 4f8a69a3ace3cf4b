#include "tsdfpp/trajectory.h"

#include <stdexcept>

namespace tsdfpp {

ScriptedTrajectory::ScriptedTrajectory(std::vector<Keyframe> keyframes)
    : keyframes_(std::move(keyframes)) {
  for (std::size_t i = 1; i < keyframes_.size(); ++i) {
    if (keyframes_[i].frame <= keyframes_[i - 1].frame)
      throw std::invalid_argument(
          "trajectory keyframe indices must be strictly increasing");
  }
}

RigidTransform ScriptedTrajectory::pose_at(double frame) const {
  if (keyframes_.empty()) return RigidTransform::identity();
  if (frame <= keyframes_.front().frame) return keyframes_.front().pose;
  if (frame >= keyframes_.back().frame) return keyframes_.back().pose;

  std::size_t hi = 1;
  while (keyframes_[hi].frame < frame) ++hi;
  const Keyframe& a = keyframes_[hi - 1];
  const Keyframe& b = keyframes_[hi];
  const double s =
      (frame - a.frame) / static_cast<double>(b.frame - a.frame);

  const Vector3d t =
      (1.0 - s) * a.pose.translation() + s * b.pose.translation();
  const Eigen::Quaterniond q =
      a.pose.quaternion().slerp(s, b.pose.quaternion());
  return RigidTransform::from_quaternion(q, t);
}

}  // namespace tsdfpp
