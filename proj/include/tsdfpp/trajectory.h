#ifndef TSDFPP_TRAJECTORY_H_
#define TSDFPP_TRAJECTORY_H_

#include <vector>

#include "tsdfpp/transform.h"

namespace tsdfpp {

/// Keyframed pose script: piecewise-linear translation, spherical-linear
/// rotation. Before the first keyframe the first pose holds; after the last,
/// the last.
class ScriptedTrajectory {
 public:
  struct Keyframe {
    int frame = 0;
    RigidTransform pose;
  };

  ScriptedTrajectory() = default;
  explicit ScriptedTrajectory(std::vector<Keyframe> keyframes);

  const std::vector<Keyframe>& keyframes() const { return keyframes_; }
  bool empty() const { return keyframes_.empty(); }

  RigidTransform pose_at(double frame) const;

 private:
  std::vector<Keyframe> keyframes_;
};

}  // namespace tsdfpp

#endif  // TSDFPP_TRAJECTORY_H_
