#ifndef TSDFPP_TRAJECTORY_IO_H_
#define TSDFPP_TRAJECTORY_IO_H_

#include <string>
#include <vector>

#include "tsdfpp/transform.h"

namespace tsdfpp {

struct TimedPose {
  double timestamp = 0.0;
  RigidTransform pose;
};

/// Line-per-pose text format: "timestamp tx ty tz qx qy qz qw". Numbers are
/// written with enough digits to round-trip doubles exactly. Lines starting
/// with '#' are comments.
void write_trajectory(const std::string& path, const std::vector<TimedPose>& poses);
std::vector<TimedPose> read_trajectory(const std::string& path);

}  // namespace tsdfpp

#endif  // TSDFPP_TRAJECTORY_IO_H_
