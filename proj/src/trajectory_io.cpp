#include "tsdfpp/trajectory_io.h"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tsdfpp {

void write_trajectory(const std::string& path,
                      const std::vector<TimedPose>& poses) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# timestamp tx ty tz qx qy qz qw\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const TimedPose& tp : poses) {
    const Vector3d& t = tp.pose.translation();
    const Eigen::Quaterniond q = tp.pose.quaternion();
    out << tp.timestamp << " " << t.x() << " " << t.y() << " " << t.z() << " "
        << q.x() << " " << q.y() << " " << q.z() << " " << q.w() << "\n";
  }
}

std::vector<TimedPose> read_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<TimedPose> poses;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    TimedPose tp;
    Vector3d t;
    double qx, qy, qz, qw;
    if (!(ss >> tp.timestamp >> t.x() >> t.y() >> t.z() >> qx >> qy >> qz >> qw))
      throw std::runtime_error(path + ": malformed trajectory line: " + line);
    tp.pose = RigidTransform::from_quaternion(Eigen::Quaterniond(qw, qx, qy, qz), t);
    poses.push_back(tp);
  }
  return poses;
}

}  // namespace tsdfpp
