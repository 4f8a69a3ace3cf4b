#ifndef TSDFPP_ICP_H_
#define TSDFPP_ICP_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tsdfpp/transform.h"

namespace tsdfpp {

/// Matched pairs for one registration round: segment point, target mesh
/// vertex, and the unit surface normal at that vertex.
struct CorrespondenceSet {
  std::vector<Vector3d> source;   // s_k, segment points (untransformed)
  std::vector<Vector3d> target;   // o_k, mesh vertices
  std::vector<Vector3d> normals;  // n_k, unit normals at o_k

  std::size_t size() const { return source.size(); }
  bool empty() const { return source.empty(); }
};

struct TrackParams {
  double max_correspondence_distance = 0.05;  // 5 x voxel_size default
  int max_iterations = 30;
  double rel_tol = 1e-6;
  int min_tracking_points = 100;
};

struct TrackResult {
  RigidTransform T_O;  // object motion, previous pose -> current pose
  double final_error = 0.0;
  int iterations = 0;
  bool converged = false;
  int inlier_count = 0;
};

/// Nearest-vertex pairing of the segment (under T_current) against the mesh
/// vertices via a uniform spatial grid; pairs beyond max_dist are dropped.
CorrespondenceSet find_correspondences(const std::vector<Vector3d>& segment_points,
                                       const std::vector<Vector3d>& mesh_vertices,
                                       const std::vector<Vector3d>& mesh_normals,
                                       const RigidTransform& T_current,
                                       double max_dist);

/// Sum of squared point-to-plane residuals ((T s_k - o_k) . n_k)^2.
double point_to_plane_error(const RigidTransform& T, const CorrespondenceSet& c);

/// Residual vector and its Jacobian w.r.t. a left-composed axis-angle +
/// translation increment, evaluated at the given transform. Row k is
/// [ (T s_k) x n_k , n_k ].
void point_to_plane_residuals(const RigidTransform& T, const CorrespondenceSet& c,
                              Eigen::VectorXd* residuals, Eigen::MatrixXd* jacobian);

/// Registers the segment to the model mesh by iterating correspondence search
/// and damped Gauss-Newton steps on the 6-dof increment. Returns nullopt when
/// the segment is too small to track (pose held by the caller). The reported
/// T_O maps the model's previous pose onto the observed one.
std::optional<TrackResult> track_object(const std::vector<Vector3d>& segment_points,
                                        const std::vector<Vector3d>& mesh_vertices,
                                        const std::vector<Vector3d>& mesh_normals,
                                        const RigidTransform& initial_guess,
                                        const TrackParams& params = {});

}  // namespace tsdfpp

#endif  // TSDFPP_ICP_H_
