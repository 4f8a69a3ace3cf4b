#include "tsdfpp/icp.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "tsdfpp/types.h"

namespace tsdfpp {

namespace {

// Uniform grid over the mesh vertices with cell size = max_dist, so a nearest
// neighbor within range is always in the 27 surrounding cells.
class VertexGrid {
 public:
  VertexGrid(const std::vector<Vector3d>& vertices, double cell) : cell_(cell) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      cells_[key(vertices[i])].push_back(i);
  }

  std::optional<std::size_t> nearest(const std::vector<Vector3d>& vertices,
                                     const Vector3d& q, double max_dist) const {
    const Vector3i k = key(q);
    double best_sq = max_dist * max_dist;
    std::optional<std::size_t> best;
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          auto it = cells_.find(Vector3i(k.x() + dx, k.y() + dy, k.z() + dz));
          if (it == cells_.end()) continue;
          for (std::size_t i : it->second) {
            const double d2 = (vertices[i] - q).squaredNorm();
            if (d2 < best_sq || (d2 == best_sq && (!best || i < *best))) {
              best_sq = d2;
              best = i;
            }
          }
        }
    return best;
  }

 private:
  Vector3i key(const Vector3d& p) const {
    return Vector3i(static_cast<int>(std::floor(p.x() / cell_)),
                    static_cast<int>(std::floor(p.y() / cell_)),
                    static_cast<int>(std::floor(p.z() / cell_)));
  }

  double cell_;
  std::unordered_map<Vector3i, std::vector<std::size_t>, Vector3iHash> cells_;
};

}  // namespace

CorrespondenceSet find_correspondences(const std::vector<Vector3d>& segment_points,
                                       const std::vector<Vector3d>& mesh_vertices,
                                       const std::vector<Vector3d>& mesh_normals,
                                       const RigidTransform& T_current,
                                       double max_dist) {
  if (mesh_vertices.empty())
    throw std::invalid_argument("find_correspondences: empty target mesh");

  VertexGrid grid(mesh_vertices, max_dist);
  CorrespondenceSet c;
  for (const Vector3d& s : segment_points) {
    const Vector3d q = T_current * s;
    const auto idx = grid.nearest(mesh_vertices, q, max_dist);
    if (!idx) continue;
    // <= max_dist inclusive: the grid uses a strict comparison against the
    // squared radius, so re-check the boundary.
    if ((mesh_vertices[*idx] - q).norm() > max_dist) continue;
    c.source.push_back(s);
    c.target.push_back(mesh_vertices[*idx]);
    c.normals.push_back(mesh_normals[*idx]);
  }
  return c;
}

double point_to_plane_error(const RigidTransform& T, const CorrespondenceSet& c) {
  double e = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double r = (T * c.source[k] - c.target[k]).dot(c.normals[k]);
    e += r * r;
  }
  return e;
}

void point_to_plane_residuals(const RigidTransform& T, const CorrespondenceSet& c,
                              Eigen::VectorXd* residuals,
                              Eigen::MatrixXd* jacobian) {
  const auto n = static_cast<Eigen::Index>(c.size());
  residuals->resize(n);
  if (jacobian) jacobian->resize(n, 6);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vector3d p = T * c.source[k];
    (*residuals)(k) = (p - c.target[k]).dot(c.normals[k]);
    if (jacobian) {
      jacobian->block<1, 3>(k, 0) = p.cross(c.normals[k]).transpose();
      jacobian->block<1, 3>(k, 3) = c.normals[k].transpose();
    }
  }
}

std::optional<TrackResult> track_object(const std::vector<Vector3d>& segment_points,
                                        const std::vector<Vector3d>& mesh_vertices,
                                        const std::vector<Vector3d>& mesh_normals,
                                        const RigidTransform& initial_guess,
                                        const TrackParams& params) {
  if (static_cast<int>(segment_points.size()) < params.min_tracking_points)
    return std::nullopt;

  // Eq-style registration moves the segment onto the model mesh, so the
  // internal estimate maps current -> previous; the object motion reported to
  // the caller is its inverse.
  RigidTransform T = initial_guess.inverse();
  double lambda = 1e-6;
  double error = std::numeric_limits<double>::infinity();
  int inliers = 0;
  bool converged = false;
  int iter = 0;

  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  for (; iter < params.max_iterations; ++iter) {
    const CorrespondenceSet c = find_correspondences(
        segment_points, mesh_vertices, mesh_normals, T,
        params.max_correspondence_distance);
    inliers = static_cast<int>(c.size());
    if (c.size() < 6) break;

    point_to_plane_residuals(T, c, &r, &J);
    error = r.squaredNorm();

    const Eigen::Matrix<double, 6, 6> H = J.transpose() * J;
    const Eigen::Matrix<double, 6, 1> g = J.transpose() * r;

    // Damped step; rejected trials raise the damping so the error over this
    // correspondence set never increases.
    double new_error = error;
    RigidTransform T_try = T;
    bool accepted = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::Matrix<double, 6, 6> A = H;
      for (int i = 0; i < 6; ++i)
        A(i, i) += lambda * std::max(H(i, i), 1e-12);
      const Eigen::Matrix<double, 6, 1> delta = A.ldlt().solve(-g);
      T_try = se3_increment(delta.head<3>(), delta.tail<3>()) * T;
      new_error = point_to_plane_error(T_try, c);
      if (new_error <= error) {
        accepted = true;
        lambda = std::max(lambda * 0.25, 1e-12);
        break;
      }
      lambda *= 8.0;
    }
    if (!accepted) {
      converged = true;  // damping exhausted: local minimum on this set
      break;
    }

    const double decrease = error - new_error;
    T = T_try;
    error = new_error;
    if (decrease < params.rel_tol * std::max(error, 1e-30)) {
      converged = true;
      ++iter;
      break;
    }
  }

  TrackResult result;
  result.T_O = T.inverse();
  result.final_error = error;
  result.iterations = iter;
  result.converged = converged && std::isfinite(error);
  result.inlier_count = inliers;
  return result;
}

}  // namespace tsdfpp
