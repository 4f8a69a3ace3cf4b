#include "tsdfpp/metrics.h"

#include <cmath>
#include <random>
#include <unordered_map>

namespace tsdfpp {

std::vector<Vector3d> sample_region_surface(const ExperimentSpec& spec,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5eed5a3c1e5u);
  std::uniform_real_distribution<double> uu(0.0, spec.region_size_u);
  std::uniform_real_distribution<double> uv(0.0, spec.region_size_v);
  std::vector<Vector3d> samples;
  samples.reserve(spec.surface_samples);
  for (int i = 0; i < spec.surface_samples; ++i) {
    const double a = uu(rng);
    const double b = uv(rng);
    samples.push_back(spec.region_origin + a * spec.region_axis_u +
                      b * spec.region_axis_v);
  }
  return samples;
}

SurfaceCoverage surface_coverage(const TriangleMesh& mesh,
                                 const std::vector<Vector3d>& samples,
                                 const ExperimentSpec& spec, double voxel_size) {
  SurfaceCoverage result;
  result.sample_count = static_cast<int>(samples.size());
  if (samples.empty()) return result;

  // Hash mesh vertices on a grid of the query radius.
  const double cell = voxel_size;
  std::unordered_map<Vector3i, std::vector<std::size_t>, Vector3iHash> grid;
  auto key = [cell](const Vector3d& p) {
    return Vector3i(static_cast<int>(std::floor(p.x() / cell)),
                    static_cast<int>(std::floor(p.y() / cell)),
                    static_cast<int>(std::floor(p.z() / cell)));
  };
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    grid[key(mesh.vertices[i])].push_back(i);

  auto covered = [&](const Vector3d& q) {
    const Vector3i k = key(q);
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          auto it = grid.find(Vector3i(k.x() + dx, k.y() + dy, k.z() + dz));
          if (it == grid.end()) continue;
          for (std::size_t i : it->second)
            if ((mesh.vertices[i] - q).norm() <= voxel_size) return true;
        }
    return false;
  };

  // Region cells (a few voxels wide) accumulate per-cell coverage for the
  // hole count.
  const double cell_uv = 2.0 * voxel_size;
  const int nu = std::max(1, static_cast<int>(std::ceil(spec.region_size_u / cell_uv)));
  const int nv = std::max(1, static_cast<int>(std::ceil(spec.region_size_v / cell_uv)));
  std::vector<int> cell_total(static_cast<std::size_t>(nu) * nv, 0);
  std::vector<int> cell_covered(static_cast<std::size_t>(nu) * nv, 0);

  int n_covered = 0;
  for (const Vector3d& q : samples) {
    const bool ok = covered(q);
    if (ok) ++n_covered;
    const Vector3d rel = q - spec.region_origin;
    const int iu = std::min(nu - 1, std::max(0, static_cast<int>(
                                        rel.dot(spec.region_axis_u) / cell_uv)));
    const int iv = std::min(nv - 1, std::max(0, static_cast<int>(
                                        rel.dot(spec.region_axis_v) / cell_uv)));
    ++cell_total[static_cast<std::size_t>(iv) * nu + iu];
    if (ok) ++cell_covered[static_cast<std::size_t>(iv) * nu + iu];
  }
  result.completeness = static_cast<double>(n_covered) / samples.size();

  // Flood fill the fully-uncovered cells.
  std::vector<bool> hole(cell_total.size(), false);
  for (std::size_t i = 0; i < cell_total.size(); ++i)
    hole[i] = cell_total[i] > 0 && cell_covered[i] == 0;
  std::vector<bool> seen(hole.size(), false);
  for (int v = 0; v < nv; ++v) {
    for (int u = 0; u < nu; ++u) {
      const std::size_t start = static_cast<std::size_t>(v) * nu + u;
      if (!hole[start] || seen[start]) continue;
      ++result.hole_count;
      std::vector<std::pair<int, int>> stack{{u, v}};
      seen[start] = true;
      while (!stack.empty()) {
        auto [cu, cv] = stack.back();
        stack.pop_back();
        for (auto [du, dv] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
          const int x = cu + du, y = cv + dv;
          if (x < 0 || x >= nu || y < 0 || y >= nv) continue;
          const std::size_t i = static_cast<std::size_t>(y) * nu + x;
          if (hole[i] && !seen[i]) {
            seen[i] = true;
            stack.emplace_back(x, y);
          }
        }
      }
    }
  }
  return result;
}

}  // namespace tsdfpp
