#include "tsdfpp/integrator.h"

#include <algorithm>
#include <stdexcept>

namespace tsdfpp {

void integrate_frame(GlobalMap& map, const std::vector<float>& depth,
                     const std::vector<std::uint32_t>& labels,
                     const PinholeCamera& cam, const RigidTransform& camera_pose,
                     const IntegrationConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(cam.width) * cam.height;
  if (depth.size() != n || labels.size() != n)
    throw std::invalid_argument("integrate_frame: image size mismatch");

  const GridParams& params = map.params();
  const double trunc = cfg.truncation_distance;
  const double step = 0.5 * params.voxel_size;
  const Vector3d origin = camera_pose.translation();

  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const std::size_t idx = static_cast<std::size_t>(v) * cam.width + u;
      const double measured = depth[idx];
      if (measured <= 0.0) continue;
      const std::uint32_t label = labels[idx];
      if (label == kSkipLabel) continue;

      const Vector3d dir = camera_pose.rotation() * cam.pixel_ray(u, v);
      const double t_begin = std::max(step, measured - trunc);
      const double t_end = measured + trunc;

      VoxelIndex last(std::numeric_limits<int>::min(), 0, 0);
      for (double t = t_begin; t <= t_end; t += step) {
        const VoxelIndex g = world_to_grid(origin + t * dir, params);
        if (g == last) continue;
        last = g;

        // Projective SDF sample at the voxel center, measured along the ray.
        const double t_center = (grid_to_world(g, params) - origin).dot(dir);
        double sdf = measured - t_center;
        if (sdf < -trunc) continue;
        sdf = std::min(sdf, trunc);

        const ObjectId target = map.update_confidence(g, label);
        TsdfVoxel& voxel = map.volume(target).tsdf.get_or_allocate(g);
        const double w_new = 1.0;
        voxel.distance = (voxel.weight * voxel.distance + w_new * sdf) /
                         (voxel.weight + w_new);
        voxel.weight =
            std::min(voxel.weight + w_new, cfg.max_integration_weight);
      }
    }
  }
}

}  // namespace tsdfpp
