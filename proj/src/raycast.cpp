#include "tsdfpp/raycast.h"

#include <optional>

#include "tsdfpp/interpolation.h"

namespace tsdfpp {

namespace {

// Interpolated field value at p, falling back to the containing voxel's value
// near band edges where the eight-neighbor stencil is incomplete.
std::optional<double> sample_field(const BlockLayer<TsdfVoxel>& field,
                                   const Vector3d& p, const GridParams& params) {
  const InterpolationResult r = trilinear_interpolate(field, p, params);
  if (r.valid) return r.value;
  const TsdfVoxel* v = field.voxel_ptr(world_to_grid(p, params));
  if (v && v->observed()) return v->distance;
  return std::nullopt;
}

struct Sample {
  bool set = false;
  double t = 0.0;
  double d = 0.0;
  ObjectId id = kBackgroundId;
};

template <typename ActiveAt>
RaycastHit march_layered(const GlobalMap& map, const ActiveAt& active_at,
                         const Vector3d& origin, const Vector3d& dir,
                         const RaycastConfig& cfg) {
  const GridParams& params = map.params();
  const double fine = 0.5 * params.voxel_size;
  const double coarse = 0.5 * params.truncation_distance;

  RaycastHit hit;
  Sample prev;
  double t = params.voxel_size;
  while (t <= cfg.max_range) {
    const Vector3d p = origin + t * dir;
    const std::optional<ObjectId> id = active_at(world_to_grid(p, params));
    std::optional<double> d;
    if (id) d = sample_field(map.volume(*id).tsdf, p, params);

    if (!id || !d) {
      prev.set = false;
      t += coarse;
      continue;
    }

    if (prev.set && prev.id == *id && prev.d > 0.0 && *d <= 0.0) {
      const double denom = prev.d - *d;
      const double t_hit =
          denom > 0.0 ? prev.t + (t - prev.t) * prev.d / denom : t;
      hit.valid = true;
      hit.depth = t_hit;
      hit.point = origin + t_hit * dir;
      const std::optional<ObjectId> at_hit =
          active_at(world_to_grid(hit.point, params));
      hit.object = at_hit ? *at_hit : *id;
      return hit;
    }

    prev = Sample{true, t, *d, *id};
    t += fine;
  }
  return hit;
}

}  // namespace

RaycastHit raycast_single_volume(const ObjectVolume& volume,
                                 const GridParams& params, const Vector3d& origin,
                                 const Vector3d& direction,
                                 const RaycastConfig& cfg) {
  const double fine = 0.5 * params.voxel_size;
  const double coarse = 0.5 * params.truncation_distance;

  RaycastHit hit;
  Sample prev;
  double t = params.voxel_size;
  while (t <= cfg.max_range) {
    const Vector3d p = origin + t * direction;
    const std::optional<double> d = sample_field(volume.tsdf, p, params);
    if (!d) {
      prev.set = false;
      t += coarse;
      continue;
    }
    if (prev.set && prev.d > 0.0 && *d <= 0.0) {
      const double denom = prev.d - *d;
      const double t_hit =
          denom > 0.0 ? prev.t + (t - prev.t) * prev.d / denom : t;
      hit.valid = true;
      hit.depth = t_hit;
      hit.point = origin + t_hit * direction;
      hit.object = volume.object_id;
      return hit;
    }
    prev = Sample{true, t, *d, volume.object_id};
    t += fine;
  }
  return hit;
}

std::vector<RaycastHit> raycast(const GlobalMap& map, const PinholeCamera& cam,
                                const RigidTransform& camera_pose,
                                const RaycastConfig& cfg) {
  auto active_at = [&map](const VoxelIndex& g) -> std::optional<ObjectId> {
    const MultiObjectVoxel* v = map.voxel_ptr(g);
    if (v && v->active) return v->active->id;
    return std::nullopt;
  };
  std::vector<RaycastHit> hits(static_cast<std::size_t>(cam.width) * cam.height);
  const Vector3d origin = camera_pose.translation();
  for (int v = 0; v < cam.height; ++v)
    for (int u = 0; u < cam.width; ++u)
      hits[static_cast<std::size_t>(v) * cam.width + u] = march_layered(
          map, active_at, origin,
          camera_pose.rotation() * cam.pixel_ray(u, v), cfg);
  return hits;
}

std::vector<RaycastHit> raycast(const RemovalView& view, const PinholeCamera& cam,
                                const RigidTransform& camera_pose,
                                const RaycastConfig& cfg) {
  auto active_at = [&view](const VoxelIndex& g) { return view.active_at(g); };
  std::vector<RaycastHit> hits(static_cast<std::size_t>(cam.width) * cam.height);
  const Vector3d origin = camera_pose.translation();
  for (int v = 0; v < cam.height; ++v)
    for (int u = 0; u < cam.width; ++u)
      hits[static_cast<std::size_t>(v) * cam.width + u] = march_layered(
          view.map(), active_at, origin,
          camera_pose.rotation() * cam.pixel_ray(u, v), cfg);
  return hits;
}

}  // namespace tsdfpp
