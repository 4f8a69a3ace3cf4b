#ifndef TSDFPP_RAYCAST_H_
#define TSDFPP_RAYCAST_H_

#include <vector>

#include "tsdfpp/camera.h"
#include "tsdfpp/global_map.h"
#include "tsdfpp/transform.h"

namespace tsdfpp {

struct RaycastHit {
  bool valid = false;
  Vector3d point = Vector3d::Zero();
  ObjectId object = kBackgroundId;
  double depth = 0.0;  // range along the ray
};

struct RaycastConfig {
  double max_range = 10.0;
};

/// Single marching pass per pixel through the layered global volume: at each
/// step the active layer's TSDF is sampled and the first positive-to-negative
/// crossing, refined by linear interpolation along the ray, is reported with
/// the active object at the crossing. No per-object casting and no explicit
/// occlusion handling.
std::vector<RaycastHit> raycast(const GlobalMap& map, const PinholeCamera& cam,
                                const RigidTransform& camera_pose,
                                const RaycastConfig& cfg = {});

/// Same, through a removal view (the hidden object's surfaces give way to the
/// inactive occupants).
std::vector<RaycastHit> raycast(const RemovalView& view, const PinholeCamera& cam,
                                const RigidTransform& camera_pose,
                                const RaycastConfig& cfg = {});

/// Marches one object volume on its own, ignoring layering. Casting every
/// volume separately and keeping the minimum depth is the occlusion-handling
/// strategy that multi-volume maps need; it serves as the oracle the layered
/// pass is checked against.
RaycastHit raycast_single_volume(const ObjectVolume& volume,
                                 const GridParams& params, const Vector3d& origin,
                                 const Vector3d& direction,
                                 const RaycastConfig& cfg = {});

}  // namespace tsdfpp

#endif  // TSDFPP_RAYCAST_H_
