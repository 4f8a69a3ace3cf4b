#ifndef TSDFPP_INTEGRATOR_H_
#define TSDFPP_INTEGRATOR_H_

#include <cstdint>
#include <limits>
#include <vector>

#include "tsdfpp/camera.h"
#include "tsdfpp/global_map.h"
#include "tsdfpp/transform.h"

namespace tsdfpp {

struct IntegrationConfig {
  double truncation_distance = 0.1;  // 10 x voxel_size by default
  double max_integration_weight = 1e4;
};

/// Label value marking pixels that must not be integrated (e.g. speck
/// segments below the size threshold).
inline constexpr std::uint32_t kSkipLabel =
    std::numeric_limits<std::uint32_t>::max();

/// Fuses one depth frame into the map. `labels` carries the per-pixel map
/// ObjectId after association (0 background, kSkipLabel to skip). For every
/// labeled pixel, the voxels along the ray within +-truncation of the
/// measured range each get a confidence vote for the label and a projective
/// SDF sample fused into the post-vote active object's volume by weighted
/// average (w_new = 1, weight clamped at max_integration_weight).
void integrate_frame(GlobalMap& map, const std::vector<float>& depth,
                     const std::vector<std::uint32_t>& labels,
                     const PinholeCamera& cam, const RigidTransform& camera_pose,
                     const IntegrationConfig& cfg);

}  // namespace tsdfpp

#endif  // TSDFPP_INTEGRATOR_H_
