#ifndef TSDFPP_RENDERER_H_
#define TSDFPP_RENDERER_H_

#include <cstdint>
#include <vector>

#include "tsdfpp/scene.h"

namespace tsdfpp {

/// One synthetic RGB-D observation. Depth is the range along the pixel ray in
/// meters, 0 where nothing is hit. Labels carry the instance id of the
/// nearest foreground primitive and are rendered without noise; semantic
/// masks mark pixels of detector-recognized instances, optionally degraded.
struct RenderedFrame {
  int frame_index = 0;
  int width = 0, height = 0;
  RigidTransform camera_pose;  // camera-to-world
  std::vector<double> depth;
  std::vector<std::uint16_t> labels;
  std::vector<std::uint16_t> semantic_mask;

  double depth_at(int u, int v) const { return depth[v * width + u]; }
  std::uint16_t label_at(int u, int v) const { return labels[v * width + u]; }
};

RenderedFrame render_frame(const SceneDescription& scene, int frame_index);

/// Morphological dilate (k > 0) or erode (k < 0) of each instance's mask,
/// 4-connected, k iterations. Emulates sloppy detector contours.
void degrade_mask(std::vector<std::uint16_t>& mask, int width, int height,
                  int k);

}  // namespace tsdfpp

#endif  // TSDFPP_RENDERER_H_
