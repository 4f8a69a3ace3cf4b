#ifndef TSDFPP_SEGMENTATION_H_
#define TSDFPP_SEGMENTATION_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "tsdfpp/camera.h"
#include "tsdfpp/transform.h"

namespace tsdfpp {

/// 3D segment extracted from one frame: back-projected points in the global
/// frame plus the pixels that produced them.
struct FrameSegment {
  std::vector<Vector3d> points;
  std::vector<std::uint32_t> pixels;  // v * width + u, parallel to points
  std::uint32_t provisional_label = 0;  // per-frame label (instance/mask id)
  std::optional<ObjectId> matched_object;
  bool is_semantic_object = false;
};

struct SegmentationParams {
  int min_segment_points = 50;
  double tau_overlap = 0.8;  // normalized mask overlap threshold
};

/// One segment per distinct nonzero label with enough pixels, back-projected
/// through valid depth into the global frame.
std::vector<FrameSegment> extract_segments(const std::vector<float>& depth,
                                           const std::vector<std::uint16_t>& labels,
                                           const PinholeCamera& cam,
                                           const RigidTransform& camera_pose,
                                           int min_segment_points = 50);

/// Matches segments to detector instance masks by normalized pixel overlap
/// (|segment ∩ mask| / |segment|). Segments reaching tau on some mask are
/// assigned to the best one; everything assigned to one instance is merged
/// into a single semantic segment. Unmatched segments pass through.
std::vector<FrameSegment> fuse_masks(std::vector<FrameSegment> segments,
                                     const std::vector<std::uint16_t>& mask_image,
                                     int width, int height, double tau_overlap);

}  // namespace tsdfpp

#endif  // TSDFPP_SEGMENTATION_H_
