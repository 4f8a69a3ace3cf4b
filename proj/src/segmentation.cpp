#include "tsdfpp/segmentation.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tsdfpp {

std::vector<FrameSegment> extract_segments(const std::vector<float>& depth,
                                           const std::vector<std::uint16_t>& labels,
                                           const PinholeCamera& cam,
                                           const RigidTransform& camera_pose,
                                           int min_segment_points) {
  const std::size_t n = static_cast<std::size_t>(cam.width) * cam.height;
  if (depth.size() != n || labels.size() != n)
    throw std::invalid_argument("extract_segments: image size mismatch");

  std::map<std::uint16_t, FrameSegment> by_label;
  const Vector3d origin = camera_pose.translation();
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const std::size_t idx = static_cast<std::size_t>(v) * cam.width + u;
      const std::uint16_t label = labels[idx];
      if (label == 0) continue;
      const double d = depth[idx];
      if (d <= 0.0f) continue;
      FrameSegment& seg = by_label[label];
      seg.provisional_label = label;
      const Vector3d dir = camera_pose.rotation() * cam.pixel_ray(u, v);
      seg.points.push_back(origin + d * dir);
      seg.pixels.push_back(static_cast<std::uint32_t>(idx));
    }
  }

  std::vector<FrameSegment> segments;
  for (auto& [label, seg] : by_label) {
    if (static_cast<int>(seg.points.size()) >= min_segment_points)
      segments.push_back(std::move(seg));
  }
  return segments;
}

std::vector<FrameSegment> fuse_masks(std::vector<FrameSegment> segments,
                                     const std::vector<std::uint16_t>& mask_image,
                                     int width, int height, double tau_overlap) {
  if (tau_overlap <= 0.0 || tau_overlap > 1.0)
    throw std::invalid_argument("tau_overlap must be in (0, 1]");
  if (mask_image.empty()) return segments;
  if (mask_image.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("fuse_masks: mask image size mismatch");

  // Best mask per segment by normalized overlap; ties break to the smaller
  // mask id for determinism.
  std::map<std::uint16_t, std::vector<std::size_t>> matched;  // mask id -> segs
  std::vector<FrameSegment> out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    std::map<std::uint16_t, std::size_t> counts;
    for (std::uint32_t px : segments[i].pixels) {
      const std::uint16_t m = mask_image[px];
      if (m != 0) ++counts[m];
    }
    std::uint16_t best_mask = 0;
    double best_overlap = 0.0;
    for (const auto& [mask_id, count] : counts) {
      const double overlap =
          static_cast<double>(count) / segments[i].points.size();
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best_mask = mask_id;
      }
    }
    if (best_mask != 0 && best_overlap >= tau_overlap)
      matched[best_mask].push_back(i);
  }

  std::vector<bool> consumed(segments.size(), false);
  for (const auto& [mask_id, idx_list] : matched) {
    FrameSegment merged;
    merged.provisional_label = mask_id;
    merged.is_semantic_object = true;
    for (std::size_t i : idx_list) {
      consumed[i] = true;
      merged.points.insert(merged.points.end(), segments[i].points.begin(),
                           segments[i].points.end());
      merged.pixels.insert(merged.pixels.end(), segments[i].pixels.begin(),
                           segments[i].pixels.end());
    }
    out.push_back(std::move(merged));
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!consumed[i]) out.push_back(std::move(segments[i]));
  }
  std::sort(out.begin(), out.end(), [](const FrameSegment& a, const FrameSegment& b) {
    return a.provisional_label < b.provisional_label;
  });
  return out;
}

}  // namespace tsdfpp
