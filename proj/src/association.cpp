#include "tsdfpp/association.h"

#include <algorithm>
#include <map>

namespace tsdfpp {

std::vector<FrameSegment> associate_segments(GlobalMap& map,
                                             std::vector<FrameSegment> segments,
                                             const AssociationParams& params) {
  // Deterministic processing order regardless of caller ordering.
  std::sort(segments.begin(), segments.end(),
            [](const FrameSegment& a, const FrameSegment& b) {
              return a.provisional_label < b.provisional_label;
            });

  for (FrameSegment& seg : segments) {
    std::map<ObjectId, std::size_t> votes;
    for (const Vector3d& p : seg.points) {
      const MultiObjectVoxel* voxel =
          map.voxel_ptr(world_to_grid(p, map.params()));
      if (voxel && voxel->active) ++votes[voxel->active->id];
      // Otherwise the point falls in unobserved space: evidence of novelty.
    }
    ObjectId winner = 0;
    std::size_t winner_votes = 0;
    for (const auto& [id, count] : votes) {
      if (count > winner_votes) {  // ties keep the smaller id (map order)
        winner = id;
        winner_votes = count;
      }
    }
    const double share =
        seg.points.empty() ? 0.0
                           : static_cast<double>(winner_votes) / seg.points.size();
    if (winner_votes > 0 && share >= params.vote_fraction_min) {
      seg.matched_object = winner;
    } else {
      seg.matched_object = map.allocate_object_id();
      map.get_or_create_volume(*seg.matched_object);
    }
  }

  // Merge everything that mapped to the same object into one segment.
  std::map<ObjectId, FrameSegment> merged;
  for (FrameSegment& seg : segments) {
    const ObjectId id = *seg.matched_object;
    auto it = merged.find(id);
    if (it == merged.end()) {
      merged.emplace(id, std::move(seg));
      continue;
    }
    FrameSegment& dst = it->second;
    dst.points.insert(dst.points.end(), seg.points.begin(), seg.points.end());
    dst.pixels.insert(dst.pixels.end(), seg.pixels.begin(), seg.pixels.end());
    dst.is_semantic_object |= seg.is_semantic_object;
    dst.provisional_label = std::min(dst.provisional_label, seg.provisional_label);
  }

  std::vector<FrameSegment> out;
  out.reserve(merged.size());
  for (auto& [id, seg] : merged) out.push_back(std::move(seg));
  return out;
}

}  // namespace tsdfpp
