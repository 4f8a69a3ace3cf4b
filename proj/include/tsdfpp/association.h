#ifndef TSDFPP_ASSOCIATION_H_
#define TSDFPP_ASSOCIATION_H_

#include <vector>

#include "tsdfpp/global_map.h"
#include "tsdfpp/segmentation.h"

namespace tsdfpp {

struct AssociationParams {
  double vote_fraction_min = 0.3;
};

/// Matches segments to mapped objects by voxel voting: each point votes for
/// the active object at its global-map voxel; empty or unallocated voxels
/// vote for "new object". A segment joins the top-voted object when its vote
/// share clears the threshold, otherwise it founds a new one. All segments
/// assigned to one object are merged into a single segment. Ties break to the
/// smallest object id; new ids grow monotonically.
std::vector<FrameSegment> associate_segments(GlobalMap& map,
                                             std::vector<FrameSegment> segments,
                                             const AssociationParams& params = {});

}  // namespace tsdfpp

#endif  // TSDFPP_ASSOCIATION_H_
