#ifndef TSDFPP_POSE_UPDATE_H_
#define TSDFPP_POSE_UPDATE_H_

#include "tsdfpp/global_map.h"
#include "tsdfpp/transform.h"

namespace tsdfpp {

/// Moves an object within the map by T_O (previous pose -> current pose):
/// deactivates the object everywhere (promoting inactive occupants), rebuilds
/// its volume by trilinear resampling of distance and weight at the
/// transported voxel centers, and activates it at every destination voxel
/// with stored geometry, demoting incumbents per the eviction rule. The
/// moved object's confidences restart at one; demoted incumbents keep theirs.
void update_object_pose(GlobalMap& map, ObjectId id, const RigidTransform& T_O);

}  // namespace tsdfpp

#endif  // TSDFPP_POSE_UPDATE_H_
