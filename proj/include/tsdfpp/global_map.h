#ifndef TSDFPP_GLOBAL_MAP_H_
#define TSDFPP_GLOBAL_MAP_H_

#include <map>
#include <optional>

#include "tsdfpp/block_layer.h"
#include "tsdfpp/types.h"

namespace tsdfpp {

/// Sparse TSDF field of one object, stored in the global coordinate frame at
/// the same resolution as the global map volume.
struct ObjectVolume {
  ObjectId object_id = kBackgroundId;
  BlockLayer<TsdfVoxel> tsdf;

  ObjectVolume() : tsdf(16) {}
  ObjectVolume(ObjectId id, int voxels_per_side)
      : object_id(id), tsdf(voxels_per_side) {}
};

/// Non-forcing registration of `id` at a voxel: the active slot of a
/// different object is never touched. A third object replaces the inactive
/// incumbent only when the incumbent's confidence is <= the challenger's
/// initial confidence of 1 and the incumbent is not a protected background
/// reference.
SlotDecision assign_layer(MultiObjectVoxel& voxel, ObjectId id, MapMode mode,
                          bool inactive_is_protected);

/// The scene container: a voxel-hashed global volume whose voxels reference
/// up to two per-object TSDF volumes, plus the volumes themselves.
class GlobalMap {
 public:
  explicit GlobalMap(const GridParams& params = GridParams(),
                     MapMode mode = MapMode::kTsdfPlusPlus)
      : params_(params),
        mode_(mode),
        global_(params.voxels_per_block_side) {
    params_.validate();
    get_or_create_volume(kBackgroundId);
  }

  const GridParams& params() const { return params_; }
  MapMode mode() const { return mode_; }

  BlockLayer<MultiObjectVoxel>& global_volume() { return global_; }
  const BlockLayer<MultiObjectVoxel>& global_volume() const { return global_; }

  MultiObjectVoxel& get_or_allocate_voxel(const VoxelIndex& g) {
    return global_.get_or_allocate(g);
  }
  const MultiObjectVoxel* voxel_ptr(const VoxelIndex& g) const {
    return global_.voxel_ptr(g);
  }

  bool has_object(ObjectId id) const { return objects_.count(id) > 0; }
  ObjectVolume& get_or_create_volume(ObjectId id);
  ObjectVolume& volume(ObjectId id);
  const ObjectVolume& volume(ObjectId id) const;
  const std::map<ObjectId, ObjectVolume>& object_volumes() const {
    return objects_;
  }
  void replace_volume(ObjectId id, BlockLayer<TsdfVoxel>&& tsdf);

  /// Ids are never reused within a run.
  ObjectId allocate_object_id() { return next_id_++; }
  ObjectId next_object_id() const { return next_id_; }
  void set_next_object_id(ObjectId id) { next_id_ = id; }

  SlotDecision assign_layer_at(const VoxelIndex& g, ObjectId id);

  /// §-style fusion vote: agreeing observations increment the active
  /// confidence, disagreeing ones decrement it; at zero the incoming object
  /// takes over with confidence one. Returns the id whose volume receives
  /// the depth sample (the active object after the vote).
  ObjectId update_confidence(const VoxelIndex& g, ObjectId incoming);

  /// Pose-update activation: force `id` active at g, demoting any incumbent.
  void activate_at(const VoxelIndex& g, ObjectId id);

  /// Pose-update deactivation: drop every reference to `id`, promoting
  /// inactive occupants where `id` was active.
  void deactivate_everywhere(ObjectId id);

  /// Total allocated blocks across the global volume and all object volumes;
  /// the memory proxy reported by experiments.
  std::size_t total_block_count() const;

 private:
  bool background_protected_at(const VoxelIndex& g, ObjectId id) const;
  // Seats `slot` in the inactive position, applying the eviction rule.
  // Returns false if the incumbent stays and the slot is dropped.
  bool demote_to_inactive(const VoxelIndex& g, MultiObjectVoxel& voxel,
                          LayerSlot slot);
  void erase_volume_voxel(ObjectId id, const VoxelIndex& g);

  GridParams params_;
  MapMode mode_;
  BlockLayer<MultiObjectVoxel> global_;
  std::map<ObjectId, ObjectVolume> objects_;  // ordered for determinism
  ObjectId next_id_ = 1;
};

/// Non-destructive view of the map with one object hidden: wherever the
/// hidden object is active, the inactive occupant shows through instead.
class RemovalView {
 public:
  RemovalView(const GlobalMap& map, ObjectId removed)
      : map_(&map), removed_(removed) {
    if (!map.has_object(removed))
      throw std::invalid_argument("simulate_removal: unknown object id");
  }

  const GlobalMap& map() const { return *map_; }
  ObjectId removed() const { return removed_; }

  std::optional<ObjectId> active_at(const VoxelIndex& g) const {
    const MultiObjectVoxel* v = map_->voxel_ptr(g);
    if (!v) return std::nullopt;
    if (v->active && v->active->id != removed_) return v->active->id;
    if (v->active && v->active->id == removed_) {
      if (v->inactive) return v->inactive->id;
      return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  const GlobalMap* map_;
  ObjectId removed_;
};

inline RemovalView simulate_removal(const GlobalMap& map, ObjectId id) {
  return RemovalView(map, id);
}

}  // namespace tsdfpp

#endif  // TSDFPP_GLOBAL_MAP_H_
