#include "tsdfpp/global_map.h"

namespace tsdfpp {

SlotDecision assign_layer(MultiObjectVoxel& voxel, ObjectId id, MapMode mode,
                          bool inactive_is_protected) {
  if (voxel.active && voxel.active->id == id) return SlotDecision::kAlreadyPresent;

  if (voxel.inactive && voxel.inactive->id == id) {
    if (!voxel.active) {
      voxel.active = voxel.inactive;
      voxel.inactive.reset();
      return SlotDecision::kActivatedFromInactive;
    }
    return SlotDecision::kAlreadyPresent;
  }

  if (!voxel.active) {
    voxel.active = LayerSlot{id, 1};
    return SlotDecision::kPlacedInFreeSlot;
  }

  if (mode == MapMode::kStandardTsdf) {
    // Single-layer map: one surface per voxel, no second slot.
    return SlotDecision::kRejected;
  }

  if (!voxel.inactive) {
    voxel.inactive = LayerSlot{id, 1};
    return SlotDecision::kPlacedInFreeSlot;
  }

  // Both slots taken by other objects. The active surface is never evicted;
  // the inactive incumbent yields only to an equal-or-better newcomer.
  if (inactive_is_protected || voxel.inactive->confidence > 1)
    return SlotDecision::kRejected;
  voxel.inactive = LayerSlot{id, 1};
  return SlotDecision::kEvictedInactive;
}

ObjectVolume& GlobalMap::get_or_create_volume(ObjectId id) {
  auto it = objects_.find(id);
  if (it == objects_.end()) {
    it = objects_
             .emplace(id, ObjectVolume(id, params_.voxels_per_block_side))
             .first;
    if (id >= next_id_ && id != kBackgroundId) next_id_ = id + 1;
  }
  return it->second;
}

ObjectVolume& GlobalMap::volume(ObjectId id) {
  auto it = objects_.find(id);
  if (it == objects_.end())
    throw std::invalid_argument("unknown object id " + std::to_string(id));
  return it->second;
}

const ObjectVolume& GlobalMap::volume(ObjectId id) const {
  auto it = objects_.find(id);
  if (it == objects_.end())
    throw std::invalid_argument("unknown object id " + std::to_string(id));
  return it->second;
}

void GlobalMap::replace_volume(ObjectId id, BlockLayer<TsdfVoxel>&& tsdf) {
  volume(id).tsdf = std::move(tsdf);
}

bool GlobalMap::background_protected_at(const VoxelIndex& g,
                                        ObjectId id) const {
  if (id != kBackgroundId) return false;
  const TsdfVoxel* v = volume(kBackgroundId).tsdf.voxel_ptr(g);
  return v && v->observed();
}

SlotDecision GlobalMap::assign_layer_at(const VoxelIndex& g, ObjectId id) {
  get_or_create_volume(id);
  MultiObjectVoxel& voxel = global_.get_or_allocate(g);
  const bool prot =
      voxel.inactive && background_protected_at(g, voxel.inactive->id);
  return assign_layer(voxel, id, mode_, prot);
}

void GlobalMap::erase_volume_voxel(ObjectId id, const VoxelIndex& g) {
  if (TsdfVoxel* v = volume(id).tsdf.voxel_ptr(g)) *v = TsdfVoxel{};
}

bool GlobalMap::demote_to_inactive(const VoxelIndex& g, MultiObjectVoxel& voxel,
                                   LayerSlot slot) {
  if (mode_ == MapMode::kStandardTsdf) {
    // A single-layer map has nowhere to keep the displaced surface: its data
    // at this cell is overwritten.
    erase_volume_voxel(slot.id, g);
    return false;
  }
  if (!voxel.inactive) {
    voxel.inactive = slot;
    return true;
  }
  // Background with stored geometry always survives, on either side of the
  // contest; otherwise the incumbent keeps the slot unless its confidence is
  // down to the challenger's 1.
  if (background_protected_at(g, slot.id)) {
    voxel.inactive = slot;
    return true;
  }
  if (background_protected_at(g, voxel.inactive->id)) return false;
  if (voxel.inactive->confidence <= 1) {
    voxel.inactive = slot;
    return true;
  }
  return false;
}

ObjectId GlobalMap::update_confidence(const VoxelIndex& g, ObjectId incoming) {
  get_or_create_volume(incoming);
  MultiObjectVoxel& voxel = global_.get_or_allocate(g);

  if (!voxel.active) {
    if (voxel.inactive && voxel.inactive->id == incoming) {
      voxel.active = voxel.inactive;
      voxel.inactive.reset();
      voxel.active->confidence += 1;
    } else {
      voxel.active = LayerSlot{incoming, 1};
    }
    return incoming;
  }

  if (voxel.active->id == incoming) {
    voxel.active->confidence += 1;
    return incoming;
  }

  voxel.active->confidence -= 1;
  if (voxel.active->confidence > 0) return voxel.active->id;

  // Confidence hit zero: the incoming object takes over with confidence one
  // and the former active moves down a layer if it can.
  LayerSlot former = *voxel.active;
  former.confidence = 1;
  if (voxel.inactive && voxel.inactive->id == incoming) {
    voxel.active = LayerSlot{incoming, 1};
    voxel.inactive = former;
  } else {
    voxel.active = LayerSlot{incoming, 1};
    demote_to_inactive(g, voxel, former);
  }
  return incoming;
}

void GlobalMap::activate_at(const VoxelIndex& g, ObjectId id) {
  get_or_create_volume(id);
  MultiObjectVoxel& voxel = global_.get_or_allocate(g);

  if (voxel.active && voxel.active->id == id) {
    voxel.active->confidence = 1;
    return;
  }

  if (voxel.inactive && voxel.inactive->id == id) {
    std::swap(voxel.active, voxel.inactive);
    voxel.active->confidence = 1;
    return;
  }

  if (!voxel.active) {
    voxel.active = LayerSlot{id, 1};
    return;
  }

  LayerSlot former = *voxel.active;
  voxel.active = LayerSlot{id, 1};
  demote_to_inactive(g, voxel, former);
}

void GlobalMap::deactivate_everywhere(ObjectId id) {
  // References to an object only live where its volume stores geometry, so
  // scanning the volume's allocated blocks covers them all.
  const ObjectVolume& vol = volume(id);
  for (const BlockIndex& b : vol.tsdf.sorted_block_indices()) {
    auto* gblock = global_.block_ptr(b);
    if (!gblock) continue;
    for (MultiObjectVoxel& v : gblock->voxels) {
      if (v.active && v.active->id == id) {
        v.active.reset();
        if (v.inactive) {
          v.active = v.inactive;
          v.inactive.reset();
        }
      } else if (v.inactive && v.inactive->id == id) {
        v.inactive.reset();
      }
    }
  }
}

std::size_t GlobalMap::total_block_count() const {
  std::size_t n = global_.block_count();
  for (const auto& [id, vol] : objects_) n += vol.tsdf.block_count();
  return n;
}

}  // namespace tsdfpp
