#ifndef TSDFPP_TYPES_H_
#define TSDFPP_TYPES_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

#include <Eigen/Core>

namespace tsdfpp {

using Vector3d = Eigen::Vector3d;
using Vector3i = Eigen::Vector3i;

/// Integer coordinate of a voxel in the global grid. Voxel g spans
/// [g * voxel_size, (g + 1) * voxel_size) per axis; its center sits at
/// (g + 0.5) * voxel_size.
using VoxelIndex = Vector3i;
/// Integer coordinate of an allocated block of voxels.
using BlockIndex = Vector3i;

/// Object instance identifier. 0 is reserved for the static background.
using ObjectId = std::uint32_t;
inline constexpr ObjectId kBackgroundId = 0;

struct GridParams {
  double voxel_size = 0.01;
  int voxels_per_block_side = 16;
  double truncation_distance = 0.1;

  void validate() const {
    if (voxel_size <= 0.0) throw std::invalid_argument("voxel_size must be > 0");
    if (truncation_distance <= 0.0)
      throw std::invalid_argument("truncation_distance must be > 0");
    if (voxels_per_block_side < 1)
      throw std::invalid_argument("voxels_per_block_side must be >= 1");
  }
};

struct TsdfVoxel {
  double distance = 0.0;
  double weight = 0.0;  // 0 means unobserved; distance is then meaningless

  bool observed() const { return weight > 0.0; }
};

/// One object reference held by a global-map voxel.
struct LayerSlot {
  ObjectId id = kBackgroundId;
  std::int32_t confidence = 1;

  bool operator==(const LayerSlot&) const = default;
};

/// Per-voxel record of the global map volume. At most two object surfaces are
/// referenced: the currently visible (active) one and, optionally, an
/// occluded (inactive) one.
struct MultiObjectVoxel {
  std::optional<LayerSlot> active;
  std::optional<LayerSlot> inactive;

  bool empty() const { return !active && !inactive; }
  bool references(ObjectId id) const {
    return (active && active->id == id) || (inactive && inactive->id == id);
  }
  bool operator==(const MultiObjectVoxel&) const = default;
};

/// Outcome of trying to register an object at a voxel without forcing it
/// active. Rejection is a value, not an error.
enum class SlotDecision {
  kAlreadyPresent,
  kActivatedFromInactive,
  kPlacedInFreeSlot,
  kEvictedInactive,
  kRejected,
};

enum class MapMode {
  kTsdfPlusPlus,  // two layers per voxel, occluded surfaces preserved
  kStandardTsdf,  // one surface per voxel, displaced data is overwritten
};

inline VoxelIndex world_to_grid(const Vector3d& p, const GridParams& params) {
  const double inv = 1.0 / params.voxel_size;
  return VoxelIndex(static_cast<int>(std::floor(p.x() * inv)),
                    static_cast<int>(std::floor(p.y() * inv)),
                    static_cast<int>(std::floor(p.z() * inv)));
}

/// Center of the voxel, the inverse of world_to_grid up to binning.
inline Vector3d grid_to_world(const VoxelIndex& g, const GridParams& params) {
  return (g.cast<double>() + Vector3d::Constant(0.5)) * params.voxel_size;
}

// Teschner-style spatial hash, the usual choice for voxel block maps.
struct Vector3iHash {
  std::size_t operator()(const Vector3i& v) const {
    return static_cast<std::size_t>(v.x()) * 73856093u ^
           static_cast<std::size_t>(v.y()) * 19349669u ^
           static_cast<std::size_t>(v.z()) * 83492791u;
  }
};

struct Vector3iLess {
  bool operator()(const Vector3i& a, const Vector3i& b) const {
    if (a.x() != b.x()) return a.x() < b.x();
    if (a.y() != b.y()) return a.y() < b.y();
    return a.z() < b.z();
  }
};

}  // namespace tsdfpp

#endif  // TSDFPP_TYPES_H_
