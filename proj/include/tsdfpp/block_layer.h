#ifndef TSDFPP_BLOCK_LAYER_H_
#define TSDFPP_BLOCK_LAYER_H_

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "tsdfpp/types.h"

namespace tsdfpp {

/// Sparse voxel storage: fixed-size cubic blocks allocated on demand and
/// addressed by a hash of their integer block index. All layers of one map
/// share the block size, so identical grid coordinates address corresponding
/// voxels in any layer.
template <typename VoxelT>
class BlockLayer {
 public:
  struct Block {
    std::vector<VoxelT> voxels;
  };

  explicit BlockLayer(int voxels_per_side = 16)
      : voxels_per_side_(voxels_per_side) {}

  int voxels_per_side() const { return voxels_per_side_; }

  static int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  BlockIndex block_index_of(const VoxelIndex& g) const {
    return BlockIndex(floor_div(g.x(), voxels_per_side_),
                      floor_div(g.y(), voxels_per_side_),
                      floor_div(g.z(), voxels_per_side_));
  }

  int linear_index_of(const VoxelIndex& g) const {
    const int s = voxels_per_side_;
    const int lx = g.x() - floor_div(g.x(), s) * s;
    const int ly = g.y() - floor_div(g.y(), s) * s;
    const int lz = g.z() - floor_div(g.z(), s) * s;
    return lx + s * (ly + s * lz);
  }

  VoxelIndex min_voxel_of_block(const BlockIndex& b) const {
    return b * voxels_per_side_;
  }

  const VoxelT* voxel_ptr(const VoxelIndex& g) const {
    auto it = blocks_.find(block_index_of(g));
    if (it == blocks_.end()) return nullptr;
    return &it->second.voxels[linear_index_of(g)];
  }

  VoxelT* voxel_ptr(const VoxelIndex& g) {
    auto it = blocks_.find(block_index_of(g));
    if (it == blocks_.end()) return nullptr;
    return &it->second.voxels[linear_index_of(g)];
  }

  VoxelT& get_or_allocate(const VoxelIndex& g) {
    auto [it, inserted] = blocks_.try_emplace(block_index_of(g));
    if (inserted) {
      it->second.voxels.resize(static_cast<std::size_t>(voxels_per_side_) *
                               voxels_per_side_ * voxels_per_side_);
    }
    return it->second.voxels[linear_index_of(g)];
  }

  const Block* block_ptr(const BlockIndex& b) const {
    auto it = blocks_.find(b);
    return it == blocks_.end() ? nullptr : &it->second;
  }

  Block* block_ptr(const BlockIndex& b) {
    auto it = blocks_.find(b);
    return it == blocks_.end() ? nullptr : &it->second;
  }

  Block& get_or_allocate_block(const BlockIndex& b) {
    auto [it, inserted] = blocks_.try_emplace(b);
    if (inserted) {
      it->second.voxels.resize(static_cast<std::size_t>(voxels_per_side_) *
                               voxels_per_side_ * voxels_per_side_);
    }
    return it->second;
  }

  bool has_block(const BlockIndex& b) const { return blocks_.count(b) > 0; }
  std::size_t block_count() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  void clear() { blocks_.clear(); }

  /// Block indices in lexicographic order; every deterministic iteration over
  /// the map goes through this.
  std::vector<BlockIndex> sorted_block_indices() const {
    std::vector<BlockIndex> indices;
    indices.reserve(blocks_.size());
    for (const auto& [b, block] : blocks_) indices.push_back(b);
    std::sort(indices.begin(), indices.end(), Vector3iLess());
    return indices;
  }

  /// Visit every voxel of every allocated block, in deterministic order.
  /// Callback: f(VoxelIndex, VoxelT&).
  template <typename Fn>
  void for_each_voxel(Fn&& f) {
    for (const BlockIndex& b : sorted_block_indices()) {
      Block& block = blocks_.at(b);
      const VoxelIndex origin = min_voxel_of_block(b);
      const int s = voxels_per_side_;
      for (int z = 0; z < s; ++z)
        for (int y = 0; y < s; ++y)
          for (int x = 0; x < s; ++x)
            f(VoxelIndex(origin.x() + x, origin.y() + y, origin.z() + z),
              block.voxels[x + s * (y + s * z)]);
    }
  }

  template <typename Fn>
  void for_each_voxel(Fn&& f) const {
    for (const BlockIndex& b : sorted_block_indices()) {
      const Block& block = blocks_.at(b);
      const VoxelIndex origin = min_voxel_of_block(b);
      const int s = voxels_per_side_;
      for (int z = 0; z < s; ++z)
        for (int y = 0; y < s; ++y)
          for (int x = 0; x < s; ++x)
            f(VoxelIndex(origin.x() + x, origin.y() + y, origin.z() + z),
              block.voxels[x + s * (y + s * z)]);
    }
  }

 private:
  int voxels_per_side_;
  std::unordered_map<BlockIndex, Block, Vector3iHash> blocks_;
};

}  // namespace tsdfpp

#endif  // TSDFPP_BLOCK_LAYER_H_
