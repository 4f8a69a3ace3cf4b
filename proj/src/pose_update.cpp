#include "tsdfpp/pose_update.h"

#include <limits>
#include <stdexcept>

#include "tsdfpp/interpolation.h"

namespace tsdfpp {

void update_object_pose(GlobalMap& map, ObjectId id, const RigidTransform& T_O) {
  if (id == kBackgroundId)
    throw std::invalid_argument("update_object_pose: background never moves");
  if (!map.has_object(id))
    throw std::invalid_argument("update_object_pose: unknown object id");

  const GridParams& params = map.params();
  const BlockLayer<TsdfVoxel>& source = map.volume(id).tsdf;
  const int s = source.voxels_per_side();

  map.deactivate_everywhere(id);
  if (source.empty()) return;

  // Destination candidates: the transformed bounding box of the allocated
  // source blocks, dilated by one block.
  Vector3d lo = Vector3d::Constant(std::numeric_limits<double>::infinity());
  Vector3d hi = -lo;
  for (const BlockIndex& b : source.sorted_block_indices()) {
    const VoxelIndex v0 = source.min_voxel_of_block(b);
    for (int corner = 0; corner < 8; ++corner) {
      const Vector3d p(
          (v0.x() + ((corner & 1) ? s : 0)) * params.voxel_size,
          (v0.y() + ((corner & 2) ? s : 0)) * params.voxel_size,
          (v0.z() + ((corner & 4) ? s : 0)) * params.voxel_size);
      const Vector3d q = T_O * p;
      lo = lo.cwiseMin(q);
      hi = hi.cwiseMax(q);
    }
  }
  const double block_size = s * params.voxel_size;
  BlockIndex block_lo, block_hi;
  for (int a = 0; a < 3; ++a) {
    block_lo[a] = static_cast<int>(std::floor(lo[a] / block_size)) - 1;
    block_hi[a] = static_cast<int>(std::floor(hi[a] / block_size)) + 1;
  }

  // The transform applied in voxel units; grid-space sampling keeps exact
  // lattice translations exact.
  const RigidTransform T_inv = T_O.inverse();
  const Eigen::Matrix3d R_inv = T_inv.rotation();
  const Vector3d t_inv_grid = T_inv.translation() / params.voxel_size;

  // Source-space bounds for skipping destination blocks that cannot map onto
  // any allocated source block.
  Vector3d src_lo = Vector3d::Constant(std::numeric_limits<double>::infinity());
  Vector3d src_hi = -src_lo;
  for (const BlockIndex& b : source.sorted_block_indices()) {
    const Vector3d corner =
        source.min_voxel_of_block(b).cast<double>() * params.voxel_size;
    src_lo = src_lo.cwiseMin(corner);
    src_hi = src_hi.cwiseMax(corner + Vector3d::Constant(block_size));
  }
  const double margin = 0.87 * block_size + params.voxel_size;  // half diagonal

  BlockLayer<TsdfVoxel> transported(s);
  for (int bz = block_lo.z(); bz <= block_hi.z(); ++bz) {
    for (int by = block_lo.y(); by <= block_hi.y(); ++by) {
      for (int bx = block_lo.x(); bx <= block_hi.x(); ++bx) {
        const Vector3d dst_center =
            (Vector3d(bx, by, bz) + Vector3d::Constant(0.5)) * block_size;
        const Vector3d back = T_inv * dst_center;
        if ((back.array() < src_lo.array() - margin).any() ||
            (back.array() > src_hi.array() + margin).any())
          continue;
        const VoxelIndex v0 =
            source.min_voxel_of_block(BlockIndex(bx, by, bz));
        for (int z = 0; z < s; ++z) {
          for (int y = 0; y < s; ++y) {
            for (int x = 0; x < s; ++x) {
              const VoxelIndex g(v0.x() + x, v0.y() + y, v0.z() + z);
              const Vector3d center_grid =
                  g.cast<double>() + Vector3d::Constant(0.5);
              const Vector3d src_grid = R_inv * center_grid + t_inv_grid;
              const FieldSample sample =
                  interpolate_grid_with_weight(source, src_grid);
              if (!sample.valid || sample.weight <= 0.0) continue;
              TsdfVoxel& dst = transported.get_or_allocate(g);
              dst.distance = sample.distance;
              dst.weight = sample.weight;
            }
          }
        }
      }
    }
  }

  map.replace_volume(id, std::move(transported));

  const BlockLayer<TsdfVoxel>& moved = map.volume(id).tsdf;
  moved.for_each_voxel([&](const VoxelIndex& g, const TsdfVoxel& voxel) {
    if (voxel.observed()) map.activate_at(g, id);
  });
}

}  // namespace tsdfpp
