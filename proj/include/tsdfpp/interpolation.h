#ifndef TSDFPP_INTERPOLATION_H_
#define TSDFPP_INTERPOLATION_H_

#include "tsdfpp/block_layer.h"
#include "tsdfpp/types.h"

namespace tsdfpp {

struct InterpolationResult {
  double value = 0.0;
  bool valid = false;
};

/// Distance and weight resampled together, used by field transport.
struct FieldSample {
  double distance = 0.0;
  double weight = 0.0;
  bool valid = false;
};

/// Trilinear interpolation of the TSDF at a point given in voxel units
/// (voxel i's center sits at i + 0.5). The eight voxel centers surrounding
/// the point are found by flooring the half-shifted coordinate; a query at an
/// exact center degenerates to that single corner. Valid only when all eight
/// neighbours are observed.
InterpolationResult interpolate_grid(const BlockLayer<TsdfVoxel>& field,
                                     const Vector3d& grid_point);

FieldSample interpolate_grid_with_weight(const BlockLayer<TsdfVoxel>& field,
                                         const Vector3d& grid_point);

inline InterpolationResult trilinear_interpolate(
    const BlockLayer<TsdfVoxel>& field, const Vector3d& p_world,
    const GridParams& params) {
  return interpolate_grid(field, p_world / params.voxel_size);
}

}  // namespace tsdfpp

#endif  // TSDFPP_INTERPOLATION_H_
