#include "tsdfpp/interpolation.h"

#include <cmath>

namespace tsdfpp {

namespace {

struct Corners {
  const TsdfVoxel* v[8];
  double w[8];
  bool valid;
};

Corners gather(const BlockLayer<TsdfVoxel>& field, const Vector3d& grid_point) {
  Corners c{};
  const Vector3d shifted = grid_point - Vector3d::Constant(0.5);
  const Vector3i base(static_cast<int>(std::floor(shifted.x())),
                      static_cast<int>(std::floor(shifted.y())),
                      static_cast<int>(std::floor(shifted.z())));
  const Vector3d f = shifted - base.cast<double>();

  c.valid = true;
  for (int i = 0; i < 8; ++i) {
    const int dx = i & 1, dy = (i >> 1) & 1, dz = (i >> 2) & 1;
    const double w = (dx ? f.x() : 1.0 - f.x()) * (dy ? f.y() : 1.0 - f.y()) *
                     (dz ? f.z() : 1.0 - f.z());
    c.w[i] = w;
    if (w == 0.0) {
      // Query exactly on a lattice plane: this corner contributes nothing,
      // so it is not required to be observed (degenerate-tie convention).
      c.v[i] = nullptr;
      continue;
    }
    const TsdfVoxel* vox =
        field.voxel_ptr(VoxelIndex(base.x() + dx, base.y() + dy, base.z() + dz));
    if (!vox || !vox->observed()) {
      c.valid = false;
      return c;
    }
    c.v[i] = vox;
  }
  return c;
}

}  // namespace

InterpolationResult interpolate_grid(const BlockLayer<TsdfVoxel>& field,
                                     const Vector3d& grid_point) {
  const Corners c = gather(field, grid_point);
  if (!c.valid) return {};
  double value = 0.0;
  for (int i = 0; i < 8; ++i)
    if (c.v[i]) value += c.w[i] * c.v[i]->distance;
  return {value, true};
}

FieldSample interpolate_grid_with_weight(const BlockLayer<TsdfVoxel>& field,
                                         const Vector3d& grid_point) {
  const Corners c = gather(field, grid_point);
  if (!c.valid) return {};
  double d = 0.0, w = 0.0;
  for (int i = 0; i < 8; ++i) {
    if (!c.v[i]) continue;
    d += c.w[i] * c.v[i]->distance;
    w += c.w[i] * c.v[i]->weight;
  }
  return {d, w, true};
}

}  // namespace tsdfpp
