#ifndef TSDFPP_MESHING_H_
#define TSDFPP_MESHING_H_

#include <array>
#include <cstdint>
#include <vector>

#include "tsdfpp/global_map.h"

namespace tsdfpp {

struct TriangleMesh {
  std::vector<Vector3d> vertices;
  std::vector<Vector3d> normals;  // per vertex, unit length
  std::vector<std::array<std::uint32_t, 3>> triangles;

  bool empty() const { return triangles.empty(); }

  /// V - E + F over unique undirected edges.
  long euler_characteristic() const;
};

/// Marching cubes over the allocated blocks of one object volume at the zero
/// isosurface. Cell corners are voxel centers; cells with any unobserved
/// corner are skipped; vertices sit at linearly interpolated edge crossings
/// and are shared between cells. Normals are the area-weighted average of
/// incident triangle normals and point toward positive distance.
TriangleMesh extract_mesh(const ObjectVolume& volume, const GridParams& params);

}  // namespace tsdfpp

#endif  // TSDFPP_MESHING_H_
