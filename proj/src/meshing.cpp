#include "tsdfpp/meshing.h"

#include <set>
#include <unordered_map>

#include "mc_tables.h"

namespace tsdfpp {

namespace {

// Corner layout of one marching cubes cell, in voxel index offsets.
constexpr int kCorner[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
};

constexpr int kEdgeCorners[12][2] = {
    {0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
    {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7},
};

// Canonical key of a cell edge: the lower voxel index along the edge plus the
// axis, shared by the up-to-four cells meeting at that edge.
struct EdgeKey {
  int x, y, z, axis;
  bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.x) * 73856093u ^
                    static_cast<std::size_t>(k.y) * 19349669u ^
                    static_cast<std::size_t>(k.z) * 83492791u;
    return h * 4u + static_cast<std::size_t>(k.axis);
  }
};

EdgeKey edge_key(const VoxelIndex& base, int edge) {
  const int* a = kCorner[kEdgeCorners[edge][0]];
  const int* b = kCorner[kEdgeCorners[edge][1]];
  const int axis = (a[0] != b[0]) ? 0 : (a[1] != b[1]) ? 1 : 2;
  return EdgeKey{base.x() + std::min(a[0], b[0]), base.y() + std::min(a[1], b[1]),
                 base.z() + std::min(a[2], b[2]), axis};
}

}  // namespace

long TriangleMesh::euler_characteristic() const {
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      std::uint32_t a = t[i], b = t[(i + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.emplace(a, b);
    }
  }
  return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
         static_cast<long>(triangles.size());
}

TriangleMesh extract_mesh(const ObjectVolume& volume, const GridParams& params) {
  TriangleMesh mesh;
  std::unordered_map<EdgeKey, std::uint32_t, EdgeKeyHash> edge_vertices;
  const BlockLayer<TsdfVoxel>& field = volume.tsdf;
  const int s = field.voxels_per_side();

  for (const BlockIndex& b : field.sorted_block_indices()) {
    const VoxelIndex origin = field.min_voxel_of_block(b);
    for (int z = 0; z < s; ++z) {
      for (int y = 0; y < s; ++y) {
        for (int x = 0; x < s; ++x) {
          const VoxelIndex base(origin.x() + x, origin.y() + y, origin.z() + z);

          double d[8];
          bool skip = false;
          for (int i = 0; i < 8; ++i) {
            const TsdfVoxel* v = field.voxel_ptr(VoxelIndex(
                base.x() + kCorner[i][0], base.y() + kCorner[i][1],
                base.z() + kCorner[i][2]));
            if (!v || !v->observed()) {
              skip = true;
              break;
            }
            d[i] = v->distance;
          }
          if (skip) continue;

          int cube_index = 0;
          for (int i = 0; i < 8; ++i)
            if (d[i] < 0.0) cube_index |= (1 << i);
          if (kEdgeTable[cube_index] == 0) continue;

          std::uint32_t cell_vertex[12];
          for (int e = 0; e < 12; ++e) {
            if (!(kEdgeTable[cube_index] & (1 << e))) continue;
            const EdgeKey key = edge_key(base, e);
            auto it = edge_vertices.find(key);
            if (it != edge_vertices.end()) {
              cell_vertex[e] = it->second;
              continue;
            }
            const int c0 = kEdgeCorners[e][0], c1 = kEdgeCorners[e][1];
            const Vector3d p0 = grid_to_world(
                VoxelIndex(base.x() + kCorner[c0][0], base.y() + kCorner[c0][1],
                           base.z() + kCorner[c0][2]),
                params);
            const Vector3d p1 = grid_to_world(
                VoxelIndex(base.x() + kCorner[c1][0], base.y() + kCorner[c1][1],
                           base.z() + kCorner[c1][2]),
                params);
            const double denom = d[c0] - d[c1];
            double t = (denom == 0.0) ? 0.5 : d[c0] / denom;
            t = std::clamp(t, 0.0, 1.0);
            const auto idx = static_cast<std::uint32_t>(mesh.vertices.size());
            mesh.vertices.push_back(p0 + t * (p1 - p0));
            edge_vertices.emplace(key, idx);
            cell_vertex[e] = idx;
          }

          for (int i = 0; kTriTable[cube_index][i] != -1; i += 3) {
            mesh.triangles.push_back({cell_vertex[kTriTable[cube_index][i]],
                                      cell_vertex[kTriTable[cube_index][i + 1]],
                                      cell_vertex[kTriTable[cube_index][i + 2]]});
          }
        }
      }
    }
  }

  // Area-weighted vertex normals, oriented toward positive distance.
  mesh.normals.assign(mesh.vertices.size(), Vector3d::Zero());
  for (const auto& t : mesh.triangles) {
    const Vector3d n = (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                           .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    for (int i = 0; i < 3; ++i) mesh.normals[t[i]] += n;
  }
  for (Vector3d& n : mesh.normals) {
    const double len = n.norm();
    if (len > 0.0) n /= len;
  }
  return mesh;
}

}  // namespace tsdfpp
