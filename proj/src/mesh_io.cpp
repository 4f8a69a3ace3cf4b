#include "tsdfpp/mesh_io.h"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace tsdfpp {

std::array<std::uint8_t, 3> object_color(ObjectId id) {
  if (id == kBackgroundId) return {160, 160, 160};
  // Scrambled hue ramp; stable across runs.
  const std::uint32_t h = id * 2654435761u;
  return {static_cast<std::uint8_t>(64 + (h & 0xbf)),
          static_cast<std::uint8_t>(64 + ((h >> 8) & 0xbf)),
          static_cast<std::uint8_t>(64 + ((h >> 16) & 0xbf))};
}

void write_ply(const std::string& path, const TriangleMesh& mesh,
               const std::array<std::uint8_t, 3>& color) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);

  out << "ply\nformat binary_little_endian 1.0\n"
      << "element vertex " << mesh.vertices.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "property float nx\nproperty float ny\nproperty float nz\n"
      << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      << "element face " << mesh.triangles.size() << "\n"
      << "property list uchar int vertex_indices\nend_header\n";

  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const float v[6] = {static_cast<float>(mesh.vertices[i].x()),
                        static_cast<float>(mesh.vertices[i].y()),
                        static_cast<float>(mesh.vertices[i].z()),
                        static_cast<float>(mesh.normals[i].x()),
                        static_cast<float>(mesh.normals[i].y()),
                        static_cast<float>(mesh.normals[i].z())};
    out.write(reinterpret_cast<const char*>(v), sizeof(v));
    out.write(reinterpret_cast<const char*>(color.data()), 3);
  }
  for (const auto& t : mesh.triangles) {
    const std::uint8_t n = 3;
    const std::int32_t idx[3] = {static_cast<std::int32_t>(t[0]),
                                 static_cast<std::int32_t>(t[1]),
                                 static_cast<std::int32_t>(t[2])};
    out.write(reinterpret_cast<const char*>(&n), 1);
    out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
  }
  if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace tsdfpp
