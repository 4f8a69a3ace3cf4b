#ifndef TSDFPP_MESH_IO_H_
#define TSDFPP_MESH_IO_H_

#include <array>
#include <string>

#include "tsdfpp/meshing.h"

namespace tsdfpp {

/// Deterministic color for an object id (background is gray).
std::array<std::uint8_t, 3> object_color(ObjectId id);

/// Binary little-endian PLY with per-vertex position, normal and color.
void write_ply(const std::string& path, const TriangleMesh& mesh,
               const std::array<std::uint8_t, 3>& color);

}  // namespace tsdfpp

#endif  // TSDFPP_MESH_IO_H_
