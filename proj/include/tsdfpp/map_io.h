#ifndef TSDFPP_MAP_IO_H_
#define TSDFPP_MAP_IO_H_

#include <string>

#include "tsdfpp/global_map.h"

namespace tsdfpp {

/// Versioned little-endian binary container: magic "TSDF++\0", format
/// version, grid parameters and mode, then the global volume's blocks and
/// each object volume's blocks.
void save_map(const GlobalMap& map, const std::string& path);
GlobalMap load_map(const std::string& path);

}  // namespace tsdfpp

#endif  // TSDFPP_MAP_IO_H_
