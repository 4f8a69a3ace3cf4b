#ifndef TSDFPP_IMAGE_IO_H_
#define TSDFPP_IMAGE_IO_H_

#include <cstdint>
#include <string>
#include <vector>

namespace tsdfpp {

/// Grayscale PFM ("Pf"), 32-bit little-endian floats, rows bottom-up per the
/// format convention. Values are meters.
void write_pfm(const std::string& path, const std::vector<float>& data,
               int width, int height);
std::vector<float> read_pfm(const std::string& path, int* width, int* height);

/// Binary PGM ("P5") with maxval 65535, big-endian sample bytes.
void write_pgm16(const std::string& path, const std::vector<std::uint16_t>& data,
                 int width, int height);
std::vector<std::uint16_t> read_pgm16(const std::string& path, int* width,
                                      int* height);

}  // namespace tsdfpp

#endif  // TSDFPP_IMAGE_IO_H_
