#include "tsdfpp/image_io.h"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace tsdfpp {

namespace {
void skip_whitespace_and_comments(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}
}  // namespace

void write_pfm(const std::string& path, const std::vector<float>& data,
               int width, int height) {
  if (data.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("write_pfm: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "Pf\n" << width << " " << height << "\n-1.0\n";
  // Bottom-up rows; -1.0 scale marks little-endian data.
  for (int row = height - 1; row >= 0; --row) {
    out.write(reinterpret_cast<const char*>(&data[static_cast<std::size_t>(row) *
                                                  width]),
              static_cast<std::streamsize>(width) * sizeof(float));
  }
  if (!out) throw std::runtime_error("short write to " + path);
}

std::vector<float> read_pfm(const std::string& path, int* width, int* height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "Pf")
    throw std::runtime_error(path + ": not a grayscale PFM file");
  skip_whitespace_and_comments(in);
  int w = 0, h = 0;
  double scale = 0.0;
  in >> w;
  skip_whitespace_and_comments(in);
  in >> h;
  skip_whitespace_and_comments(in);
  in >> scale;
  in.get();  // single whitespace before data
  if (!in || w <= 0 || h <= 0) throw std::runtime_error(path + ": bad PFM header");
  if (scale >= 0.0)
    throw std::runtime_error(path + ": big-endian PFM is not supported");
  std::vector<float> data(static_cast<std::size_t>(w) * h);
  for (int row = h - 1; row >= 0; --row) {
    in.read(reinterpret_cast<char*>(&data[static_cast<std::size_t>(row) * w]),
            static_cast<std::streamsize>(w) * sizeof(float));
  }
  if (!in) throw std::runtime_error(path + ": truncated PFM data");
  *width = w;
  *height = h;
  return data;
}

void write_pgm16(const std::string& path, const std::vector<std::uint16_t>& data,
                 int width, int height) {
  if (data.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("write_pgm16: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "P5\n" << width << " " << height << "\n65535\n";
  for (std::uint16_t v : data) {
    const unsigned char bytes[2] = {static_cast<unsigned char>(v >> 8),
                                    static_cast<unsigned char>(v & 0xff)};
    out.write(reinterpret_cast<const char*>(bytes), 2);
  }
  if (!out) throw std::runtime_error("short write to " + path);
}

std::vector<std::uint16_t> read_pgm16(const std::string& path, int* width,
                                      int* height) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error(path + ": not a binary PGM file");
  skip_whitespace_and_comments(in);
  int w = 0, h = 0, maxval = 0;
  in >> w;
  skip_whitespace_and_comments(in);
  in >> h;
  skip_whitespace_and_comments(in);
  in >> maxval;
  in.get();
  if (!in || w <= 0 || h <= 0 || maxval != 65535)
    throw std::runtime_error(path + ": expected 16-bit PGM");
  std::vector<std::uint16_t> data(static_cast<std::size_t>(w) * h);
  for (std::uint16_t& v : data) {
    unsigned char bytes[2];
    in.read(reinterpret_cast<char*>(bytes), 2);
    v = static_cast<std::uint16_t>((bytes[0] << 8) | bytes[1]);
  }
  if (!in) throw std::runtime_error(path + ": truncated PGM data");
  *width = w;
  *height = h;
  return data;
}

}  // namespace tsdfpp
