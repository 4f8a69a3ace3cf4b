#include "tsdfpp/map_io.h"

#include <bit>
#include <cstring>
#include <fstream>

namespace tsdfpp {

namespace {

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

constexpr char kMagic[7] = {'T', 'S', 'D', 'F', '+', '+', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kNoSlot = 0xffffffffu;

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("map file truncated");
  return v;
}

void put_slot(std::ostream& out, const std::optional<LayerSlot>& slot) {
  if (slot) {
    put<std::uint32_t>(out, slot->id);
    put<std::int32_t>(out, slot->confidence);
  } else {
    put<std::uint32_t>(out, kNoSlot);
    put<std::int32_t>(out, 0);
  }
}

std::optional<LayerSlot> get_slot(std::istream& in) {
  const auto id = get<std::uint32_t>(in);
  const auto conf = get<std::int32_t>(in);
  if (id == kNoSlot) return std::nullopt;
  return LayerSlot{id, conf};
}

}  // namespace

void save_map(const GlobalMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);

  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, map.params().voxel_size);
  put<std::uint32_t>(out, map.params().voxels_per_block_side);
  put(out, map.params().truncation_distance);
  put<std::uint8_t>(out, map.mode() == MapMode::kTsdfPlusPlus ? 0 : 1);
  put<std::uint32_t>(out, map.next_object_id());

  const auto& global = map.global_volume();
  const auto global_blocks = global.sorted_block_indices();
  put<std::uint64_t>(out, global_blocks.size());
  for (const BlockIndex& b : global_blocks) {
    put<std::int32_t>(out, b.x());
    put<std::int32_t>(out, b.y());
    put<std::int32_t>(out, b.z());
    for (const MultiObjectVoxel& v : global.block_ptr(b)->voxels) {
      put_slot(out, v.active);
      put_slot(out, v.inactive);
    }
  }

  put<std::uint32_t>(out, static_cast<std::uint32_t>(map.object_volumes().size()));
  for (const auto& [id, vol] : map.object_volumes()) {
    put<std::uint32_t>(out, id);
    const auto blocks = vol.tsdf.sorted_block_indices();
    put<std::uint64_t>(out, blocks.size());
    for (const BlockIndex& b : blocks) {
      put<std::int32_t>(out, b.x());
      put<std::int32_t>(out, b.y());
      put<std::int32_t>(out, b.z());
      for (const TsdfVoxel& v : vol.tsdf.block_ptr(b)->voxels) {
        put(out, v.distance);
        put(out, v.weight);
      }
    }
  }
  if (!out) throw std::runtime_error("short write to " + path);
}

GlobalMap load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);

  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error(path + ": not a map file (bad magic)");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion)
    throw std::runtime_error(path + ": unsupported map format version " +
                             std::to_string(version));

  GridParams params;
  params.voxel_size = get<double>(in);
  params.voxels_per_block_side = static_cast<int>(get<std::uint32_t>(in));
  params.truncation_distance = get<double>(in);
  const auto mode_byte = get<std::uint8_t>(in);
  GlobalMap map(params, mode_byte == 0 ? MapMode::kTsdfPlusPlus
                                       : MapMode::kStandardTsdf);
  const auto next_id = get<std::uint32_t>(in);

  const auto global_blocks = get<std::uint64_t>(in);
  const std::size_t voxels_per_block =
      static_cast<std::size_t>(params.voxels_per_block_side) *
      params.voxels_per_block_side * params.voxels_per_block_side;
  for (std::uint64_t i = 0; i < global_blocks; ++i) {
    const int x = get<std::int32_t>(in);
    const int y = get<std::int32_t>(in);
    const int z = get<std::int32_t>(in);
    auto& block = map.global_volume().get_or_allocate_block(BlockIndex(x, y, z));
    for (std::size_t j = 0; j < voxels_per_block; ++j) {
      block.voxels[j].active = get_slot(in);
      block.voxels[j].inactive = get_slot(in);
    }
  }

  const auto object_count = get<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < object_count; ++i) {
    const auto id = get<std::uint32_t>(in);
    ObjectVolume& vol = map.get_or_create_volume(id);
    const auto blocks = get<std::uint64_t>(in);
    for (std::uint64_t k = 0; k < blocks; ++k) {
      const int x = get<std::int32_t>(in);
      const int y = get<std::int32_t>(in);
      const int z = get<std::int32_t>(in);
      auto& block = vol.tsdf.get_or_allocate_block(BlockIndex(x, y, z));
      for (std::size_t j = 0; j < voxels_per_block; ++j) {
        block.voxels[j].distance = get<double>(in);
        block.voxels[j].weight = get<double>(in);
      }
    }
  }
  map.set_next_object_id(next_id);
  return map;
}

}  // namespace tsdfpp
