#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>
#include <set>

#include "tsdfpp/block_layer.h"
#include "tsdfpp/global_map.h"
#include "tsdfpp/map_io.h"
#include "tsdfpp/types.h"

using namespace tsdfpp;

TEST_CASE("world_to_grid floors into voxels") {
  GridParams params;
  CHECK(world_to_grid(Vector3d(0, 0, 0), params) == VoxelIndex(0, 0, 0));
  CHECK(world_to_grid(Vector3d(0.015, -0.005, 0.02), params) ==
        VoxelIndex(1, -1, 2));
}

TEST_CASE("world_to_grid round-trips voxel centers") {
  GridParams params;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-500, 500);
  for (int i = 0; i < 10000; ++i) {
    const VoxelIndex g(coord(rng), coord(rng), coord(rng));
    CHECK(world_to_grid(grid_to_world(g, params), params) == g);
  }
}

TEST_CASE("grid params invariants") {
  GridParams params;
  CHECK(params.voxel_size == 0.01);
  CHECK(params.truncation_distance == 10.0 * params.voxel_size);
  CHECK_NOTHROW(params.validate());
  params.voxel_size = 0.0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
  params = GridParams();
  params.voxels_per_block_side = 0;
  CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}

TEST_CASE("fresh voxels are empty and allocation is idempotent") {
  GlobalMap map;
  MultiObjectVoxel& v = map.get_or_allocate_voxel(VoxelIndex(5, 5, 5));
  CHECK(!v.active);
  CHECK(!v.inactive);
  MultiObjectVoxel& again = map.get_or_allocate_voxel(VoxelIndex(5, 5, 5));
  CHECK(&v == &again);
}

TEST_CASE("block count equals distinct block indices over bulk allocation") {
  BlockLayer<TsdfVoxel> layer(16);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coord(-80, 79);  // 10 blocks per axis
  std::set<std::array<int, 3>> expected;
  for (int i = 0; i < 1000000; ++i) {
    const VoxelIndex g(coord(rng), coord(rng), coord(rng));
    layer.get_or_allocate(g);
    const BlockIndex b = layer.block_index_of(g);
    expected.insert({b.x(), b.y(), b.z()});
  }
  CHECK(layer.block_count() == expected.size());
  CHECK(layer.block_count() == 1000);  // every block gets hit at this density
}

TEST_CASE("sparse iteration visits every allocated voxel exactly once") {
  BlockLayer<TsdfVoxel> layer(4);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coord(-10, 10);
  std::set<std::array<int, 3>> touched;
  for (int i = 0; i < 200; ++i) {
    const VoxelIndex g(coord(rng), coord(rng), coord(rng));
    layer.get_or_allocate(g).weight = 1.0;
    touched.insert({g.x(), g.y(), g.z()});
  }
  std::set<std::array<int, 3>> seen;
  std::size_t visits = 0;
  layer.for_each_voxel([&](const VoxelIndex& g, const TsdfVoxel& v) {
    ++visits;
    if (v.observed()) {
      const bool inserted = seen.insert({g.x(), g.y(), g.z()}).second;
      CHECK(inserted);
    }
  });
  CHECK(seen == touched);
  CHECK(visits == layer.block_count() * 4 * 4 * 4);
}

TEST_CASE("assign_layer slot decisions") {
  const MapMode mode = MapMode::kTsdfPlusPlus;

  SUBCASE("free inactive slot") {
    MultiObjectVoxel v;
    v.active = LayerSlot{1, 5};
    CHECK(assign_layer(v, 2, mode, false) == SlotDecision::kPlacedInFreeSlot);
    CHECK(v.inactive->id == 2);
    CHECK(v.inactive->confidence == 1);
  }

  SUBCASE("already present in either slot") {
    MultiObjectVoxel v;
    v.active = LayerSlot{1, 5};
    v.inactive = LayerSlot{2, 3};
    CHECK(assign_layer(v, 1, mode, false) == SlotDecision::kAlreadyPresent);
    CHECK(assign_layer(v, 2, mode, false) == SlotDecision::kAlreadyPresent);
    CHECK(v.active->confidence == 5);
    CHECK(v.inactive->confidence == 3);
  }

  SUBCASE("empty voxel takes the active slot") {
    MultiObjectVoxel v;
    CHECK(assign_layer(v, 7, mode, false) == SlotDecision::kPlacedInFreeSlot);
    CHECK(v.active->id == 7);
    CHECK(!v.inactive);
  }

  SUBCASE("third object evicts a low-confidence inactive incumbent") {
    MultiObjectVoxel v;
    v.active = LayerSlot{1, 5};
    v.inactive = LayerSlot{2, 1};
    CHECK(assign_layer(v, 3, mode, false) == SlotDecision::kEvictedInactive);
    CHECK(v.active->id == 1);
    CHECK(v.inactive->id == 3);
    CHECK(v.inactive->confidence == 1);
  }

  SUBCASE("established inactive incumbent rejects the newcomer") {
    MultiObjectVoxel v;
    v.active = LayerSlot{1, 5};
    v.inactive = LayerSlot{2, 2};
    CHECK(assign_layer(v, 3, mode, false) == SlotDecision::kRejected);
    CHECK(v.inactive->id == 2);
  }

  SUBCASE("protected background incumbent is never evicted") {
    MultiObjectVoxel v;
    v.active = LayerSlot{1, 5};
    v.inactive = LayerSlot{0, 1};
    CHECK(assign_layer(v, 3, mode, true) == SlotDecision::kRejected);
    CHECK(v.inactive->id == 0);
  }

  SUBCASE("promotion from inactive when the active slot is free") {
    MultiObjectVoxel v;
    v.inactive = LayerSlot{4, 2};
    CHECK(assign_layer(v, 4, mode, false) == SlotDecision::kActivatedFromInactive);
    CHECK(v.active->id == 4);
    CHECK(v.active->confidence == 2);
    CHECK(!v.inactive);
  }

  SUBCASE("standard mode never uses the second slot") {
    MultiObjectVoxel v;
    v.active = LayerSlot{1, 5};
    CHECK(assign_layer(v, 2, MapMode::kStandardTsdf, false) ==
          SlotDecision::kRejected);
    CHECK(!v.inactive);
  }
}

TEST_CASE("layer cap holds under arbitrary assignment sequences") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<ObjectId> ids(0, 5);
  MultiObjectVoxel v;
  for (int i = 0; i < 5000; ++i) {
    assign_layer(v, ids(rng), MapMode::kTsdfPlusPlus, false);
    int occupied = (v.active ? 1 : 0) + (v.inactive ? 1 : 0);
    CHECK(occupied <= 2);
    if (v.active && v.inactive) CHECK(v.active->id != v.inactive->id);
    if (v.active) CHECK(v.active->confidence >= 1);
    if (v.inactive) CHECK(v.inactive->confidence >= 1);
  }
}

TEST_CASE("confidence voting follows the fusion rule") {
  GridParams params;
  const VoxelIndex g(1, 2, 3);

  SUBCASE("agreeing observation increments") {
    GlobalMap map(params);
    map.update_confidence(g, 1);  // active=(1,1)
    map.update_confidence(g, 1);  // conf 2
    CHECK(map.update_confidence(g, 1) == 1);
    CHECK(map.voxel_ptr(g)->active->confidence == 3);
  }

  SUBCASE("disagreeing observation decrements") {
    GlobalMap map(params);
    map.update_confidence(g, 1);
    map.update_confidence(g, 1);  // active=(1,2)
    CHECK(map.update_confidence(g, 2) == 1);  // the sample still goes to 1
    CHECK(map.voxel_ptr(g)->active->id == 1);
    CHECK(map.voxel_ptr(g)->active->confidence == 1);
  }

  SUBCASE("zero crossing swaps in the incoming object at confidence one") {
    GlobalMap map(params);
    map.update_confidence(g, 1);  // active=(1,1)
    CHECK(map.update_confidence(g, 2) == 2);
    const MultiObjectVoxel* v = map.voxel_ptr(g);
    CHECK(v->active->id == 2);
    CHECK(v->active->confidence == 1);
    REQUIRE(v->inactive.has_value());
    CHECK(v->inactive->id == 1);
  }

  SUBCASE("inactive incumbent is promoted on takeover") {
    GlobalMap map(params);
    map.update_confidence(g, 1);  // active=(1,1)
    map.update_confidence(g, 2);  // active=(2,1), inactive=(1,1)
    map.update_confidence(g, 2);  // active=(2,2)
    map.update_confidence(g, 1);  // active=(2,1)
    CHECK(map.update_confidence(g, 1) == 1);  // hits zero, 1 takes over
    const MultiObjectVoxel* v = map.voxel_ptr(g);
    CHECK(v->active->id == 1);
    CHECK(v->active->confidence == 1);
    CHECK(v->inactive->id == 2);
  }

  SUBCASE("standard mode drops and erases the displaced surface") {
    GlobalMap map(params, MapMode::kStandardTsdf);
    map.update_confidence(g, 1);
    TsdfVoxel& stored = map.volume(1).tsdf.get_or_allocate(g);
    stored.distance = 0.05;
    stored.weight = 3.0;
    map.update_confidence(g, 2);  // flip: 1's data at g is overwritten
    const MultiObjectVoxel* v = map.voxel_ptr(g);
    CHECK(v->active->id == 2);
    CHECK(!v->inactive);
    CHECK(map.volume(1).tsdf.voxel_ptr(g)->weight == 0.0);
  }
}

TEST_CASE("every referenced object has a volume") {
  GlobalMap map;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<ObjectId> ids(0, 4);
  std::uniform_int_distribution<int> coord(-8, 8);
  for (int i = 0; i < 2000; ++i) {
    const VoxelIndex g(coord(rng), coord(rng), coord(rng));
    map.update_confidence(g, ids(rng));
  }
  map.global_volume().for_each_voxel(
      [&](const VoxelIndex&, const MultiObjectVoxel& v) {
        if (v.active) CHECK(map.has_object(v.active->id));
        if (v.inactive) CHECK(map.has_object(v.inactive->id));
      });
}

TEST_CASE("map serialization round trip") {
  GridParams params;
  GlobalMap map(params);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coord(-30, 30);
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  std::uniform_int_distribution<ObjectId> ids(0, 3);
  for (int i = 0; i < 3000; ++i) {
    const VoxelIndex g(coord(rng), coord(rng), coord(rng));
    const ObjectId id = ids(rng);
    map.update_confidence(g, id);
    TsdfVoxel& v = map.volume(id).tsdf.get_or_allocate(g);
    v.distance = dist(rng);
    v.weight += 1.0;
  }

  const std::string path = "test_map_roundtrip.tsdfpp";
  save_map(map, path);
  const GlobalMap loaded = load_map(path);
  std::remove(path.c_str());

  CHECK(loaded.params().voxel_size == map.params().voxel_size);
  CHECK(loaded.mode() == map.mode());
  CHECK(loaded.next_object_id() == map.next_object_id());
  CHECK(loaded.object_volumes().size() == map.object_volumes().size());

  bool equal = true;
  map.global_volume().for_each_voxel(
      [&](const VoxelIndex& g, const MultiObjectVoxel& v) {
        const MultiObjectVoxel* lv = loaded.voxel_ptr(g);
        if (!lv || !(*lv == v)) equal = false;
      });
  for (const auto& [id, vol] : map.object_volumes()) {
    vol.tsdf.for_each_voxel([&](const VoxelIndex& g, const TsdfVoxel& v) {
      const TsdfVoxel* lv = loaded.volume(id).tsdf.voxel_ptr(g);
      if (!lv || lv->distance != v.distance || lv->weight != v.weight)
        equal = false;
    });
  }
  CHECK(equal);
}

TEST_CASE("bad magic is a data error") {
  const std::string path = "test_map_bad.tsdfpp";
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("not a map", f);
    std::fclose(f);
  }
  CHECK_THROWS(load_map(path));
  std::remove(path.c_str());
}

TEST_CASE("removal view is non-destructive and resolves inactive layers") {
  GlobalMap map;
  const VoxelIndex g(2, 2, 2);
  map.update_confidence(g, 0);
  map.update_confidence(g, 3);  // 3 takes over, 0 inactive
  map.volume(3).tsdf.get_or_allocate(g).weight = 1.0;
  map.volume(0).tsdf.get_or_allocate(g).weight = 1.0;

  CHECK_THROWS_AS(simulate_removal(map, 99), std::invalid_argument);
  const RemovalView view = simulate_removal(map, 3);
  CHECK(view.active_at(g) == std::optional<ObjectId>(0));
  // The map itself is untouched.
  CHECK(map.voxel_ptr(g)->active->id == 3);
  CHECK(map.voxel_ptr(g)->inactive->id == 0);
  // A view of an object that hides nothing changes nothing.
  const RemovalView other = simulate_removal(map, 0);
  CHECK(other.active_at(g) == std::optional<ObjectId>(3));
}
