#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "tsdfpp/camera.h"
#include "tsdfpp/interpolation.h"
#include "tsdfpp/transform.h"

using namespace tsdfpp;

namespace {

std::mt19937_64 g_rng(2024);

RigidTransform random_transform(double max_angle = 3.0, double max_t = 1.0) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector3d axis(unit(g_rng), unit(g_rng), unit(g_rng));
  if (axis.norm() < 1e-6) axis = Vector3d::UnitX();
  axis.normalize();
  std::uniform_real_distribution<double> angle(-max_angle, max_angle);
  std::uniform_real_distribution<double> trans(-max_t, max_t);
  return RigidTransform::from_axis_angle(
      angle(g_rng) * axis, Vector3d(trans(g_rng), trans(g_rng), trans(g_rng)));
}

Vector3d random_point(double range = 1.0) {
  std::uniform_real_distribution<double> u(-range, range);
  return Vector3d(u(g_rng), u(g_rng), u(g_rng));
}

// Fills a cube of voxels with an analytic field; weight 1 everywhere.
void fill_field(BlockLayer<TsdfVoxel>& field, int radius, const GridParams& params,
                const std::function<double(const Vector3d&)>& f) {
  for (int z = -radius; z <= radius; ++z)
    for (int y = -radius; y <= radius; ++y)
      for (int x = -radius; x <= radius; ++x) {
        const VoxelIndex g(x, y, z);
        TsdfVoxel& v = field.get_or_allocate(g);
        v.distance = f(grid_to_world(g, params));
        v.weight = 1.0;
      }
}

}  // namespace

TEST_CASE("transform_point basics") {
  CHECK((RigidTransform::identity() * Vector3d(1, 2, 3) - Vector3d(1, 2, 3))
            .norm() == 0.0);
  const RigidTransform t =
      RigidTransform::from_translation(Vector3d(0.05, 0, 0));
  CHECK((t * Vector3d(0, 0, 0) - Vector3d(0.05, 0, 0)).norm() == 0.0);
}

TEST_CASE("rigid transforms satisfy the group laws") {
  for (int i = 0; i < 200; ++i) {
    const RigidTransform T = random_transform();
    const Vector3d p = random_point();
    CHECK((T.inverse() * (T * p) - p).norm() < 1e-9);
    CHECK(((T * T.inverse()) * p - p).norm() < 1e-9);

    const RigidTransform A = random_transform(), B = random_transform(),
                         C = random_transform();
    const Vector3d q = ((A * B) * C) * p;
    const Vector3d r = (A * (B * C)) * p;
    CHECK((q - r).norm() < 1e-9);

    const Eigen::Matrix3d RtR = T.rotation().transpose() * T.rotation();
    CHECK((RtR - Eigen::Matrix3d::Identity()).norm() < 1e-9);
    CHECK(T.rotation().determinant() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("projection hits the principal point on the optical axis") {
  PinholeCamera cam{500, 500, 320, 240, 640, 480};
  const auto px = cam.project(Vector3d(0, 0, 1));
  REQUIRE(px.has_value());
  CHECK(px->x() == doctest::Approx(320.0));
  CHECK(px->y() == doctest::Approx(240.0));
  CHECK(!cam.project(Vector3d(0, 0, -1)).has_value());
  CHECK(!cam.project(Vector3d(10, 0, 1)).has_value());
}

TEST_CASE("project/unproject round trip for in-view points") {
  PinholeCamera cam{450, 470, 310, 250, 640, 480};
  std::uniform_real_distribution<double> uz(0.3, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double z = uz(g_rng);
    std::uniform_real_distribution<double> ux(-0.6 * z, 0.6 * z);
    std::uniform_real_distribution<double> uy(-0.5 * z, 0.45 * z);
    const Vector3d p(ux(g_rng), uy(g_rng), z);
    const auto px = cam.project(p);
    if (!px) continue;
    const Vector3d back = cam.unproject(px->x(), px->y(), p.z());
    CHECK((back - p).norm() < 1e-9);
  }
}

TEST_CASE("camera validation rejects bad intrinsics") {
  PinholeCamera cam{0, 500, 320, 240, 640, 480};
  CHECK_THROWS_AS(cam.validate(), std::invalid_argument);
  cam = {500, 500, 700, 240, 640, 480};
  CHECK_THROWS_AS(cam.validate(), std::invalid_argument);
}

TEST_CASE("trilinear interpolation at voxel centers and midpoints") {
  GridParams params;
  BlockLayer<TsdfVoxel> field(params.voxels_per_block_side);
  fill_field(field, 6, params, [](const Vector3d&) { return 0.03; });

  SUBCASE("exact center degenerates to the stored value") {
    const auto r = trilinear_interpolate(
        field, grid_to_world(VoxelIndex(1, 2, 3), params), params);
    CHECK(r.valid);
    CHECK(r.value == doctest::Approx(0.03).epsilon(1e-12));
  }

  SUBCASE("midpoint of two centers averages them") {
    // Distances 0.0 and 0.1 split along x; the query sits on the midplane so
    // all co-planar neighbor pairs agree.
    for (int z = -6; z <= 6; ++z)
      for (int y = -6; y <= 6; ++y)
        for (int x = -6; x <= 6; ++x)
          field.voxel_ptr(VoxelIndex(x, y, z))->distance = (x >= 1) ? 0.1 : 0.0;
    const Vector3d mid = 0.5 * (grid_to_world(VoxelIndex(0, 0, 0), params) +
                                grid_to_world(VoxelIndex(1, 0, 0), params));
    const auto r = trilinear_interpolate(field, mid, params);
    CHECK(r.valid);
    CHECK(r.value == doctest::Approx(0.05).epsilon(1e-12));
  }
}

TEST_CASE("trilinear interpolation is exact on affine fields") {
  GridParams params;
  BlockLayer<TsdfVoxel> field(params.voxels_per_block_side);
  fill_field(field, 8, params, [](const Vector3d& p) { return p.x(); });

  std::uniform_real_distribution<double> u(-0.06, 0.06);
  for (int i = 0; i < 2000; ++i) {
    const Vector3d p(u(g_rng), u(g_rng), u(g_rng));
    const auto r = trilinear_interpolate(field, p, params);
    REQUIRE(r.valid);
    CHECK(std::abs(r.value - p.x()) < 1e-12);
  }
}

TEST_CASE("interpolation is bounded by its neighborhood") {
  GridParams params;
  BlockLayer<TsdfVoxel> field(params.voxels_per_block_side);
  std::uniform_real_distribution<double> ud(-0.1, 0.1);
  fill_field(field, 6, params, [&](const Vector3d&) { return ud(g_rng); });

  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (int i = 0; i < 2000; ++i) {
    const Vector3d p(u(g_rng), u(g_rng), u(g_rng));
    const auto r = trilinear_interpolate(field, p, params);
    REQUIRE(r.valid);
    double lo = 1e9, hi = -1e9;
    const Vector3d shifted = p / params.voxel_size - Vector3d::Constant(0.5);
    const VoxelIndex base(static_cast<int>(std::floor(shifted.x())),
                          static_cast<int>(std::floor(shifted.y())),
                          static_cast<int>(std::floor(shifted.z())));
    for (int c = 0; c < 8; ++c) {
      const double d = field
                           .voxel_ptr(VoxelIndex(base.x() + (c & 1),
                                                 base.y() + ((c >> 1) & 1),
                                                 base.z() + ((c >> 2) & 1)))
                           ->distance;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    CHECK(r.value >= lo - 1e-15);
    CHECK(r.value <= hi + 1e-15);
  }
}

TEST_CASE("interpolation is continuous across cell boundaries") {
  GridParams params;
  BlockLayer<TsdfVoxel> field(params.voxels_per_block_side);
  std::uniform_real_distribution<double> ud(-0.1, 0.1);
  fill_field(field, 6, params, [&](const Vector3d&) { return ud(g_rng); });

  // The interpolation cell boundary along x lies at voxel-center planes.
  std::uniform_real_distribution<double> u(-0.04, 0.04);
  for (int i = 0; i < 500; ++i) {
    const double y = u(g_rng), z = u(g_rng);
    const double face_x = grid_to_world(VoxelIndex(1, 0, 0), params).x();
    const auto below =
        trilinear_interpolate(field, Vector3d(face_x - 1e-12, y, z), params);
    const auto above =
        trilinear_interpolate(field, Vector3d(face_x + 1e-12, y, z), params);
    REQUIRE(below.valid);
    REQUIRE(above.valid);
    CHECK(std::abs(below.value - above.value) < 1e-9);
  }
}

TEST_CASE("one unobserved neighbor invalidates the sample") {
  GridParams params;
  BlockLayer<TsdfVoxel> field(params.voxels_per_block_side);
  fill_field(field, 3, params, [](const Vector3d&) { return 0.02; });
  field.voxel_ptr(VoxelIndex(1, 1, 1))->weight = 0.0;

  // A generic point whose 8-neighborhood includes (1,1,1).
  const Vector3d p = grid_to_world(VoxelIndex(0, 0, 0), params) +
                     Vector3d(0.004, 0.006, 0.007);
  const auto r = trilinear_interpolate(field, p, params);
  CHECK(!r.valid);

  // Outside the allocated region entirely.
  CHECK(!trilinear_interpolate(field, Vector3d(10, 10, 10), params).valid);
}
