#include "tsdfpp/primitives.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsdfpp {

namespace {
constexpr double kRayEps = 1e-12;

std::optional<double> intersect_plane(const PlaneShape& s, const Vector3d& o,
                                      const Vector3d& d) {
  const double denom = s.normal.dot(d);
  if (std::abs(denom) < kRayEps) return std::nullopt;
  const double t = s.normal.dot(s.point - o) / denom;
  if (t <= kRayEps) return std::nullopt;
  const Vector3d hit = o + t * d - s.point;
  const Vector3d axis_v = s.normal.cross(s.axis_u);
  if (std::abs(hit.dot(s.axis_u)) > s.half_extents.x() ||
      std::abs(hit.dot(axis_v)) > s.half_extents.y())
    return std::nullopt;
  return t;
}

std::optional<double> intersect_box(const BoxShape& s, const Vector3d& o,
                                    const Vector3d& d) {
  // Slab test.
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (std::abs(d[a]) < kRayEps) {
      if (std::abs(o[a]) > s.half_extents[a]) return std::nullopt;
      continue;
    }
    double t0 = (-s.half_extents[a] - o[a]) / d[a];
    double t1 = (s.half_extents[a] - o[a]) / d[a];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::nullopt;
  }
  if (t_far <= kRayEps) return std::nullopt;
  return t_near > kRayEps ? t_near : t_far;
}

std::optional<double> intersect_sphere(const SphereShape& s, const Vector3d& o,
                                       const Vector3d& d) {
  const double b = o.dot(d);
  const double c = o.squaredNorm() - s.radius * s.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double t0 = -b - sq;
  if (t0 > kRayEps) return t0;
  const double t1 = -b + sq;
  if (t1 > kRayEps) return t1;
  return std::nullopt;
}
}  // namespace

void Primitive::validate() const {
  if (const auto* p = std::get_if<PlaneShape>(&shape)) {
    if (std::abs(p->normal.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("plane normal must be unit length");
    if (p->half_extents.minCoeff() <= 0.0)
      throw std::invalid_argument("plane extents must be positive");
  } else if (const auto* b = std::get_if<BoxShape>(&shape)) {
    if (b->half_extents.minCoeff() <= 0.0)
      throw std::invalid_argument("box extents must be positive");
  } else if (const auto* s = std::get_if<SphereShape>(&shape)) {
    if (s->radius <= 0.0) throw std::invalid_argument("sphere radius must be positive");
  }
}

std::optional<double> ray_intersect(const Primitive& primitive,
                                    const RigidTransform& pose,
                                    const Vector3d& origin,
                                    const Vector3d& direction) {
  // Work in the primitive's local frame; rigid transforms preserve t.
  const RigidTransform inv = pose.inverse();
  const Vector3d o = inv * origin;
  const Vector3d d = inv.rotation() * direction;

  return std::visit(
      [&](const auto& shape) -> std::optional<double> {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, PlaneShape>)
          return intersect_plane(shape, o, d);
        else if constexpr (std::is_same_v<T, BoxShape>)
          return intersect_box(shape, o, d);
        else
          return intersect_sphere(shape, o, d);
      },
      primitive.shape);
}

double signed_distance(const Primitive& primitive, const RigidTransform& pose,
                       const Vector3d& p) {
  const Vector3d q = pose.inverse() * p;
  return std::visit(
      [&](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, PlaneShape>) {
          return shape.normal.dot(q - shape.point);
        } else if constexpr (std::is_same_v<T, BoxShape>) {
          const Vector3d d = q.cwiseAbs() - shape.half_extents;
          const double outside = d.cwiseMax(0.0).norm();
          const double inside = std::min(d.maxCoeff(), 0.0);
          return outside + inside;
        } else {
          return q.norm() - shape.radius;
        }
      },
      primitive.shape);
}

}  // namespace tsdfpp
