#ifndef TSDFPP_PRIMITIVES_H_
#define TSDFPP_PRIMITIVES_H_

#include <optional>
#include <string>
#include <variant>

#include "tsdfpp/transform.h"
#include "tsdfpp/types.h"

namespace tsdfpp {

/// Bounded rectangle: anchor point, unit normal, and the first in-plane axis;
/// the second axis is normal x axis_u. Extents are half-sizes along the axes.
struct PlaneShape {
  Vector3d point = Vector3d::Zero();
  Vector3d normal = Vector3d::UnitZ();
  Vector3d axis_u = Vector3d::UnitX();
  Eigen::Vector2d half_extents = Eigen::Vector2d(0.5, 0.5);
};

struct BoxShape {
  Vector3d half_extents = Vector3d(0.1, 0.1, 0.1);  // centered at the origin
};

struct SphereShape {
  double radius = 0.1;  // centered at the origin
};

struct Primitive {
  std::variant<PlaneShape, BoxShape, SphereShape> shape;
  ObjectId instance = kBackgroundId;
  bool is_semantic_object = false;
  std::string name;

  void validate() const;
};

/// Nearest positive hit of a world-space ray against the primitive posed by
/// `pose` (shape coordinates are local). Direction must be unit length.
std::optional<double> ray_intersect(const Primitive& primitive,
                                    const RigidTransform& pose,
                                    const Vector3d& origin,
                                    const Vector3d& direction);

/// Signed distance of a world point to the posed primitive (exact for sphere
/// and box, plane distance for the rectangle). Used by analytic test fills.
double signed_distance(const Primitive& primitive, const RigidTransform& pose,
                       const Vector3d& p);

}  // namespace tsdfpp

#endif  // TSDFPP_PRIMITIVES_H_
