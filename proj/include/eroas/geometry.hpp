#pragma once

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace eroas {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Analytic obstacle primitives. Meshes are deliberately excluded so that
// every intersection and distance query has an exact closed form.

struct Sphere {
  Vec3 center;
  double radius;
};

struct AxisAlignedBox {
  Vec3 min;
  Vec3 max;
};

// Cylinder with vertical axis, extending from base_center.z() upward by height.
struct VerticalCylinder {
  Vec3 base_center;
  double radius;
  double height;
};

// Thin vertical slab between two endpoints in the horizontal plane.
// Occupies z in [base_z, base_z + height], extruded by thickness/2 on
// either side of the segment.
struct WallSegment {
  Vec2 a;
  Vec2 b;
  double thickness;
  double base_z;
  double height;
};

using ObstaclePrimitive =
    std::variant<Sphere, AxisAlignedBox, VerticalCylinder, WallSegment>;

struct World {
  std::vector<ObstaclePrimitive> obstacles;
  std::optional<AxisAlignedBox> bounds;  // operating volume, informational
};

enum class RayDirectionPolicy { Reject, Normalize };

// Throws std::invalid_argument if a primitive violates its invariants
// (non-positive radius/thickness/height, inverted box corners).
void validate(const ObstaclePrimitive& prim);
void validate(const World& world);

// Smallest distance t with r_min <= t <= r_max at which the ray
// origin + t*direction crosses the surface of any primitive, or nullopt.
// Both entry and exit crossings count, so an origin inside a primitive
// still sees its far surface. Ties between primitives resolve to the
// earlier one in the obstacle list.
std::optional<double> ray_cast(
    const World& world, const Vec3& origin, const Vec3& direction,
    double r_min, double r_max,
    RayDirectionPolicy policy = RayDirectionPolicy::Reject);

// Exact signed Euclidean distance to the nearest primitive surface,
// negative inside. +infinity for an empty world. Test/metric oracle only;
// the planner never sees this.
double distance_to_surface(const World& world, const Vec3& point);
double distance_to_surface(const ObstaclePrimitive& prim, const Vec3& point);

// Boundary crossings (sorted, possibly negative t) of an infinite ray with
// one primitive. Exposed for the sonar and for test oracles.
std::vector<double> surface_crossings(const ObstaclePrimitive& prim,
                                      const Vec3& origin, const Vec3& dir);

}  // namespace eroas
