#include "eroas/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eroas {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Parametric interval of the ray inside a solid; empty when t1 <= t0.
struct Interval {
  double t0 = kInf;
  double t1 = -kInf;
  bool empty() const { return !(t0 < t1); }
};

Interval intersect(const Interval& u, const Interval& v) {
  return {std::max(u.t0, v.t0), std::min(u.t1, v.t1)};
}

// Slab min <= o + t*d <= max along one axis.
Interval slab(double o, double d, double lo, double hi) {
  if (std::abs(d) < 1e-15) {
    if (o < lo || o > hi) return {};
    return {-kInf, kInf};
  }
  double ta = (lo - o) / d;
  double tb = (hi - o) / d;
  if (ta > tb) std::swap(ta, tb);
  return {ta, tb};
}

// Interval inside an infinite vertical cylinder (axis through cxy).
Interval infinite_cylinder(const Vec2& oxy, const Vec2& dxy, const Vec2& cxy,
                           double radius) {
  const Vec2 rel = oxy - cxy;
  const double a = dxy.squaredNorm();
  if (a < 1e-30) {
    return rel.norm() <= radius ? Interval{-kInf, kInf} : Interval{};
  }
  const double b = rel.dot(dxy);
  const double c = rel.squaredNorm() - radius * radius;
  const double disc = b * b - a * c;
  if (disc < 0.0) return {};
  const double s = std::sqrt(disc);
  return {(-b - s) / a, (-b + s) / a};
}

Interval solid_interval(const Sphere& sp, const Vec3& o, const Vec3& d) {
  const Vec3 rel = o - sp.center;
  const double b = rel.dot(d);
  const double c = rel.squaredNorm() - sp.radius * sp.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return {};
  const double s = std::sqrt(disc);
  return {-b - s, -b + s};
}

Interval solid_interval(const AxisAlignedBox& box, const Vec3& o,
                        const Vec3& d) {
  Interval iv{-kInf, kInf};
  for (int k = 0; k < 3; ++k) {
    iv = intersect(iv, slab(o[k], d[k], box.min[k], box.max[k]));
    if (iv.empty()) return {};
  }
  return iv;
}

Interval solid_interval(const VerticalCylinder& cyl, const Vec3& o,
                        const Vec3& d) {
  Interval iv = infinite_cylinder(o.head<2>(), d.head<2>(),
                                  cyl.base_center.head<2>(), cyl.radius);
  if (iv.empty()) return {};
  iv = intersect(iv, slab(o.z(), d.z(), cyl.base_center.z(),
                          cyl.base_center.z() + cyl.height));
  return iv.empty() ? Interval{} : iv;
}

// Wall in its local frame is a box: x along the segment, y across the
// thickness, z vertical.
struct WallFrame {
  Vec2 axis;    // unit, along a->b
  Vec2 normal;  // unit, left of axis
  Vec2 mid;
  double half_len;
};

WallFrame wall_frame(const WallSegment& w) {
  const Vec2 ab = w.b - w.a;
  const double len = ab.norm();
  const Vec2 axis = len > 0.0 ? Vec2(ab / len) : Vec2(1.0, 0.0);
  return {axis, Vec2(-axis.y(), axis.x()), 0.5 * (w.a + w.b), 0.5 * len};
}

Interval solid_interval(const WallSegment& w, const Vec3& o, const Vec3& d) {
  const WallFrame f = wall_frame(w);
  const Vec2 rel = o.head<2>() - f.mid;
  const double ox = rel.dot(f.axis), oy = rel.dot(f.normal);
  const double dx = d.head<2>().dot(f.axis), dy = d.head<2>().dot(f.normal);
  Interval iv = slab(ox, dx, -f.half_len, f.half_len);
  if (iv.empty()) return {};
  iv = intersect(iv, slab(oy, dy, -0.5 * w.thickness, 0.5 * w.thickness));
  if (iv.empty()) return {};
  iv = intersect(iv, slab(o.z(), d.z(), w.base_z, w.base_z + w.height));
  return iv.empty() ? Interval{} : iv;
}

Interval solid_interval(const ObstaclePrimitive& prim, const Vec3& o,
                        const Vec3& d) {
  return std::visit([&](const auto& p) { return solid_interval(p, o, d); },
                    prim);
}

// Signed distance to a box given the componentwise distances to its slabs.
double box_sdf(const Vec3& q, const Vec3& half) {
  const Vec3 e = q.cwiseAbs() - half;
  const Vec3 outside = e.cwiseMax(0.0);
  const double inside = std::min(e.maxCoeff(), 0.0);
  return outside.norm() + inside;
}

double sdf(const Sphere& sp, const Vec3& p) {
  return (p - sp.center).norm() - sp.radius;
}

double sdf(const AxisAlignedBox& box, const Vec3& p) {
  const Vec3 half = 0.5 * (box.max - box.min);
  return box_sdf(p - 0.5 * (box.min + box.max), half);
}

double sdf(const VerticalCylinder& cyl, const Vec3& p) {
  const double dr = (p.head<2>() - cyl.base_center.head<2>()).norm() -
                    cyl.radius;
  const double dz =
      std::abs(p.z() - cyl.base_center.z() - 0.5 * cyl.height) -
      0.5 * cyl.height;
  const double ox = std::max(dr, 0.0), oz = std::max(dz, 0.0);
  return std::hypot(ox, oz) + std::min(std::max(dr, dz), 0.0);
}

double sdf(const WallSegment& w, const Vec3& p) {
  const WallFrame f = wall_frame(w);
  const Vec2 rel = p.head<2>() - f.mid;
  const Vec3 q(rel.dot(f.axis), rel.dot(f.normal),
               p.z() - w.base_z - 0.5 * w.height);
  return box_sdf(q, Vec3(f.half_len, 0.5 * w.thickness, 0.5 * w.height));
}

}  // namespace

void validate(const ObstaclePrimitive& prim) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          if (p.radius <= 0.0) throw std::invalid_argument("sphere radius");
        } else if constexpr (std::is_same_v<T, AxisAlignedBox>) {
          if ((p.min.array() > p.max.array()).any())
            throw std::invalid_argument("box corners inverted");
        } else if constexpr (std::is_same_v<T, VerticalCylinder>) {
          if (p.radius <= 0.0 || p.height <= 0.0)
            throw std::invalid_argument("cylinder radius/height");
        } else {
          if (p.thickness <= 0.0 || p.height <= 0.0)
            throw std::invalid_argument("wall thickness/height");
        }
      },
      prim);
}

void validate(const World& world) {
  for (const auto& prim : world.obstacles) validate(prim);
  if (world.bounds &&
      (world.bounds->min.array() > world.bounds->max.array()).any())
    throw std::invalid_argument("bounds corners inverted");
}

std::vector<double> surface_crossings(const ObstaclePrimitive& prim,
                                      const Vec3& origin, const Vec3& dir) {
  const Interval iv = solid_interval(prim, origin, dir);
  std::vector<double> ts;
  if (!iv.empty()) {
    if (std::isfinite(iv.t0)) ts.push_back(iv.t0);
    if (std::isfinite(iv.t1)) ts.push_back(iv.t1);
  }
  return ts;
}

std::optional<double> ray_cast(const World& world, const Vec3& origin,
                               const Vec3& direction, double r_min,
                               double r_max, RayDirectionPolicy policy) {
  if (!(r_min > 0.0 && r_min < r_max))
    throw std::invalid_argument("require 0 < r_min < r_max");
  Vec3 d = direction;
  const double n = d.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    if (policy == RayDirectionPolicy::Reject)
      throw std::invalid_argument("direction must have unit norm");
    if (n < 1e-15) throw std::invalid_argument("zero direction");
    d /= n;
  }
  double best = kInf;
  for (const auto& prim : world.obstacles) {
    for (double t : surface_crossings(prim, origin, d)) {
      if (t >= r_min && t <= r_max && t < best) best = t;
    }
  }
  if (best == kInf) return std::nullopt;
  return best;
}

double distance_to_surface(const ObstaclePrimitive& prim, const Vec3& point) {
  return std::visit([&](const auto& p) { return sdf(p, point); }, prim);
}

double distance_to_surface(const World& world, const Vec3& point) {
  double best = kInf;
  for (const auto& prim : world.obstacles)
    best = std::min(best, distance_to_surface(prim, point));
  return best;
}

}  // namespace eroas
