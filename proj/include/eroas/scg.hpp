#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "eroas/geometry.hpp"
#include "eroas/spd2c.hpp"

namespace eroas {

// Radius-bounded short-term memory of world-frame obstacle points. Points
// are deduplicated on a fixed grid so the footprint stays bounded; the
// first point seen in a cell is kept, which makes updates idempotent.
class LocalMemory {
 public:
  explicit LocalMemory(double radius = 15.0, double cell = 0.05);

  // Evicts stored points farther than the radius from p_v, then inserts the
  // new points within the radius.
  void update(const std::vector<Vec3>& new_points, const Vec3& p_v);

  // Brute-force nearest stored point; ties resolve to the lexicographically
  // smallest coordinates. nullopt when empty.
  std::optional<Vec3> closest_point(const Vec3& p_v) const;

  // Grid-accelerated nearest query; agrees exactly with closest_point.
  std::optional<Vec3> closest_point_indexed(const Vec3& p_v) const;

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double radius() const { return radius_; }
  std::vector<Vec3> points() const;

 private:
  struct CellHash {
    std::size_t operator()(std::uint64_t k) const {
      return std::hash<std::uint64_t>{}(k);
    }
  };
  std::uint64_t cell_key(const Vec3& p) const;

  double radius_;
  double cell_;
  std::unordered_map<std::uint64_t, Vec3, CellHash> points_;
};

struct ContextOutput {
  ManeuverMode mode;       // Horizontal or Vertical
  Vec2 projection;         // XY for Horizontal, XZ for Vertical
  Vec3 closest;            // full closest point
  double planar_distance;  // in the active plane
};

// Plane-projected closest obstacle context for the safety filter; nullopt
// when the memory is empty.
std::optional<ContextOutput> context(const LocalMemory& memory,
                                     const Vec3& p_v, ManeuverMode mode);

}  // namespace eroas
