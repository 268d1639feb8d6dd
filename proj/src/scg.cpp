#include "eroas/scg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eroas {
namespace {

// Strict total order on (distance, coordinates) keeps the query result
// independent of hash-map iteration order.
bool better(double d2_a, const Vec3& a, double d2_b, const Vec3& b) {
  if (d2_a != d2_b) return d2_a < d2_b;
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

}  // namespace

LocalMemory::LocalMemory(double radius, double cell)
    : radius_(radius), cell_(cell) {
  if (!(radius > 0.0) || !(cell > 0.0))
    throw std::invalid_argument("radius and cell must be positive");
}

std::uint64_t LocalMemory::cell_key(const Vec3& p) const {
  const auto q = [&](double v) {
    return static_cast<std::uint64_t>(
               static_cast<std::int64_t>(std::floor(v / cell_)) + (1 << 20)) &
           0x1FFFFF;
  };
  return (q(p.x()) << 42) | (q(p.y()) << 21) | q(p.z());
}

void LocalMemory::update(const std::vector<Vec3>& new_points,
                         const Vec3& p_v) {
  for (auto it = points_.begin(); it != points_.end();) {
    if ((it->second - p_v).norm() > radius_)
      it = points_.erase(it);
    else
      ++it;
  }
  for (const Vec3& p : new_points) {
    if ((p - p_v).norm() > radius_) continue;
    points_.emplace(cell_key(p), p);  // first point in a cell wins
  }
}

std::optional<Vec3> LocalMemory::closest_point(const Vec3& p_v) const {
  std::optional<Vec3> best;
  double best_d2 = 0.0;
  for (const auto& [key, p] : points_) {
    const double d2 = (p - p_v).squaredNorm();
    if (!best || better(d2, p, best_d2, *best)) {
      best = p;
      best_d2 = d2;
    }
  }
  return best;
}

std::optional<Vec3> LocalMemory::closest_point_indexed(const Vec3& p_v) const {
  if (points_.empty()) return std::nullopt;
  const auto coord = [&](double v) {
    return static_cast<std::int64_t>(std::floor(v / cell_));
  };
  const std::int64_t cx = coord(p_v.x()), cy = coord(p_v.y()),
                     cz = coord(p_v.z());
  std::optional<Vec3> best;
  double best_d2 = 0.0;
  const std::int64_t max_ring =
      static_cast<std::int64_t>(std::ceil(radius_ / cell_)) + 2;
  for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
    // Once a candidate exists, rings whose nearest face is farther than the
    // candidate cannot improve it.
    if (best) {
      const double ring_min = (ring - 1) * cell_;
      if (ring_min > std::sqrt(best_d2)) break;
    }
    for (std::int64_t dx = -ring; dx <= ring; ++dx) {
      for (std::int64_t dy = -ring; dy <= ring; ++dy) {
        for (std::int64_t dz = -ring; dz <= ring; ++dz) {
          if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring)
            continue;
          const Vec3 probe((cx + dx) * cell_ + 0.5 * cell_,
                           (cy + dy) * cell_ + 0.5 * cell_,
                           (cz + dz) * cell_ + 0.5 * cell_);
          const auto it = points_.find(cell_key(probe));
          if (it == points_.end()) continue;
          const double d2 = (it->second - p_v).squaredNorm();
          if (!best || better(d2, it->second, best_d2, *best)) {
            best = it->second;
            best_d2 = d2;
          }
        }
      }
    }
  }
  return best;
}

std::vector<Vec3> LocalMemory::points() const {
  std::vector<Vec3> out;
  out.reserve(points_.size());
  for (const auto& [key, p] : points_) out.push_back(p);
  return out;
}

std::optional<ContextOutput> context(const LocalMemory& memory,
                                     const Vec3& p_v, ManeuverMode mode) {
  const auto closest = memory.closest_point(p_v);
  if (!closest) return std::nullopt;
  ContextOutput out;
  out.mode = mode == ManeuverMode::Vertical ? ManeuverMode::Vertical
                                            : ManeuverMode::Horizontal;
  out.closest = *closest;
  if (out.mode == ManeuverMode::Vertical) {
    out.projection = Vec2(closest->x(), closest->z());
    out.planar_distance =
        (Vec2(p_v.x(), p_v.z()) - out.projection).norm();
  } else {
    out.projection = closest->head<2>();
    out.planar_distance = (p_v.head<2>() - out.projection).norm();
  }
  return out;
}

}  // namespace eroas
