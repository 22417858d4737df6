#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "radarint/scenario.hpp"
#include "radarint/vec2.hpp"

namespace radarint {

/// Uniform bucket grid over a rectangle. Items are small integers registered
/// in every cell their bounding box touches.
class UniformGrid {
 public:
  UniformGrid() = default;
  /// `cell` is a hint; it is enlarged when the grid would exceed `max_cells`.
  UniformGrid(Vec2 lo, Vec2 hi, double cell, std::size_t max_cells = 1u << 22);

  void insert(std::uint32_t item, Vec2 lo, Vec2 hi);

  /// Visits the cells crossed by segment a->b in order from a, calling
  /// f(item) for every item in them until f returns true. Items spanning
  /// several cells may be visited more than once. Returns whether f stopped.
  template <class F>
  bool walk(Vec2 a, Vec2 b, F&& f) const;

  /// Calls f(item) for every item in cells overlapping [lo, hi].
  template <class F>
  void for_each_in_box(Vec2 lo, Vec2 hi, F&& f) const;

  double cell_size() const { return cell_; }

 private:
  int col(double x) const;
  int row(double y) const;
  const std::vector<std::uint32_t>& bucket(int c, int r) const {
    return cells_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c)];
  }

  Vec2 origin_{};
  double cell_ = 1.0;
  int cols_ = 0;
  int rows_ = 0;
  std::vector<std::vector<std::uint32_t>> cells_;
};

/// Vehicle footprints bucketed for segment blockage queries.
class ObstacleIndex {
 public:
  explicit ObstacleIndex(std::span<const VehicleState> vehicles, double cell = 8.0);

  /// True iff the open segment (a, b) enters a vehicle other than those at
  /// positions `skip_a` and `skip_b` of the indexed span (npos = none).
  bool blocked(Vec2 a, Vec2 b, std::size_t skip_a = npos, std::size_t skip_b = npos) const;

  std::span<const VehicleState> vehicles() const { return vehicles_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::span<const VehicleState> vehicles_;
  UniformGrid grid_;
};

// ---------------------------------------------------------------------------

inline int UniformGrid::col(double x) const {
  const double c = (x - origin_.x) / cell_;
  if (!(c > 0.0)) return 0;
  if (c >= cols_) return cols_ - 1;
  return static_cast<int>(c);
}

inline int UniformGrid::row(double y) const {
  const double r = (y - origin_.y) / cell_;
  if (!(r > 0.0)) return 0;
  if (r >= rows_) return rows_ - 1;
  return static_cast<int>(r);
}

template <class F>
bool UniformGrid::walk(Vec2 a, Vec2 b, F&& f) const {
  if (cols_ == 0) return false;
  int cx = col(a.x);
  int cy = row(a.y);
  const int ex = col(b.x);
  const int ey = row(b.y);
  const Vec2 d = b - a;
  const int sx = d.x > 0 ? 1 : (d.x < 0 ? -1 : 0);
  const int sy = d.y > 0 ? 1 : (d.y < 0 ? -1 : 0);
  constexpr double kInf = 1e300;
  // Parameter t along a->b at which the walk crosses the next cell border.
  auto first_cross = [&](double start, double delta, int cell_index, int step, double origin) {
    if (step == 0) return kInf;
    const double border = origin + (cell_index + (step > 0 ? 1 : 0)) * cell_;
    return (border - start) / delta;
  };
  double tx = first_cross(a.x, d.x, cx, sx, origin_.x);
  double ty = first_cross(a.y, d.y, cy, sy, origin_.y);
  const double dtx = sx ? cell_ / std::abs(d.x) : kInf;
  const double dty = sy ? cell_ / std::abs(d.y) : kInf;

  // Manhattan cell distance bounds the walk even if rounding misses (ex, ey).
  int budget = std::abs(ex - cx) + std::abs(ey - cy) + 2;
  for (;;) {
    for (std::uint32_t item : bucket(cx, cy)) {
      if (f(item)) return true;
    }
    if ((cx == ex && cy == ey) || --budget < 0) return false;
    if (tx < ty) {
      cx += sx;
      tx += dtx;
    } else {
      cy += sy;
      ty += dty;
    }
    if (cx < 0 || cy < 0 || cx >= cols_ || cy >= rows_) return false;
  }
}

template <class F>
void UniformGrid::for_each_in_box(Vec2 lo, Vec2 hi, F&& f) const {
  if (cols_ == 0) return;
  const int c0 = col(lo.x), c1 = col(hi.x);
  const int r0 = row(lo.y), r1 = row(hi.y);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      for (std::uint32_t item : bucket(c, r)) f(item);
    }
  }
}

}  // namespace radarint
