#include "radarint/spatial_index.hpp"

#include <algorithm>
#include <cmath>

#include "radarint/geometry.hpp"

namespace radarint {

UniformGrid::UniformGrid(Vec2 lo, Vec2 hi, double cell, std::size_t max_cells)
    : origin_(lo), cell_(cell) {
  const double w = std::max(hi.x - lo.x, 0.0);
  const double h = std::max(hi.y - lo.y, 0.0);
  for (;;) {
    cols_ = static_cast<int>(std::floor(w / cell_)) + 1;
    rows_ = static_cast<int>(std::floor(h / cell_)) + 1;
    if (static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows_) <= max_cells) break;
    cell_ *= 2.0;
  }
  cells_.resize(static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows_));
}

void UniformGrid::insert(std::uint32_t item, Vec2 lo, Vec2 hi) {
  const int c0 = col(lo.x), c1 = col(hi.x);
  const int r0 = row(lo.y), r1 = row(hi.y);
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      cells_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
             static_cast<std::size_t>(c)]
          .push_back(item);
    }
  }
}

namespace {

void footprint_box(const VehicleState& v, Vec2& lo, Vec2& hi) {
  const Vec2 f = heading_vector(v.heading);
  const double ex = std::abs(f.x) * v.length / 2.0 + std::abs(f.y) * v.width / 2.0;
  const double ey = std::abs(f.y) * v.length / 2.0 + std::abs(f.x) * v.width / 2.0;
  lo = {v.x - ex, v.y - ey};
  hi = {v.x + ex, v.y + ey};
}

}  // namespace

ObstacleIndex::ObstacleIndex(std::span<const VehicleState> vehicles, double cell)
    : vehicles_(vehicles) {
  if (vehicles.empty()) return;
  Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
  std::vector<std::pair<Vec2, Vec2>> boxes(vehicles.size());
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    footprint_box(vehicles[i], boxes[i].first, boxes[i].second);
    lo = {std::min(lo.x, boxes[i].first.x), std::min(lo.y, boxes[i].first.y)};
    hi = {std::max(hi.x, boxes[i].second.x), std::max(hi.y, boxes[i].second.y)};
  }
  grid_ = UniformGrid(lo, hi, cell);
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    grid_.insert(static_cast<std::uint32_t>(i), boxes[i].first, boxes[i].second);
  }
}

bool ObstacleIndex::blocked(Vec2 a, Vec2 b, std::size_t skip_a, std::size_t skip_b) const {
  return grid_.walk(a, b, [&](std::uint32_t i) {
    if (i == skip_a || i == skip_b) return false;
    return segment_hits_vehicle(a, b, vehicles_[i]);
  });
}

}  // namespace radarint
