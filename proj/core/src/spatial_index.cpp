#include "torihull/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "torihull/errors.hpp"

namespace torihull {

namespace {

constexpr std::int64_t kMaxCellsPerAxis = 4096;

}  // namespace

TorusGridIndex::TorusGridIndex(const FinitePointSet& points, double cell_size)
    : points_(&points), dim_(points.empty() ? 0 : set_dimension(points)) {
  if (!(cell_size > 0.0)) throw InputError("grid index cell size must be positive");
  // Mixed-radix keys stay exact while cells_per_axis^dim < 2^62.
  const auto radix_cap = static_cast<std::int64_t>(
      std::floor(std::pow(2.0, 62.0 / static_cast<double>(std::max<std::size_t>(dim_, 1)))));
  cells_per_axis_ = std::clamp<std::int64_t>(static_cast<std::int64_t>(kTwoPi / cell_size), 1,
                                             std::min(kMaxCellsPerAxis, radix_cap));
  cell_width_ = kTwoPi / static_cast<double>(cells_per_axis_);
  for (std::size_t i = 0; i < points.size(); ++i) buckets_[key(cell_of(points[i]))].push_back(i);
}

std::vector<std::int64_t> TorusGridIndex::cell_of(const TorusPoint& p) const {
  std::vector<std::int64_t> cell(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    auto c = static_cast<std::int64_t>(std::floor((p[j] + kPi) / cell_width_));
    cell[j] = std::clamp<std::int64_t>(c, 0, cells_per_axis_ - 1);
  }
  return cell;
}

std::uint64_t TorusGridIndex::key(const std::vector<std::int64_t>& cell) const {
  std::uint64_t k = 0;
  for (auto c : cell) {
    const std::int64_t wrapped = ((c % cells_per_axis_) + cells_per_axis_) % cells_per_axis_;
    k = k * static_cast<std::uint64_t>(cells_per_axis_) + static_cast<std::uint64_t>(wrapped);
  }
  return k;
}

void TorusGridIndex::for_each_within(const TorusPoint& p, double radius,
                                     const std::function<void(std::size_t)>& visit) const {
  if (buckets_.empty()) return;
  const auto span = static_cast<std::int64_t>(std::ceil(radius / cell_width_));
  const auto center = cell_of(p);
  std::vector<std::int64_t> lo(dim_), count(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (2 * span + 1 >= cells_per_axis_) {
      lo[j] = 0;
      count[j] = cells_per_axis_;
    } else {
      lo[j] = center[j] - span;
      count[j] = 2 * span + 1;
    }
  }
  std::vector<std::int64_t> offset(dim_, 0), cell(dim_);
  while (true) {
    for (std::size_t j = 0; j < dim_; ++j) cell[j] = lo[j] + offset[j];
    if (auto it = buckets_.find(key(cell)); it != buckets_.end()) {
      for (std::size_t i : it->second) {
        if (torus_dist(p, (*points_)[i]) <= radius) visit(i);
      }
    }
    std::size_t j = 0;
    while (j < dim_ && ++offset[j] == count[j]) offset[j++] = 0;
    if (j == dim_) break;
  }
}

std::vector<std::size_t> TorusGridIndex::within(const TorusPoint& p, double radius) const {
  std::vector<std::size_t> out;
  for_each_within(p, radius, [&](std::size_t i) { out.push_back(i); });
  return out;
}

double TorusGridIndex::nearest_distance(const TorusPoint& p,
                                        const std::function<bool(std::size_t)>& keep) const {
  const double diameter = kPi * std::sqrt(static_cast<double>(dim_));
  double radius = cell_width_;
  while (true) {
    double best = std::numeric_limits<double>::infinity();
    for_each_within(p, radius, [&](std::size_t i) {
      if (keep(i)) best = std::min(best, torus_dist(p, (*points_)[i]));
    });
    if (best <= radius || radius >= diameter) return best;
    radius *= 2.0;
  }
}

std::vector<int> connected_components(const FinitePointSet& points, double eps) {
  if (eps < 0.0) throw InputError("clustering radius must be non-negative");
  const std::size_t n = points.size();
  std::vector<int> labels(n, 0);
  if (n == 0) return labels;
  if (eps == 0.0) {
    std::iota(labels.begin(), labels.end(), 1);
    return labels;
  }
  TorusGridIndex index(points, eps);
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (labels[seed] != 0) continue;
    labels[seed] = ++next;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      index.for_each_within(points[cur], eps, [&](std::size_t nb) {
        if (labels[nb] == 0) {
          labels[nb] = next;
          stack.push_back(nb);
        }
      });
    }
  }
  return labels;
}

}  // namespace torihull
