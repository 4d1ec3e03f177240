#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "torihull/torus.hpp"

namespace torihull {

// Uniform bucket grid over the torus for radius queries.
class TorusGridIndex {
 public:
  TorusGridIndex(const FinitePointSet& points, double cell_size);

  void for_each_within(const TorusPoint& p, double radius,
                       const std::function<void(std::size_t)>& visit) const;
  std::vector<std::size_t> within(const TorusPoint& p, double radius) const;

  /// Distance from `p` to the nearest indexed point accepted by `keep`;
  /// infinity when none is accepted.
  double nearest_distance(const TorusPoint& p,
                          const std::function<bool(std::size_t)>& keep) const;

 private:
  std::vector<std::int64_t> cell_of(const TorusPoint& p) const;
  std::uint64_t key(const std::vector<std::int64_t>& cell) const;

  const FinitePointSet* points_;
  std::size_t dim_;
  std::int64_t cells_per_axis_;
  double cell_width_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

/// Labels 1..N by eps-chain connectivity, in order of first appearance.
/// eps = 0 gives every point its own label.
std::vector<int> connected_components(const FinitePointSet& points, double eps);

}  // namespace torihull
