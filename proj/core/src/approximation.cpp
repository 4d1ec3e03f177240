#include "torihull/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>

#include "torihull/errors.hpp"
#include "torihull/spatial_index.hpp"

namespace torihull {

double cube_clearance(const FinitePointSet& points) {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    for (double a : p.angles()) c = std::min(c, kPi - std::abs(a));
  }
  return c;
}

LabeledSet Approximation::step_set(std::size_t n) const {
  LabeledSet out;
  for (std::size_t i : steps.at(n).members) out.points.push_back(rotated[i]);
  out.components.assign(out.points.size(), 1);
  out.mesh = mesh;
  return out;
}

namespace {

using Membership = std::vector<char>;

class Grower {
 public:
  Grower(const FinitePointSet& pts, const std::vector<double>& clear, double eps)
      : pts_(pts), clear_(clear), eps_(eps), index_(pts, std::isfinite(eps) ? eps : kPi) {}

  // Everything reachable from `seed` by eps-chains through points whose
  // clearance is at least delta.
  Membership grow(const Membership& seed, double delta) const {
    Membership out = seed;
    if (!std::isfinite(eps_)) {
      for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (clear_[i] >= delta) out[i] = 1;
      }
      return out;
    }
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (out[i]) stack.push_back(i);
    }
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      index_.for_each_within(pts_[cur], eps_, [&](std::size_t nb) {
        if (!out[nb] && clear_[nb] >= delta) {
          out[nb] = 1;
          stack.push_back(nb);
        }
      });
    }
    return out;
  }

  // Largest delta at which each point joins grow(seed, delta): the best
  // bottleneck clearance over eps-chains from the seed. Seeds get infinity.
  std::vector<double> reach(const Membership& seed) const {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> out(pts_.size(), -inf);
    if (!std::isfinite(eps_)) {
      for (std::size_t i = 0; i < pts_.size(); ++i) out[i] = seed[i] ? inf : clear_[i];
      return out;
    }
    std::priority_queue<std::pair<double, std::size_t>> heap;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (seed[i]) {
        out[i] = inf;
        heap.emplace(inf, i);
      }
    }
    while (!heap.empty()) {
      const auto [level, cur] = heap.top();
      heap.pop();
      if (level < out[cur]) continue;
      index_.for_each_within(pts_[cur], eps_, [&](std::size_t nb) {
        const double cand = std::min(level, clear_[nb]);
        if (cand > out[nb]) {
          out[nb] = cand;
          heap.emplace(cand, nb);
        }
      });
    }
    return out;
  }

  Membership largest_component(double delta) const {
    Membership best(pts_.size(), 0), assigned(pts_.size(), 0);
    std::size_t best_size = 0;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (assigned[i] || clear_[i] < delta) continue;
      Membership seed(pts_.size(), 0);
      seed[i] = 1;
      Membership comp = grow(seed, delta);
      const auto size = static_cast<std::size_t>(std::count(comp.begin(), comp.end(), 1));
      for (std::size_t k = 0; k < comp.size(); ++k) {
        if (comp[k]) assigned[k] = 1;
      }
      if (size > best_size) {
        best_size = size;
        best = std::move(comp);
      }
    }
    return best;
  }

 private:
  const FinitePointSet& pts_;
  const std::vector<double>& clear_;
  double eps_;
  TorusGridIndex index_;
};

}  // namespace

Approximation very_simple_approximation(const LabeledSet& e, const TorusPoint& a,
                                        const ApproximationOptions& opts) {
  e.validate();
  if (e.component_count() != 1) throw InputError("approximation needs a connected set");
  if (a.dim() != e.dim()) throw InputError("approximation: rotation dimension mismatch");

  Approximation out;
  out.rotated = rotate(e.points, a);
  out.mesh = e.mesh;
  const double mesh = e.mesh.value_or(0.0);
  const std::size_t n = out.rotated.size();

  std::vector<double> clear(n);
  for (std::size_t i = 0; i < n; ++i) clear[i] = cube_clearance({out.rotated[i]});
  const double min_clear = *std::min_element(clear.begin(), clear.end());
  const double max_clear = *std::max_element(clear.begin(), clear.end());
  const double conv_tol =
      opts.convergence_tol > 0.0 ? opts.convergence_tol : std::max(2.0 * mesh, 1e-12);

  if (opts.start == DeltaStart::cut_clearance && min_clear > mesh) {
    ApproximationStep only;
    only.delta = 0.5 * min_clear;
    only.members.resize(n);
    for (std::size_t i = 0; i < n; ++i) only.members[i] = i;
    only.clearance = min_clear;
    out.steps.push_back(std::move(only));
    out.ok = true;
    out.delta_floor = 0.5 * min_clear;
    return out;
  }
  if (!(max_clear > mesh)) {
    out.reason = "no point of the rotated set clears the cut by more than the mesh";
    return out;
  }

  double eps = opts.cluster_eps;
  if (!(eps > 0.0)) eps = e.epsilon_cluster > 0.0 ? e.epsilon_cluster : 2.0 * mesh;
  if (!(eps > 0.0)) eps = std::numeric_limits<double>::infinity();
  const Grower grower(out.rotated, clear, eps);
  const TorusGridIndex index(out.rotated, std::isfinite(eps) ? eps : kPi);

  // Clearance levels at which the admissible subset changes, descending.
  std::vector<double> levels;
  for (double c : clear) {
    if (c > mesh) levels.push_back(c);
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double delta = 0.5 * max_clear;
  const Membership initial = grower.largest_component(delta);
  const std::vector<double> reach = grower.reach(initial);

  // Every set in the sequence is {reach >= level}: a prefix of this order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return reach[a] > reach[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;
  auto prefix_at = [&](double level) {
    return static_cast<std::size_t>(
        std::partition_point(order.begin(), order.end(),
                             [&](std::size_t i) { return reach[i] >= level; }) -
        order.begin());
  };
  auto members_of_prefix = [&](std::size_t m) {
    std::vector<std::size_t> out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto distance_to_prefix = [&](std::size_t i, std::size_t m) {
    return index.nearest_distance(out.rotated[i], [&](std::size_t k) { return rank[k] < m; });
  };

  std::size_t current = prefix_at(delta);
  double current_clearance = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < current; ++r) current_clearance = std::min(current_clearance, clear[order[r]]);
  {
    ApproximationStep first;
    first.delta = delta;
    first.members = members_of_prefix(current);
    first.clearance = current_clearance;
    out.steps.push_back(std::move(first));
  }
  double floor = delta;

  for (int step = 1; step < opts.max_steps && current < n; ++step) {
    const double bound = std::ldexp(1.0, -step) * std::min(1.0, current_clearance);
    const double target = delta * (1.0 - std::ldexp(1.0, -step));
    floor *= (1.0 - std::ldexp(1.0, -step));

    // Running maximum of the distances of order[current + r] to the current
    // set, filled lazily and only while it stays within the bound.
    std::vector<double> running;
    bool exceeded = false;
    auto extension_upto = [&](std::size_t m) -> std::optional<double> {
      while (!exceeded && current + running.size() < m) {
        const double dist = distance_to_prefix(order[current + running.size()], current);
        running.push_back(std::max(running.empty() ? 0.0 : running.back(), dist));
        if (running.back() > bound) exceeded = true;
      }
      if (m <= current) return 0.0;
      if (current + running.size() < m) return std::nullopt;
      return running[m - current - 1];
    };
    auto valid = [&](std::size_t idx) {
      const auto e = extension_upto(prefix_at(levels[idx]));
      return e.has_value() && *e <= bound;
    };

    const auto first_below =
        std::upper_bound(levels.begin(), levels.end(), delta, std::greater<>()) - levels.begin();
    // Largest index in [lo, hi) whose level satisfies the bound, if any.
    auto search = [&](std::ptrdiff_t lo, std::ptrdiff_t hi) -> std::ptrdiff_t {
      std::ptrdiff_t found = -1;
      while (lo < hi) {
        const std::ptrdiff_t mid = lo + (hi - lo) / 2;
        if (valid(static_cast<std::size_t>(mid))) {
          found = mid;
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      return found;
    };

    const auto total = static_cast<std::ptrdiff_t>(levels.size());
    double next_delta = delta;
    std::ptrdiff_t chosen = -1;
    if (opts.schedule == DeltaSchedule::greedy) {
      chosen = search(first_below, total);
      if (chosen >= 0) next_delta = levels[static_cast<std::size_t>(chosen)];
    } else {
      // Levels in [target, delta) occupy [first_below, at_target).
      std::ptrdiff_t at_target = first_below;
      while (at_target < total && levels[static_cast<std::size_t>(at_target)] >= target) {
        ++at_target;
      }
      if (at_target > first_below && valid(static_cast<std::size_t>(at_target - 1))) {
        chosen = at_target - 1;
      } else if (at_target > first_below) {
        chosen = search(first_below, at_target - 1);
      }
      if (chosen == at_target - 1 || at_target == first_below) {
        next_delta = std::max(target, mesh);
      } else if (chosen >= 0) {
        next_delta = levels[static_cast<std::size_t>(chosen)];
      }
    }

    const std::size_t next =
        chosen >= 0 ? prefix_at(levels[static_cast<std::size_t>(chosen)]) : current;
    ApproximationStep rec;
    rec.delta = next_delta;
    rec.step_distance = *extension_upto(next);
    rec.step_bound = bound;
    for (std::size_t r = current; r < next; ++r) current_clearance = std::min(current_clearance, clear[order[r]]);
    rec.members = members_of_prefix(next);
    rec.clearance = current_clearance;
    out.steps.push_back(std::move(rec));
    current = next;
    delta = next_delta;
  }

  out.final_gap = 0.0;
  for (std::size_t r = current; r < n; ++r) {
    out.final_gap = std::max(out.final_gap, distance_to_prefix(order[r], current));
  }
  out.delta_floor = floor;
  out.ok = out.final_gap <= conv_tol;
  if (!out.ok) {
    out.reason = "cut clearance stays above " + std::to_string(floor) +
                 " while the Hausdorff gap to the rotated set is " + std::to_string(out.final_gap);
  }
  return out;
}

ToricHull very_simple_hull(const FinitePointSet& points) {
  if (!is_very_simple(points)) throw InputError("set is not very simple");
  std::vector<AngleVector> chart;
  chart.reserve(points.size());
  for (const auto& p : points) chart.push_back(p.angles());
  return ToricHull::anchored(TorusPoint::identity(set_dimension(points)),
                             Polytope::hull_of(chart));
}

ConnectedHull hull_connected(const LabeledSet& e, const TorusPoint& a, const Tolerances&,
                             const ApproximationOptions& opts) {
  ConnectedHull out;
  out.approximation = very_simple_approximation(e, a, opts);
  if (!out.approximation.ok) return out;
  const auto& steps = out.approximation.steps;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (k > 0 && steps[k].members.size() == steps[k - 1].members.size()) continue;
    out.sequence.push_back(very_simple_hull(out.approximation.step_set(k).points));
  }
  out.hull = out.sequence.back();
  return out;
}

std::vector<TorusPoint> rotation_grid(std::size_t d, std::size_t per_axis) {
  if (d == 0 || per_axis == 0) throw InputError("rotation grid needs positive sizes");
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= per_axis;
  std::vector<TorusPoint> grid;
  grid.reserve(total);
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<double> angles(d);
    std::size_t rest = t;
    for (std::size_t j = 0; j < d; ++j) {
      angles[j] = kTwoPi * static_cast<double>(rest % per_axis) / static_cast<double>(per_axis);
      rest /= per_axis;
    }
    grid.emplace_back(std::move(angles));
  }
  return grid;
}

HullizableReport hullizable(const LabeledSet& e, const std::vector<TorusPoint>& grid,
                            const Tolerances& tol, const ApproximationOptions& opts) {
  HullizableReport report;
  std::vector<ToricHull> hulls;
  for (const auto& a : grid) {
    ConnectedHull ch = hull_connected(e, a, tol, opts);
    if (!ch.hull) continue;
    report.approximable.push_back(a);
    hulls.push_back(ch.hull->rotated(inv(a)));
  }
  if (hulls.empty()) return report;
  report.status = Hullizability::hullizable;
  for (std::size_t k = 1; k < hulls.size(); ++k) {
    const double dist = hull_hausdorff(hulls[0], hulls[k], 0.5 * tol.hull_cauchy_tol);
    report.max_disagreement = std::max(report.max_disagreement, dist);
    if (dist > tol.hull_cauchy_tol) report.status = Hullizability::not_hullizable;
  }
  if (report.status == Hullizability::hullizable) report.hull = hulls.front();
  return report;
}

LipschitzReport lipschitz_hull_check(const FinitePointSet& e, const FinitePointSet& f,
                                     double mesh) {
  if (!is_very_simple(e) || !is_very_simple(f)) {
    throw InputError("lipschitz_hull_check needs very simple sets");
  }
  LipschitzReport report;
  report.set_distance = hausdorff(e, f);
  report.half_clearance = 0.5 * cube_clearance(f);
  if (report.set_distance > report.half_clearance) return report;
  report.hull_distance = hull_hausdorff(very_simple_hull(e), very_simple_hull(f), mesh);
  report.status = report.hull_distance <= report.set_distance + mesh ? LipschitzStatus::holds
                                                                     : LipschitzStatus::violated;
  return report;
}

}  // namespace torihull
