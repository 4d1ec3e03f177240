#include "torihull/toric_hull.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "torihull/errors.hpp"
#include "torihull/spatial_index.hpp"

namespace torihull {

// ---------------------------------------------------------------- LabeledSet

int LabeledSet::component_count() const {
  return components.empty() ? 0 : *std::max_element(components.begin(), components.end());
}

void LabeledSet::validate() const {
  set_dimension(points);
  if (components.size() != points.size()) {
    throw InputError("component labels do not match the number of points");
  }
  const int n = component_count();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int c : components) {
    if (c < 1) throw InputError("component labels must start at 1");
    seen[static_cast<std::size_t>(c)] = true;
  }
  for (int c = 1; c <= n; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw InputError("component label " + std::to_string(c) + " is unused");
    }
  }
  if (mesh && !(*mesh > 0.0)) throw InputError("mesh must be positive");
  if (epsilon_cluster < 0.0) throw InputError("clustering radius must be non-negative");
}

LabeledSet LabeledSet::singletons(FinitePointSet points) {
  LabeledSet e;
  e.components.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) e.components[i] = static_cast<int>(i) + 1;
  e.points = std::move(points);
  return e;
}

LabeledSet LabeledSet::clustered(FinitePointSet points, double eps, std::optional<double> mesh) {
  LabeledSet e;
  e.components = connected_components(points, eps);
  e.points = std::move(points);
  e.mesh = mesh;
  e.epsilon_cluster = eps;
  return e;
}

// ---------------------------------------------------------------- gaps

std::size_t GapStructure::combination_count() const {
  std::size_t total = 1;
  for (const auto& c : coords) {
    const std::size_t m = c.maximal.size();
    if (m != 0 && total > std::numeric_limits<std::size_t>::max() / m) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= m;
  }
  return total;
}

GapStructure gap_structure(const FinitePointSet& points, double gap_tie_tol) {
  const std::size_t d = set_dimension(points);
  GapStructure gs;
  gs.coords.resize(d);
  std::vector<double> vals(points.size());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < points.size(); ++i) vals[i] = points[i][j];
    std::sort(vals.begin(), vals.end());
    auto& cg = gs.coords[j];
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      cg.starts.push_back(vals[i]);
      cg.lengths.push_back(vals[i + 1] - vals[i]);
    }
    cg.starts.push_back(vals.back());
    cg.lengths.push_back(vals.front() + kTwoPi - vals.back());
    cg.max_gap = *std::max_element(cg.lengths.begin(), cg.lengths.end());
    for (std::size_t g = 0; g < cg.lengths.size(); ++g) {
      if (cg.lengths[g] >= cg.max_gap - gap_tie_tol) cg.maximal.push_back(g);
    }
  }
  return gs;
}

bool is_simple(const LabeledSet& e) {
  e.validate();
  const double threshold = e.mesh ? 3.0 * *e.mesh : 0.0;
  const auto gs = gap_structure(e.points, 0.0);
  return std::all_of(gs.coords.begin(), gs.coords.end(),
                     [&](const CoordinateGaps& c) { return c.max_gap > threshold; });
}

bool is_very_simple(const FinitePointSet& points, double tol) {
  for (const auto& p : points) {
    for (double a : p.angles()) {
      if (!(kPi - std::abs(a) > tol)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- admissible points

TorusPoint gap_midpoint_rotation(const GapStructure& gaps, const std::vector<std::size_t>& choice) {
  std::vector<double> b(gaps.coords.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    const auto& cg = gaps.coords[j];
    const std::size_t g = choice[j];
    b[j] = kPi - (cg.starts[g] + 0.5 * cg.lengths[g]);
  }
  return TorusPoint(std::move(b));
}

bool is_admissible(const FinitePointSet& points, const TorusPoint& b, double gap_tie_tol) {
  if (b.dim() != set_dimension(points)) throw InputError("is_admissible: dimension mismatch");
  const FinitePointSet moved = rotate(points, b);
  if (!is_very_simple(moved, 0.0)) return false;
  const GapStructure gs = gap_structure(points, gap_tie_tol);
  for (std::size_t j = 0; j < b.dim(); ++j) {
    double lo = kPi, hi = -kPi;
    for (const auto& p : moved) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
    }
    if (hi - lo > kTwoPi - gs.coords[j].max_gap + gap_tie_tol) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> combination_choice(const GapStructure& gs, std::size_t index) {
  std::vector<std::size_t> choice(gs.coords.size());
  for (std::size_t j = 0; j < gs.coords.size(); ++j) {
    const auto& maximal = gs.coords[j].maximal;
    choice[j] = maximal[index % maximal.size()];
    index /= maximal.size();
  }
  return choice;
}

GapStructure checked_gaps(const LabeledSet& e, const Tolerances& tol) {
  e.validate();
  GapStructure gs = gap_structure(e.points, tol.gap_tie_tol);
  const std::size_t count = gs.combination_count();
  if (count > tol.combination_cap) {
    throw CapExceededError("admissible gap combinations (" +
                           (count == std::numeric_limits<std::size_t>::max()
                                ? std::string("overflow")
                                : std::to_string(count)) +
                           ") exceed the cap of " + std::to_string(tol.combination_cap));
  }
  return gs;
}

}  // namespace

AdmissiblePoints admissible_points(const LabeledSet& e, const Tolerances& tol) {
  AdmissiblePoints out;
  out.gaps = checked_gaps(e, tol);
  if (!is_simple(e)) throw InputError("admissible points need a simple set");
  const std::size_t count = out.gaps.combination_count();
  out.representatives.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    out.representatives.push_back(gap_midpoint_rotation(out.gaps, combination_choice(out.gaps, t)));
  }
  for (const auto& c : out.gaps.coords) out.chart_diameter.push_back(kTwoPi - c.max_gap);
  return out;
}

// ---------------------------------------------------------------- phase shifts

std::vector<AngleVector> phase_shifts(const LabeledSet& e, const TorusPoint& b,
                                      const TorusPoint& c) {
  e.validate();
  const std::size_t d = e.dim();
  if (b.dim() != d || c.dim() != d) throw InputError("phase_shifts: dimension mismatch");
  const auto be = rotate(e.points, b);
  const auto ce = rotate(e.points, c);
  if (!is_very_simple(be) || !is_very_simple(ce)) {
    throw InputError("phase_shifts: rotated set is not very simple");
  }
  const TorusPoint ratio = mul(c, inv(b));
  const int n = e.component_count();
  std::vector<AngleVector> shifts(static_cast<std::size_t>(n));
  std::vector<bool> set(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    AngleVector s(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double raw = ce[i][j] - be[i][j] - ratio[j];
      const double turns = std::round(raw / kTwoPi);
      if (std::abs(raw - turns * kTwoPi) > 1e-9) {
        throw NumericalError("phase shift is not a multiple of 2*pi");
      }
      s[j] = turns * kTwoPi;
    }
    const auto slot = static_cast<std::size_t>(e.components[i] - 1);
    if (!set[slot]) {
      shifts[slot] = std::move(s);
      set[slot] = true;
    } else if (shifts[slot] != s) {
      throw InputError("phase shift varies within component " +
                       std::to_string(e.components[i]));
    }
  }
  return shifts;
}

// ---------------------------------------------------------------- genericity

GenericityReport check_generic(const LabeledSet& e, const Tolerances& tol) {
  const GapStructure gs = checked_gaps(e, tol);
  GenericityReport report;
  report.combinations = gs.combination_count();
  if (report.combinations <= 1 || e.component_count() <= 1) return report;

  const TorusPoint b0 = gap_midpoint_rotation(gs, combination_choice(gs, 0));

  // Shifts relative to one reference compose, so comparing every
  // combination against combination 0 covers all pairs.
  auto differing_pair = [&](const std::vector<AngleVector>& shifts) -> std::optional<std::size_t> {
    for (std::size_t l = 1; l < shifts.size(); ++l) {
      if (shifts[l] != shifts[0]) return l;
    }
    return std::nullopt;
  };

  const std::size_t count = report.combinations;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(tol.threads, static_cast<unsigned>(count - 1)));
  std::atomic<std::size_t> first_bad{count};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto scan = [&](unsigned w) {
    try {
      for (std::size_t t = 1 + w; t < count; t += workers) {
        if (t >= first_bad.load()) return;
        const TorusPoint c = gap_midpoint_rotation(gs, combination_choice(gs, t));
        if (differing_pair(phase_shifts(e, b0, c))) {
          std::size_t cur = first_bad.load();
          while (t < cur && !first_bad.compare_exchange_weak(cur, t)) {
          }
          return;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  const std::size_t bad = first_bad.load();
  if (bad < count) {
    const TorusPoint c = gap_midpoint_rotation(gs, combination_choice(gs, bad));
    const auto shifts = phase_shifts(e, b0, c);
    const std::size_t l = *differing_pair(shifts);
    report.generic = false;
    report.witness = GenericityWitness{b0, c, 1, static_cast<int>(l) + 1, shifts[0], shifts[l]};
  }
  return report;
}

bool is_generic(const LabeledSet& e, const Tolerances& tol) { return check_generic(e, tol).generic; }

// ---------------------------------------------------------------- ToricHull

ToricHull ToricHull::full(std::size_t d) {
  if (d == 0) throw InputError("hull dimension must be positive");
  ToricHull h;
  h.full_ = true;
  h.dim_ = d;
  return h;
}

ToricHull ToricHull::anchored(TorusPoint base, Polytope chart) {
  if (chart.empty()) throw InputError("anchored hull needs a non-empty chart polytope");
  if (chart.ambient_dim() != base.dim()) throw InputError("hull base and chart dimensions differ");
  ToricHull h;
  h.full_ = false;
  h.dim_ = base.dim();
  h.base_ = std::move(base);
  h.chart_ = std::move(chart);
  return h;
}

namespace {

// Distance from chart coordinates u (in (-pi, pi]^d) to the polytope,
// minimised over the 3^d lifts that can be nearest.
double lifted_distance(const Polytope& poly, const AngleVector& u) {
  const std::size_t d = u.size();
  const auto& lo = poly.lower();
  const auto& hi = poly.upper();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> shift(d, -1);
  AngleVector y(d);
  while (true) {
    double box2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      y[j] = u[j] + kTwoPi * shift[j];
      const double gap = std::max({0.0, lo[j] - y[j], y[j] - hi[j]});
      box2 += gap * gap;
    }
    if (box2 < best * best) best = std::min(best, poly.distance(y));
    std::size_t j = 0;
    while (j < d && ++shift[j] == 2) shift[j++] = -1;
    if (j == d) break;
  }
  return best;
}

AngleVector chart_coordinates(const TorusPoint& base, const TorusPoint& z) {
  return principal_arg(mul(base, z));
}

}  // namespace

double ToricHull::distance_to(const TorusPoint& z) const {
  if (z.dim() != dim_) throw InputError("hull distance: dimension mismatch");
  if (full_) return 0.0;
  return lifted_distance(chart_, chart_coordinates(base_, z));
}

bool ToricHull::contains(const TorusPoint& z, double tol) const { return distance_to(z) <= tol; }

ToricHull ToricHull::rotated(const TorusPoint& a) const {
  if (a.dim() != dim_) throw InputError("hull rotation: dimension mismatch");
  if (full_) return *this;
  return anchored(mul(base_, inv(a)), chart_);
}

ToricHull convex_hull_simple(const LabeledSet& e, const Tolerances& tol) {
  e.validate();
  if (!is_simple(e)) throw InputError("set is not simple: some coordinate projection is onto");
  const GenericityReport report = check_generic(e, tol);
  if (!report.generic) return ToricHull::full(e.dim());
  const GapStructure gs = gap_structure(e.points, tol.gap_tie_tol);
  const TorusPoint b0 = gap_midpoint_rotation(gs, combination_choice(gs, 0));
  std::vector<AngleVector> chart;
  chart.reserve(e.points.size());
  for (const auto& z : e.points) chart.push_back(chart_coordinates(b0, z));
  return ToricHull::anchored(b0, Polytope::hull_of(chart));
}

// ---------------------------------------------------------------- hull distance

namespace {

constexpr std::size_t kRefinementBudget = 4'000'000;

struct Cell {
  AngleVector lo, hi;
  double upper;
  bool operator<(const Cell& o) const { return upper < o.upper; }
};

// sup over x in `from` of dist(x, to), by Lipschitz branch and bound over
// chart cells. Returns a value within `mesh` below the supremum.
double directed_hull_distance(const ToricHull& from, const ToricHull& to, double mesh) {
  if (to.is_full()) return 0.0;
  const std::size_t d = from.dim();
  const TorusPoint base = from.is_full() ? to.base() : from.base();
  const TorusPoint base_inv = inv(base);
  const Polytope* domain = from.is_full() ? nullptr : &from.chart();

  auto g = [&](const AngleVector& y) { return to.distance_to(mul(base_inv, TorusPoint(y))); };

  AngleVector lo(d, -kPi), hi(d, kPi);
  double best = 0.0;
  if (domain) {
    lo = domain->lower();
    hi = domain->upper();
    for (const auto& v : domain->vertices()) best = std::max(best, g(v));
  }

  auto radius = [&](const AngleVector& a, const AngleVector& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += 0.25 * (b[j] - a[j]) * (b[j] - a[j]);
    return std::sqrt(s);
  };

  std::priority_queue<Cell> queue;
  queue.push(Cell{lo, hi, std::numeric_limits<double>::infinity()});
  std::size_t evaluations = 0;
  std::vector<std::size_t> split_axes;
  while (!queue.empty()) {
    Cell cell = queue.top();
    queue.pop();
    if (cell.upper <= best + mesh) break;
    split_axes.clear();
    for (std::size_t j = 0; j < d; ++j) {
      if (cell.hi[j] > cell.lo[j]) split_axes.push_back(j);
    }
    const std::size_t children = std::size_t{1} << split_axes.size();
    for (std::size_t mask = 0; mask < children; ++mask) {
      Cell child{cell.lo, cell.hi, 0.0};
      for (std::size_t s = 0; s < split_axes.size(); ++s) {
        const std::size_t j = split_axes[s];
        const double mid = 0.5 * (cell.lo[j] + cell.hi[j]);
        if (mask & (std::size_t{1} << s)) {
          child.lo[j] = mid;
        } else {
          child.hi[j] = mid;
        }
      }
      AngleVector c(d);
      for (std::size_t j = 0; j < d; ++j) c[j] = 0.5 * (child.lo[j] + child.hi[j]);
      const double r = radius(child.lo, child.hi);
      double gc = 0.0, upper = 0.0;
      if (domain) {
        const AngleVector p = domain->closest_point(c);
        double dc = 0.0;
        for (std::size_t j = 0; j < d; ++j) dc += (p[j] - c[j]) * (p[j] - c[j]);
        dc = std::sqrt(dc);
        if (dc > r * (1.0 + 1e-12) + 1e-15) continue;
        const double gp = g(p);
        best = std::max(best, gp);
        gc = g(c);
        upper = std::min(gc + r, gp + dc + r);
        evaluations += 2;
      } else {
        gc = g(c);
        best = std::max(best, gc);
        upper = gc + r;
        evaluations += 1;
      }
      child.upper = upper;
      if (upper > best + mesh) queue.push(std::move(child));
    }
    if (evaluations > kRefinementBudget) {
      throw CapExceededError("hull distance refinement exceeded its evaluation budget");
    }
  }
  return best;
}

// Exact Euclidean Hausdorff distance of the two charts expressed in the
// chart of `a`, when `b` fits in a single period there. Upper-bounds the
// torus distance.
std::optional<double> shared_chart_bound(const ToricHull& a, const ToricHull& b) {
  const std::size_t d = a.dim();
  const TorusPoint delta_pt = mul(a.base(), inv(b.base()));
  AngleVector shift(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double lo = b.chart().lower()[j] + delta_pt[j];
    const double hi = b.chart().upper()[j] + delta_pt[j];
    bool placed = false;
    for (double turn : {0.0, -kTwoPi, kTwoPi}) {
      if (lo + turn >= -kPi - 1e-12 && hi + turn <= kPi + 1e-12) {
        shift[j] = delta_pt[j] + turn;
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  const Polytope moved = b.chart().translated(shift);
  double worst = 0.0;
  for (const auto& v : a.chart().vertices()) worst = std::max(worst, moved.distance(v));
  for (const auto& v : moved.vertices()) worst = std::max(worst, a.chart().distance(v));
  return worst;
}

}  // namespace

double hull_hausdorff(const ToricHull& a, const ToricHull& b, double mesh) {
  if (a.dim() != b.dim()) throw InputError("hull_hausdorff: dimension mismatch");
  if (!(mesh > 0.0)) throw InputError("hull_hausdorff: mesh must be positive");
  if (a.is_full() && b.is_full()) return 0.0;
  if (!a.is_full() && !b.is_full()) {
    if (auto upper = shared_chart_bound(a, b)) {
      // Hull vertices are points of the hulls, so their distances bound from below.
      double lower = 0.0;
      for (const auto& v : a.chart().vertices()) {
        lower = std::max(lower, b.distance_to(mul(inv(a.base()), TorusPoint(v))));
      }
      for (const auto& v : b.chart().vertices()) {
        lower = std::max(lower, a.distance_to(mul(inv(b.base()), TorusPoint(v))));
      }
      if (*upper - lower <= mesh) return lower;
    }
  }
  return std::max(directed_hull_distance(a, b, mesh), directed_hull_distance(b, a, mesh));
}

bool hull_equivariance_check(const LabeledSet& e, const TorusPoint& b, const Tolerances& tol,
                             double max_distance) {
  LabeledSet moved = e;
  moved.points = rotate(e.points, b);
  const ToricHull lhs = convex_hull_simple(moved, tol);
  const ToricHull rhs = convex_hull_simple(e, tol).rotated(b);
  return hull_hausdorff(lhs, rhs, max_distance) <= max_distance;
}

// ---------------------------------------------------------------- perturbation

LabeledSet perturb_to_generic(const LabeledSet& e, double eps, std::uint64_t seed,
                              const Tolerances& tol, int max_attempts) {
  if (!(eps > 0.0)) throw InputError("perturbation size must be positive");
  if (!is_simple(e)) throw InputError("perturb_to_generic needs a simple set");
  if (is_generic(e, tol)) return e;

  const std::size_t d = e.dim();
  const GapStructure gs = gap_structure(e.points, tol.gap_tie_tol);
  const TorusPoint b0 = gap_midpoint_rotation(gs, combination_choice(gs, 0));
  std::set<std::size_t> extremal;
  std::map<int, std::vector<std::size_t>> lo_idx, hi_idx;
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    const AngleVector u = chart_coordinates(b0, e.points[i]);
    auto& lo = lo_idx[e.components[i]];
    auto& hi = hi_idx[e.components[i]];
    if (lo.empty()) {
      lo.assign(d, i);
      hi.assign(d, i);
      continue;
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (u[j] < chart_coordinates(b0, e.points[lo[j]])[j]) lo[j] = i;
      if (u[j] > chart_coordinates(b0, e.points[hi[j]])[j]) hi[j] = i;
    }
  }
  for (const auto& [label, ids] : lo_idx) extremal.insert(ids.begin(), ids.end());
  for (const auto& [label, ids] : hi_idx) extremal.insert(ids.begin(), ids.end());

  std::mt19937_64 rng(seed);
  const double step = eps / std::sqrt(static_cast<double>(d)) * (1.0 - 1e-9);
  std::uniform_real_distribution<double> jitter(-step, step);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    LabeledSet out = e;
    for (std::size_t i : extremal) {
      std::vector<double> angles = e.points[i].angles();
      for (double& a : angles) a += jitter(rng);
      out.points[i] = TorusPoint(std::move(angles));
    }
    if (is_simple(out) && is_generic(out, tol)) return out;
  }
  throw CapExceededError("no generic perturbation found within " + std::to_string(max_attempts) +
                         " attempts");
}

}  // namespace torihull
