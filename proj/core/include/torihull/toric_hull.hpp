#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "torihull/polytope.hpp"
#include "torihull/tolerances.hpp"
#include "torihull/torus.hpp"

namespace torihull {

/// Points of T^d partitioned into components labelled 1..N.
///
/// `mesh` marks a sampled set: the points stand for a continuum at that
/// resolution. Finite sets leave it empty.
struct LabeledSet {
  FinitePointSet points;
  std::vector<int> components;
  std::optional<double> mesh;
  double epsilon_cluster = 0.0;

  std::size_t dim() const { return set_dimension(points); }
  int component_count() const;

  /// Throws InputError on inconsistent labels or metadata.
  void validate() const;

  static LabeledSet singletons(FinitePointSet points);
  static LabeledSet clustered(FinitePointSet points, double eps,
                              std::optional<double> mesh = std::nullopt);
};

/// Circular gaps between consecutive projected angles of one coordinate.
struct CoordinateGaps {
  std::vector<double> starts;
  std::vector<double> lengths;
  double max_gap = 0.0;
  std::vector<std::size_t> maximal;
};

struct GapStructure {
  std::vector<CoordinateGaps> coords;

  /// Product of maximal-gap counts, saturating at SIZE_MAX.
  std::size_t combination_count() const;
};

GapStructure gap_structure(const FinitePointSet& points, double gap_tie_tol);

/// No coordinate projection is onto. Sampled sets need a maximal gap wider
/// than three sample meshes.
bool is_simple(const LabeledSet& e);

/// Every coordinate of every point keeps an angular distance > tol from pi.
bool is_very_simple(const FinitePointSet& points, double tol = 0.0);

struct AdmissiblePoints {
  std::vector<TorusPoint> representatives;
  GapStructure gaps;
  AngleVector chart_diameter;
};

/// One representative per combination of maximal gaps, in mixed-radix order
/// (coordinate 0 varies fastest). Throws InputError for non-simple sets and
/// CapExceededError past the cap.
AdmissiblePoints admissible_points(const LabeledSet& e, const Tolerances& tol = {});

/// b * points is very simple and every chart width is as small as the
/// widest gap allows (within gap_tie_tol).
bool is_admissible(const FinitePointSet& points, const TorusPoint& b, double gap_tie_tol);

/// Rotation taking the midpoint of the chosen gap of each coordinate to -1.
TorusPoint gap_midpoint_rotation(const GapStructure& gaps, const std::vector<std::size_t>& choice);

/// Per-component shift vectors, each entry an exact multiple of 2*pi.
std::vector<AngleVector> phase_shifts(const LabeledSet& e, const TorusPoint& b,
                                      const TorusPoint& c);

struct GenericityWitness {
  TorusPoint b;
  TorusPoint c;
  int component_a = 0;
  int component_b = 0;
  AngleVector shift_a;
  AngleVector shift_b;
};

struct GenericityReport {
  bool generic = true;
  std::size_t combinations = 0;
  std::optional<GenericityWitness> witness;
};

GenericityReport check_generic(const LabeledSet& e, const Tolerances& tol = {});
bool is_generic(const LabeledSet& e, const Tolerances& tol = {});

/// Either the whole torus or base^{-1} * exp(i * chart) for a Euclidean
/// polytope `chart` inside the open cube (-pi, pi)^d.
class ToricHull {
 public:
  static ToricHull full(std::size_t d);
  static ToricHull anchored(TorusPoint base, Polytope chart);

  bool is_full() const noexcept { return full_; }
  std::size_t dim() const noexcept { return dim_; }
  const TorusPoint& base() const { return base_; }
  const Polytope& chart() const { return chart_; }

  /// Torus distance from z to the hull.
  double distance_to(const TorusPoint& z) const;
  bool contains(const TorusPoint& z, double tol = 1e-9) const;

  /// The image a * H.
  ToricHull rotated(const TorusPoint& a) const;

 private:
  bool full_ = true;
  std::size_t dim_ = 0;
  TorusPoint base_;
  Polytope chart_;
};

/// Hull of a simple set with finitely many components; FullTorus when the
/// set is not generic. Throws InputError for non-simple input.
ToricHull convex_hull_simple(const LabeledSet& e, const Tolerances& tol = {});

/// Hausdorff distance between hulls, accurate to `mesh` (the result never
/// exceeds the true value by more than rounding).
double hull_hausdorff(const ToricHull& a, const ToricHull& b, double mesh);

bool hull_equivariance_check(const LabeledSet& e, const TorusPoint& b,
                             const Tolerances& tol = {}, double max_distance = 1e-9);

/// Jitters the extremal points of each component by less than eps until the
/// set becomes generic. Generic input is returned unchanged.
LabeledSet perturb_to_generic(const LabeledSet& e, double eps, std::uint64_t seed,
                              const Tolerances& tol = {}, int max_attempts = 64);

}  // namespace torihull
