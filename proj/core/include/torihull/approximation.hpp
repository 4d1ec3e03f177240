#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "torihull/toric_hull.hpp"

namespace torihull {

enum class DeltaSchedule {
  // Start from delta_n * (1 - 2^-n) and push delta as low as the step
  // bound allows.
  greedy,
  // Use delta_n * (1 - 2^-n), raised only when the step bound fails.
  geometric,
};

enum class DeltaStart {
  // Constant sequence when the rotated set is already very simple;
  // otherwise half the deepest clearance.
  cut_clearance,
  // Always half the deepest clearance.
  deepest,
};

struct ApproximationOptions {
  DeltaSchedule schedule = DeltaSchedule::greedy;
  DeltaStart start = DeltaStart::cut_clearance;
  int max_steps = 64;
  // Zero selects the set's own clustering radius, else twice its mesh.
  double cluster_eps = 0.0;
  // Zero selects max(2 * mesh, 1e-12).
  double convergence_tol = 0.0;
};

struct ApproximationStep {
  double delta = 0.0;
  std::vector<std::size_t> members;
  // Distance of the step's chart points to the cube boundary.
  double clearance = 0.0;
  // Hausdorff distance to the previous step and the bound it must respect.
  double step_distance = 0.0;
  double step_bound = 0.0;
};

/// Increasing very simple subsets E_1, E_2, ... of the rotated set a * E.
struct Approximation {
  bool ok = false;
  FinitePointSet rotated;
  std::optional<double> mesh;
  std::vector<ApproximationStep> steps;
  double final_gap = 0.0;
  // Lower bound on every delta the schedule can ever reach.
  double delta_floor = 0.0;
  std::string reason;

  LabeledSet step_set(std::size_t n) const;
};

/// Throws InputError when `e` has more than one component.
Approximation very_simple_approximation(const LabeledSet& e, const TorusPoint& a,
                                        const ApproximationOptions& opts = {});

/// Hull of a very simple set, in the identity chart.
ToricHull very_simple_hull(const FinitePointSet& points);

struct ConnectedHull {
  std::optional<ToricHull> hull;
  Approximation approximation;
  std::vector<ToricHull> sequence;
};

/// Limit of the hulls of a very simple approximation of a * E; empty when
/// the approximation fails.
ConnectedHull hull_connected(const LabeledSet& e, const TorusPoint& a, const Tolerances& tol = {},
                             const ApproximationOptions& opts = {});

enum class Hullizability { hullizable, not_hullizable, not_decidable };

struct HullizableReport {
  Hullizability status = Hullizability::not_decidable;
  std::optional<ToricHull> hull;
  std::vector<TorusPoint> approximable;
  double max_disagreement = 0.0;
};

/// Uniform grid of per_axis^d rotations.
std::vector<TorusPoint> rotation_grid(std::size_t d, std::size_t per_axis);

HullizableReport hullizable(const LabeledSet& e, const std::vector<TorusPoint>& grid,
                            const Tolerances& tol = {}, const ApproximationOptions& opts = {});

enum class LipschitzStatus { holds, violated, hypothesis_failed };

struct LipschitzReport {
  LipschitzStatus status = LipschitzStatus::hypothesis_failed;
  double set_distance = 0.0;
  double hull_distance = 0.0;
  double half_clearance = 0.0;
};

/// Compares hull distance with set distance for two very simple sets, when
/// d_H(E, F) is at most half the clearance of F from the cube boundary.
LipschitzReport lipschitz_hull_check(const FinitePointSet& e, const FinitePointSet& f,
                                     double mesh);

/// min over points and coordinates of pi - |angle|.
double cube_clearance(const FinitePointSet& points);

}  // namespace torihull
