#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torihull/matrix.hpp"
#include "torihull/spectral.hpp"
#include "torihull/tolerances.hpp"
#include "torihull/toric_hull.hpp"
#include "torihull/torus.hpp"

namespace torihull {

/// Largest dense matrix dimension the semiclassical builders will allocate.
inline constexpr std::size_t kDenseDimensionCap = 1024;

struct TranslationOps {
  ComplexMatrix u;  // diag(w^l), w = exp(i pi / k)
  ComplexMatrix s;  // cyclic shift e_l -> e_{l+1}
};

/// The two torus translation operators on 2k basis vectors. They satisfy
/// U S = w S U exactly.
TranslationOps torus_translation_ops(int k);

/// Id x ... x U(k) x ... x Id with U(k) in slot j, for j = 0..d-1.
/// Throws CapExceededError when (2k)^d exceeds kDenseDimensionCap.
UnitaryFamily tensor_family(int k, int d);

/// The (2k)^d points (pi l_1 / k, ..., pi l_d / k), sorted lexicographically.
FinitePointSet analytic_joint_spectrum(int k, int d);

using Symbol = std::function<cplx(double)>;

struct GridQuantization {
  std::vector<double> grid;  // x_m = m / N on [0, 1)
  std::vector<cplx> symbol_samples;
  ComplexMatrix op;  // diag(f(x_m))
};

/// Diagonal multiplication operator of `symbol` on N uniform grid points.
/// With `require_unimodular`, throws InputError when some |f(x_m)| differs
/// from 1 by more than 1e-12.
GridQuantization grid_quantize(const Symbol& symbol, std::size_t n, bool require_unimodular = true);

/// exp(i (pi/2) cos(2 pi x)): its image is the closed arc of angles [-pi/2, pi/2].
cplx arc_symbol(double x);

/// Circle-valued momentum map of the standard torus action, exp(2 i pi p).
cplx momentum_symbol_t2(double q, double p);

enum class ModelKind { diagonal, perturbed };

std::optional<ModelKind> parse_model(const std::string& name);
std::string model_name(ModelKind kind);

/// Grid size used for a given semiclassical parameter.
std::size_t model_grid_size(double hbar);

struct AxiomRow {
  double hbar = 0.0;
  std::size_t n = 0;
  std::vector<double> defects;  // one per AxiomReport::axioms entry
};

struct AxiomReport {
  std::string model;
  std::vector<std::string> axioms;
  std::vector<AxiomRow> rows;
  std::vector<double> max_defect;
  std::vector<std::optional<double>> slope;  // empty when some defect is zero
};

/// Measures the quantization axioms and their consequences over a fixed
/// dictionary of symbols. The perturbed model adds hbar * R for a seeded
/// monomial unitary R.
AxiomReport axiom_property_suite(ModelKind model, const std::vector<double>& hbars,
                                 std::uint64_t seed = 0);

/// Least-squares slope of log(y) against log(x); nullopt unless all y > 0.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

using FamilyGenerator = std::function<UnitaryFamily(int k)>;

struct ConvergenceRecord {
  int k = 0;
  std::size_t n = 0;
  JointSpectrum spectrum;
  ToricHull hull;
  double distance_to_classical = 0.0;
  bool a1_ok = false;
};

struct ConvergenceResult {
  std::vector<ConvergenceRecord> records;
  ToricHull classical_hull;
  bool classical_simple = false;
  std::optional<TorusPoint> a1_rotation;  // the rotation checked against every k
  bool a1_ok = false;
};

/// For each k: joint spectrum of the generated family, its toric hull and the
/// hull distance to the hull of `classical`. The (A1) check looks for one
/// admissible rotation of the classical set that is admissible for every
/// spectrum. Records are computed on up to tol.threads threads.
ConvergenceResult convergence_experiment(const FamilyGenerator& generator,
                                         const LabeledSet& classical,
                                         const std::vector<int>& k_list, double mesh,
                                         const Tolerances& tol = {});

/// Arc family: grid quantization of arc_symbol with N = k, k <= 2 * kDenseDimensionCap.
UnitaryFamily arc_family(int k);

/// Samples of the arc image with angular spacing at most `mesh`.
LabeledSet arc_classical_samples(double mesh);

/// Samples of the full torus T^d used as the classical image of the
/// translation family: a grid of 64 points per axis, far from simple.
LabeledSet torus_classical_samples(int d);

}  // namespace torihull
