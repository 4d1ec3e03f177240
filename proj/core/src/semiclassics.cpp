#include "torihull/semiclassics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "torihull/errors.hpp"

namespace torihull {

namespace {

// exp(i pi l / k), exact at multiples of pi/2.
cplx unit_root(long l, long k) {
  const long period = 2 * k;
  long r = ((l % period) + period) % period;
  if ((2 * r) % k == 0) {
    switch ((2 * r) / k) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, kPi * static_cast<double>(r) / static_cast<double>(k));
}

std::size_t checked_dimension(int k, int d) {
  if (k < 1) throw InputError("k must be at least 1");
  if (d < 1) throw InputError("d must be at least 1");
  std::size_t n = 1;
  for (int j = 0; j < d; ++j) {
    n *= static_cast<std::size_t>(2 * k);
    if (n > kDenseDimensionCap) {
      throw CapExceededError("matrix dimension (2k)^d exceeds the dense cap of " +
                             std::to_string(kDenseDimensionCap));
    }
  }
  return n;
}

}  // namespace

TranslationOps torus_translation_ops(int k) {
  const std::size_t n = checked_dimension(k, 1);
  TranslationOps ops{ComplexMatrix(n), ComplexMatrix(n)};
  for (std::size_t l = 0; l < n; ++l) {
    ops.u(l, l) = unit_root(static_cast<long>(l), k);
    ops.s((l + 1) % n, l) = 1.0;
  }
  return ops;
}

UnitaryFamily tensor_family(int k, int d) {
  const std::size_t n = checked_dimension(k, d);
  const std::size_t base = static_cast<std::size_t>(2 * k);
  UnitaryFamily family;
  for (int j = 0; j < d; ++j) {
    // Slot 0 is the most significant digit, matching kron ordering.
    std::size_t stride = 1;
    for (int t = j + 1; t < d; ++t) stride *= base;
    std::vector<cplx> diag(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      diag[idx] = unit_root(static_cast<long>((idx / stride) % base), k);
    }
    family.push_back(ComplexMatrix::diagonal(diag));
  }
  return family;
}

FinitePointSet analytic_joint_spectrum(int k, int d) {
  const std::size_t n = checked_dimension(k, d);
  const std::size_t base = static_cast<std::size_t>(2 * k);
  FinitePointSet out;
  out.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::vector<double> angles(static_cast<std::size_t>(d));
    std::size_t rest = idx;
    for (int j = d - 1; j >= 0; --j) {
      angles[static_cast<std::size_t>(j)] =
          kPi * static_cast<double>(rest % base) / static_cast<double>(k);
      rest /= base;
    }
    out.emplace_back(std::move(angles));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

GridQuantization grid_quantize(const Symbol& symbol, std::size_t n, bool require_unimodular) {
  if (n == 0) throw InputError("grid size must be positive");
  GridQuantization q;
  q.grid.resize(n);
  q.symbol_samples.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    q.grid[m] = static_cast<double>(m) / static_cast<double>(n);
    q.symbol_samples[m] = symbol(q.grid[m]);
    if (require_unimodular && std::abs(std::abs(q.symbol_samples[m]) - 1.0) > 1e-12) {
      throw InputError("symbol sample " + std::to_string(m) + " is not unimodular");
    }
  }
  q.op = ComplexMatrix::diagonal(q.symbol_samples);
  return q;
}

cplx arc_symbol(double x) { return std::polar(1.0, 0.5 * kPi * std::cos(kTwoPi * x)); }

cplx momentum_symbol_t2(double /*q*/, double p) { return std::polar(1.0, kTwoPi * p); }

// ---------------------------------------------------------------- axioms

std::optional<ModelKind> parse_model(const std::string& name) {
  if (name == "diagonal") return ModelKind::diagonal;
  if (name == "perturbed") return ModelKind::perturbed;
  return std::nullopt;
}

std::string model_name(ModelKind kind) {
  return kind == ModelKind::diagonal ? "diagonal" : "perturbed";
}

std::size_t model_grid_size(double hbar) {
  if (!(hbar > 0.0 && hbar <= 1.0)) throw InputError("hbar must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(2.0 / std::sqrt(hbar)));
}

namespace {

double bump(double x, double centre, double radius) {
  const double t = (x - centre) / radius;
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

struct NamedSymbol {
  Symbol f;
  bool unimodular = false;
  bool nonnegative = false;
  bool compact = false;
};

std::vector<NamedSymbol> dictionary() {
  return {
      {[](double x) { return std::polar(1.0, kTwoPi * x); }, true, false, false},
      {arc_symbol, true, false, false},
      {[](double x) { return cplx(std::cos(kTwoPi * x), 0.0); }, false, false, false},
      {[](double x) { return cplx(0.5, 0.3 * std::sin(2.0 * kTwoPi * x)); }, false, false, false},
      {[](double x) {
         const double s = std::max(0.0, std::sin(kTwoPi * x));
         return cplx(s * s, 0.0);
       },
       false, true, false},
      {[](double x) { return cplx(bump(x, 0.4, 0.2), 0.0); }, false, true, true},
      {[](double x) { return cplx(0.0, bump(x, 0.75, 0.15)); }, false, false, true},
  };
}

// Exact largest singular value for dense matrices, through the spectrum of A*A.
double spectral_norm(const ComplexMatrix& a) {
  if (frobenius_norm(a) == 0.0) return 0.0;
  if (a.is_diagonal()) return operator_norm(a);
  ComplexMatrix g = a.adjoint() * a;
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return std::sqrt(std::max(0.0, hermitian_eig(h).values.back()));
}

double sup_norm(const Symbol& f, const std::vector<double>& grid) {
  double s = 0.0;
  for (double x : grid) s = std::max(s, std::abs(f(x)));
  for (int i = 0; i < 4096; ++i) s = std::max(s, std::abs(f(static_cast<double>(i) / 4096.0)));
  return s;
}

class Model {
 public:
  Model(ModelKind kind, double hbar, std::uint64_t seed)
      : kind_(kind), hbar_(hbar), n_(model_grid_size(hbar)) {
    grid_.resize(n_);
    for (std::size_t m = 0; m < n_; ++m) grid_[m] = static_cast<double>(m) / static_cast<double>(n_);
    if (kind_ == ModelKind::perturbed) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> phase(-kPi, kPi);
      remainder_ = ComplexMatrix(n_);
      for (std::size_t m = 0; m < n_; ++m) remainder_((m + 1) % n_, m) = std::polar(1.0, phase(rng));
    }
  }

  std::size_t size() const { return n_; }
  const std::vector<double>& grid() const { return grid_; }

  ComplexMatrix op(const Symbol& f) const {
    std::vector<cplx> d(n_);
    for (std::size_t m = 0; m < n_; ++m) d[m] = f(grid_[m]);
    ComplexMatrix out = ComplexMatrix::diagonal(d);
    if (kind_ == ModelKind::perturbed) out += cplx(hbar_) * remainder_;
    return out;
  }

 private:
  ModelKind kind_;
  double hbar_;
  std::size_t n_;
  std::vector<double> grid_;
  ComplexMatrix remainder_;
};

Symbol product(const Symbol& f, const Symbol& g) {
  return [f, g](double x) { return f(x) * g(x); };
}

Symbol conjugate(const Symbol& f) {
  return [f](double x) { return std::conj(f(x)); };
}

std::vector<double> measure(const Model& model) {
  const auto dict = dictionary();
  const Symbol one = [](double) { return cplx(1.0, 0.0); };
  const std::size_t n = model.size();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  std::vector<ComplexMatrix> ops;
  for (const auto& s : dict) ops.push_back(model.op(s.f));

  double composition = 0.0, reality = 0.0, positivity = 0.0, nondegeneracy = 0.0;
  double product_formula = 0.0, norm_bound = 0.0, quasi_unitarity = 0.0;
  for (std::size_t a = 0; a < dict.size(); ++a) {
    for (std::size_t b = 0; b < dict.size(); ++b) {
      if (dict[a].compact || dict[b].compact) continue;
      composition = std::max(
          composition, spectral_norm(ops[a] * ops[b] - model.op(product(dict[a].f, dict[b].f))));
    }
  }
  for (std::size_t a = 0; a < dict.size(); ++a) {
    const auto& s = dict[a];
    reality = std::max(reality, spectral_norm(ops[a].adjoint() - model.op(conjugate(s.f))));
    if (s.nonnegative) {
      ComplexMatrix h = ops[a] + ops[a].adjoint();
      h *= 0.5;
      positivity = std::max(positivity, -hermitian_eig(h).values.front());
    }
    if (s.compact) {
      double sampled = 0.0;
      for (double x : model.grid()) sampled = std::max(sampled, std::abs(s.f(x)));
      nondegeneracy = std::max(nondegeneracy, std::abs(spectral_norm(ops[a]) - sampled));
      for (std::size_t b = 0; b < dict.size(); ++b) {
        if (dict[b].compact) continue;
        product_formula = std::max(
            product_formula, spectral_norm(ops[b] * ops[a] - model.op(product(dict[b].f, s.f))));
      }
    }
    if (s.unimodular) {
      // |f|^2 is 1 only up to rounding of the samples, so compare with Op(|f|^2).
      const Symbol modulus = [f = s.f](double x) { return cplx(std::norm(f(x)), 0.0); };
      quasi_unitarity =
          std::max(quasi_unitarity, spectral_norm(ops[a].adjoint() * ops[a] - model.op(modulus)));
    }
    norm_bound = std::max(norm_bound, spectral_norm(ops[a]) - sup_norm(s.f, model.grid()));
  }
  const ComplexMatrix op_one = model.op(one);
  norm_bound = std::max({0.0, norm_bound, spectral_norm(op_one) - 1.0});
  const double normalization = spectral_norm(op_one - id);
  return {composition, reality,         normalization, std::max(0.0, positivity),
          nondegeneracy, product_formula, norm_bound,  quasi_unitarity};
}

}  // namespace

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(x.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (m * sxy - sx * sy) / denom;
}

AxiomReport axiom_property_suite(ModelKind model, const std::vector<double>& hbars,
                                 std::uint64_t seed) {
  if (hbars.empty()) throw InputError("hbar list is empty");
  AxiomReport report;
  report.model = model_name(model);
  report.axioms = {"Q1_composition", "Q2_reality",  "Q3_normalization", "Q4_quasi_positivity",
                   "Q5_nondegeneracy", "Q6_product", "norm_bound",      "quasi_unitarity"};
  for (double hbar : hbars) {
    const Model m(model, hbar, seed);
    report.rows.push_back({hbar, m.size(), measure(m)});
  }
  for (std::size_t a = 0; a < report.axioms.size(); ++a) {
    std::vector<double> y;
    double worst = 0.0;
    for (const auto& row : report.rows) {
      y.push_back(row.defects[a]);
      worst = std::max(worst, row.defects[a]);
    }
    report.max_defect.push_back(worst);
    report.slope.push_back(loglog_slope(hbars, y));
  }
  return report;
}

// ---------------------------------------------------------------- convergence

UnitaryFamily arc_family(int k) {
  if (k < 1) throw InputError("k must be at least 1");
  if (static_cast<std::size_t>(k) > 2 * kDenseDimensionCap) {
    throw CapExceededError("grid size exceeds " + std::to_string(2 * kDenseDimensionCap));
  }
  return {grid_quantize(arc_symbol, static_cast<std::size_t>(k)).op};
}

LabeledSet arc_classical_samples(double mesh) {
  if (!(mesh > 0.0)) throw InputError("mesh must be positive");
  const auto count = static_cast<std::size_t>(std::ceil(kPi / mesh)) + 1;
  FinitePointSet pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts.emplace_back(std::vector<double>{-0.5 * kPi + kPi * static_cast<double>(i) /
                                                          static_cast<double>(count - 1)});
  }
  return LabeledSet::clustered(std::move(pts), 2.0 * mesh, mesh);
}

LabeledSet torus_classical_samples(int d) {
  if (d < 1) throw InputError("d must be at least 1");
  constexpr std::size_t per_axis = 64;
  const double step = kTwoPi / static_cast<double>(per_axis);
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) {
    total *= per_axis;
    if (total > (std::size_t{1} << 20)) throw CapExceededError("torus sample grid too large");
  }
  LabeledSet e;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<double> angles(static_cast<std::size_t>(d));
    std::size_t rest = idx;
    for (auto& a : angles) {
      a = -kPi + step * static_cast<double>(rest % per_axis);
      rest /= per_axis;
    }
    e.points.emplace_back(std::move(angles));
  }
  e.components.assign(total, 1);
  e.mesh = step;
  return e;
}

ConvergenceResult convergence_experiment(const FamilyGenerator& generator,
                                         const LabeledSet& classical,
                                         const std::vector<int>& k_list, double mesh,
                                         const Tolerances& tol) {
  if (k_list.empty()) throw InputError("k list is empty");
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1) throw InputError("k values must be positive");
    if (i > 0 && k_list[i] <= k_list[i - 1]) throw InputError("k list must be increasing");
  }
  classical.validate();
  const std::size_t d = classical.dim();

  ConvergenceResult result;
  result.classical_simple = is_simple(classical);
  result.classical_hull =
      result.classical_simple ? convex_hull_simple(classical, tol) : ToricHull::full(d);

  const std::size_t count = k_list.size();
  std::vector<ConvergenceRecord> records(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        ConvergenceRecord& rec = records[i];
        rec.k = k_list[i];
        const UnitaryFamily family = generator(rec.k);
        if (family.size() != d) throw InputError("family size does not match the classical set");
        rec.n = family.front().size();
        rec.spectrum = joint_spectrum_rotated(family, tol);
        const LabeledSet spec = LabeledSet::singletons(rec.spectrum.points);
        rec.hull = is_simple(spec) ? convex_hull_simple(spec, tol) : ToricHull::full(d);
        rec.distance_to_classical = hull_hausdorff(rec.hull, result.classical_hull, mesh);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(tol.threads, 1, count);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<TorusPoint> candidates;
  if (result.classical_simple) candidates = admissible_points(classical, tol).representatives;
  auto admissible_everywhere = [&](const TorusPoint& b) {
    if (!is_very_simple(rotate(classical.points, b))) return false;
    return std::all_of(records.begin(), records.end(), [&](const ConvergenceRecord& r) {
      return is_admissible(r.spectrum.points, b, tol.gap_tie_tol);
    });
  };
  for (const auto& b : candidates) {
    if (admissible_everywhere(b)) {
      result.a1_rotation = b;
      result.a1_ok = true;
      break;
    }
  }
  if (!result.a1_ok && !candidates.empty()) result.a1_rotation = candidates.front();
  for (auto& r : records) {
    r.a1_ok = result.a1_rotation &&
              is_very_simple(rotate(classical.points, *result.a1_rotation)) &&
              is_admissible(r.spectrum.points, *result.a1_rotation, tol.gap_tie_tol);
  }
  result.records = std::move(records);
  return result;
}

}  // namespace torihull
