#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "torihull/matrix.hpp"
#include "torihull/torus.hpp"

namespace torihull::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline TorusPoint random_point(Rng& rng, std::size_t d) {
  std::vector<double> a(d);
  for (auto& x : a) x = uniform(rng, -kPi, kPi);
  return TorusPoint(std::move(a));
}

inline FinitePointSet random_set(Rng& rng, std::size_t n, std::size_t d) {
  FinitePointSet s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(random_point(rng, d));
  return s;
}

// Points within `radius` of `centre` in every coordinate.
inline FinitePointSet random_cluster(Rng& rng, const TorusPoint& centre, std::size_t n,
                                     double radius) {
  FinitePointSet s;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> a = centre.angles();
    for (auto& x : a) x += uniform(rng, -radius, radius);
    s.emplace_back(std::move(a));
  }
  return s;
}

inline ComplexMatrix random_gaussian(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  }
  return m;
}

// Haar-like unitary by modified Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  ComplexMatrix q = random_gaussian(rng, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        cplx dot{};
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, p)) * q(i, c);
        for (std::size_t i = 0; i < n; ++i) q(i, c) -= dot * q(i, p);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, c));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, c) /= norm;
  }
  return q;
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  ComplexMatrix g = random_gaussian(rng, n);
  ComplexMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

// Angles at least `margin` (angular) away from pi.
inline std::vector<double> random_angles_clear_of_pi(Rng& rng, std::size_t n, double clearance) {
  std::vector<double> a(n);
  for (auto& x : a) x = uniform(rng, -kPi + clearance, kPi - clearance);
  return a;
}

inline ComplexMatrix conjugate(const ComplexMatrix& p, const std::vector<cplx>& diag) {
  return p * ComplexMatrix::diagonal(diag) * p.adjoint();
}

// Minimum over all lifts {-2pi, 0, 2pi}^d of the Euclidean distance.
inline double brute_torus_dist(const TorusPoint& a, const TorusPoint& b) {
  const std::size_t d = a.dim();
  double best = INFINITY;
  std::size_t combos = 1;
  for (std::size_t j = 0; j < d; ++j) combos *= 3;
  for (std::size_t c = 0; c < combos; ++c) {
    std::size_t rest = c;
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double shift = (static_cast<double>(rest % 3) - 1.0) * kTwoPi;
      rest /= 3;
      const double diff = a[j] - b[j] + shift;
      s += diff * diff;
    }
    best = std::min(best, std::sqrt(s));
  }
  return best;
}

inline double brute_hausdorff(const FinitePointSet& a, const FinitePointSet& b) {
  auto directed = [](const FinitePointSet& x, const FinitePointSet& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = INFINITY;
      for (const auto& q : y) best = std::min(best, brute_torus_dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace torihull::testing
