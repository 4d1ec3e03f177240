#include "torihull/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "torihull/errors.hpp"
#include "torihull/spatial_index.hpp"

namespace torihull {

double normalize_angle(double x) {
  if (!std::isfinite(x)) throw InputError("angle is not finite");
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double principal_arg(std::complex<double> z) {
  return normalize_angle(std::atan2(z.imag(), z.real()));
}

double circle_distance(double a, double b) {
  const double delta = a - b;
  return std::min({std::abs(delta), std::abs(delta - kTwoPi), std::abs(delta + kTwoPi)});
}

TorusPoint::TorusPoint(std::vector<double> angles) : angles_(std::move(angles)) {
  for (double& a : angles_) a = normalize_angle(a);
}

TorusPoint TorusPoint::from_complex(std::span<const std::complex<double>> z, double modulus_tol) {
  std::vector<double> angles;
  angles.reserve(z.size());
  for (const auto& zj : z) {
    if (std::abs(std::abs(zj) - 1.0) > modulus_tol) {
      throw InputError("torus coordinate has modulus " + std::to_string(std::abs(zj)));
    }
    angles.push_back(principal_arg(zj));
  }
  return TorusPoint(std::move(angles));
}

TorusPoint TorusPoint::identity(std::size_t d) { return TorusPoint(std::vector<double>(d, 0.0)); }

std::vector<std::complex<double>> TorusPoint::to_complex() const {
  std::vector<std::complex<double>> out;
  out.reserve(angles_.size());
  for (double a : angles_) out.push_back(std::polar(1.0, a));
  return out;
}

AngleVector principal_arg(const TorusPoint& z) { return z.angles(); }

namespace {

void require_same_dim(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
}

}  // namespace

TorusPoint mul(const TorusPoint& a, const TorusPoint& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) out[j] = a[j] + b[j];
  return TorusPoint(std::move(out));
}

TorusPoint inv(const TorusPoint& a) {
  std::vector<double> out(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) out[j] = -a[j];
  return TorusPoint(std::move(out));
}

double torus_dist(const TorusPoint& a, const TorusPoint& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const double dj = circle_distance(a[j], b[j]);
    s += dj * dj;
  }
  return std::sqrt(s);
}

std::size_t set_dimension(const FinitePointSet& s) {
  if (s.empty()) throw InputError("point set is empty");
  const std::size_t d = s.front().dim();
  if (d == 0) throw InputError("point set has dimension 0");
  for (const auto& p : s) {
    if (p.dim() != d) throw InputError("point set has mixed dimensions");
  }
  return d;
}

FinitePointSet rotate(const FinitePointSet& s, const TorusPoint& a) {
  FinitePointSet out;
  out.reserve(s.size());
  for (const auto& p : s) out.push_back(mul(a, p));
  return out;
}

double directed_hausdorff(const FinitePointSet& from, const FinitePointSet& to) {
  const std::size_t d = set_dimension(from);
  if (set_dimension(to) != d) throw InputError("hausdorff: dimension mismatch");
  double worst = 0.0;
  if (from.size() * to.size() > 65536) {
    const double per_axis = std::ceil(std::pow(static_cast<double>(to.size()), 1.0 / static_cast<double>(d)));
    const TorusGridIndex index(to, kTwoPi / per_axis);
    for (const auto& p : from) {
      worst = std::max(worst, index.nearest_distance(p, [](std::size_t) { return true; }));
    }
    return worst;
  }
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) {
      best = std::min(best, torus_dist(p, q));
      if (best <= worst) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff(const FinitePointSet& a, const FinitePointSet& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double matched_distance(const FinitePointSet& a, const FinitePointSet& b) {
  if (a.size() != b.size()) throw InputError("matched_distance: multisets differ in size");
  if (a.empty()) return 0.0;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i]) continue;
      const double dist = torus_dist(p, b[i]);
      if (dist < best) {
        best = dist;
        best_idx = i;
      }
    }
    used[best_idx] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

bool lex_less(const TorusPoint& a, const TorusPoint& b) {
  return std::lexicographical_compare(a.angles().begin(), a.angles().end(), b.angles().begin(),
                                      b.angles().end());
}

}  // namespace torihull
