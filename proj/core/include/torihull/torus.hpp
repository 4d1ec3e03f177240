#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace torihull {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Euclidean chart coordinates; not reduced modulo 2*pi.
using AngleVector = std::vector<double>;

/// Reduces an angle to (-pi, pi]; an exact -pi maps to +pi.
double normalize_angle(double x);

/// Principal argument in (-pi, pi].
double principal_arg(std::complex<double> z);

/// Geodesic distance on the unit circle between two angles.
double circle_distance(double a, double b);

/// A point of the d-torus, stored as principal angles.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<double> angles);

  /// Rejects entries whose modulus differs from 1 by more than `modulus_tol`.
  static TorusPoint from_complex(std::span<const std::complex<double>> z,
                                 double modulus_tol = 1e-12);
  static TorusPoint identity(std::size_t d);

  std::size_t dim() const noexcept { return angles_.size(); }
  double operator[](std::size_t j) const { return angles_[j]; }
  const std::vector<double>& angles() const noexcept { return angles_; }
  std::vector<std::complex<double>> to_complex() const;

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::vector<double> angles_;
};

using FinitePointSet = std::vector<TorusPoint>;

AngleVector principal_arg(const TorusPoint& z);
TorusPoint mul(const TorusPoint& a, const TorusPoint& b);
TorusPoint inv(const TorusPoint& a);
double torus_dist(const TorusPoint& a, const TorusPoint& b);

/// Common dimension of a non-empty set; throws InputError otherwise.
std::size_t set_dimension(const FinitePointSet& s);

FinitePointSet rotate(const FinitePointSet& s, const TorusPoint& a);

double directed_hausdorff(const FinitePointSet& from, const FinitePointSet& to);
double hausdorff(const FinitePointSet& a, const FinitePointSet& b);

/// Largest distance in a greedy nearest-first pairing of two equal-size
/// multisets. Upper-bounds the bottleneck matching distance.
double matched_distance(const FinitePointSet& a, const FinitePointSet& b);

/// Lexicographic order on angle vectors.
bool lex_less(const TorusPoint& a, const TorusPoint& b);

}  // namespace torihull
