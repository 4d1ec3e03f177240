#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace torihull {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);

  std::size_t size() const noexcept { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<cplx>& data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  std::vector<cplx> diagonal_entries() const;
  bool is_diagonal() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
/// Skips zero entries of the left factor, so sparse products stay cheap.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& x);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);

/// Largest singular value, by power iteration on A*A.
double operator_norm(const ComplexMatrix& a, double rel_tol = 1e-12, int max_iter = 20000);

/// X with A X = B, by LU with partial pivoting. Throws NumericalError when a
/// pivot falls below `pivot_tol`.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b, double pivot_tol = 1e-300);

double unitarity_defect(const ComplexMatrix& u);
double commutation_defect(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_defect(const ComplexMatrix& a);

}  // namespace torihull
