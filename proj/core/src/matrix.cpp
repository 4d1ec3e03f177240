#include "torihull/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "torihull/errors.hpp"

namespace torihull {

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), data_(n * n, cplx{}) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

std::vector<cplx> ComplexMatrix::diagonal_entries() const {
  std::vector<cplx> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

bool ComplexMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && (*this)(i, j) != cplx{}) return false;
    }
  }
  return true;
}

namespace {

void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw InputError("matrix size mismatch");
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_size(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_size(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = &c(i, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      const cplx* brow = &b(k, 0);
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& x) {
  if (x.size() != a.size()) throw InputError("matrix-vector size mismatch");
  std::vector<cplx> y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    cplx s{};
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.size(), nb = b.size();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double operator_norm(const ComplexMatrix& a, double rel_tol, int max_iter) {
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  const double fro = frobenius_norm(a);
  if (fro == 0.0) return 0.0;
  if (a.is_diagonal()) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a(i, i)));
    return m;
  }
  const ComplexMatrix ah = a.adjoint();
  // Deterministic start with no special alignment to structured matrices.
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = cplx(1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i) + 0.5),
                0.21 * std::cos(0.7 * static_cast<double>(i)));
  }
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    double xn = 0.0;
    for (const auto& v : x) xn += std::norm(v);
    xn = std::sqrt(xn);
    for (auto& v : x) v /= xn;
    const std::vector<cplx> y = ah * (a * x);
    double next = 0.0;
    for (std::size_t i = 0; i < n; ++i) next += std::real(std::conj(x[i]) * y[i]);
    x = y;
    if (std::abs(next - lambda) <= rel_tol * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b, double pivot_tol) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu(r, col)) > std::abs(lu(piv, col))) piv = r;
    }
    if (std::abs(lu(piv, col)) <= pivot_tol) throw NumericalError("singular matrix in solve");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(piv, j), lu(col, j));
        std::swap(x(piv, j), x(col, j));
      }
    }
    const cplx pivot = lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = lu(r, col) / pivot;
      if (f == cplx{}) continue;
      lu(r, col) = f;
      for (std::size_t j = col + 1; j < n; ++j) {
        if (lu(col, j) != cplx{}) lu(r, j) -= f * lu(col, j);
      }
      for (std::size_t j = 0; j < n; ++j) x(r, j) -= f * x(col, j);
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t k = r + 1; k < n; ++k) {
      const cplx u = lu(r, k);
      if (u == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) x(r, j) -= u * x(k, j);
    }
    const cplx inv_pivot = 1.0 / lu(r, r);
    for (std::size_t j = 0; j < n; ++j) x(r, j) *= inv_pivot;
  }
  return x;
}

double unitarity_defect(const ComplexMatrix& u) {
  return operator_norm(u.adjoint() * u - ComplexMatrix::identity(u.size()));
}

double commutation_defect(const ComplexMatrix& a, const ComplexMatrix& b) {
  return operator_norm(a * b - b * a);
}

double hermiticity_defect(const ComplexMatrix& a) { return operator_norm(a - a.adjoint()); }

}  // namespace torihull
