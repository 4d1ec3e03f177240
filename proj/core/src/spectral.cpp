#include "torihull/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "torihull/errors.hpp"
#include "torihull/toric_hull.hpp"

namespace torihull {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Unit eigenvector of the largest eigenvalue of a real symmetric 3x3 matrix.
std::array<double, 3> top_eigenvector3(Mat3 m) {
  Mat3 v{};
  for (int i = 0; i < 3; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    const double diag = m[0][0] * m[0][0] + m[1][1] * m[1][1] + m[2][2] * m[2][2];
    if (off <= 1e-32 * diag || off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (m[p][q] == 0.0) continue;
        const double tau = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < 3; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (m[i][i] > m[best][best]) best = i;
  }
  return {v[0][best], v[1][best], v[2][best]};
}

void require_hermitian(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) diff += 2.0 * std::norm(a(i, j) - std::conj(a(j, i)));
  }
  if (std::sqrt(diff) > 1e-10 * std::max(1.0, frobenius_norm(a))) {
    throw InputError("matrix is not Hermitian");
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix h = a + a.adjoint();
  h *= 0.5;
  return h;
}

void validate_family(const UnitaryFamily& family, double tol) {
  if (family.empty()) throw InputError("empty operator family");
  const std::size_t n = family.front().size();
  if (n == 0) throw InputError("operators must have positive dimension");
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].size() != n) throw InputError("operator family has mixed dimensions");
    const double ud = unitarity_defect(family[j]);
    if (ud > tol) {
      throw InputError("operator " + std::to_string(j) + " is not unitary (defect " +
                       std::to_string(ud) + ")");
    }
  }
  for (std::size_t j = 0; j < family.size(); ++j) {
    for (std::size_t k = j + 1; k < family.size(); ++k) {
      const double cd = commutation_defect(family[j], family[k]);
      if (cd > tol) {
        throw InputError("operators " + std::to_string(j) + " and " + std::to_string(k) +
                         " do not commute (defect " + std::to_string(cd) + ")");
      }
    }
  }
}

// Sorts points lexicographically, ties by column, and measures residuals.
JointSpectrum assemble(const UnitaryFamily& family, const JointDiagonalization& jd,
                       std::vector<TorusPoint> points) {
  const std::size_t n = family.front().size();
  JointSpectrum out;
  out.basis = jd.basis;
  for (std::size_t j = 0; j < family.size(); ++j) {
    const ComplexMatrix w = family[j] * jd.basis;
    for (std::size_t col = 0; col < n; ++col) {
      const cplx z = std::polar(1.0, points[col][j]);
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r += std::norm(w(i, col) - z * jd.basis(i, col));
      out.residual = std::max(out.residual, std::sqrt(r));
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(points[a], points[b]);
  });
  for (std::size_t col : order) {
    out.points.push_back(points[col]);
    out.columns.push_back(col);
  }
  return out;
}

}  // namespace

JointDiagonalization joint_diagonalize(const std::vector<ComplexMatrix>& family, double tol,
                                       int max_sweeps) {
  if (family.empty()) throw InputError("joint_diagonalize: empty family");
  const std::size_t n = family.front().size();
  std::vector<ComplexMatrix> a = family;
  double scale2 = 0.0;
  for (const auto& m : a) {
    if (m.size() != n) throw InputError("joint_diagonalize: mixed dimensions");
    require_hermitian(m);
    scale2 += std::norm(frobenius_norm(m));
  }
  JointDiagonalization out;
  out.basis = ComplexMatrix::identity(n);
  const double skip2 = 1e-30 * scale2;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off2 = 0.0;
    for (const auto& m : a) off2 += std::norm(off_diagonal_norm(m));
    if (off2 <= tol * tol * scale2) break;
    out.sweeps = sweep + 1;
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double pair2 = 0.0;
        for (const auto& m : a) pair2 += std::norm(m(p, q));
        if (pair2 <= skip2) continue;

        // Rotation angles from the dominant direction of the stacked
        // (a_pp - a_qq, 2 Re a_pq, -2 Im a_pq) vectors.
        std::array<double, 3> w{};
        if (a.size() == 1) {
          const auto& m = a.front();
          w = {std::real(m(p, p) - m(q, q)), 2.0 * m(p, q).real(), -2.0 * m(p, q).imag()};
          const double len = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
          for (double& x : w) x /= len;
        } else {
          Mat3 g{};
          for (const auto& m : a) {
            const std::array<double, 3> h = {std::real(m(p, p) - m(q, q)), 2.0 * m(p, q).real(),
                                             -2.0 * m(p, q).imag()};
            for (int r = 0; r < 3; ++r) {
              for (int c = 0; c < 3; ++c) g[r][c] += h[r] * h[c];
            }
          }
          w = top_eigenvector3(g);
        }
        if (w[0] < 0.0) {
          for (double& x : w) x = -x;
        }
        const double c = std::sqrt(0.5 * (1.0 + w[0]));
        const cplx s = cplx(w[1], w[2]) / (2.0 * c);
        if (std::abs(s) < 1e-16) continue;
        rotated = true;
        const cplx sc = std::conj(s);
        for (auto& m : a) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx mkp = m(k, p), mkq = m(k, q);
            m(k, p) = mkp * c + mkq * s;
            m(k, q) = -mkp * sc + mkq * c;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const cplx mpk = m(p, k), mqk = m(q, k);
            m(p, k) = c * mpk + sc * mqk;
            m(q, k) = -s * mpk + c * mqk;
          }
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = out.basis(k, p), vkq = out.basis(k, q);
          out.basis(k, p) = vkp * c + vkq * s;
          out.basis(k, q) = -vkp * sc + vkq * c;
        }
      }
    }
    if (!rotated) break;
  }

  out.values.resize(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.values[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[j][i] = a[j](i, i).real();
    out.off_diagonal = std::max(out.off_diagonal, off_diagonal_norm(a[j]));
  }
  return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  const JointDiagonalization jd = joint_diagonalize({h});
  const std::size_t n = h.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return jd.values[0][a] < jd.values[0][b];
  });
  EigenDecomposition out;
  out.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(jd.values[0][order[k]]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = jd.basis(i, order[k]);
  }
  return out;
}

double minus_one_margin(const ComplexMatrix& u) {
  const ComplexMatrix m = ComplexMatrix::identity(u.size()) + u;
  if (m.is_diagonal()) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.size(); ++i) best = std::min(best, std::abs(m(i, i)));
    return best;
  }
  const auto eig = hermitian_eig(hermitian_part(m.adjoint() * m));
  return std::sqrt(std::max(eig.values.front(), 0.0));
}

ComplexMatrix inverse_cayley(const ComplexMatrix& u, double margin) {
  const double ud = unitarity_defect(u);
  if (ud > 1e-8) throw InputError("inverse_cayley needs a unitary matrix (defect " +
                                  std::to_string(ud) + ")");
  const double m = minus_one_margin(u);
  if (m < margin) {
    throw MarginError("-1 lies within " + std::to_string(m) + " of the spectrum (margin " +
                      std::to_string(margin) +
                      "); rotate the operator by a unit scalar before the Cayley map");
  }
  const ComplexMatrix id = ComplexMatrix::identity(u.size());
  ComplexMatrix c = solve(id + u, id - u);
  c *= cplx(0.0, 1.0);
  return c;
}

cplx cayley_forward(double mu) { return (cplx(0.0, 1.0) - mu) / (cplx(0.0, 1.0) + mu); }

double cayley_scalar(cplx z) {
  if (std::abs(1.0 + z) == 0.0) throw MarginError("Cayley map undefined at -1");
  return std::real(cplx(0.0, 1.0) * (1.0 - z) / (1.0 + z));
}

ComplexMatrix unitarize(const ComplexMatrix& v) {
  const std::size_t n = v.size();
  if (n == 0) throw InputError("unitarize: empty matrix");
  const auto eig = hermitian_eig(hermitian_part(v.adjoint() * v));
  const double top = eig.values.back();
  if (!(eig.values.front() > 1e-24 * top) || top <= 0.0) {
    throw InputError("unitarize: matrix is singular");
  }
  ComplexMatrix scaled_vectors = eig.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = 1.0 / std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < n; ++i) scaled_vectors(i, k) *= f;
  }
  ComplexMatrix u = v * (scaled_vectors * eig.vectors.adjoint());
  // Newton-Schulz steps remove the rounding left by ill-conditioned V*V.
  const ComplexMatrix id = ComplexMatrix::identity(n);
  for (int step = 0; step < 3; ++step) {
    const ComplexMatrix gram = u.adjoint() * u;
    if (frobenius_norm(gram - id) < 1e-15 * static_cast<double>(n)) break;
    ComplexMatrix correction = 3.0 * id - gram;
    correction *= 0.5;
    u = u * correction;
  }
  return u;
}

JointSpectrum joint_spectrum_unitary(const UnitaryFamily& family, const Tolerances& tol) {
  validate_family(family, tol.joint_eig_tol);
  std::vector<ComplexMatrix> cayley;
  cayley.reserve(family.size());
  for (const auto& u : family) cayley.push_back(hermitian_part(inverse_cayley(u, tol.margin)));
  const JointDiagonalization jd = joint_diagonalize(cayley);
  const std::size_t n = family.front().size();
  std::vector<TorusPoint> points;
  points.reserve(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> angles(family.size());
    for (std::size_t j = 0; j < family.size(); ++j) {
      angles[j] = principal_arg(cayley_forward(jd.values[j][col]));
    }
    points.emplace_back(std::move(angles));
  }
  JointSpectrum out = assemble(family, jd, std::move(points));
  if (out.residual > tol.joint_eig_tol) {
    throw NumericalError("joint eigenvector residual " + std::to_string(out.residual) +
                         " exceeds tolerance");
  }
  return out;
}

JointSpectrum joint_spectrum_direct(const UnitaryFamily& family) {
  if (family.empty()) throw InputError("empty operator family");
  std::vector<ComplexMatrix> parts;
  for (const auto& u : family) {
    parts.push_back(hermitian_part(u));
    ComplexMatrix skew = u - u.adjoint();
    skew *= cplx(0.0, -0.5);
    parts.push_back(std::move(skew));
  }
  const JointDiagonalization jd = joint_diagonalize(parts);
  const std::size_t n = family.front().size();
  std::vector<TorusPoint> points;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<double> angles(family.size());
    for (std::size_t j = 0; j < family.size(); ++j) {
      angles[j] = std::atan2(jd.values[2 * j + 1][col], jd.values[2 * j][col]);
    }
    points.emplace_back(std::move(angles));
  }
  return assemble(family, jd, std::move(points));
}

TorusPoint margin_rotation(const UnitaryFamily& family) {
  std::vector<double> b(family.size());
  for (std::size_t j = 0; j < family.size(); ++j) {
    const JointSpectrum sj = joint_spectrum_direct({family[j]});
    const GapStructure gs = gap_structure(sj.points, 0.0);
    const auto& cg = gs.coords.front();
    b[j] = gap_midpoint_rotation(gs, {cg.maximal.front()})[0];
  }
  return TorusPoint(std::move(b));
}

JointSpectrum joint_spectrum_rotated(const UnitaryFamily& family, const Tolerances& tol,
                                     TorusPoint* rotation_used) {
  if (family.empty()) throw InputError("empty operator family");
  bool clear = true;
  for (const auto& u : family) clear = clear && minus_one_margin(u) >= tol.margin;
  TorusPoint b = TorusPoint::identity(family.size());
  if (!clear) b = margin_rotation(family);
  if (rotation_used) *rotation_used = b;
  if (clear) return joint_spectrum_unitary(family, tol);

  UnitaryFamily moved = family;
  for (std::size_t j = 0; j < moved.size(); ++j) moved[j] *= std::polar(1.0, b[j]);
  JointSpectrum rotated = joint_spectrum_unitary(moved, tol);
  const TorusPoint b_inv = inv(b);
  std::vector<TorusPoint> points(rotated.points.size());
  for (std::size_t k = 0; k < rotated.points.size(); ++k) {
    points[rotated.columns[k]] = mul(b_inv, rotated.points[k]);
  }
  JointDiagonalization jd;
  jd.basis = rotated.basis;
  return assemble(family, jd, std::move(points));
}

double cayley_defect_check(const ComplexMatrix& u, const std::vector<cplx>& symbol_samples,
                           double margin) {
  if (symbol_samples.size() != u.size()) throw InputError("symbol samples do not match the grid");
  std::vector<cplx> diag(symbol_samples.size());
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = cayley_scalar(symbol_samples[i]);
  return operator_norm(inverse_cayley(u, margin) - ComplexMatrix::diagonal(diag));
}

}  // namespace torihull
