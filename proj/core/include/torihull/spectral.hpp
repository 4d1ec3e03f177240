#pragma once

#include <cstddef>
#include <vector>

#include "torihull/matrix.hpp"
#include "torihull/tolerances.hpp"
#include "torihull/torus.hpp"

namespace torihull {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // eigenvectors as columns
};

/// Cyclic Jacobi. Throws InputError when h is not Hermitian to 1e-10.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

struct JointDiagonalization {
  ComplexMatrix basis;                      // unitary, columns are joint eigenvectors
  std::vector<std::vector<double>> values;  // values[matrix][column]
  int sweeps = 0;
  double off_diagonal = 0.0;  // max over the family of the rotated off-diagonal norm
};

/// Simultaneous Jacobi sweeps over a family of Hermitian matrices, each
/// rotation chosen to minimise the summed off-diagonal energy.
JointDiagonalization joint_diagonalize(const std::vector<ComplexMatrix>& family,
                                       double tol = 1e-15, int max_sweeps = 100);

using UnitaryFamily = std::vector<ComplexMatrix>;

/// Smallest singular value of I + U.
double minus_one_margin(const ComplexMatrix& u);

/// i (I - U)(I + U)^{-1}. Throws MarginError below the margin.
ComplexMatrix inverse_cayley(const ComplexMatrix& u, double margin = 1e-3);

/// (i - mu) / (i + mu), the unit-circle point with inverse Cayley value mu.
cplx cayley_forward(double mu);

/// Scalar inverse Cayley map i (1 - z) / (1 + z).
double cayley_scalar(cplx z);

/// V (V* V)^{-1/2}. Throws InputError for singular V.
ComplexMatrix unitarize(const ComplexMatrix& v);

struct JointSpectrum {
  std::vector<TorusPoint> points;    // lexicographic, ties by column
  std::vector<std::size_t> columns;  // basis column of each point
  ComplexMatrix basis;
  double residual = 0.0;  // max_j,col |U_j q - z_j q|
};

/// Joint spectrum through the inverse Cayley transform. Throws InputError
/// for non-unitary or non-commuting input and MarginError when -1 is within
/// the margin of some spectrum.
JointSpectrum joint_spectrum_unitary(const UnitaryFamily& family, const Tolerances& tol = {});

/// Rotation b_j placing -1 in the middle of the widest spectral gap of U_j.
TorusPoint margin_rotation(const UnitaryFamily& family);

/// As joint_spectrum_unitary, but first rotates each U_j whose margin is
/// too small; points are rotated back afterwards.
JointSpectrum joint_spectrum_rotated(const UnitaryFamily& family, const Tolerances& tol = {},
                                     TorusPoint* rotation_used = nullptr);

/// Joint spectrum from the Hermitian and skew parts, without Cayley maps.
JointSpectrum joint_spectrum_direct(const UnitaryFamily& family);

/// Operator norm of C(U) - diag(C(f_m)) for grid samples f_m of a symbol.
double cayley_defect_check(const ComplexMatrix& u, const std::vector<cplx>& symbol_samples,
                           double margin = 1e-3);

}  // namespace torihull
