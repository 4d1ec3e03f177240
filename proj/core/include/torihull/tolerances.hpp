#pragma once

#include <cstddef>

namespace torihull {

struct Tolerances {
  double gap_tie_tol = 1e-9;
  double hull_cauchy_tol = 1e-6;
  double margin = 1e-3;
  double mesh = 1e-3;
  double joint_eig_tol = 1e-8;
  std::size_t combination_cap = 4096;
  unsigned threads = 1;
};

}  // namespace torihull
