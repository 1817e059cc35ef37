#pragma once

// Exhaustive searches over small supports. They serve as ground truth for the
// solver on planted, exactly sparse, noise-free instances.

#include "wlp/core.hpp"

#include <stdexcept>

namespace wlp {

struct OracleResult {
  Vector minimizer;
  SupportEstimate support;
  double objective_value = 0.0;  // weighted_lp_norm(minimizer)^p, 0 for the l0 oracle's count
};

class NoFeasibleSupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kOracleFitTolerance = 1e-8;

// Sparsest exact fit among supports of size <= k_max; the first support in
// (size, lexicographic) order wins ties. objective_value is the support size.
// Requires N <= 20 and k_max <= 4.
OracleResult oracle_l0(const Matrix& A, const Vector& b, int k_max);

// Smallest sum_i w_i^p |z_i|^p over exact fits on supports of size <= k_max.
// Requires N <= 12 and k_max <= 3.
OracleResult oracle_weighted_lp(const Matrix& A, const Vector& b, const WeightVector& w, double p,
                                int k_max);

}  // namespace wlp
