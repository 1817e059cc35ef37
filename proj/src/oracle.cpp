#include "wlp/oracle.hpp"

#include <Eigen/QR>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace wlp {

namespace {

// Calls visit(subset) for every subset of {0..n-1} of size `size`, in
// lexicographic order.
void for_each_subset(Index n, int size, const std::function<void(const std::vector<Index>&)>& visit) {
  std::vector<Index> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[i] = i;
  if (size > n) return;
  while (true) {
    visit(idx);
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Least-squares fit on `support`; empty optional when the residual is above
// tolerance. Entries that vanish to rounding are set to exactly zero.
std::optional<Vector> exact_fit(const Matrix& A, const Vector& b, const std::vector<Index>& support) {
  const double tol = kOracleFitTolerance * std::max(1.0, b.norm());
  Vector z = Vector::Zero(A.cols());
  if (support.empty()) {
    if (b.norm() <= tol) return z;
    return std::nullopt;
  }
  Matrix sub(A.rows(), static_cast<Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) sub.col(static_cast<Index>(j)) = A.col(support[j]);
  const Vector coef = sub.colPivHouseholderQr().solve(b);
  if (!coef.allFinite() || (sub * coef - b).norm() > tol) return std::nullopt;
  const double scale = coef.cwiseAbs().maxCoeff();
  for (std::size_t j = 0; j < support.size(); ++j) {
    const double v = coef[static_cast<Index>(j)];
    z[support[j]] = std::abs(v) <= 1e-12 * scale ? 0.0 : v;
  }
  return z;
}

SupportEstimate nonzero_support(const Vector& z) {
  std::vector<Index> idx;
  for (Index i = 0; i < z.size(); ++i)
    if (z[i] != 0.0) idx.push_back(i);
  return SupportEstimate(std::move(idx), z.size());
}

void check_shapes(const Matrix& A, const Vector& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("oracle: A rows and b length differ");
  require_finite(A, "oracle matrix");
  require_finite(b, "oracle measurements");
}

}  // namespace

OracleResult oracle_l0(const Matrix& A, const Vector& b, int k_max) {
  check_shapes(A, b);
  if (A.cols() > 20) throw std::invalid_argument("oracle_l0 supports N <= 20");
  if (k_max < 0 || k_max > 4) throw std::invalid_argument("oracle_l0 supports k_max in 0..4");

  for (int size = 0; size <= k_max; ++size) {
    std::optional<Vector> found;
    for_each_subset(A.cols(), size, [&](const std::vector<Index>& s) {
      if (found) return;
      found = exact_fit(A, b, s);
    });
    if (found) {
      OracleResult r;
      r.support = nonzero_support(*found);
      r.objective_value = static_cast<double>(r.support.size());
      r.minimizer = std::move(*found);
      return r;
    }
  }
  throw NoFeasibleSupportError("oracle_l0: no exact fit with at most " + std::to_string(k_max) +
                               " nonzeros");
}

OracleResult oracle_weighted_lp(const Matrix& A, const Vector& b, const WeightVector& w, double p,
                                int k_max) {
  check_shapes(A, b);
  if (A.cols() > 12) throw std::invalid_argument("oracle_weighted_lp supports N <= 12");
  if (k_max < 0 || k_max > 3) throw std::invalid_argument("oracle_weighted_lp supports k_max in 0..3");
  if (w.dim() != A.cols()) throw std::invalid_argument("oracle: weight length differs from N");

  std::optional<Vector> best;
  double best_value = std::numeric_limits<double>::infinity();
  for (int size = 0; size <= k_max; ++size) {
    for_each_subset(A.cols(), size, [&](const std::vector<Index>& s) {
      auto z = exact_fit(A, b, s);
      if (!z) return;
      const double value = std::pow(weighted_lp_norm(*z, w, p), p);
      // Strict improvement only, so the earliest support keeps ties.
      if (value < best_value * (1.0 - 1e-12) || !best) {
        best_value = value;
        best = std::move(z);
      }
    });
  }
  if (!best)
    throw NoFeasibleSupportError("oracle_weighted_lp: no exact fit with at most " +
                                 std::to_string(k_max) + " nonzeros");
  OracleResult r;
  r.support = nonzero_support(*best);
  r.objective_value = best_value;
  r.minimizer = std::move(*best);
  return r;
}

}  // namespace wlp
