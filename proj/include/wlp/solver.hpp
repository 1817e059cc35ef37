#pragma once

// Smoothed projected-gradient method for
//
//   minimize  sum_i w_i^p |x_i|^p   subject to  A x = b,
//
// with 0 < p <= 1. |x_i|^p is replaced by (x_i^2 + sigma^2)^(p/2) and sigma is
// driven towards zero across iterations. Every step direction is projected
// onto null(A), so iterates never leave the affine set A x = b once the start
// point is feasible.

#include "wlp/core.hpp"

#include <stdexcept>
#include <vector>

namespace wlp {

struct SolverConfig {
  double p = 0.5;
  double sigma_init = 10.0;
  double sigma_decay = 0.98;
  int max_iters = 500;
  double sigma_floor = 1e-9;
  double step_shrink = 0.5;
  int max_backtracks = 30;
  double feasibility_tol = 1e-8;
  double snr_cap_db = kDefaultSnrCapDb;

  // Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;
};

class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(double ratio);
  double singular_value_ratio() const { return ratio_; }

 private:
  double ratio_;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Orthogonal projector Q = A^+ A onto the row space of A, stored in factored
// form Q = B^T B with B having orthonormal rows.
class Projector {
 public:
  // Throws RankDeficientError when sigma_min <= 1e-10 * sigma_max.
  explicit Projector(const SensingOperator& A);

  Index dim() const { return basis_.cols(); }
  Index rank() const { return basis_.rows(); }

  // d - Q d
  Vector project_out(const Vector& d) const;
  // A^+ b
  Vector min_norm_solution(const Vector& b) const;
  // Dense N x N matrix Q.
  Matrix matrix() const;
  double singular_value_ratio() const { return sv_ratio_; }

 private:
  Matrix basis_;          // rank x N, orthonormal rows spanning row(A)
  Matrix pinv_factor_;    // N x n, A^+
  double sv_ratio_ = 1.0;
};

inline constexpr double kRankTolerance = 1e-10;

// sum_i (w_i^2 (x_i^2 + sigma^2))^(p/2)
double smoothed_objective(const Vector& x, const Vector& weights, double p, double sigma);
// Componentwise p w_i^p (x_i^2 + sigma^2)^(p/2 - 1) x_i
Vector smoothed_gradient(const Vector& x, const Vector& weights, double p, double sigma);

struct TraceRecord {
  int t = 0;
  double sigma = 0.0;      // smoothing level the step was taken at
  double objective = 0.0;  // smoothed objective after the step, at that sigma
  double step = 0.0;       // accepted step length, 0 when the line search failed
  double residual = 0.0;   // ||A x - b||_2 after the step
};

enum class StopReason { MaxIterations, SigmaFloor, Stalled };

struct SolverTrace {
  std::vector<TraceRecord> records;
  StopReason stop = StopReason::MaxIterations;
};

struct SolveResult {
  Vector x;
  SolverTrace trace;
};

// Throws RankDeficientError (from the projector) or DivergenceError when the
// objective stops being finite.
SolveResult solve(const SensingOperator& A, const Measurements& b, const WeightVector& w,
                  const SolverConfig& cfg);

// Same, reusing a projector built for A. Callers solving many problems with
// the same A share one projector across calls.
SolveResult solve(const SensingOperator& A, const Projector& projector, const Measurements& b,
                  const WeightVector& w, const SolverConfig& cfg);

const char* to_string(StopReason r);

}  // namespace wlp
