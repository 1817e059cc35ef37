#pragma once

// Closed-form sufficient conditions and error-bound constants for recovery by
// weighted lp minimization with a support estimate of relative size rho and
// accuracy alpha.
//
// Conventions: delta_ak is the restricted isometry constant of order a*k,
// delta_a1k that of order (a+1)*k. The error bound has the form
//
//   ||x* - x||_2^p <= C1 eps^p + C2 k^(p/2-1) (w^p ||x - x_k||_p^p
//                                             + (1-w^p) ||x_{T~c ∩ T0c}||_p^p).

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wlp::theory {

struct TheoryParams {
  double p = 1.0;
  double omega = 1.0;
  double alpha = 0.5;
  double rho = 1.0;
  double a = 2.0;
  long k = 1;
  std::optional<double> delta_ak;
  std::optional<double> delta_a1k;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

class ConditionViolatedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ErrorConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};

// (a^(2/p-1) - 1) / (a^(2/p-1) + 1)
double delta_hat_lp(double a, double p);

// Uses gamma = omega + (1-omega) sqrt(1 + rho - 2 alpha rho).
double delta_hat_wl1(double a, double omega, double alpha, double rho);

double delta_hat_wlp(double a, double p, double omega, double alpha, double rho);

// omega^p + (1-omega^p) (1 + rho - 2 alpha rho)^(1-p/2); equals 1 when
// alpha = 1/2 or omega = 1, and is below 1 exactly when alpha > 1/2, omega < 1.
double support_factor(double p, double omega, double alpha, double rho);

// delta_ak + K delta_a1k < K - 1 with K = a^(2/p-1) / support_factor^(2/p).
// Throws std::invalid_argument when either delta is missing.
bool sufficient_condition_holds(const TheoryParams& params);

// Throws ConditionViolatedError when the bound's denominator is not positive.
ErrorConstants error_constants(const TheoryParams& params);

// Constants of the unweighted lp bound (support information unused).
ErrorConstants lp_error_constants(double a, double p, double delta_ak, double delta_a1k);

// Constants of the weighted l1 bound.
ErrorConstants wl1_error_constants(double a, double omega, double alpha, double rho,
                                   double delta_ak, double delta_a1k);

// Checks, over every (delta_ak, delta_a1k) pair where both bounds are defined,
// that C1 < C1_lp and C2 < C2_lp hold exactly when alpha > 1/2. Pairs that
// violate either sufficient condition are skipped; returns false if none remain.
bool proposition2_check(double p, double omega, double alpha, double rho, double a,
                        const std::vector<std::pair<double, double>>& delta_grid);

}  // namespace wlp::theory
