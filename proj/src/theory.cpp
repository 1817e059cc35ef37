#include "wlp/theory.hpp"

#include <cmath>
#include <string>

namespace wlp::theory {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("theory: ") + what);
}

void check_a_p(double a, double p) {
  require(a > 1.0, "a must exceed 1");
  require(p > 0.0 && p <= 1.0, "p must lie in (0,1]");
}

// 1 + rho - 2 alpha rho, the relative size of T0 ∪ T~ \ (T0 ∩ T~).
double mismatch_size(double alpha, double rho) {
  const double r = 1.0 + rho - 2.0 * alpha * rho;
  require(r >= 0.0, "1 + rho - 2 alpha rho must be nonnegative");
  return r;
}

double bounded_ratio(double top, double bottom) { return (top - bottom) / (top + bottom); }

}  // namespace

void TheoryParams::validate() const {
  require(p > 0.0 && p <= 1.0, "p must lie in (0,1]");
  require(omega >= 0.0 && omega <= 1.0, "omega must lie in [0,1]");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  require(rho >= 0.0, "rho must be nonnegative");
  require(a > 1.0, "a must exceed 1");
  require(a >= (1.0 - alpha) * rho, "a must be at least (1 - alpha) rho");
  require(k >= 1, "k must be positive");
  const double ak = a * static_cast<double>(k);
  require(std::abs(ak - std::round(ak)) <= 1e-9 * std::max(1.0, ak), "a k must be an integer");
  if (delta_ak) require(*delta_ak >= 0.0 && *delta_ak < 1.0, "delta_ak must lie in [0,1)");
  if (delta_a1k) require(*delta_a1k >= 0.0 && *delta_a1k < 1.0, "delta_a1k must lie in [0,1)");
  mismatch_size(alpha, rho);
}

double delta_hat_lp(double a, double p) {
  check_a_p(a, p);
  return bounded_ratio(std::pow(a, 2.0 / p - 1.0), 1.0);
}

double delta_hat_wl1(double a, double omega, double alpha, double rho) {
  require(a > 1.0, "a must exceed 1");
  const double gamma = omega + (1.0 - omega) * std::sqrt(mismatch_size(alpha, rho));
  return bounded_ratio(a, gamma * gamma);
}

double support_factor(double p, double omega, double alpha, double rho) {
  const double wp = std::pow(omega, p);
  return wp + (1.0 - wp) * std::pow(mismatch_size(alpha, rho), 1.0 - p / 2.0);
}

double delta_hat_wlp(double a, double p, double omega, double alpha, double rho) {
  check_a_p(a, p);
  const double s = support_factor(p, omega, alpha, rho);
  return bounded_ratio(std::pow(a, 2.0 / p - 1.0), std::pow(s, 2.0 / p));
}

bool sufficient_condition_holds(const TheoryParams& params) {
  params.validate();
  if (!params.delta_ak || !params.delta_a1k)
    throw std::invalid_argument("theory: sufficient condition needs delta_ak and delta_a1k");
  const double p = params.p;
  const double s = support_factor(p, params.omega, params.alpha, params.rho);
  const double K = std::pow(params.a, 2.0 / p - 1.0) / std::pow(s, 2.0 / p);
  return *params.delta_ak + K * *params.delta_a1k < K - 1.0;
}

namespace {

ErrorConstants weighted_constants(double p, double omega, double alpha, double rho, double a,
                                  double delta_ak, double delta_a1k) {
  const double upper = std::pow(1.0 + delta_ak, p / 2.0);
  const double lower = std::pow(1.0 - delta_a1k, p / 2.0);
  // (ak)^(p/2-1) S_w with the k^(1-p/2) inside S_w cancelled.
  const double scaled_s = std::pow(a, p / 2.0 - 1.0) * support_factor(p, omega, alpha, rho);
  const double tail = std::pow(2.0 / p - 1.0, -p / 2.0);

  const double denom = lower - upper * scaled_s;
  if (!(denom > 0.0))
    throw ConditionViolatedError("theory: sufficient condition violated (denominator " +
                                 std::to_string(denom) + ")");
  ErrorConstants c;
  c.c1 = std::pow(2.0, p) * (1.0 + scaled_s * tail) / denom;
  c.c2 = 2.0 * std::pow(a, p / 2.0 - 1.0) * (upper + lower * tail) / denom;
  return c;
}

}  // namespace

ErrorConstants error_constants(const TheoryParams& params) {
  params.validate();
  if (!params.delta_ak || !params.delta_a1k)
    throw std::invalid_argument("theory: error constants need delta_ak and delta_a1k");
  return weighted_constants(params.p, params.omega, params.alpha, params.rho, params.a,
                            *params.delta_ak, *params.delta_a1k);
}

ErrorConstants lp_error_constants(double a, double p, double delta_ak, double delta_a1k) {
  check_a_p(a, p);
  const double a_pow = std::pow(a, p / 2.0 - 1.0);
  const double tail = std::pow(2.0 / p - 1.0, -p / 2.0);
  const double denom =
      std::pow(1.0 - delta_a1k, p / 2.0) - std::pow(1.0 + delta_ak, p / 2.0) * a_pow;
  if (!(denom > 0.0)) throw ConditionViolatedError("theory: lp sufficient condition violated");
  return {std::pow(2.0, p) * (1.0 + a_pow * tail) / denom,
          2.0 * a_pow * (std::pow(1.0 + delta_ak, p / 2.0) + std::pow(1.0 - delta_a1k, p / 2.0) * tail) /
              denom};
}

ErrorConstants wl1_error_constants(double a, double omega, double alpha, double rho,
                                   double delta_ak, double delta_a1k) {
  require(a > 1.0, "a must exceed 1");
  const double gamma = omega + (1.0 - omega) * std::sqrt(mismatch_size(alpha, rho));
  const double root_a = std::sqrt(a);
  const double denom = std::sqrt(1.0 - delta_a1k) - gamma / root_a * std::sqrt(1.0 + delta_ak);
  if (!(denom > 0.0)) throw ConditionViolatedError("theory: weighted l1 sufficient condition violated");
  return {2.0 * (1.0 + gamma / root_a) / denom,
          2.0 / root_a * (std::sqrt(1.0 - delta_a1k) + std::sqrt(1.0 + delta_ak)) / denom};
}

bool proposition2_check(double p, double omega, double alpha, double rho, double a,
                        const std::vector<std::pair<double, double>>& delta_grid) {
  require(omega >= 0.0 && omega < 1.0, "proposition2_check needs omega in [0,1)");
  check_a_p(a, p);
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  const bool expect_smaller = alpha > 0.5;
  std::size_t checked = 0;
  for (const auto& [dak, da1k] : delta_grid) {
    ErrorConstants weighted;
    ErrorConstants plain;
    try {
      weighted = weighted_constants(p, omega, alpha, rho, a, dak, da1k);
      plain = lp_error_constants(a, p, dak, da1k);
    } catch (const ConditionViolatedError&) {
      continue;
    }
    const bool smaller = weighted.c1 < plain.c1 * (1.0 - 1e-12) && weighted.c2 < plain.c2 * (1.0 - 1e-12);
    if (smaller != expect_smaller) return false;
    ++checked;
  }
  return checked > 0;
}

}  // namespace wlp::theory
