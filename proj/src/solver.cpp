#include "wlp/solver.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace wlp {

namespace {

std::string ratio_message(double ratio) {
  std::ostringstream os;
  os << "sensing operator is rank deficient: sigma_min/sigma_max = " << ratio
     << " (must exceed " << kRankTolerance << ")";
  return os.str();
}

// s^(p/2) and s^(p/2 - 1) for s > 0, with exact shortcuts for p = 1/2 and 1.
struct PowerKernel {
  double p;

  double half_power(double s) const {
    if (p == 0.5) return std::sqrt(std::sqrt(s));
    if (p == 1.0) return std::sqrt(s);
    return std::pow(s, 0.5 * p);
  }

  double gradient_power(double s) const {
    if (p == 0.5) {
      const double r = std::sqrt(s);
      return 1.0 / (r * std::sqrt(r));
    }
    if (p == 1.0) return 1.0 / std::sqrt(s);
    return std::pow(s, 0.5 * p - 1.0);
  }
};

// Weights raised to the p-th power; 0^p stays 0.
Vector weight_powers(const Vector& weights, double p) {
  Vector wp(weights.size());
  for (Index i = 0; i < weights.size(); ++i)
    wp[i] = weights[i] == 0.0 ? 0.0 : (weights[i] == 1.0 ? 1.0 : std::pow(weights[i], p));
  return wp;
}

double objective_with(const Vector& x, const Vector& wp, const PowerKernel& k, double sigma2) {
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (wp[i] == 0.0) continue;
    acc += wp[i] * k.half_power(x[i] * x[i] + sigma2);
  }
  return acc;
}

void gradient_with(const Vector& x, const Vector& wp, const PowerKernel& k, double sigma2,
                   Vector& out) {
  out.resize(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    out[i] = wp[i] == 0.0 ? 0.0 : k.p * wp[i] * k.gradient_power(x[i] * x[i] + sigma2) * x[i];
  }
}

void check_smoothing_args(const Vector& x, const Vector& weights, double p, double sigma) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0,1]");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (x.size() != weights.size()) throw std::invalid_argument("signal and weight lengths differ");
}

}  // namespace

void SolverConfig::validate() const {
  auto fail = [](const char* field) {
    throw std::invalid_argument(std::string("solver config: ") + field + " out of range");
  };
  if (!(p > 0.0 && p <= 1.0)) fail("p");
  if (!(sigma_init > 0.0)) fail("sigma_init");
  if (!(sigma_decay > 0.0 && sigma_decay < 1.0)) fail("sigma_decay");
  if (max_iters < 1) fail("max_iters");
  if (!(sigma_floor > 0.0)) fail("sigma_floor");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) fail("step_shrink");
  if (max_backtracks < 1) fail("max_backtracks");
  if (!(feasibility_tol > 0.0)) fail("feasibility_tol");
}

RankDeficientError::RankDeficientError(double ratio)
    : std::runtime_error(ratio_message(ratio)), ratio_(ratio) {}

Projector::Projector(const SensingOperator& A) {
  const Matrix& a = A.matrix();
  if (A.has_orthonormal_rows()) {
    basis_ = a;
    pinv_factor_ = a.transpose();
    sv_ratio_ = 1.0;
    return;
  }
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  const double smin = s.size() > 0 ? s[s.size() - 1] : 0.0;
  sv_ratio_ = smax > 0.0 ? smin / smax : 0.0;
  if (!(sv_ratio_ > kRankTolerance)) throw RankDeficientError(sv_ratio_);
  basis_ = svd.matrixV().transpose();
  pinv_factor_ = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
}

Vector Projector::project_out(const Vector& d) const {
  return d - basis_.transpose() * (basis_ * d);
}

Vector Projector::min_norm_solution(const Vector& b) const {
  if (b.size() != pinv_factor_.cols())
    throw std::invalid_argument("measurement length does not match operator rows");
  return pinv_factor_ * b;
}

Matrix Projector::matrix() const { return basis_.transpose() * basis_; }

double smoothed_objective(const Vector& x, const Vector& weights, double p, double sigma) {
  check_smoothing_args(x, weights, p, sigma);
  return objective_with(x, weight_powers(weights, p), PowerKernel{p}, sigma * sigma);
}

Vector smoothed_gradient(const Vector& x, const Vector& weights, double p, double sigma) {
  check_smoothing_args(x, weights, p, sigma);
  Vector g;
  gradient_with(x, weight_powers(weights, p), PowerKernel{p}, sigma * sigma, g);
  return g;
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxIterations: return "max_iters";
    case StopReason::SigmaFloor: return "sigma_floor";
    case StopReason::Stalled: return "stalled";
  }
  return "unknown";
}

SolveResult solve(const SensingOperator& A, const Measurements& b, const WeightVector& w,
                  const SolverConfig& cfg) {
  cfg.validate();
  const Projector projector(A);
  return solve(A, projector, b, w, cfg);
}

SolveResult solve(const SensingOperator& A, const Projector& projector, const Measurements& b,
                  const WeightVector& w, const SolverConfig& cfg) {
  cfg.validate();
  if (b.y.size() != A.rows()) throw std::invalid_argument("measurement length does not match A");
  if (w.dim() != A.cols()) throw std::invalid_argument("weight length does not match A");
  if (projector.dim() != A.cols()) throw std::invalid_argument("projector built for another A");
  require_finite(b.y, "measurements");

  const PowerKernel kernel{cfg.p};
  const Vector wp = weight_powers(w.values(), cfg.p);
  const Vector& wv = w.values();
  const double b_norm = b.y.norm();
  const double feas_scale = std::max(1.0, b_norm);

  // Magnitude threshold sqrt(1-p)/(1-sqrt(p)); infinite at p = 1, where no
  // entry ever qualifies and sigma follows the geometric decay alone.
  const double indicator_scale =
      cfg.p == 1.0 ? std::numeric_limits<double>::infinity()
                   : std::sqrt(1.0 - cfg.p) / (1.0 - std::sqrt(cfg.p));

  SolveResult result;
  Vector x = projector.min_norm_solution(b.y);
  if ((A.matrix() * x - b.y).norm() > cfg.feasibility_tol * feas_scale)
    throw DivergenceError("minimum-norm start point is not feasible to tolerance");

  double sigma = cfg.sigma_init;
  double f = objective_with(x, wp, kernel, sigma * sigma);
  Vector grad, dir, trial;

  for (int t = 1; t <= cfg.max_iters; ++t) {
    const double sigma2 = sigma * sigma;
    gradient_with(x, wp, kernel, sigma2, grad);
    dir = projector.project_out(-grad);
    const double dir_norm = dir.norm();

    double step = 0.0;
    double f_new = f;
    if (dir_norm > 0.0) {
      double l = 1.0;
      for (int k = 0; k <= cfg.max_backtracks; ++k, l *= cfg.step_shrink) {
        trial = x + l * dir;
        const double ft = objective_with(trial, wp, kernel, sigma2);
        if (ft < f) {
          step = l;
          f_new = ft;
          x.swap(trial);
          break;
        }
      }
    }
    if (!std::isfinite(f_new) || !x.allFinite())
      throw DivergenceError("objective became non-finite at iteration " + std::to_string(t));

    // Shrink sigma towards the largest entry still below its weighted threshold.
    double candidate = 0.0;
    bool any = false;
    if (std::isfinite(indicator_scale)) {
      for (Index i = 0; i < x.size(); ++i) {
        const double ind = indicator_scale * std::abs(x[i]);
        if (ind < wv[i] * sigma) {
          any = true;
          candidate = std::max(candidate, ind);
        }
      }
    }
    double sigma_next = cfg.sigma_decay * sigma;
    if (any && candidate > 0.0) sigma_next = std::min(sigma_next, candidate);

    const double residual = (A.matrix() * x - b.y).norm();
    result.trace.records.push_back({t, sigma, f_new, step, residual});

    if (sigma_next <= cfg.sigma_floor) {
      result.trace.stop = StopReason::SigmaFloor;
      break;
    }
    const bool stalled = step > 0.0 ? step * dir_norm <= 1e-10 * x.norm() : dir_norm == 0.0;
    if (stalled) {
      result.trace.stop = StopReason::Stalled;
      break;
    }
    sigma = sigma_next;
    f = objective_with(x, wp, kernel, sigma * sigma);
  }

  result.x = std::move(x);
  return result;
}

}  // namespace wlp
