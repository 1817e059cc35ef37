#include "wlp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wlp {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite entries");
}

SupportEstimate::SupportEstimate(std::vector<Index> indices, Index dim)
    : indices_(std::move(indices)), dim_(dim) {
  if (dim < 0) throw std::invalid_argument("support dimension must be nonnegative");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("support estimate has duplicate indices");
  if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= dim))
    throw std::invalid_argument("support index out of range");
}

SupportEstimate SupportEstimate::from_one_based(const std::vector<Index>& indices, Index dim) {
  std::vector<Index> zero_based;
  zero_based.reserve(indices.size());
  for (Index i : indices) {
    if (i < 1 || i > dim)
      throw std::invalid_argument("support index " + std::to_string(i) + " outside 1.." +
                                  std::to_string(dim));
    zero_based.push_back(i - 1);
  }
  return SupportEstimate(std::move(zero_based), dim);
}

bool SupportEstimate::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<Index> SupportEstimate::one_based() const {
  std::vector<Index> out(indices_);
  for (auto& i : out) ++i;
  return out;
}

std::size_t SupportEstimate::overlap(const SupportEstimate& other) const {
  std::vector<Index> common;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                        other.indices_.end(), std::back_inserter(common));
  return common.size();
}

WeightVector::WeightVector(double omega, SupportEstimate estimate)
    : omega_(omega), estimate_(std::move(estimate)) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("omega must lie in [0,1]");
  values_ = Vector::Ones(estimate_.dim());
  for (Index i : estimate_.indices()) values_[i] = omega_;
}

WeightVector WeightVector::uniform(Index dim) { return WeightVector(1.0, SupportEstimate({}, dim)); }

SensingOperator::SensingOperator(Matrix dense) : kind_(DenseMatrixKind{std::move(dense)}) {
  const Matrix& m = std::get<DenseMatrixKind>(kind_).matrix;
  require_finite(m, "sensing matrix");
  if (m.rows() > m.cols()) throw std::invalid_argument("sensing matrix must have n <= N");
  if (m.cols() < 1) throw std::invalid_argument("sensing matrix needs at least one column");
  rows_ = m.rows();
  cols_ = m.cols();
  materialized_ = m;
}

SensingOperator::SensingOperator(std::vector<Index> rows, std::shared_ptr<const Matrix> inverse_transform,
                                 bool orthonormal)
    : kind_(RestrictedTransformKind{std::move(rows), std::move(inverse_transform), orthonormal}) {
  const auto& k = std::get<RestrictedTransformKind>(kind_);
  if (!k.inverse_transform) throw std::invalid_argument("inverse transform is missing");
  const Matrix& T = *k.inverse_transform;
  const Index n_full = T.rows();
  if (T.cols() != n_full || n_full < 1)
    throw std::invalid_argument("inverse transform must be square and nonempty");
  require_finite(T, "inverse transform");
  std::vector<Index> sorted(k.rows);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("restriction has duplicate row indices");
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= n_full))
    throw std::invalid_argument("restriction row index out of range");
  rows_ = static_cast<Index>(k.rows.size());
  cols_ = n_full;
  materialized_.resize(rows_, cols_);
  for (Index r = 0; r < rows_; ++r) materialized_.row(r) = T.row(k.rows[r]);
}

bool SensingOperator::has_orthonormal_rows() const {
  if (auto* r = std::get_if<RestrictedTransformKind>(&kind_)) return r->orthonormal;
  return false;
}

Vector SensingOperator::apply(const Vector& x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("operator expects length " + std::to_string(cols_) + ", got " +
                                std::to_string(x.size()));
  if (auto* d = std::get_if<DenseMatrixKind>(&kind_)) return d->matrix * x;
  const auto& r = std::get<RestrictedTransformKind>(kind_);
  const Vector full = *r.inverse_transform * x;
  Vector out(rows_);
  for (Index i = 0; i < rows_; ++i) out[i] = full[r.rows[i]];
  return out;
}

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in (0,1]");
}

}  // namespace

double weighted_lp_norm(const Vector& x, const Vector& weights, double p) {
  check_p(p);
  if (x.size() != weights.size()) throw std::invalid_argument("signal and weight lengths differ");
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0 || weights[i] == 0.0) continue;
    acc += std::pow(weights[i] * std::abs(x[i]), p);
  }
  return std::pow(acc, 1.0 / p);
}

double weighted_lp_norm(const Vector& x, const WeightVector& w, double p) {
  return weighted_lp_norm(x, w.values(), p);
}

BestKTerm best_k_term(const Vector& x, Index k) {
  const Index n = x.size();
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in 1..N");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(x[a]) > std::abs(x[b]); });
  order.resize(static_cast<std::size_t>(k));
  Vector approx = Vector::Zero(n);
  for (Index i : order) approx[i] = x[i];
  return {std::move(approx), SupportEstimate(std::move(order), n)};
}

double snr_db(const Vector& x, const Vector& xhat, double cap_db) {
  if (x.size() != xhat.size()) throw std::invalid_argument("snr_db: length mismatch");
  const double signal = x.squaredNorm();
  if (signal == 0.0) throw std::invalid_argument("snr_db: reference signal has zero energy");
  const double err = (x - xhat).squaredNorm();
  if (err == 0.0) return cap_db;
  return std::min(cap_db, 10.0 * std::log10(signal / err));
}

}  // namespace wlp
