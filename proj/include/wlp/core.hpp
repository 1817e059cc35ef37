#pragma once

// Domain types shared by the solver, oracles, experiments and audio pipeline.
//
// Indices are 0-based everywhere inside the library. Anything that reads or
// writes index sets to disk converts to and from 1-based numbering.

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wlp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const Vector& v, const char* what);
void require_finite(const Matrix& m, const char* what);

// A sorted set of distinct indices into a length-N signal.
class SupportEstimate {
 public:
  SupportEstimate() = default;
  SupportEstimate(std::vector<Index> indices, Index dim);

  static SupportEstimate from_one_based(const std::vector<Index>& indices, Index dim);

  const std::vector<Index>& indices() const { return indices_; }
  Index dim() const { return dim_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(Index i) const;

  std::vector<Index> one_based() const;

  // |this ∩ other|
  std::size_t overlap(const SupportEstimate& other) const;

  friend bool operator==(const SupportEstimate&, const SupportEstimate&) = default;

 private:
  std::vector<Index> indices_;
  Index dim_ = 0;
};

// Weights w_i = omega on the support estimate and 1 elsewhere.
class WeightVector {
 public:
  WeightVector(double omega, SupportEstimate estimate);
  // All-ones weights of length dim.
  static WeightVector uniform(Index dim);

  double omega() const { return omega_; }
  const SupportEstimate& estimate() const { return estimate_; }
  Index dim() const { return estimate_.dim(); }

  const Vector& values() const { return values_; }

 private:
  double omega_;
  SupportEstimate estimate_;
  Vector values_;
};

struct DenseMatrixKind {
  Matrix matrix;
};

// Row selection applied after an N x N inverse transform: y = (T x)[rows].
// When `orthonormal` is set, T is assumed orthogonal so the selected rows are
// orthonormal and A A^T = I.
struct RestrictedTransformKind {
  std::vector<Index> rows;
  std::shared_ptr<const Matrix> inverse_transform;
  bool orthonormal = false;
};

// Linear measurement operator A : R^N -> R^n with n <= N.
class SensingOperator {
 public:
  explicit SensingOperator(Matrix dense);
  SensingOperator(std::vector<Index> rows, std::shared_ptr<const Matrix> inverse_transform,
                  bool orthonormal);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  bool is_dense() const { return std::holds_alternative<DenseMatrixKind>(kind_); }
  bool has_orthonormal_rows() const;

  Vector apply(const Vector& x) const;

  // Explicit n x N matrix of the operator.
  const Matrix& matrix() const { return materialized_; }

  const std::variant<DenseMatrixKind, RestrictedTransformKind>& kind() const { return kind_; }

 private:
  std::variant<DenseMatrixKind, RestrictedTransformKind> kind_;
  Matrix materialized_;
  Index rows_ = 0;
  Index cols_ = 0;
};

struct Measurements {
  Vector y;
  double epsilon = 0.0;  // bound on ||e||_2, reporting only
};

// One recovery instance. The truth is known for synthetic problems only.
struct SparseProblem {
  SensingOperator A;
  Measurements b;
  SupportEstimate estimate;
  std::optional<Vector> truth;
};

// (sum_i w_i^p |x_i|^p)^(1/p)
double weighted_lp_norm(const Vector& x, const WeightVector& w, double p);
double weighted_lp_norm(const Vector& x, const Vector& weights, double p);

struct BestKTerm {
  Vector approximation;
  SupportEstimate support;
};

// Keeps the k largest-magnitude entries; ties go to the lower index.
BestKTerm best_k_term(const Vector& x, Index k);

inline constexpr double kDefaultSnrCapDb = 300.0;

// 10 log10(||x||^2 / ||x - xhat||^2), or cap_db when the error is exactly zero.
double snr_db(const Vector& x, const Vector& xhat, double cap_db = kDefaultSnrCapDb);

}  // namespace wlp
