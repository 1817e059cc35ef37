#pragma once

// Synthetic problem generators and the Monte Carlo sweep driver for sparse
// and compressible recovery experiments.

#include "wlp/core.hpp"
#include "wlp/solver.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace wlp {

using Rng = std::mt19937_64;

enum class SignalKind { Sparse, Compressible };

struct ExperimentSpec {
  Index N = 500;
  std::vector<Index> n_list{100, 140, 200};
  Index k = 40;
  SignalKind signal_kind = SignalKind::Sparse;
  double decay = 1.1;  // d of x_j = j^-d, compressible signals only
  double noise_frac = 0.0;
  std::vector<double> alpha_list{0.3, 0.5, 0.7};
  double rho = 1.0;
  std::vector<double> omega_list{0.0, 0.5, 1.0};
  std::vector<double> p_list{0.5, 1.0};
  int trials = 10;
  std::uint64_t seed = 1;
  SolverConfig solver;  // p is overridden per sweep point
  int threads = 1;

  void validate() const;
};

struct ExperimentRow {
  Index n = 0;
  double p = 0.0;
  double omega = 0.0;
  double alpha_req = 0.0;
  double alpha_real = 0.0;
  double rho = 0.0;  // realized |T~| / k
  int trial = 0;
  double snr_db = 0.0;  // -inf when the solve failed
  int iters = 0;
  double wall_ms = 0.0;
  std::string status;  // "ok" or a short failure tag
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
};

// k nonzeros at uniformly random positions with i.i.d. standard normal values.
Vector gen_sparse_signal(Index N, Index k, Rng& rng);

// x_j = j^-d for j = 1..N; requires d > 1.
Vector gen_compressible_signal(Index N, double d);

// n x N with i.i.d. N(0, 1/n) entries.
SensingOperator gen_gaussian_matrix(Index n, Index N, Rng& rng);

// Uniform direction on the sphere in R^n scaled to ||e|| = level ||x||.
Vector gen_noise_on_sphere(Index n, double level, const Vector& x, Rng& rng);

// round(alpha rho k) indices from T0 and round(rho k) - round(alpha rho k)
// from its complement, each drawn uniformly without replacement.
SupportEstimate gen_support_estimate(const SupportEstimate& T0, double alpha, double rho, Rng& rng);

// Independent generator for one stream; `tags` identify the stream.
Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

ExperimentResult run_sweep(const ExperimentSpec& spec);

inline constexpr const char* kSweepCsvHeader =
    "n,p,omega,alpha_req,alpha_real,rho,trial,snr_db,iters,wall_ms,status";

// Writes the header and one line per row. With record_timing off, wall_ms is
// written as 0 so the file depends only on the spec.
void write_sweep_csv(std::ostream& os, const ExperimentResult& result, bool record_timing);

// Flat "key = value" config. Lists are comma-separated; '#' starts a comment.
// Throws std::invalid_argument naming any unknown key or unparsable value.
ExperimentSpec parse_experiment_config(std::istream& is);

// Calls on_entry(key, value) for each "key = value" line.
void read_flat_config(std::istream& is,
                      const std::function<void(const std::string&, const std::string&)>& on_entry);
// Applies one solver knob (max_iters, sigma_init, ...); false if the key is not one.
bool apply_solver_key(SolverConfig& cfg, const std::string& key, const std::string& value);

// Value parsers whose errors name the key.
double config_double(const std::string& key, const std::string& value);
long long config_integer(const std::string& key, const std::string& value);
std::vector<double> config_double_list(const std::string& key, const std::string& value);

}  // namespace wlp
