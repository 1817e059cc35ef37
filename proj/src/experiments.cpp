#include "wlp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace wlp {

namespace {

std::string fmt(const char* spec, double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<Index> shuffled_range(Index begin, Index end, Rng& rng) {
  std::vector<Index> v(static_cast<std::size_t>(end - begin));
  std::iota(v.begin(), v.end(), begin);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

}  // namespace

Vector gen_sparse_signal(Index N, Index k, Rng& rng) {
  if (k < 0 || k > N) throw std::invalid_argument("gen_sparse_signal: need 0 <= k <= N");
  Vector x = Vector::Zero(N);
  if (k == 0) return x;
  const auto positions = shuffled_range(0, N, rng);
  std::normal_distribution<double> normal;
  for (Index i = 0; i < k; ++i) {
    double v = 0.0;
    while (v == 0.0) v = normal(rng);
    x[positions[static_cast<std::size_t>(i)]] = v;
  }
  return x;
}

Vector gen_compressible_signal(Index N, double d) {
  if (!(d > 1.0)) throw std::invalid_argument("gen_compressible_signal: decay d must exceed 1");
  if (N < 1) throw std::invalid_argument("gen_compressible_signal: N must be positive");
  Vector x(N);
  for (Index j = 0; j < N; ++j) x[j] = std::pow(static_cast<double>(j + 1), -d);
  return x;
}

SensingOperator gen_gaussian_matrix(Index n, Index N, Rng& rng) {
  if (n < 1 || n > N) throw std::invalid_argument("gen_gaussian_matrix: need 1 <= n <= N");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(n)));
  Matrix A(n, N);
  for (Index j = 0; j < N; ++j)
    for (Index i = 0; i < n; ++i) A(i, j) = normal(rng);
  return SensingOperator(std::move(A));
}

Vector gen_noise_on_sphere(Index n, double level, const Vector& x, Rng& rng) {
  if (!(level >= 0.0)) throw std::invalid_argument("gen_noise_on_sphere: level must be >= 0");
  if (level == 0.0 || x.norm() == 0.0) return Vector::Zero(n);
  std::normal_distribution<double> normal;
  Vector e(n);
  double norm = 0.0;
  while (norm == 0.0) {
    for (Index i = 0; i < n; ++i) e[i] = normal(rng);
    norm = e.norm();
  }
  return e * (level * x.norm() / norm);
}

SupportEstimate gen_support_estimate(const SupportEstimate& T0, double alpha, double rho, Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("support estimate: alpha outside [0,1]");
  if (!(rho >= 0.0)) throw std::invalid_argument("support estimate: rho must be >= 0");
  const auto k = static_cast<double>(T0.size());
  const auto total = static_cast<Index>(std::lround(rho * k));
  const auto inside = static_cast<Index>(std::lround(alpha * rho * k));
  const Index outside = total - inside;
  const Index N = T0.dim();
  if (inside > static_cast<Index>(T0.size()) || outside < 0 ||
      outside > N - static_cast<Index>(T0.size()))
    throw std::invalid_argument("support estimate: requested sizes infeasible");

  std::vector<Index> in(T0.indices());
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(N) - in.size());
  for (Index i = 0; i < N; ++i)
    if (!T0.contains(i)) out.push_back(i);
  std::shuffle(in.begin(), in.end(), rng);
  std::shuffle(out.begin(), out.end(), rng);
  std::vector<Index> chosen(in.begin(), in.begin() + inside);
  chosen.insert(chosen.end(), out.begin(), out.begin() + outside);
  return SupportEstimate(std::move(chosen), N);
}

Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto t : tags) push(t);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("experiment spec: " + what); };
  if (N < 1) fail("N must be positive");
  if (n_list.empty()) fail("n_list is empty");
  for (Index n : n_list)
    if (n < 1 || n > N) fail("every n must lie in 1..N");
  if (k < 1 || k > *std::min_element(n_list.begin(), n_list.end())) fail("k must lie in 1..min(n_list)");
  if (signal_kind == SignalKind::Compressible && !(decay > 1.0)) fail("d must exceed 1");
  if (!(noise_frac >= 0.0)) fail("noise_frac must be >= 0");
  if (alpha_list.empty() || omega_list.empty() || p_list.empty()) fail("alpha, omega and p lists must be nonempty");
  for (double a : alpha_list)
    if (!(a >= 0.0 && a <= 1.0)) fail("alpha values must lie in [0,1]");
  for (double w : omega_list)
    if (!(w >= 0.0 && w <= 1.0)) fail("omega values must lie in [0,1]");
  for (double p : p_list)
    if (!(p > 0.0 && p <= 1.0)) fail("p values must lie in (0,1]");
  if (!(rho >= 0.0)) fail("rho must be >= 0");
  if (trials < 1) fail("trials must be >= 1");
  if (threads < 1) fail("threads must be >= 1");
  for (double a : alpha_list) {
    const auto total = std::lround(rho * static_cast<double>(k));
    const auto inside = std::lround(a * rho * static_cast<double>(k));
    if (inside > k || total - inside > N - k) fail("support estimate sizes infeasible for some alpha");
  }
  SolverConfig probe = solver;
  probe.p = p_list.front();
  probe.validate();
}

ExperimentResult run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t n_count = spec.n_list.size();
  const std::size_t p_count = spec.p_list.size();
  const std::size_t w_count = spec.omega_list.size();
  const std::size_t a_count = spec.alpha_list.size();
  const auto trials = static_cast<std::size_t>(spec.trials);

  // Output order: n, p, omega, alpha, trial.
  auto slot = [&](std::size_t ni, std::size_t pi, std::size_t wi, std::size_t ai, std::size_t t) {
    return (((ni * p_count + pi) * w_count + wi) * a_count + ai) * trials + t;
  };
  ExperimentResult result;
  result.rows.resize(n_count * p_count * w_count * a_count * trials);

  const Vector compressible = spec.signal_kind == SignalKind::Compressible
                                  ? gen_compressible_signal(spec.N, spec.decay)
                                  : Vector();

  // One unit per (n, trial): signal, matrix and noise are shared by every
  // (alpha, p, omega) variant, so comparisons across weights are paired.
  auto run_unit = [&](std::size_t ni, std::size_t t) {
    const Index n = spec.n_list[ni];
    Rng rng = make_stream(spec.seed, {1, ni, t});
    const Vector x = spec.signal_kind == SignalKind::Sparse ? gen_sparse_signal(spec.N, spec.k, rng)
                                                            : compressible;
    const SensingOperator A = gen_gaussian_matrix(n, spec.N, rng);
    const Vector e = gen_noise_on_sphere(n, spec.noise_frac, x, rng);
    const Measurements b{A.apply(x) + e, e.norm()};
    const SupportEstimate T0 = best_k_term(x, spec.k).support;

    std::optional<Projector> projector;
    std::string setup_failure;
    try {
      projector.emplace(A);
    } catch (const RankDeficientError&) {
      setup_failure = "rank_deficient";
    }

    for (std::size_t ai = 0; ai < a_count; ++ai) {
      Rng est_rng = make_stream(spec.seed, {2, ni, ai, t});
      const SupportEstimate estimate = gen_support_estimate(T0, spec.alpha_list[ai], spec.rho, est_rng);
      const double alpha_real =
          estimate.empty() ? 0.0
                           : static_cast<double>(estimate.overlap(T0)) / static_cast<double>(estimate.size());
      const double rho_real = static_cast<double>(estimate.size()) / static_cast<double>(spec.k);

      for (std::size_t pi = 0; pi < p_count; ++pi) {
        for (std::size_t wi = 0; wi < w_count; ++wi) {
          ExperimentRow row;
          row.n = n;
          row.p = spec.p_list[pi];
          row.omega = spec.omega_list[wi];
          row.alpha_req = spec.alpha_list[ai];
          row.alpha_real = alpha_real;
          row.rho = rho_real;
          row.trial = static_cast<int>(t);
          row.snr_db = -std::numeric_limits<double>::infinity();
          row.status = setup_failure;
          if (projector) {
            SolverConfig cfg = spec.solver;
            cfg.p = row.p;
            const auto start = std::chrono::steady_clock::now();
            try {
              auto solved = solve(A, *projector, b, WeightVector(row.omega, estimate), cfg);
              row.snr_db = snr_db(x, solved.x, cfg.snr_cap_db);
              row.iters = static_cast<int>(solved.trace.records.size());
              row.status = "ok";
            } catch (const DivergenceError&) {
              row.status = "diverged";
            } catch (const std::exception&) {
              row.status = "error";
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
          }
          result.rows[slot(ni, pi, wi, ai, t)] = std::move(row);
        }
      }
    }
  };

  const std::size_t units = n_count * trials;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) run_unit(u / trials, u % trials);
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(spec.threads), units);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  return result;
}

void write_sweep_csv(std::ostream& os, const ExperimentResult& result, bool record_timing) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : result.rows) {
    os << r.n << ',' << fmt("%g", r.p) << ',' << fmt("%.10g", r.omega) << ',' << fmt("%g", r.alpha_req) << ','
       << fmt("%.6g", r.alpha_real) << ',' << fmt("%.6g", r.rho) << ',' << r.trial << ','
       << fmt("%.6f", r.snr_db) << ',' << r.iters << ',' << fmt("%.3f", record_timing ? r.wall_ms : 0.0)
       << ',' << r.status << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse number '" + text + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': cannot parse integer '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

void read_flat_config(std::istream& is,
                      const std::function<void(const std::string&, const std::string&)>& on_entry) {
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    on_entry(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

bool apply_solver_key(SolverConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "max_iters") {
    cfg.max_iters = static_cast<int>(parse_integer(key, value));
  } else if (key == "sigma_init") {
    cfg.sigma_init = parse_double(key, value);
  } else if (key == "sigma_decay") {
    cfg.sigma_decay = parse_double(key, value);
  } else if (key == "sigma_floor") {
    cfg.sigma_floor = parse_double(key, value);
  } else if (key == "step_shrink") {
    cfg.step_shrink = parse_double(key, value);
  } else if (key == "max_backtracks") {
    cfg.max_backtracks = static_cast<int>(parse_integer(key, value));
  } else if (key == "feasibility_tol") {
    cfg.feasibility_tol = parse_double(key, value);
  } else if (key == "snr_cap_db") {
    cfg.snr_cap_db = parse_double(key, value);
  } else {
    return false;
  }
  return true;
}

double config_double(const std::string& key, const std::string& value) { return parse_double(key, value); }

long long config_integer(const std::string& key, const std::string& value) { return parse_integer(key, value); }

std::vector<double> config_double_list(const std::string& key, const std::string& value) {
  std::vector<double> v;
  for (const auto& item : split_list(value)) v.push_back(parse_double(key, item));
  return v;
}

ExperimentSpec parse_experiment_config(std::istream& is) {
  ExperimentSpec spec;
  read_flat_config(is, [&](const std::string& key, const std::string& value) {
    if (key == "N") {
      spec.N = parse_integer(key, value);
    } else if (key == "n_list") {
      spec.n_list.clear();
      for (const auto& item : split_list(value)) spec.n_list.push_back(parse_integer(key, item));
    } else if (key == "k") {
      spec.k = parse_integer(key, value);
    } else if (key == "signal_kind") {
      if (value == "sparse") spec.signal_kind = SignalKind::Sparse;
      else if (value == "compressible") spec.signal_kind = SignalKind::Compressible;
      else throw std::invalid_argument("config key 'signal_kind': expected sparse or compressible");
    } else if (key == "d") {
      spec.decay = parse_double(key, value);
    } else if (key == "noise_frac") {
      spec.noise_frac = parse_double(key, value);
    } else if (key == "alpha_list") {
      spec.alpha_list = config_double_list(key, value);
    } else if (key == "rho") {
      spec.rho = parse_double(key, value);
    } else if (key == "omega_list") {
      spec.omega_list = config_double_list(key, value);
    } else if (key == "p_list") {
      spec.p_list = config_double_list(key, value);
    } else if (key == "trials") {
      spec.trials = static_cast<int>(parse_integer(key, value));
    } else if (key == "seed") {
      spec.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    } else if (!apply_solver_key(spec.solver, key, value)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  });
  return spec;
}

}  // namespace wlp
