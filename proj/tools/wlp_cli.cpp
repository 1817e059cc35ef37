// wlp: command-line front end for the weighted lp recovery toolkit.
//
//   wlp solve  --matrix A.csv --measurements b.csv [--support T.txt] [--p P] [--omega W]
//   wlp theory --p 0.4 --omega 0:1:0.03125 --alpha 0.1:0.9:0.1 --a 3
//   wlp sweep  --config sweep.cfg
//   wlp audio  --input clip.wav [--p 0.5,1]
//   wlp replay out/manifest.json [--out-dir again]
//
// Global flags: --seed, --config, --out-dir, --threads, --timing.
// Exit codes: 0 success, 1 usage or I/O error, 2 numerical failure.

#include "CLI11.hpp"
#include "manifest.hpp"
#include "wlp/audio.hpp"
#include "wlp/experiments.hpp"
#include "wlp/matrix_io.hpp"
#include "wlp/solver.hpp"
#include "wlp/theory.hpp"
#include "wlp/wav.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef WLP_VERSION
#define WLP_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace wlp::cli {
namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2 };

struct Globals {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string config;
  std::string out_dir = ".";
  int threads = 1;
  bool timing = false;
};

std::string num(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string absolute(const std::string& p) { return p.empty() ? p : fs::absolute(p).lexically_normal().string(); }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

std::ifstream open_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  return in;
}

// "v", "v1,v2,..." or "start:stop:step" (inclusive of stop within 1e-9 steps).
std::vector<double> parse_grid(const std::string& name, const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(config_double(name, item));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
      throw std::invalid_argument("--" + name + ": range must be start:stop:step with step > 0");
    const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    return out;
  }
  return config_double_list(name, text);
}

// ---- solve ----

std::vector<std::string> run_solve(const json& cfg, const fs::path& out) {
  const Matrix a = read_matrix(cfg.at("matrix").get<std::string>());
  const Vector b = read_vector(cfg.at("measurements").get<std::string>());
  if (b.size() != a.rows())
    throw std::invalid_argument("measurements have " + std::to_string(b.size()) + " entries but A has " +
                                std::to_string(a.rows()) + " rows");
  const std::string support_path = cfg.at("support").get<std::string>();
  const SupportEstimate est = support_path.empty() ? SupportEstimate({}, a.cols()) : read_support(support_path, a.cols());
  const WeightVector w(cfg.at("omega").get<double>(), est);
  const SolverConfig scfg = solver_from_json(cfg.at("solver"));

  const SensingOperator A(a);
  const SolveResult res = solve(A, Measurements{b, 0.0}, w, scfg);

  write_vector_csv(out / "x.csv", res.x);
  std::string trace = "t,sigma,objective,step,residual\n";
  for (const auto& r : res.trace.records)
    trace += std::to_string(r.t) + "," + num("%.17g", r.sigma) + "," + num("%.17g", r.objective) + "," +
             num("%.17g", r.step) + "," + num("%.17g", r.residual) + "\n";
  write_file(out / "trace.csv", trace);
  std::cerr << "solve: " << res.trace.records.size() << " iterations, stop = " << to_string(res.trace.stop)
            << "\n";
  return {"x.csv", "trace.csv"};
}

// ---- theory ----

std::vector<std::string> run_theory(const json& cfg, const fs::path& out) {
  const auto ps = cfg.at("p").get<std::vector<double>>();
  const auto omegas = cfg.at("omega").get<std::vector<double>>();
  const auto alphas = cfg.at("alpha").get<std::vector<double>>();
  const auto rhos = cfg.at("rho").get<std::vector<double>>();
  const auto as = cfg.at("a").get<std::vector<double>>();
  const long k = cfg.at("k").get<long>();
  std::optional<double> dak, da1k;
  if (!cfg.at("delta_ak").is_null()) dak = cfg.at("delta_ak").get<double>();
  if (!cfg.at("delta_a1k").is_null()) da1k = cfg.at("delta_a1k").get<double>();

  std::string csv = "p,omega,alpha,rho,a,delta_hat,C1,C2\n";
  for (double p : ps)
    for (double a : as)
      for (double rho : rhos)
        for (double alpha : alphas)
          for (double omega : omegas) {
            theory::TheoryParams tp{p, omega, alpha, rho, a, k, dak, da1k};
            tp.validate();
            const double dh = theory::delta_hat_wlp(a, p, omega, alpha, rho);
            double c1 = NAN, c2 = NAN;
            if (dak && da1k) {
              try {
                const auto c = theory::error_constants(tp);
                c1 = c.c1;
                c2 = c.c2;
              } catch (const theory::ConditionViolatedError&) {
              }
            }
            csv += num("%.10g", p) + "," + num("%.10g", omega) + "," + num("%.10g", alpha) + "," +
                   num("%.10g", rho) + "," + num("%.10g", a) + "," + num("%.17g", dh) + "," +
                   num("%.17g", c1) + "," + num("%.17g", c2) + "\n";
          }
  write_file(out / "theory.csv", csv);
  return {"theory.csv"};
}

// ---- sweep ----

std::vector<std::string> run_sweep_cmd(const json& cfg, const fs::path& out, int threads, bool timing) {
  ExperimentSpec spec = spec_from_json(cfg);
  spec.threads = threads;
  const ExperimentResult res = run_sweep(spec);
  std::ostringstream os;
  write_sweep_csv(os, res, timing);
  write_file(out / "sweep.csv", os.str());
  std::size_t failed = 0;
  for (const auto& r : res.rows) failed += r.status != "ok";
  std::cerr << "sweep: " << res.rows.size() << " rows, " << failed << " failed solves\n";
  return {"sweep.csv"};
}

// ---- audio ----

std::vector<std::string> run_audio_cmd(const json& cfg, const fs::path& out, int threads) {
  AudioPipelineConfig acfg = audio_from_json(cfg);
  acfg.threads = threads;
  return run_audio_files(cfg.at("input").get<std::string>(), out, acfg, cfg.at("p_list").get<std::vector<double>>());
}

std::vector<std::string> dispatch(const RunManifest& m, const fs::path& out) {
  if (m.subcommand == "solve") return run_solve(m.config, out);
  if (m.subcommand == "theory") return run_theory(m.config, out);
  if (m.subcommand == "sweep") return run_sweep_cmd(m.config, out, m.threads, m.timing);
  if (m.subcommand == "audio") return run_audio_cmd(m.config, out, m.threads);
  throw std::invalid_argument("unknown subcommand '" + m.subcommand + "' in manifest");
}

void execute(RunManifest m, const fs::path& out) {
  fs::create_directories(out);
  m.tool_version = WLP_VERSION;
  m.outputs = dispatch(m, out);
  m.timestamp = utc_timestamp();
  write_manifest(out / kManifestName, m);
}

int run(int argc, char** argv) {
  CLI::App app{"Weighted lp minimization with partial support information"};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--config", g.config, "Flat key = value config file");
  app.add_option("--out-dir", g.out_dir, "Directory for outputs and manifest.json");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timing", g.timing, "Record wall-clock times (outputs stop being reproducible)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Recover x from A x = b");
  solve_cmd->fallthrough();
  std::string matrix, measurements, support;
  double solve_p = 0.5, solve_omega = 1.0;
  solve_cmd->add_option("--matrix,-A", matrix, "Measurement matrix (CSV or binary)")->required();
  solve_cmd->add_option("--measurements,-b", measurements, "Measurement vector (CSV or binary)")->required();
  solve_cmd->add_option("--support", support, "1-based support estimate indices");
  solve_cmd->add_option("--p", solve_p, "Exponent in (0, 1]");
  solve_cmd->add_option("--omega", solve_omega, "Weight on the support estimate");

  // theory
  auto* theory_cmd = app.add_subcommand("theory", "Recovery conditions and error constants over a grid");
  theory_cmd->fallthrough();
  std::string t_p = "1", t_omega = "1", t_alpha = "0.5", t_rho = "1", t_a = "3";
  long t_k = 1;
  std::optional<double> t_dak, t_da1k;
  theory_cmd->add_option("--p", t_p, "Value, list a,b,c or range start:stop:step");
  theory_cmd->add_option("--omega", t_omega, "Value, list or range");
  theory_cmd->add_option("--alpha", t_alpha, "Value, list or range");
  theory_cmd->add_option("--rho", t_rho, "Value, list or range");
  theory_cmd->add_option("--a", t_a, "Value, list or range");
  theory_cmd->add_option("--k", t_k, "Sparsity level (a k must be an integer)");
  theory_cmd->add_option("--delta-ak", t_dak, "RIP constant of order a k");
  theory_cmd->add_option("--delta-a1k", t_da1k, "RIP constant of order (a+1) k");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo recovery sweep from a config file");
  sweep_cmd->fallthrough();

  // audio
  auto* audio_cmd = app.add_subcommand("audio", "Recover subsampled audio block by block");
  audio_cmd->fallthrough();
  std::string input, a_p = "0.5", a_omega;
  std::optional<double> keep_frac;
  std::optional<int> num_blocks;
  audio_cmd->add_option("--input", input, "16-bit mono PCM WAV")->required();
  audio_cmd->add_option("--p", a_p, "Exponent list, e.g. 0.5,1");
  audio_cmd->add_option("--omega", a_omega, "Weight list (default 0, 1/6, ..., 1)");
  audio_cmd->add_option("--keep-frac", keep_frac, "Fraction of samples kept per block");
  audio_cmd->add_option("--num-blocks", num_blocks, "Number of blocks processed");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "Rerun the invocation recorded in a manifest");
  replay_cmd->fallthrough();
  std::string manifest_path;
  replay_cmd->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  g.seed_given = seed_opt->count() > 0;
  auto* out_opt = app.get_option("--out-dir");

  RunManifest m;
  m.seed = g.seed;
  m.threads = g.threads;
  m.timing = g.timing;
  fs::path out = g.out_dir;

  if (*solve_cmd) {
    SolverConfig scfg;
    if (!g.config.empty()) {
      auto in = open_config(g.config);
      read_flat_config(in, [&](const std::string& key, const std::string& value) {
        if (!apply_solver_key(scfg, key, value)) throw std::invalid_argument("unknown config key '" + key + "'");
      });
    }
    scfg.p = solve_p;
    scfg.validate();
    m.subcommand = "solve";
    m.config = json{{"matrix", absolute(matrix)},
                    {"measurements", absolute(measurements)},
                    {"support", absolute(support)},
                    {"omega", solve_omega},
                    {"solver", solver_to_json(scfg)}};
  } else if (*theory_cmd) {
    if (!g.config.empty()) throw std::invalid_argument("theory takes no --config");
    m.subcommand = "theory";
    m.config = json{{"p", parse_grid("p", t_p)},         {"omega", parse_grid("omega", t_omega)},
                    {"alpha", parse_grid("alpha", t_alpha)}, {"rho", parse_grid("rho", t_rho)},
                    {"a", parse_grid("a", t_a)},         {"k", t_k},
                    {"delta_ak", t_dak ? json(*t_dak) : json(nullptr)},
                    {"delta_a1k", t_da1k ? json(*t_da1k) : json(nullptr)}};
  } else if (*sweep_cmd) {
    if (g.config.empty()) throw std::invalid_argument("sweep needs --config");
    auto in = open_config(g.config);
    ExperimentSpec spec = parse_experiment_config(in);
    if (g.seed_given) spec.seed = g.seed;
    spec.validate();
    m.subcommand = "sweep";
    m.seed = spec.seed;
    m.config = spec_to_json(spec);
  } else if (*audio_cmd) {
    AudioPipelineConfig acfg;
    std::vector<double> p_list = parse_grid("p", a_p);
    if (!g.config.empty()) {
      auto in = open_config(g.config);
      read_flat_config(in, [&](const std::string& key, const std::string& value) {
        if (key == "block_len") acfg.block_len = config_integer(key, value);
        else if (key == "keep_frac") acfg.keep_frac = config_double(key, value);
        else if (key == "num_blocks") acfg.num_blocks = static_cast<int>(config_integer(key, value));
        else if (key == "p_list") p_list = config_double_list(key, value);
        else if (key == "omega_list") acfg.omega_list = config_double_list(key, value);
        else if (key == "lowfreq_cutoff_hz") acfg.lowfreq_cutoff_hz = config_double(key, value);
        else if (key == "prev_block_keep") acfg.prev_block_keep = config_double(key, value);
        else if (!apply_solver_key(acfg.solver, key, value))
          throw std::invalid_argument("unknown config key '" + key + "'");
      });
    }
    if (audio_cmd->get_option("--p")->count() > 0) p_list = parse_grid("p", a_p);
    if (!a_omega.empty()) acfg.omega_list = parse_grid("omega", a_omega);
    if (keep_frac) acfg.keep_frac = *keep_frac;
    if (num_blocks) acfg.num_blocks = *num_blocks;
    acfg.seed = g.seed;
    if (!fs::exists(input)) throw IoError("cannot open WAV file " + input);
    m.subcommand = "audio";
    m.config = audio_to_json(acfg);
    m.config["input"] = absolute(input);
    m.config["p_list"] = p_list;
    m.config["snr_scope"] = "whole_signal";
  } else if (*replay_cmd) {
    m = read_manifest(manifest_path);
    if (g.seed_given && g.seed != m.seed) throw std::invalid_argument("replay takes its seed from the manifest");
    if (out_opt->count() == 0) out = fs::path(manifest_path).parent_path() / "replay";
  }

  execute(std::move(m), out);
  return kOk;
}

}  // namespace
}  // namespace wlp::cli

int main(int argc, char** argv) {
  try {
    return wlp::cli::run(argc, argv);
  } catch (const wlp::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wlp::cli::kNumerical;
  } catch (const wlp::theory::ConditionViolatedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wlp::cli::kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wlp::cli::kUsage;
  }
}
