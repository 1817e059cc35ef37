#include "manifest.hpp"

#include "wlp/matrix_io.hpp"

#include <ctime>
#include <fstream>

namespace wlp::cli {

using nlohmann::json;

json to_json(const RunManifest& m) {
  return json{{"subcommand", m.subcommand}, {"config", m.config},     {"seed", m.seed},
              {"threads", m.threads},       {"timing", m.timing},     {"tool_version", m.tool_version},
              {"outputs", m.outputs},       {"timestamp", m.timestamp}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  try {
    m.subcommand = j.at("subcommand").get<std::string>();
    m.config = j.at("config");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.threads = j.value("threads", 1);
    m.timing = j.value("timing", false);
    m.tool_version = j.value("tool_version", "");
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.timestamp = j.value("timestamp", "");
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(m).dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return manifest_from_json(j);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json solver_to_json(const SolverConfig& s) {
  return json{{"p", s.p},
              {"sigma_init", s.sigma_init},
              {"sigma_decay", s.sigma_decay},
              {"max_iters", s.max_iters},
              {"sigma_floor", s.sigma_floor},
              {"step_shrink", s.step_shrink},
              {"max_backtracks", s.max_backtracks},
              {"feasibility_tol", s.feasibility_tol},
              {"snr_cap_db", s.snr_cap_db}};
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig s;
  s.p = j.at("p").get<double>();
  s.sigma_init = j.at("sigma_init").get<double>();
  s.sigma_decay = j.at("sigma_decay").get<double>();
  s.max_iters = j.at("max_iters").get<int>();
  s.sigma_floor = j.at("sigma_floor").get<double>();
  s.step_shrink = j.at("step_shrink").get<double>();
  s.max_backtracks = j.at("max_backtracks").get<int>();
  s.feasibility_tol = j.at("feasibility_tol").get<double>();
  s.snr_cap_db = j.at("snr_cap_db").get<double>();
  return s;
}

json spec_to_json(const ExperimentSpec& s) {
  return json{{"N", s.N},
              {"n_list", s.n_list},
              {"k", s.k},
              {"signal_kind", s.signal_kind == SignalKind::Sparse ? "sparse" : "compressible"},
              {"d", s.decay},
              {"noise_frac", s.noise_frac},
              {"alpha_list", s.alpha_list},
              {"rho", s.rho},
              {"omega_list", s.omega_list},
              {"p_list", s.p_list},
              {"trials", s.trials},
              {"seed", s.seed},
              {"solver", solver_to_json(s.solver)}};
}

ExperimentSpec spec_from_json(const json& j) {
  ExperimentSpec s;
  s.N = j.at("N").get<Index>();
  s.n_list = j.at("n_list").get<std::vector<Index>>();
  s.k = j.at("k").get<Index>();
  s.signal_kind = j.at("signal_kind").get<std::string>() == "sparse" ? SignalKind::Sparse : SignalKind::Compressible;
  s.decay = j.at("d").get<double>();
  s.noise_frac = j.at("noise_frac").get<double>();
  s.alpha_list = j.at("alpha_list").get<std::vector<double>>();
  s.rho = j.at("rho").get<double>();
  s.omega_list = j.at("omega_list").get<std::vector<double>>();
  s.p_list = j.at("p_list").get<std::vector<double>>();
  s.trials = j.at("trials").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.solver = solver_from_json(j.at("solver"));
  return s;
}

json audio_to_json(const AudioPipelineConfig& c) {
  return json{{"block_len", c.block_len},
              {"keep_frac", c.keep_frac},
              {"num_blocks", c.num_blocks},
              {"omega_list", c.omega_list},
              {"lowfreq_cutoff_hz", c.lowfreq_cutoff_hz},
              {"prev_block_keep", c.prev_block_keep},
              {"seed", c.seed},
              {"solver", solver_to_json(c.solver)}};
}

AudioPipelineConfig audio_from_json(const json& j) {
  AudioPipelineConfig c;
  c.block_len = j.at("block_len").get<Index>();
  c.keep_frac = j.at("keep_frac").get<double>();
  c.num_blocks = j.at("num_blocks").get<int>();
  c.omega_list = j.at("omega_list").get<std::vector<double>>();
  c.lowfreq_cutoff_hz = j.at("lowfreq_cutoff_hz").get<double>();
  c.prev_block_keep = j.at("prev_block_keep").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.solver = solver_from_json(j.at("solver"));
  return c;
}

}  // namespace wlp::cli
