#pragma once

// Run manifests: everything needed to rerun one CLI invocation, written as
// manifest.json next to its outputs.

#include "json.hpp"
#include "wlp/audio.hpp"
#include "wlp/experiments.hpp"
#include "wlp/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wlp::cli {

inline constexpr const char* kManifestName = "manifest.json";

struct RunManifest {
  std::string subcommand;
  nlohmann::json config;  // fully resolved, input paths absolute
  std::uint64_t seed = 0;
  int threads = 1;
  bool timing = false;
  std::string tool_version;
  std::vector<std::string> outputs;  // relative to the output directory
  std::string timestamp;             // UTC, ISO 8601; not an input
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

std::string utc_timestamp();

nlohmann::json solver_to_json(const SolverConfig& s);
SolverConfig solver_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const ExperimentSpec& s);
ExperimentSpec spec_from_json(const nlohmann::json& j);

nlohmann::json audio_to_json(const AudioPipelineConfig& c);
AudioPipelineConfig audio_from_json(const nlohmann::json& j);

}  // namespace wlp::cli
