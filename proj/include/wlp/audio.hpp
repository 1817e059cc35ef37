#pragma once

// Block-wise recovery of randomly subsampled audio in the DCT domain.
//
// The signal is cut into num_blocks contiguous blocks of block_len samples.
// Each block keeps round(keep_frac * block_len) samples at random positions
// and its DCT coefficients are recovered by weighted lp minimization. The
// support estimate of block j is the set of low-frequency bins together with
// the largest coefficients recovered for block j-1.

#include "wlp/core.hpp"
#include "wlp/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace wlp {

struct AudioPipelineConfig {
  Index block_len = 2048;
  double keep_frac = 0.25;
  int num_blocks = 21;
  double p = 0.5;
  std::vector<double> omega_list{0.0, 1.0 / 6, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6, 1.0};
  double lowfreq_cutoff_hz = 4000.0;
  double sample_rate_hz = 44100.0;
  double prev_block_keep = 1.0 / 16;  // fraction of n_j
  std::uint64_t seed = 1;
  SolverConfig solver;  // p is taken from the field above
  int threads = 1;

  void validate() const;
  Index kept_per_block() const;
};

// Orthonormal DCT-II: coefficients c = D s, samples s = D^T c.
Matrix dct_matrix(Index N);

// floor(cutoff / ((sample_rate / 2) / N)): bin f (1-based) sits near
// (f - 1) * (sample_rate / 2) / N Hz.
Index lowfreq_bin_count(Index N, double sample_rate_hz, double cutoff_hz);

// Sorted sample positions kept in block `block` (0-based).
std::vector<Index> block_keep_mask(const AudioPipelineConfig& cfg, int block);

// y = R s with A = R D^T. `prev_coeffs` is the previous block's recovered
// coefficient vector, or null for the first block. `inverse_dct` is D^T.
SparseProblem build_block_problem(const Vector& block, const std::vector<Index>& keep,
                                  const Vector* prev_coeffs, const AudioPipelineConfig& cfg,
                                  std::shared_ptr<const Matrix> inverse_dct);

struct AudioOmegaResult {
  double omega = 0.0;
  double p = 0.0;
  double snr_db = 0.0;  // over the whole processed signal
  Vector reconstruction;
};

struct AudioResult {
  Index lowfreq_bins = 0;
  Index samples_used = 0;
  std::vector<AudioOmegaResult> per_omega;
};

// Uses the first num_blocks * block_len samples. Throws std::invalid_argument
// when the signal is shorter.
AudioResult run_audio_pipeline(const Vector& signal, const AudioPipelineConfig& cfg);

inline constexpr const char* kAudioCsvHeader = "omega,p,snr_db";

// Reads a 16-bit mono WAV, runs the pipeline once per p in p_list and writes
// audio_snr.csv plus recon_p{p}_w{omega}.wav into out_dir. The file's sample
// rate replaces cfg.sample_rate_hz. Returns the names of the files written.
std::vector<std::string> run_audio_files(const std::filesystem::path& input,
                                         const std::filesystem::path& out_dir,
                                         AudioPipelineConfig cfg, const std::vector<double>& p_list);

std::string recon_file_name(double p, double omega);

}  // namespace wlp
