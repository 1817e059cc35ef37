#include "wlp/audio.hpp"

#include "wlp/experiments.hpp"
#include "wlp/wav.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <thread>

namespace wlp {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double signal_snr(const Vector& x, const Vector& xhat, double cap) {
  if (x.squaredNorm() == 0.0) return (xhat.squaredNorm() == 0.0) ? cap : -INFINITY;
  return snr_db(x, xhat, cap);
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
}

}  // namespace

void AudioPipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("audio config: " + what); };
  if (block_len < 1) fail("block_len must be positive");
  if (!(keep_frac > 0.0 && keep_frac <= 1.0)) fail("keep_frac must lie in (0, 1]");
  if (num_blocks < 1) fail("num_blocks must be positive");
  if (!(p > 0.0 && p <= 1.0)) fail("p must lie in (0, 1]");
  if (omega_list.empty()) fail("omega_list is empty");
  for (double w : omega_list)
    if (!(w >= 0.0 && w <= 1.0)) fail("omega values must lie in [0, 1]");
  if (!(sample_rate_hz > 0.0)) fail("sample_rate_hz must be positive");
  if (!(lowfreq_cutoff_hz >= 0.0 && lowfreq_cutoff_hz < sample_rate_hz / 2))
    fail("lowfreq_cutoff_hz must lie in [0, sample_rate_hz / 2)");
  if (!(prev_block_keep >= 0.0 && prev_block_keep <= 1.0)) fail("prev_block_keep must lie in [0, 1]");
  if (threads < 1) fail("threads must be positive");
  SolverConfig s = solver;
  s.p = p;
  s.validate();
}

Index AudioPipelineConfig::kept_per_block() const {
  return std::clamp<Index>(std::llround(keep_frac * static_cast<double>(block_len)), 1, block_len);
}

Matrix dct_matrix(Index N) {
  if (N < 1) throw std::invalid_argument("dct_matrix: N must be positive");
  Matrix D(N, N);
  const double c0 = std::sqrt(1.0 / static_cast<double>(N));
  const double c = std::sqrt(2.0 / static_cast<double>(N));
  for (Index k = 0; k < N; ++k)
    for (Index j = 0; j < N; ++j)
      D(k, j) = (k == 0 ? c0 : c) *
                std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) * static_cast<double>(k) /
                         static_cast<double>(N));
  return D;
}

Index lowfreq_bin_count(Index N, double sample_rate_hz, double cutoff_hz) {
  const double bin_hz = (sample_rate_hz / 2.0) / static_cast<double>(N);
  return std::min<Index>(N, static_cast<Index>(std::floor(cutoff_hz / bin_hz)));
}

std::vector<Index> block_keep_mask(const AudioPipelineConfig& cfg, int block) {
  Rng rng = make_stream(cfg.seed, {3, static_cast<std::uint64_t>(block)});
  std::vector<Index> all(static_cast<std::size_t>(cfg.block_len));
  std::iota(all.begin(), all.end(), Index{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(cfg.kept_per_block()));
  std::sort(all.begin(), all.end());
  return all;
}

SparseProblem build_block_problem(const Vector& block, const std::vector<Index>& keep,
                                  const Vector* prev_coeffs, const AudioPipelineConfig& cfg,
                                  std::shared_ptr<const Matrix> inverse_dct) {
  const Index N = cfg.block_len;
  if (block.size() != N)
    throw std::invalid_argument("build_block_problem: block has " + std::to_string(block.size()) +
                                " samples, expected " + std::to_string(N));
  if (!inverse_dct || inverse_dct->rows() != N || inverse_dct->cols() != N)
    throw std::invalid_argument("build_block_problem: inverse DCT has the wrong size");
  if (static_cast<Index>(keep.size()) != cfg.kept_per_block())
    throw std::invalid_argument("build_block_problem: mask keeps " + std::to_string(keep.size()) +
                                " samples, expected " + std::to_string(cfg.kept_per_block()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i] < 0 || keep[i] >= N || (i > 0 && keep[i] <= keep[i - 1]))
      throw std::invalid_argument("build_block_problem: mask must be sorted, distinct and in range");
  if (prev_coeffs && prev_coeffs->size() != N)
    throw std::invalid_argument("build_block_problem: previous block has the wrong length");

  const Index nj = static_cast<Index>(keep.size());
  std::vector<Index> est(static_cast<std::size_t>(lowfreq_bin_count(N, cfg.sample_rate_hz, cfg.lowfreq_cutoff_hz)));
  std::iota(est.begin(), est.end(), Index{0});
  if (prev_coeffs) {
    const Index top = std::llround(cfg.prev_block_keep * static_cast<double>(nj));
    if (top > 0) {
      const BestKTerm best = best_k_term(*prev_coeffs, std::min(top, N));
      est.insert(est.end(), best.support.indices().begin(), best.support.indices().end());
    }
    std::sort(est.begin(), est.end());
    est.erase(std::unique(est.begin(), est.end()), est.end());
  }

  Vector y(nj);
  for (Index i = 0; i < nj; ++i) y[i] = block[keep[static_cast<std::size_t>(i)]];
  const Vector coeffs = inverse_dct->transpose() * block;
  return SparseProblem{SensingOperator(keep, std::move(inverse_dct), true), Measurements{y, 0.0},
                       SupportEstimate(std::move(est), N), coeffs};
}

AudioResult run_audio_pipeline(const Vector& signal, const AudioPipelineConfig& cfg) {
  cfg.validate();
  const Index N = cfg.block_len;
  const Index total = N * cfg.num_blocks;
  if (signal.size() < total)
    throw std::invalid_argument("audio input has " + std::to_string(signal.size()) + " samples, need " +
                                std::to_string(total) + " (" + std::to_string(cfg.num_blocks) + " blocks of " +
                                std::to_string(N) + ")");
  require_finite(signal, "audio signal");

  SolverConfig scfg = cfg.solver;
  scfg.p = cfg.p;
  const auto inverse_dct = std::make_shared<const Matrix>(dct_matrix(N).transpose());
  const std::size_t nw = cfg.omega_list.size();

  AudioResult result;
  result.lowfreq_bins = lowfreq_bin_count(N, cfg.sample_rate_hz, cfg.lowfreq_cutoff_hz);
  result.samples_used = total;
  std::vector<Vector> recon(nw, Vector::Zero(total));
  std::vector<Vector> prev(nw);

  for (int j = 0; j < cfg.num_blocks; ++j) {
    const Vector block = signal.segment(static_cast<Index>(j) * N, N);
    const auto keep = block_keep_mask(cfg, j);
    // The sensing operator and projector depend only on the mask.
    const SparseProblem base = build_block_problem(block, keep, nullptr, cfg, inverse_dct);
    const Projector projector(base.A);
    std::vector<Vector> next(nw);
    parallel_for(nw, cfg.threads, [&](std::size_t w) {
      const SparseProblem prob =
          j == 0 ? base : build_block_problem(block, keep, &prev[w], cfg, inverse_dct);
      const WeightVector weights(cfg.omega_list[w], prob.estimate);
      next[w] = solve(prob.A, projector, prob.b, weights, scfg).x;
      recon[w].segment(static_cast<Index>(j) * N, N) = *inverse_dct * next[w];
    });
    prev = std::move(next);
  }

  const Vector reference = signal.head(total);
  for (std::size_t w = 0; w < nw; ++w)
    result.per_omega.push_back(AudioOmegaResult{cfg.omega_list[w], cfg.p,
                                                signal_snr(reference, recon[w], cfg.solver.snr_cap_db),
                                                std::move(recon[w])});
  return result;
}

std::string recon_file_name(double p, double omega) {
  return "recon_p" + fmt("%g", p) + "_w" + fmt("%.4g", omega) + ".wav";
}

std::vector<std::string> run_audio_files(const std::filesystem::path& input,
                                         const std::filesystem::path& out_dir, AudioPipelineConfig cfg,
                                         const std::vector<double>& p_list) {
  if (p_list.empty()) throw std::invalid_argument("audio: p list is empty");
  const WavAudio wav = read_wav(input);
  cfg.sample_rate_hz = wav.sample_rate;

  std::vector<std::string> written;
  std::string csv = std::string(kAudioCsvHeader) + "\n";
  for (double p : p_list) {
    cfg.p = p;
    const AudioResult res = run_audio_pipeline(wav.samples, cfg);
    for (const auto& r : res.per_omega) {
      csv += fmt("%.10g", r.omega) + "," + fmt("%g", r.p) + "," + fmt("%.6f", r.snr_db) + "\n";
      const std::string name = recon_file_name(r.p, r.omega);
      write_wav(out_dir / name, WavAudio{wav.sample_rate, r.reconstruction});
      written.push_back(name);
    }
  }
  std::ofstream out(out_dir / "audio_snr.csv", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (out_dir / "audio_snr.csv").string());
  out << csv;
  written.insert(written.begin(), "audio_snr.csv");
  return written;
}

}  // namespace wlp
