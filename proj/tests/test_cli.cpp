// Drives the wlp executable end to end.

#include "json.hpp"
#include "wlp/matrix_io.hpp"
#include "wlp/solver.hpp"
#include "wlp/theory.hpp"
#include "wlp/wav.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace wlp;
namespace fs = std::filesystem;

namespace {

const fs::path& work() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "wlp_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  int code;
  std::string err;
};

Run wlp_cli(const std::string& args) {
  const fs::path err = work() / "stderr.txt";
  const std::string cmd = std::string("\"") + WLP_CLI_PATH + "\" " + args + " > /dev/null 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void expect_replay_identical(const fs::path& out) {
  const fs::path again = out.string() + "_replay";
  ASSERT_EQ(wlp_cli("replay \"" + (out / "manifest.json").string() + "\" --out-dir \"" + again.string() + "\"").code, 0);
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  ASSERT_FALSE(manifest.at("outputs").empty());
  for (const auto& name : manifest.at("outputs")) {
    const std::string f = name.get<std::string>();
    EXPECT_EQ(slurp(out / f), slurp(again / f)) << f;
  }
}

}  // namespace

TEST(CliSolve, IdentityMatrixReturnsMeasurements) {
  write_matrix_csv(work() / "I.csv", Matrix::Identity(3, 3));
  write_vector_csv(work() / "b.csv", (Vector(3) << 1, 2, 3).finished());
  const fs::path out = work() / "solve_id";
  const auto r = wlp_cli("solve -A " + (work() / "I.csv").string() + " -b " + (work() / "b.csv").string() +
                         " --out-dir " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_vector(out / "x.csv"), (Vector(3) << 1, 2, 3).finished());
  EXPECT_EQ(slurp(out / "trace.csv").substr(0, 30), "t,sigma,objective,step,residua");
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST(CliSolve, RankDeficientMatrixExitsOneWithSingularValueMessage) {
  Matrix a(2, 3);
  a << 1, 1, 0, 2, 2, 0;
  write_matrix_csv(work() / "R.csv", a);
  write_vector_csv(work() / "b2.csv", (Vector(2) << 1, 2).finished());
  const auto r = wlp_cli("solve -A " + (work() / "R.csv").string() + " -b " + (work() / "b2.csv").string() +
                         " --out-dir " + (work() / "solve_rank").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("sigma_min/sigma_max"), std::string::npos) << r.err;
}

TEST(CliSolve, MatchesLibrarySolveAndReplays) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Matrix a(12, 30);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  Vector x0 = Vector::Zero(30);
  x0[4] = 1.5;
  x0[17] = -0.7;
  const Vector b = a * x0;
  write_matrix_binary(work() / "A.bin", a);
  write_vector_csv(work() / "b3.csv", b);
  std::ofstream(work() / "T.txt") << "5\n18\n22\n";
  std::ofstream(work() / "solver.cfg") << "max_iters = 200\nsigma_decay = 0.97\n";
  const fs::path out = work() / "solve_lib";
  const auto r = wlp_cli("solve -A " + (work() / "A.bin").string() + " -b " + (work() / "b3.csv").string() +
                         " --support " + (work() / "T.txt").string() + " --p 0.6 --omega 0.4 --config " +
                         (work() / "solver.cfg").string() + " --out-dir " + out.string());
  ASSERT_EQ(r.code, 0) << r.err;

  SolverConfig cfg;
  cfg.p = 0.6;
  cfg.max_iters = 200;
  cfg.sigma_decay = 0.97;
  const auto lib = solve(SensingOperator(a), Measurements{b, 0.0}, WeightVector(0.4, SupportEstimate({4, 17, 21}, 30)), cfg);
  EXPECT_EQ(read_vector(out / "x.csv"), lib.x);
  EXPECT_EQ(line_count(out / "trace.csv"), lib.trace.records.size() + 1);
  expect_replay_identical(out);
}

TEST(CliSolve, MissingInputAndDivergentConfigExitCodes) {
  EXPECT_EQ(wlp_cli("solve -A /nonexistent/A.csv -b /nonexistent/b.csv --out-dir " + (work() / "x").string()).code, 1);
  EXPECT_EQ(wlp_cli("solve").code, 1);
  EXPECT_EQ(wlp_cli("").code, 1);
  EXPECT_EQ(wlp_cli("--help").code, 0);
}

TEST(CliTheory, AlphaOmegaGridHasNineByThirtyThreeRows) {
  const fs::path out = work() / "theory_fig";
  const auto r = wlp_cli("theory --a 3 --rho 1 --p 0.4 --alpha 0.1:0.9:0.1 --omega 0:1:0.03125 --out-dir " +
                         out.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(out / "theory.csv"), 9u * 33 + 1);
  expect_replay_identical(out);
}

TEST(CliTheory, UnitOmegaPointMatchesPlainBound) {
  const fs::path out = work() / "theory_one";
  ASSERT_EQ(wlp_cli("theory --a 3 --p 0.4 --omega 1 --alpha 0.8 --delta-ak 0.1 --delta-a1k 0.1 --out-dir " +
                    out.string()).code, 0);
  const std::string csv = slurp(out / "theory.csv");
  const std::string row = csv.substr(csv.find('\n') + 1);
  std::vector<std::string> cells;
  std::stringstream ss(row.substr(0, row.find('\n')));
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 8u);
  EXPECT_EQ(std::stod(cells[5]), theory::delta_hat_lp(3, 0.4));
  EXPECT_GT(std::stod(cells[6]), 0.0);
}

TEST(CliTheory, InvalidAlphaExitsOne) {
  const auto r = wlp_cli("theory --alpha 1.2 --out-dir " + (work() / "theory_bad").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("alpha"), std::string::npos);
}

TEST(CliSweep, UnknownKeyIsNamed) {
  std::ofstream(work() / "bad.cfg") << "N = 50\nsparsity = 4\n";
  const auto r = wlp_cli("sweep --config " + (work() / "bad.cfg").string() + " --out-dir " + (work() / "sw_bad").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("sparsity"), std::string::npos) << r.err;
}

TEST(CliSweep, SeedOverridesConfigAndReplayIsIdentical) {
  std::ofstream(work() / "small.cfg") << "N = 40\nn_list = 20\nk = 3\nalpha_list = 0.7\nomega_list = 0,1\n"
                                         "p_list = 0.5\ntrials = 2\nmax_iters = 100\nseed = 1\n";
  const fs::path a = work() / "sw_a", b = work() / "sw_b";
  ASSERT_EQ(wlp_cli("sweep --config " + (work() / "small.cfg").string() + " --seed 5 --out-dir " + a.string()).code, 0);
  ASSERT_EQ(wlp_cli("--seed 6 sweep --config " + (work() / "small.cfg").string() + " --threads 2 --out-dir " + b.string()).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(a / "manifest.json")).at("seed"), 5);
  EXPECT_NE(slurp(a / "sweep.csv"), slurp(b / "sweep.csv"));
  expect_replay_identical(a);
  expect_replay_identical(b);
}

TEST(CliAudio, SilenceGivesCapAndMissingFileExitsOne) {
  write_wav(work() / "silence.wav", WavAudio{8000, Vector::Zero(1024)});
  const fs::path out = work() / "audio_silence";
  const auto r = wlp_cli("audio --input " + (work() / "silence.wav").string() +
                         " --num-blocks 2 --p 0.5,1 --omega 0,1 --out-dir " + out.string() + " --config " +
                         (work() / "audio.cfg").string());
  EXPECT_EQ(r.code, 1);  // config file does not exist yet
  std::ofstream(work() / "audio.cfg") << "block_len = 256\nlowfreq_cutoff_hz = 1000\nmax_iters = 50\n";
  const auto ok = wlp_cli("audio --input " + (work() / "silence.wav").string() +
                          " --num-blocks 2 --p 0.5,1 --omega 0,1 --out-dir " + out.string() + " --config " +
                          (work() / "audio.cfg").string());
  ASSERT_EQ(ok.code, 0) << ok.err;
  const std::string csv = slurp(out / "audio_snr.csv");
  EXPECT_EQ(csv, "omega,p,snr_db\n0,0.5,300.000000\n1,0.5,300.000000\n0,1,300.000000\n1,1,300.000000\n");
  for (const char* f : {"recon_p0.5_w0.wav", "recon_p0.5_w1.wav", "recon_p1_w0.wav", "recon_p1_w1.wav"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  expect_replay_identical(out);

  EXPECT_EQ(wlp_cli("audio --input " + (work() / "nope.wav").string() + " --out-dir " + out.string()).code, 1);
}

TEST(CliAudio, StereoInputIsRejected) {
  // Minimal two-channel header with one frame.
  const std::string hdr("RIFF\x28\0\0\0WAVEfmt \x10\0\0\0\x01\0\x02\0\x40\x1f\0\0\0\x7d\0\0\x04\0\x10\0data\x04\0\0\0\0\0\0\0",
                        48);
  std::ofstream(work() / "stereo.wav", std::ios::binary) << hdr;
  const auto r = wlp_cli("audio --input " + (work() / "stereo.wav").string() + " --out-dir " + (work() / "st").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("mono"), std::string::npos) << r.err;
}
