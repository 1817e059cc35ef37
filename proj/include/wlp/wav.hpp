#pragma once

// 16-bit PCM mono WAV reading and writing. Samples are normalized to [-1, 1).

#include "wlp/core.hpp"

#include <filesystem>
#include <stdexcept>

namespace wlp {

class WavError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WavAudio {
  int sample_rate = 44100;
  Vector samples;
};

WavAudio read_wav(const std::filesystem::path& path);

// Samples outside [-1, 1] are clipped.
void write_wav(const std::filesystem::path& path, const WavAudio& audio);

}  // namespace wlp
