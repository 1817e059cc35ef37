#include "wlp/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace wlp {

namespace {

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void put32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

}  // namespace

WavAudio read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError("cannot open WAV file " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto bad = [&](const std::string& why) { return WavError(path.string() + ": " + why); };

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw bad("not a RIFF/WAVE file");

  bool have_fmt = false;
  int channels = 0;
  int bits = 0;
  WavAudio audio;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw bad("truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw bad("short fmt chunk");
      const std::uint16_t format = le16(bytes.data() + body);
      channels = le16(bytes.data() + body + 2);
      audio.sample_rate = static_cast<int>(le32(bytes.data() + body + 4));
      bits = le16(bytes.data() + body + 14);
      if (format != 1) throw bad("only PCM WAV is supported");
      if (channels != 1) throw bad("expected mono audio, found " + std::to_string(channels) + " channels");
      if (bits != 16) throw bad("expected 16-bit samples, found " + std::to_string(bits));
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw bad("data chunk precedes fmt chunk");
      const std::size_t count = size / 2;
      audio.samples.resize(static_cast<Index>(count));
      for (std::size_t i = 0; i < count; ++i) {
        const auto raw = static_cast<std::int16_t>(le16(bytes.data() + body + 2 * i));
        audio.samples[static_cast<Index>(i)] = raw / 32768.0;
      }
      return audio;
    }
    pos = body + size + (size & 1u);
  }
  throw bad("no data chunk");
}

void write_wav(const std::filesystem::path& path, const WavAudio& audio) {
  const auto count = static_cast<std::uint32_t>(audio.samples.size());
  std::vector<unsigned char> out;
  out.reserve(44 + 2 * static_cast<std::size_t>(count));
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put32(out, 36 + 2 * count);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(audio.sample_rate));
  put32(out, static_cast<std::uint32_t>(audio.sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put32(out, 2 * count);
  for (Index i = 0; i < audio.samples.size(); ++i) {
    const double v = std::clamp(audio.samples[i], -1.0, 1.0);
    const auto q = static_cast<std::int16_t>(std::clamp(std::lround(v * 32768.0), -32768L, 32767L));
    put16(out, static_cast<std::uint16_t>(q));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw WavError("cannot write WAV file " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw WavError("failed writing WAV file " + path.string());
}

}  // namespace wlp
