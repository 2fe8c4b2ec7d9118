#include "voxsync/dsp/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>

namespace voxsync::dsp {
namespace {

void PutU16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t GetU32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[at + i]);
  return v;
}

std::uint16_t GetU16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[at]) |
                                    (static_cast<std::uint8_t>(b[at + 1]) << 8));
}

}  // namespace

std::string EncodeWav(const Waveform& wave) {
  if (wave.sample_rate <= 0) throw InvalidWaveform("sample rate must be > 0");
  const std::uint64_t data_bytes = 2 * static_cast<std::uint64_t>(wave.size());
  if (data_bytes > 0xFFFFFFFFull - 36) throw InvalidWaveform("wave too long for RIFF");
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(out, static_cast<std::uint32_t>(36 + data_bytes));
  out += "WAVE";
  out += "fmt ";
  PutU32(out, 16);
  PutU16(out, 1);  // PCM
  PutU16(out, 1);  // mono
  PutU32(out, static_cast<std::uint32_t>(wave.sample_rate));
  PutU32(out, static_cast<std::uint32_t>(wave.sample_rate) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  out += "data";
  PutU32(out, static_cast<std::uint32_t>(data_bytes));
  for (float s : wave.samples) {
    if (!std::isfinite(s)) throw InvalidWaveform("non-finite sample");
    const double x = std::clamp(static_cast<double>(s), -1.0, 1.0) * 32767.0;
    const auto q = static_cast<std::int16_t>(std::round(x));
    PutU16(out, static_cast<std::uint16_t>(q));
  }
  return out;
}

Waveform DecodeWav(std::string_view b) {
  if (b.size() < 12 || b.substr(0, 4) != "RIFF" || b.substr(8, 4) != "WAVE") {
    throw WavFormatError("not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  Waveform wave;
  std::size_t at = 12;
  while (at + 8 <= b.size()) {
    const std::string_view id = b.substr(at, 4);
    const std::uint32_t size = GetU32(b, at + 4);
    const std::size_t body = at + 8;
    if (size > b.size() - body) throw WavFormatError("truncated chunk");
    if (id == "fmt ") {
      if (size < 16) throw WavFormatError("short fmt chunk");
      const std::uint16_t format = GetU16(b, body);
      const std::uint16_t channels = GetU16(b, body + 2);
      const std::uint16_t bits = GetU16(b, body + 14);
      if (format != 1 || channels != 1 || bits != 16) {
        throw WavFormatError("only PCM16 mono is supported");
      }
      wave.sample_rate = static_cast<int>(GetU32(b, body + 4));
      if (wave.sample_rate <= 0) throw WavFormatError("zero sample rate");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw WavFormatError("data chunk before fmt chunk");
      wave.samples.resize(size / 2);
      for (std::size_t i = 0; i < size / 2; ++i) {
        const auto q = static_cast<std::int16_t>(GetU16(b, body + 2 * i));
        wave.samples[i] =
            static_cast<float>(std::max(-1.0, q / 32767.0));
      }
      return wave;
    }
    at = body + size + (size & 1);
  }
  throw WavFormatError(have_fmt ? "missing data chunk" : "missing fmt chunk");
}

Waveform ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return DecodeWav(bytes);
}

void WriteWav(const std::filesystem::path& path, const Waveform& wave) {
  const std::string bytes = EncodeWav(wave);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("short write to " + path.string());
}

}  // namespace voxsync::dsp
