#include "voxsync/dsp/feature_io.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>

namespace voxsync::dsp {
namespace fs = std::filesystem;

namespace {

fs::path WithSuffix(const fs::path& base, const char* suffix) {
  return fs::path(base.string() + suffix);
}

nlohmann::ordered_json ConfigJson(const MelConfig& c) {
  return {{"sample_rate", c.sample_rate}, {"n_mels", c.n_mels},
          {"n_fft", c.n_fft},             {"win_length", c.win_length},
          {"hop", c.hop},                 {"fmin", c.fmin},
          {"fmax", c.fmax}};
}

void WriteFloats(const fs::path& data, const Matrix& m) {
  static_assert(std::endian::native == std::endian::little,
                "feature files are written in native little-endian order");
  std::ofstream out(data, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + data.string());
  for (std::size_t t = 0; t < m.rows(); ++t) {
    for (double v : m.row(t)) {
      const auto f = static_cast<float>(v);
      out.write(reinterpret_cast<const char*>(&f), sizeof f);
    }
  }
  if (!out) throw Error("short write to " + data.string());
}

Matrix ReadFloats(const fs::path& data, std::size_t rows, std::size_t cols) {
  std::ifstream in(data, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() != rows * cols * sizeof(float)) {
    throw Error("feature file size does not match its sidecar shape");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    float f;
    std::memcpy(&f, bytes.data() + i * sizeof f, sizeof f);
    m.data()[i] = f;
  }
  return m;
}

void WriteSidecar(const fs::path& base, const nlohmann::ordered_json& doc) {
  std::ofstream side(WithSuffix(base, ".json"), std::ios::trunc);
  side << doc.dump(2) << "\n";
  if (!side) throw Error("cannot write sidecar for " + base.string());
}

}  // namespace

std::string FeatureSidecar(const MelSpectrogram& mel) {
  nlohmann::ordered_json doc;
  doc["format"] = "float32-le";
  doc["layout"] = "row-major";
  doc["shape"] = {mel.frames.rows(), mel.frames.cols()};
  doc["mel"] = ConfigJson(mel.config);
  return doc.dump(2) + "\n";
}

fs::path WriteFeatures(const fs::path& base, const MelSpectrogram& mel) {
  const fs::path data = WithSuffix(base, ".f32");
  WriteFloats(data, mel.frames);
  std::ofstream side(WithSuffix(base, ".json"), std::ios::trunc);
  side << FeatureSidecar(mel);
  if (!side) throw Error("cannot write sidecar for " + data.string());
  return data;
}

MelSpectrogram ReadFeatures(const fs::path& base) {
  std::ifstream side(WithSuffix(base, ".json"));
  if (!side) throw Error("missing sidecar for " + base.string());
  const auto doc = nlohmann::json::parse(side);
  MelSpectrogram mel;
  const auto& c = doc.at("mel");
  mel.config.sample_rate = c.at("sample_rate");
  mel.config.n_mels = c.at("n_mels");
  mel.config.n_fft = c.at("n_fft");
  mel.config.win_length = c.at("win_length");
  mel.config.hop = c.at("hop");
  mel.config.fmin = c.at("fmin");
  mel.config.fmax = c.at("fmax");
  const std::size_t rows = doc.at("shape").at(0);
  const std::size_t cols = doc.at("shape").at(1);

  mel.frames = ReadFloats(WithSuffix(base, ".f32"), rows, cols);
  return mel;
}

fs::path WriteProsody(const fs::path& base, const ProsodyTrack& track) {
  if (track.pitch_hz.size() != track.energy.size()) {
    throw DurationMismatch("pitch and energy tracks differ in length");
  }
  Matrix m(track.size(), 2);
  for (std::size_t t = 0; t < track.size(); ++t) {
    m(t, 0) = track.pitch_hz[t];
    m(t, 1) = track.energy[t];
  }
  const fs::path data = WithSuffix(base, ".f32");
  WriteFloats(data, m);
  nlohmann::ordered_json doc;
  doc["format"] = "float32-le";
  doc["layout"] = "row-major";
  doc["shape"] = {track.size(), 2};
  doc["columns"] = {"pitch_hz", "energy"};
  WriteSidecar(base, doc);
  return data;
}

ProsodyTrack ReadProsody(const fs::path& base) {
  std::ifstream side(WithSuffix(base, ".json"));
  if (!side) throw Error("missing sidecar for " + base.string());
  const auto doc = nlohmann::json::parse(side);
  const std::size_t rows = doc.at("shape").at(0);
  const Matrix m = ReadFloats(WithSuffix(base, ".f32"), rows, 2);
  ProsodyTrack track;
  for (std::size_t t = 0; t < rows; ++t) {
    track.pitch_hz.push_back(m(t, 0));
    track.energy.push_back(m(t, 1));
  }
  return track;
}

}  // namespace voxsync::dsp
