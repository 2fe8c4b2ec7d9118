#include "voxsync/cli/prep.h"

#include <atomic>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "voxsync/dsp/feature_io.h"
#include "voxsync/dsp/vad.h"
#include "voxsync/dsp/wav.h"

namespace voxsync::cli {
namespace fs = std::filesystem;

namespace {

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Calls f(line_no, line) for every non-blank, non-comment line.
template <typename F>
void ForEachLine(std::string_view text, F f) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    f(line_no, line);
  }
}

PrepRow Process(const TranscriptEntry& entry, const PrepOptions& options,
                const std::map<std::string, std::vector<int>>& durations) {
  PrepRow row;
  row.id = entry.id;
  row.text = entry.text;
  auto reject = [&row](std::string reason) {
    row.accepted = false;
    row.reason = std::move(reason);
    return row;
  };

  dsp::Waveform wave;
  try {
    wave = dsp::ReadWav(options.in_dir / entry.wav);
  } catch (const std::exception&) {
    return reject("read_error");
  }
  const dsp::FeatureExtractor& fx = dsp::DefaultExtractor();
  row.duration_s = static_cast<double>(wave.size()) / wave.sample_rate;
  if (wave.sample_rate != fx.config().sample_rate) return reject("sample_rate");

  dsp::Waveform trimmed;
  try {
    trimmed = dsp::TrimSilence(wave);
  } catch (const dsp::NoSpeechDetected&) {
    return reject("no_speech");
  } catch (const dsp::TooShort&) {
    return reject("too_short");
  }
  row.duration_s = static_cast<double>(trimmed.size()) / trimmed.sample_rate;
  if (const auto decision = dsp::FilterUtterance(trimmed); !decision) {
    return reject(decision.reason);
  }

  const auto exec = dsp::Exec::Serial();
  const dsp::MelSpectrogram mel = fx.LogMel(trimmed, exec);
  const dsp::ProsodyTrack prosody = fx.Prosody(trimmed, exec);
  row.frames = mel.frames.rows();
  if (const auto it = durations.find(entry.id); it != durations.end()) {
    try {
      row.tokens = dsp::TokenAverage(prosody, it->second);
    } catch (const dsp::DurationMismatch&) {
      return reject("duration_mismatch");
    }
  }
  const fs::path dir = options.out_dir / "features";
  dsp::WriteFeatures(dir / (entry.id + ".mel"), mel);
  dsp::WriteProsody(dir / (entry.id + ".prosody"), prosody);
  row.features = "features/" + entry.id + ".mel.f32";
  row.prosody = "features/" + entry.id + ".prosody.f32";
  row.accepted = true;
  return row;
}

}  // namespace

std::vector<TranscriptEntry> ParseTranscripts(std::string_view text) {
  std::vector<TranscriptEntry> out;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw ManifestError(line_no, "expected <wav path> TAB <transcript>");
    }
    TranscriptEntry e;
    e.wav = std::string(line.substr(0, tab));
    e.text = std::string(line.substr(tab + 1));
    e.id = e.wav.stem().string();
    if (e.id.empty()) throw ManifestError(line_no, "empty file name");
    out.push_back(std::move(e));
  });
  return out;
}

std::map<std::string, std::vector<int>> ParseDurations(std::string_view text) {
  std::map<std::string, std::vector<int>> out;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw ManifestError(line_no, "expected <id> TAB <frame counts>");
    }
    std::vector<int> counts;
    std::istringstream fields{std::string(line.substr(tab + 1))};
    std::string field;
    while (fields >> field) {
      int v = 0;
      const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || p != field.data() + field.size()) {
        throw ManifestError(line_no, "not an integer: '" + field + "'");
      }
      counts.push_back(v);
    }
    out[std::string(line.substr(0, tab))] = std::move(counts);
  });
  return out;
}

std::string ManifestLine(const PrepRow& row) {
  nlohmann::ordered_json j;
  j["id"] = row.id;
  j["text"] = row.text;
  j["status"] = row.accepted ? "accepted" : "rejected";
  if (!row.accepted) j["reason"] = row.reason;
  j["duration_s"] = row.duration_s;
  if (row.accepted) {
    j["path"] = row.features;
    j["prosody"] = row.prosody;
    j["T"] = row.frames;
  }
  if (row.tokens) {
    auto& tokens = j["tokens"] = nlohmann::ordered_json::array();
    for (const auto& t : row.tokens->tokens) {
      tokens.push_back({{"frames", t.duration_frames},
                        {"mean_pitch_hz", t.mean_pitch_hz},
                        {"mean_energy", t.mean_energy}});
    }
  }
  return j.dump();
}

PrepReport RunPrep(const PrepOptions& options) {
  const auto entries = ParseTranscripts(ReadText(options.transcripts));
  std::map<std::string, std::vector<int>> durations;
  if (options.durations) durations = ParseDurations(ReadText(*options.durations));
  fs::create_directories(options.out_dir / "features");

  // Later repeats of an id would overwrite the first one's files.
  std::vector<bool> duplicate(entries.size(), false);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    duplicate[i] = !seen.insert(entries[i].id).second;
  }

  PrepReport report;
  report.rows.resize(entries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < entries.size();) {
      if (duplicate[i]) {
        report.rows[i].id = entries[i].id;
        report.rows[i].text = entries[i].text;
        report.rows[i].reason = "duplicate_id";
        continue;
      }
      try {
        report.rows[i] = Process(entries[i], options, durations);
      } catch (const std::exception& e) {
        report.rows[i].id = entries[i].id;
        report.rows[i].text = entries[i].text;
        report.rows[i].reason = std::string("error: ") + e.what();
      }
    }
  };
  const int workers = std::max(1, options.workers);
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();

  std::ofstream manifest(options.out_dir / "manifest.jsonl", std::ios::binary | std::ios::trunc);
  if (!manifest) throw Error("cannot write manifest in " + options.out_dir.string());
  for (const PrepRow& row : report.rows) {
    manifest << ManifestLine(row) << '\n';
    if (row.accepted) {
      ++report.accepted;
    } else {
      ++report.rejected[row.reason];
    }
  }
  if (!manifest) throw Error("short write to manifest");
  return report;
}

}  // namespace voxsync::cli
