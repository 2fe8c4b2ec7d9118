#include "voxsync/dsp/vad.h"

#include <algorithm>
#include <cmath>

namespace voxsync::dsp {

std::vector<double> FrameLevelsDb(const Waveform& wave,
                                  const VadConfig& config) {
  const std::size_t len = config.frame_length(wave.sample_rate);
  if (len == 0) throw InvalidWaveform("VAD frame length is zero");
  const std::size_t n = wave.size();
  std::vector<double> levels;
  levels.reserve((n + len - 1) / len);
  for (std::size_t start = 0; start < n; start += len) {
    const std::size_t end = std::min(n, start + len);
    double sum = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      sum += static_cast<double>(wave.samples[i]) * wave.samples[i];
    }
    const double rms = std::sqrt(sum / static_cast<double>(end - start));
    const double db = rms > 0.0 ? 20.0 * std::log10(rms) : config.floor_dbfs;
    levels.push_back(std::max(db, config.floor_dbfs));
  }
  return levels;
}

std::vector<bool> DetectVoiceActivity(const Waveform& wave,
                                      const VadConfig& config) {
  const std::size_t len = config.frame_length(wave.sample_rate);
  if (wave.size() < len || len == 0) {
    throw TooShort("need at least one " + std::to_string(config.frame_ms) +
                   " ms frame, got " + std::to_string(wave.size()) +
                   " samples");
  }
  const std::vector<double> levels = FrameLevelsDb(wave, config);
  const std::size_t frames = levels.size();

  std::vector<double> sorted = levels;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.1 * frames));
  const double p10 = sorted[std::max<std::size_t>(rank, 1) - 1];
  const bool steady = sorted.back() - p10 < config.gate_db;

  std::vector<bool> raw(frames, false);
  for (std::size_t t = 0; t < frames; ++t) {
    if (levels[t] <= config.floor_dbfs) continue;
    raw[t] = steady || levels[t] > p10 + config.gate_db;
  }

  std::vector<bool> speech(frames, false);
  const int hang = std::max(1, config.hangover_frames);
  for (std::size_t t = 0; t < frames; ++t) {
    if (!raw[t]) continue;
    for (std::size_t k = t; k < std::min(frames, t + hang); ++k) {
      speech[k] = true;
    }
  }
  return speech;
}

SpeechSpan DetectSpeechSpan(const Waveform& wave, const VadConfig& config) {
  const std::vector<bool> speech = DetectVoiceActivity(wave, config);
  const auto first = std::find(speech.begin(), speech.end(), true);
  if (first == speech.end()) throw NoSpeechDetected("no speech frames");
  const auto last = std::find(speech.rbegin(), speech.rend(), true);
  const std::size_t len = config.frame_length(wave.sample_rate);
  const std::size_t begin = (first - speech.begin()) * len;
  const std::size_t end = std::min(
      wave.size(), (speech.size() - (last - speech.rbegin())) * len);
  return {begin, end};
}

Waveform TrimSilence(const Waveform& wave, const VadConfig& config) {
  const SpeechSpan span = DetectSpeechSpan(wave, config);
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.assign(wave.samples.begin() + span.begin,
                     wave.samples.begin() + span.end);
  return out;
}

UtteranceDecision FilterUtterance(std::size_t num_samples, int sample_rate) {
  const auto sr = static_cast<std::size_t>(sample_rate);
  if (num_samples * 10 < sr) return {false, "too_short"};
  if (num_samples > 40 * sr) return {false, "too_long"};
  return {true, ""};
}

}  // namespace voxsync::dsp
