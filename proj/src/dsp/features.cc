#include "voxsync/dsp/features.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace voxsync::dsp {

FeatureExtractor::FeatureExtractor(const MelConfig& config,
                                   const PitchConfig& pitch)
    : config_(config), pitch_(pitch), filterbank_(config), stft_(config) {
  if (!(pitch.min_hz > 0 && pitch.min_hz < pitch.max_hz)) {
    throw InvalidConfig("pitch range must satisfy 0 < min_hz < max_hz");
  }
  if (config.sample_rate / pitch.min_hz + 1 >= config.win_length) {
    throw InvalidConfig("window too short for the lowest pitch");
  }
}

void FeatureExtractor::CheckRate(const Waveform& wave) const {
  if (wave.sample_rate != config_.sample_rate) {
    throw SampleRateMismatch(wave.sample_rate, config_.sample_rate);
  }
  if (wave.empty()) throw InvalidWaveform("empty waveform");
  Validate(wave);
}

Matrix FeatureExtractor::MagnitudeToLogMel(const Matrix& magnitude,
                                           Exec exec) const {
  const int n_mels = config_.n_mels;
  const auto frames = static_cast<std::ptrdiff_t>(magnitude.rows());
  Matrix out(magnitude.rows(), n_mels);
  const Matrix& w = filterbank_.weights();
  const int threads = exec.resolved_threads();
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (std::ptrdiff_t t = 0; t < frames; ++t) {
    const auto mag = magnitude.row(static_cast<std::size_t>(t));
    auto row = out.row(static_cast<std::size_t>(t));
    for (int m = 0; m < n_mels; ++m) {
      double acc = 0.0;
      for (std::size_t k = filterbank_.first_bin(m); k < filterbank_.end_bin(m);
           ++k) {
        acc += w(m, k) * mag[k];
      }
      row[m] = std::log(std::max(acc, kMelFloor));
    }
  }
  return out;
}

MelSpectrogram FeatureExtractor::LogMel(const Waveform& wave,
                                        Exec exec) const {
  CheckRate(wave);
  return {MagnitudeToLogMel(stft_.Magnitude(wave.samples, exec), exec),
          config_};
}

std::vector<double> FeatureExtractor::Energy(const Waveform& wave,
                                             Exec exec) const {
  CheckRate(wave);
  const Matrix mag = stft_.Magnitude(wave.samples, exec);
  std::vector<double> energy(mag.rows());
  for (std::size_t t = 0; t < mag.rows(); ++t) {
    double sum = 0.0;
    for (double v : mag.row(t)) sum += v * v;
    energy[t] = std::sqrt(sum);
  }
  return energy;
}

double NormalizedAutocorrelation(std::span<const double> x, int lag) {
  const std::size_t n = x.size();
  if (lag < 0 || static_cast<std::size_t>(lag) >= n) return 0.0;
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i + lag < n; ++i) {
    const double a = x[i];
    const double b = x[i + lag];
    ab += a * b;
    aa += a * a;
    bb += b * b;
  }
  const double denom = std::sqrt(aa * bb);
  return denom > 0.0 ? ab / denom : 0.0;
}

double PickPitch(std::span<const double> nacf, int min_lag, int max_lag,
                 double threshold, int sample_rate) {
  // nacf must cover lags 0 .. max_lag + 1.
  double best = -1.0;
  for (int lag = 2; lag <= max_lag; ++lag) {
    if (nacf[lag] > nacf[lag - 1] && nacf[lag] >= nacf[lag + 1]) {
      best = std::max(best, nacf[lag]);
    }
  }
  if (best < threshold) return 0.0;
  // Fundamental = the shortest period whose peak is close to the best one;
  // longer lags with equal peaks are its multiples.
  for (int lag = 2; lag <= max_lag; ++lag) {
    if (nacf[lag] > nacf[lag - 1] && nacf[lag] >= nacf[lag + 1] &&
        nacf[lag] >= 0.9 * best) {
      if (lag < min_lag || nacf[lag] < threshold) return 0.0;
      return static_cast<double>(sample_rate) / lag;
    }
  }
  return 0.0;
}

std::vector<double> FeatureExtractor::Pitch(const Waveform& wave,
                                            Exec exec) const {
  CheckRate(wave);
  const int sr = config_.sample_rate;
  const int win = config_.win_length;
  const int min_lag = static_cast<int>(std::lround(sr / pitch_.max_hz));
  const int max_lag = static_cast<int>(std::lround(sr / pitch_.min_hz));
  const std::size_t n = wave.size();
  const auto frames = static_cast<std::ptrdiff_t>(config_.num_frames(n));
  std::vector<double> pitch(frames, 0.0);
  const int threads = exec.resolved_threads();

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    std::vector<double> seg(win);
    std::vector<double> energy_prefix(win + 1);
    std::vector<double> nacf(max_lag + 2);
#pragma omp for schedule(static)
    for (std::ptrdiff_t t = 0; t < frames; ++t) {
      const std::ptrdiff_t base = t * config_.hop - win / 2;
      energy_prefix[0] = 0.0;
      for (int k = 0; k < win; ++k) {
        seg[k] = wave.samples[ReflectIndex(base + k, n)];
        energy_prefix[k + 1] = energy_prefix[k] + seg[k] * seg[k];
      }
      for (int lag = 0; lag <= max_lag + 1; ++lag) {
        double ab = 0.0;
        for (int i = 0; i + lag < win; ++i) ab += seg[i] * seg[i + lag];
        const double aa = energy_prefix[win - lag];
        const double bb = energy_prefix[win] - energy_prefix[lag];
        const double denom = std::sqrt(aa * bb);
        nacf[lag] = denom > 0.0 ? ab / denom : 0.0;
      }
      pitch[t] = PickPitch(nacf, min_lag, max_lag, pitch_.voicing_threshold, sr);
    }
  }
  return pitch;
}

ProsodyTrack FeatureExtractor::Prosody(const Waveform& wave, Exec exec) const {
  return {Pitch(wave, exec), Energy(wave, exec)};
}

TokenProsody TokenAverage(const ProsodyTrack& track,
                          std::span<const int> durations) {
  if (track.pitch_hz.size() != track.energy.size()) {
    throw DurationMismatch("pitch and energy tracks differ in length");
  }
  long long total = 0;
  for (int d : durations) {
    if (d < 1) throw DurationMismatch("every token needs at least one frame");
    total += d;
  }
  if (total != static_cast<long long>(track.size())) {
    throw DurationMismatch("durations sum to " + std::to_string(total) +
                           " frames, track has " +
                           std::to_string(track.size()));
  }
  TokenProsody out;
  std::size_t start = 0;
  for (int d : durations) {
    TokenStats stats;
    stats.duration_frames = d;
    double pitch_sum = 0.0, energy_sum = 0.0;
    int voiced = 0;
    for (std::size_t t = start; t < start + d; ++t) {
      energy_sum += track.energy[t];
      if (track.pitch_hz[t] > 0.0) {
        pitch_sum += track.pitch_hz[t];
        ++voiced;
      }
    }
    stats.mean_energy = energy_sum / d;
    stats.mean_pitch_hz = voiced > 0 ? pitch_sum / voiced : 0.0;
    out.tokens.push_back(stats);
    start += d;
  }
  return out;
}

const FeatureExtractor& DefaultExtractor() {
  static const FeatureExtractor extractor;
  return extractor;
}

MelSpectrogram LogMel(const Waveform& wave, Exec exec) {
  return DefaultExtractor().LogMel(wave, exec);
}

}  // namespace voxsync::dsp
