#ifndef VOXSYNC_DSP_FEATURES_H_
#define VOXSYNC_DSP_FEATURES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "voxsync/dsp/exec.h"
#include "voxsync/dsp/matrix.h"
#include "voxsync/dsp/mel.h"
#include "voxsync/dsp/stft.h"
#include "voxsync/dsp/waveform.h"

namespace voxsync::dsp {

// Autocorrelation pitch tracker settings. Lags run from
// sample_rate / max_hz to sample_rate / min_hz.
struct PitchConfig {
  double min_hz = 80.0;
  double max_hz = 400.0;
  double voicing_threshold = 0.5;
};

// Per-frame pitch (0 = unvoiced) and energy on the log-mel frame grid.
struct ProsodyTrack {
  std::vector<double> pitch_hz;
  std::vector<double> energy;

  std::size_t size() const { return pitch_hz.size(); }
};

struct TokenStats {
  int duration_frames = 0;
  double mean_pitch_hz = 0.0;
  double mean_energy = 0.0;
};

struct TokenProsody {
  std::vector<TokenStats> tokens;
};

class DurationMismatch : public Error {
 public:
  using Error::Error;
};

// Log-mel, energy and pitch extraction for one MelConfig. The filterbank and
// FFT plans are built once; all methods are const and thread-safe, so one
// extractor can serve every worker.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(const MelConfig& config = {},
                            const PitchConfig& pitch = {});

  const MelConfig& config() const { return config_; }
  const PitchConfig& pitch_config() const { return pitch_; }
  const MelFilterbank& filterbank() const { return filterbank_; }
  const Stft& stft() const { return stft_; }

  // Throws SampleRateMismatch, or InvalidWaveform for empty or non-finite input.
  MelSpectrogram LogMel(const Waveform& wave, Exec exec = {}) const;

  // ln(max(F * magnitude, 1e-10)) for a T x n_bins magnitude matrix.
  Matrix MagnitudeToLogMel(const Matrix& magnitude, Exec exec = {}) const;

  // L2 norm of each frame's STFT magnitude vector.
  std::vector<double> Energy(const Waveform& wave, Exec exec = {}) const;

  // Normalized-autocorrelation pitch over 1200-sample windows centered on
  // the log-mel frame positions. A frame is voiced when its fundamental
  // period lag lies in the configured range and its normalized
  // autocorrelation peak reaches the voicing threshold.
  std::vector<double> Pitch(const Waveform& wave, Exec exec = {}) const;

  ProsodyTrack Prosody(const Waveform& wave, Exec exec = {}) const;

 private:
  void CheckRate(const Waveform& wave) const;

  MelConfig config_;
  PitchConfig pitch_;
  MelFilterbank filterbank_;
  Stft stft_;
};

// Pitch decision for one analysis window given its normalized
// autocorrelation r[0..max_lag+1]. Returns 0 for unvoiced.
double PickPitch(std::span<const double> nacf, int min_lag, int max_lag,
                 double threshold, int sample_rate);

// Normalized autocorrelation r(lag) = <a, b> / sqrt(<a,a><b,b>) with
// a = x[0, n-lag), b = x[lag, n); 0 when either segment has no energy.
double NormalizedAutocorrelation(std::span<const double> x, int lag);

// Means over each token's frame span; pitch averages only voiced frames.
// Throws DurationMismatch unless every duration is >= 1 and they sum to the
// track length.
TokenProsody TokenAverage(const ProsodyTrack& track,
                          std::span<const int> durations);

// Convenience wrappers over a process-wide extractor for the default config.
const FeatureExtractor& DefaultExtractor();
MelSpectrogram LogMel(const Waveform& wave, Exec exec = {});

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_FEATURES_H_
