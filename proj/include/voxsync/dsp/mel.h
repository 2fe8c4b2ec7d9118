#ifndef VOXSYNC_DSP_MEL_H_
#define VOXSYNC_DSP_MEL_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "voxsync/common/error.h"
#include "voxsync/dsp/matrix.h"
#include "voxsync/dsp/waveform.h"

namespace voxsync::dsp {

// Log-mel analysis parameters. Defaults are the 24 kHz vocoder setup:
// 80 bands over 80-7600 Hz, 2048-point FFT, 1200-sample Hann window, hop 300.
struct MelConfig {
  int n_mels = 80;
  int n_fft = 2048;
  int win_length = 1200;
  int hop = 300;
  double fmin = 80.0;
  double fmax = 7600.0;
  int sample_rate = kSampleRate;

  int n_bins() const { return n_fft / 2 + 1; }
  // Number of centered frames for n samples: floor(n / hop) + 1.
  std::size_t num_frames(std::size_t n) const { return n / hop + 1; }

  friend bool operator==(const MelConfig&, const MelConfig&) = default;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class DegenerateFilter : public Error {
 public:
  explicit DegenerateFilter(int index)
      : Error("mel filter " + std::to_string(index) + " has no nonzero weight"),
        index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

// Throws InvalidConfig unless 0 <= fmin < fmax <= sr/2,
// win_length <= n_fft, and 0 < hop <= win_length.
void Validate(const MelConfig& config);

// HTK mel scale: m = 2595 log10(1 + f / 700).
inline double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Floor applied before the natural log; every log-mel value is >= ln(1e-10).
inline constexpr double kMelFloor = 1e-10;
inline const double kLogMelFloor = std::log(kMelFloor);

// Triangular filters with unit peak, centers equally spaced on the mel scale
// between mel(fmin) and mel(fmax). Rows are filters, columns FFT bins.
class MelFilterbank {
 public:
  // Throws InvalidConfig or DegenerateFilter.
  explicit MelFilterbank(const MelConfig& config);

  const MelConfig& config() const { return config_; }
  const Matrix& weights() const { return weights_; }
  double center_hz(int filter) const { return edges_hz_[filter + 1]; }
  // Half-open range of bins with nonzero weight for one filter.
  std::size_t first_bin(int filter) const { return first_[filter]; }
  std::size_t end_bin(int filter) const { return end_[filter]; }

 private:
  MelConfig config_;
  Matrix weights_;
  std::vector<double> edges_hz_;  // n_mels + 2 points
  std::vector<std::size_t> first_;
  std::vector<std::size_t> end_;
};

struct MelSpectrogram {
  Matrix frames;  // T x n_mels, natural-log magnitudes
  MelConfig config;
};

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_MEL_H_
