#include "voxsync/dsp/reference.h"

#include <algorithm>
#include <cmath>
#include <complex>

namespace voxsync::dsp::reference {

Matrix Magnitude(const FeatureExtractor& fx, const std::vector<double>& x) {
  const MelConfig& c = fx.config();
  const Stft& stft = fx.stft();
  const std::size_t frames = c.num_frames(x.size());
  Matrix out(frames, c.n_bins());
  std::vector<double> buf(c.n_fft);
  std::vector<std::complex<double>> spec(c.n_bins());
  for (std::size_t t = 0; t < frames; ++t) {
    const auto base = static_cast<std::ptrdiff_t>(t * c.hop) - c.n_fft / 2;
    for (int j = 0; j < c.n_fft; ++j) {
      buf[j] = x[ReflectIndex(base + j, x.size())] * stft.window()[j];
    }
    stft.ForwardFrame(buf, spec);
    for (int k = 0; k < c.n_bins(); ++k) out(t, k) = std::abs(spec[k]);
  }
  return out;
}

Matrix LogMel(const FeatureExtractor& fx, const Waveform& wave) {
  const std::vector<double> x(wave.samples.begin(), wave.samples.end());
  const Matrix mag = Magnitude(fx, x);
  const Matrix& w = fx.filterbank().weights();
  Matrix out(mag.rows(), w.rows());
  for (std::size_t t = 0; t < mag.rows(); ++t) {
    for (std::size_t m = 0; m < w.rows(); ++m) {
      double acc = 0.0;
      for (std::size_t k = 0; k < w.cols(); ++k) acc += w(m, k) * mag(t, k);
      out(t, m) = std::log(std::max(acc, kMelFloor));
    }
  }
  return out;
}

std::vector<double> Pitch(const FeatureExtractor& fx, const Waveform& wave) {
  const MelConfig& c = fx.config();
  const PitchConfig& p = fx.pitch_config();
  const int min_lag = static_cast<int>(std::lround(c.sample_rate / p.max_hz));
  const int max_lag = static_cast<int>(std::lround(c.sample_rate / p.min_hz));
  const std::size_t frames = c.num_frames(wave.size());
  std::vector<double> pitch(frames);
  std::vector<double> seg(c.win_length);
  std::vector<double> nacf(max_lag + 2);
  for (std::size_t t = 0; t < frames; ++t) {
    const auto base = static_cast<std::ptrdiff_t>(t * c.hop) - c.win_length / 2;
    for (int k = 0; k < c.win_length; ++k) {
      seg[k] = wave.samples[ReflectIndex(base + k, wave.size())];
    }
    for (int lag = 0; lag <= max_lag + 1; ++lag) {
      nacf[lag] = NormalizedAutocorrelation(seg, lag);
    }
    pitch[t] = PickPitch(nacf, min_lag, max_lag, p.voicing_threshold,
                         c.sample_rate);
  }
  return pitch;
}

std::vector<double> Energy(const FeatureExtractor& fx, const Waveform& wave) {
  const std::vector<double> x(wave.samples.begin(), wave.samples.end());
  const Matrix mag = Magnitude(fx, x);
  std::vector<double> out(mag.rows());
  for (std::size_t t = 0; t < mag.rows(); ++t) {
    double sum = 0.0;
    for (std::size_t k = 0; k < mag.cols(); ++k) sum += mag(t, k) * mag(t, k);
    out[t] = std::sqrt(sum);
  }
  return out;
}

}  // namespace voxsync::dsp::reference
