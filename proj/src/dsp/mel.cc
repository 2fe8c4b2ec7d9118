#include "voxsync/dsp/mel.h"

#include <cmath>

namespace voxsync::dsp {

void Validate(const Waveform& wave) {
  if (wave.sample_rate <= 0) throw InvalidWaveform("sample rate must be > 0");
  for (float s : wave.samples) {
    if (!std::isfinite(s)) throw InvalidWaveform("non-finite sample");
  }
}

void Validate(const MelConfig& c) {
  if (c.sample_rate <= 0) throw InvalidConfig("sample_rate must be > 0");
  if (c.n_mels <= 0) throw InvalidConfig("n_mels must be > 0");
  if (c.n_fft <= 0 || c.n_fft % 2 != 0) {
    throw InvalidConfig("n_fft must be a positive even number");
  }
  if (c.win_length <= 0 || c.win_length > c.n_fft) {
    throw InvalidConfig("win_length must be in (0, n_fft]");
  }
  if ((c.n_fft - c.win_length) % 2 != 0) {
    throw InvalidConfig("n_fft - win_length must be even");
  }
  if (c.hop <= 0 || c.hop > c.win_length) {
    throw InvalidConfig("hop must be in (0, win_length]");
  }
  if (!(c.fmin >= 0.0 && c.fmin < c.fmax && c.fmax <= c.sample_rate / 2.0)) {
    throw InvalidConfig("need 0 <= fmin < fmax <= sample_rate / 2");
  }
}

MelFilterbank::MelFilterbank(const MelConfig& config) : config_(config) {
  Validate(config);
  const int n_mels = config.n_mels;
  const int bins = config.n_bins();
  const double mel_lo = HzToMel(config.fmin);
  const double mel_hi = HzToMel(config.fmax);

  edges_hz_.resize(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i) {
    edges_hz_[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));
  }

  weights_ = Matrix(n_mels, bins);
  first_.assign(n_mels, 0);
  end_.assign(n_mels, 0);
  const double bin_hz = static_cast<double>(config.sample_rate) / config.n_fft;
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges_hz_[m];
    const double center = edges_hz_[m + 1];
    const double hi = edges_hz_[m + 2];
    if (!(lo < center && center < hi)) throw DegenerateFilter(m);
    bool any = false;
    for (int k = 0; k < bins; ++k) {
      const double f = k * bin_hz;
      const double w = std::max(
          0.0, std::min((f - lo) / (center - lo), (hi - f) / (hi - center)));
      if (w <= 0.0) continue;
      weights_(m, k) = w;
      if (!any) first_[m] = k;
      end_[m] = k + 1;
      any = true;
    }
    if (!any) throw DegenerateFilter(m);
  }
}

}  // namespace voxsync::dsp
