#ifndef VOXSYNC_SYNTH_ACOUSTIC_STUB_H_
#define VOXSYNC_SYNTH_ACOUSTIC_STUB_H_

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "voxsync/dsp/features.h"
#include "voxsync/text/phonemize.h"

namespace voxsync::synth {

// Relative amplitudes of the fundamental and two harmonics (0, -6, -12 dB).
inline const std::array<double, 3> kHarmonicAmplitudes = {
    0.5, 0.5 * std::pow(10.0, -6.0 / 20.0), 0.5 * std::pow(10.0, -12.0 / 20.0)};

// Sample i of the harmonic tone at hz, phase zero at i = 0.
double HarmonicSample(double hz, std::size_t i, int sample_rate);

// One step of the tone schedule shared by both mock backends.
struct ToneSegment {
  int frames = 0;
  double hz = 0.0;  // 0 = silent
};

// Maps a phoneme sequence to per-unit frame counts and tone frequencies.
// With prosody, token i describes unit i: its duration replaces the unit's
// default and a nonzero mean pitch replaces the phone's tone. Throws
// dsp::DurationMismatch when the token count differs from the unit count.
std::vector<ToneSegment> ToneSchedule(
    const text::PhonemeSequence& seq,
    const std::optional<dsp::TokenProsody>& prosody = std::nullopt);

// Stand-in acoustic model: each phone frame is the log-mel column of a
// steady harmonic tone at the phone's frequency; silent units sit at the mel
// floor. Templates for every inventory tone are computed at construction.
class AcousticStub {
 public:
  explicit AcousticStub(std::shared_ptr<const dsp::FeatureExtractor> fx);

  dsp::MelSpectrogram Render(const std::vector<ToneSegment>& schedule) const;
  dsp::MelSpectrogram operator()(
      const text::PhonemeSequence& seq,
      const std::optional<dsp::TokenProsody>& prosody = std::nullopt) const {
    return Render(ToneSchedule(seq, prosody));
  }

  // Log-mel column of the harmonic tone at hz.
  std::vector<double> ToneColumn(double hz) const;

 private:
  std::shared_ptr<const dsp::FeatureExtractor> fx_;
  std::vector<std::vector<double>> templates_;  // by whole hertz from 100
};

}  // namespace voxsync::synth

#endif  // VOXSYNC_SYNTH_ACOUSTIC_STUB_H_
