#include "voxsync/synth/synthesizer.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace voxsync::synth {

dsp::Waveform MockGlimSynthesizer::Synthesize(
    const text::PhonemeSequence& seq,
    const std::optional<dsp::TokenProsody>& prosody) const {
  return vocoder_->Vocode((*stub_)(seq, prosody), exec_);
}

dsp::Waveform MockFastSynthesizer::Synthesize(
    const text::PhonemeSequence& seq,
    const std::optional<dsp::TokenProsody>& prosody) const {
  return RenderTones(ToneSchedule(seq, prosody));
}

dsp::Waveform RenderTones(const std::vector<ToneSegment>& schedule, int hop,
                          int sample_rate) {
  std::size_t total = 0;
  for (const ToneSegment& s : schedule) total += static_cast<std::size_t>(s.frames) * hop;
  dsp::Waveform out;
  out.sample_rate = sample_rate;
  out.samples.assign(total, 0.0f);

  const std::size_t fade = static_cast<std::size_t>(sample_rate) / 200;
  std::size_t at = 0;
  for (const ToneSegment& s : schedule) {
    const std::size_t len = static_cast<std::size_t>(s.frames) * hop;
    if (s.hz > 0) {
      const std::size_t ramp = std::min(fade, len / 2);
      for (std::size_t i = 0; i < len; ++i) {
        double gain = 1.0;
        const std::size_t edge = std::min(i, len - 1 - i);
        if (edge < ramp) {
          gain = 0.5 - 0.5 * std::cos(std::numbers::pi * edge / ramp);
        }
        out.samples[at + i] =
            static_cast<float>(gain * HarmonicSample(s.hz, i, sample_rate));
      }
    }
    at += len;
  }
  return out;
}

}  // namespace voxsync::synth
