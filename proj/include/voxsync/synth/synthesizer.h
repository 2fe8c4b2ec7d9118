#ifndef VOXSYNC_SYNTH_SYNTHESIZER_H_
#define VOXSYNC_SYNTH_SYNTHESIZER_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "voxsync/dsp/features.h"
#include "voxsync/dsp/waveform.h"
#include "voxsync/synth/acoustic_stub.h"
#include "voxsync/synth/griffin_lim.h"
#include "voxsync/text/phonemize.h"

namespace voxsync::synth {

// Phonemes in, 24 kHz audio out. Implementations are immutable after
// construction and deterministic: equal inputs give bit-identical output.
class Synthesizer {
 public:
  virtual ~Synthesizer() = default;

  virtual std::string_view backend() const = 0;
  virtual dsp::Waveform Synthesize(
      const text::PhonemeSequence& seq,
      const std::optional<dsp::TokenProsody>& prosody = std::nullopt) const = 0;
};

// Acoustic stub followed by the Griffin-Lim vocoder.
class MockGlimSynthesizer final : public Synthesizer {
 public:
  MockGlimSynthesizer(std::shared_ptr<const AcousticStub> stub,
                      std::shared_ptr<const GriffinLimVocoder> vocoder,
                      dsp::Exec exec = dsp::Exec::Serial())
      : stub_(std::move(stub)), vocoder_(std::move(vocoder)), exec_(exec) {}

  std::string_view backend() const override { return "mock_glim"; }
  dsp::Waveform Synthesize(const text::PhonemeSequence& seq,
                           const std::optional<dsp::TokenProsody>& prosody =
                               std::nullopt) const override;

 private:
  std::shared_ptr<const AcousticStub> stub_;
  std::shared_ptr<const GriffinLimVocoder> vocoder_;
  dsp::Exec exec_;
};

// The same tone schedule rendered directly as samples, no STFT.
class MockFastSynthesizer final : public Synthesizer {
 public:
  std::string_view backend() const override { return "mock_fast"; }
  dsp::Waveform Synthesize(const text::PhonemeSequence& seq,
                           const std::optional<dsp::TokenProsody>& prosody =
                               std::nullopt) const override;
};

// frames * 300 samples per segment; tones start at phase zero and fade in and
// out over 5 ms so that segment joins do not click.
dsp::Waveform RenderTones(const std::vector<ToneSegment>& schedule,
                          int hop = 300, int sample_rate = dsp::kSampleRate);

}  // namespace voxsync::synth

#endif  // VOXSYNC_SYNTH_SYNTHESIZER_H_
