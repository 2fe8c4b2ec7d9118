#include "voxsync/synth/acoustic_stub.h"

#include <algorithm>
#include <numbers>

#include "voxsync/synth/phone_table.h"

namespace voxsync::synth {

double HarmonicSample(double hz, std::size_t i, int sample_rate) {
  double v = 0.0;
  for (std::size_t h = 0; h < kHarmonicAmplitudes.size(); ++h) {
    const double phase = 2.0 * std::numbers::pi * hz * static_cast<double>(h + 1) *
                         static_cast<double>(i) / sample_rate;
    v += kHarmonicAmplitudes[h] * std::sin(phase);
  }
  return v;
}

std::vector<ToneSegment> ToneSchedule(
    const text::PhonemeSequence& seq,
    const std::optional<dsp::TokenProsody>& prosody) {
  if (prosody && prosody->tokens.size() != seq.units.size()) {
    throw dsp::DurationMismatch(
        "prosody has " + std::to_string(prosody->tokens.size()) +
        " tokens for " + std::to_string(seq.units.size()) + " units");
  }
  std::vector<ToneSegment> out;
  out.reserve(seq.units.size());
  for (std::size_t i = 0; i < seq.units.size(); ++i) {
    const text::PhonemeUnit& u = seq.units[i];
    ToneSegment seg;
    seg.frames = UnitFrames(u);
    if (u.kind == text::UnitKind::kPhone) seg.hz = ToneFrequency(u.phone);
    if (prosody) {
      const dsp::TokenStats& tok = prosody->tokens[i];
      if (tok.duration_frames < 1) {
        throw dsp::DurationMismatch("token duration must be >= 1 frame");
      }
      seg.frames = tok.duration_frames;
      if (seg.hz > 0 && tok.mean_pitch_hz > 0) seg.hz = tok.mean_pitch_hz;
    }
    out.push_back(seg);
  }
  return out;
}

AcousticStub::AcousticStub(std::shared_ptr<const dsp::FeatureExtractor> fx)
    : fx_(std::move(fx)) {
  templates_.resize(kMaxToneHz - kMinToneHz + 1);
  for (int i = 0; i < text::Phone::kNumSymbols; ++i) {
    const int hz = ToneFrequency(text::Phone::FromIndex(i));
    templates_[hz - kMinToneHz] = ToneColumn(hz);
  }
}

std::vector<double> AcousticStub::ToneColumn(double hz) const {
  const dsp::MelConfig& c = fx_->config();
  // Long enough that the middle frame's window sees only the steady tone.
  dsp::Waveform tone;
  tone.sample_rate = c.sample_rate;
  tone.samples.resize(4 * static_cast<std::size_t>(c.win_length));
  for (std::size_t i = 0; i < tone.samples.size(); ++i) {
    tone.samples[i] = static_cast<float>(HarmonicSample(hz, i, c.sample_rate));
  }
  const dsp::Matrix mel = fx_->LogMel(tone, dsp::Exec::Serial()).frames;
  const auto mid = mel.row(mel.rows() / 2);
  return {mid.begin(), mid.end()};
}

dsp::MelSpectrogram AcousticStub::Render(
    const std::vector<ToneSegment>& schedule) const {
  const dsp::MelConfig& c = fx_->config();
  std::size_t total = 0;
  for (const ToneSegment& s : schedule) total += s.frames;
  dsp::MelSpectrogram mel{dsp::Matrix(total, c.n_mels, dsp::kLogMelFloor), c};

  std::size_t t = 0;
  for (const ToneSegment& s : schedule) {
    if (s.hz > 0) {
      std::vector<double> custom;
      const std::vector<double>* column = nullptr;
      if (s.hz == std::round(s.hz) && s.hz >= kMinToneHz && s.hz <= kMaxToneHz) {
        column = &templates_[static_cast<int>(s.hz) - kMinToneHz];
      }
      if (column == nullptr || column->empty()) {
        custom = ToneColumn(s.hz);
        column = &custom;
      }
      for (int f = 0; f < s.frames; ++f) {
        std::copy(column->begin(), column->end(), mel.frames.row(t + f).begin());
      }
    }
    t += s.frames;
  }
  return mel;
}

}  // namespace voxsync::synth
