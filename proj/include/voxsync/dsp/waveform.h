#ifndef VOXSYNC_DSP_WAVEFORM_H_
#define VOXSYNC_DSP_WAVEFORM_H_

#include <cstddef>
#include <string>
#include <vector>

#include "voxsync/common/error.h"

namespace voxsync::dsp {

inline constexpr int kSampleRate = 24000;

// Mono audio, samples nominally in [-1, 1].
struct Waveform {
  std::vector<float> samples;
  int sample_rate = kSampleRate;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

class InvalidWaveform : public Error {
 public:
  using Error::Error;
};

// Throws InvalidWaveform on a non-positive rate or non-finite samples.
void Validate(const Waveform& wave);

class SampleRateMismatch : public Error {
 public:
  SampleRateMismatch(int got, int want)
      : Error("sample rate " + std::to_string(got) + " Hz, expected " +
              std::to_string(want) + " Hz"),
        got_(got),
        want_(want) {}
  int got() const { return got_; }
  int want() const { return want_; }

 private:
  int got_;
  int want_;
};

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_WAVEFORM_H_
