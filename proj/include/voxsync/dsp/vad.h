#ifndef VOXSYNC_DSP_VAD_H_
#define VOXSYNC_DSP_VAD_H_

#include <cstddef>
#include <string>
#include <vector>

#include "voxsync/common/error.h"
#include "voxsync/dsp/waveform.h"

namespace voxsync::dsp {

// Energy-gate voice activity detection over non-overlapping frames.
// A frame is speech when its RMS level exceeds the 10th-percentile frame
// level by gate_db. Frames at or below floor_dbfs never count as speech.
// If the loudest frame is within gate_db of the percentile (a steady signal),
// every frame above the floor is speech. Each speech frame then keeps the
// next hangover_frames - 1 frames switched on.
struct VadConfig {
  int frame_ms = 30;
  double gate_db = 6.0;
  int hangover_frames = 3;
  double floor_dbfs = -100.0;

  int frame_length(int sample_rate) const {
    return sample_rate * frame_ms / 1000;
  }
};

class TooShort : public Error {
 public:
  using Error::Error;
};

class NoSpeechDetected : public Error {
 public:
  using Error::Error;
};

// RMS level of each frame in dBFS, clamped below at floor_dbfs. The last
// frame may be partial.
std::vector<double> FrameLevelsDb(const Waveform& wave, const VadConfig& config);

// Throws TooShort when the wave is shorter than one frame.
std::vector<bool> DetectVoiceActivity(const Waveform& wave,
                                      const VadConfig& config = {});

// Half-open sample range from the first to the last speech frame.
struct SpeechSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Throws TooShort or NoSpeechDetected.
SpeechSpan DetectSpeechSpan(const Waveform& wave, const VadConfig& config = {});

// Drops leading and trailing non-speech frames. Throws NoSpeechDetected.
Waveform TrimSilence(const Waveform& wave, const VadConfig& config = {});

struct UtteranceDecision {
  bool accepted = false;
  std::string reason;  // "too_short" or "too_long" on rejection

  explicit operator bool() const { return accepted; }
};

// Accepts 0.1 s <= duration <= 40 s, compared in whole samples.
UtteranceDecision FilterUtterance(std::size_t num_samples, int sample_rate);
inline UtteranceDecision FilterUtterance(const Waveform& wave) {
  return FilterUtterance(wave.size(), wave.sample_rate);
}

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_VAD_H_
