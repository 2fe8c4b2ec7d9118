#ifndef VOXSYNC_DSP_WAV_H_
#define VOXSYNC_DSP_WAV_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "voxsync/common/error.h"
#include "voxsync/dsp/waveform.h"

namespace voxsync::dsp {

class WavFormatError : public Error {
 public:
  using Error::Error;
};

// RIFF/WAVE, PCM16 little-endian, mono. Samples are clamped to [-1, 1],
// scaled by 32767 and rounded half away from zero.
std::string EncodeWav(const Waveform& wave);

// Accepts PCM16 mono only; unknown chunks are skipped. Samples are divided
// by 32767 and clamped to [-1, 1].
Waveform DecodeWav(std::string_view bytes);

Waveform ReadWav(const std::filesystem::path& path);
void WriteWav(const std::filesystem::path& path, const Waveform& wave);

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_WAV_H_
