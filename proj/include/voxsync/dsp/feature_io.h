#ifndef VOXSYNC_DSP_FEATURE_IO_H_
#define VOXSYNC_DSP_FEATURE_IO_H_

#include <filesystem>
#include <string>

#include "voxsync/dsp/features.h"
#include "voxsync/dsp/mel.h"

namespace voxsync::dsp {

// Writes `{base}.f32` (little-endian float32, row-major T x n_mels) and
// `{base}.json` with the MelConfig and shape. Returns the .f32 path.
std::filesystem::path WriteFeatures(const std::filesystem::path& base,
                                    const MelSpectrogram& mel);

MelSpectrogram ReadFeatures(const std::filesystem::path& base);

// The sidecar document, exactly as written.
std::string FeatureSidecar(const MelSpectrogram& mel);

// Same layout for a prosody track: T x 2 rows of (pitch_hz, energy).
std::filesystem::path WriteProsody(const std::filesystem::path& base,
                                   const ProsodyTrack& track);
ProsodyTrack ReadProsody(const std::filesystem::path& base);

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_FEATURE_IO_H_
