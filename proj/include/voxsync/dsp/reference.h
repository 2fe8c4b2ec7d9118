#ifndef VOXSYNC_DSP_REFERENCE_H_
#define VOXSYNC_DSP_REFERENCE_H_

#include <vector>

#include "voxsync/dsp/features.h"

// Straight-line single-threaded versions of the frame kernels: a dense
// filterbank product, one FFT call per frame, the ACF computed lag by lag.
// Tests hold the parallel kernels to these; the benchmark times both.
namespace voxsync::dsp::reference {

Matrix Magnitude(const FeatureExtractor& fx, const std::vector<double>& x);
Matrix LogMel(const FeatureExtractor& fx, const Waveform& wave);
std::vector<double> Pitch(const FeatureExtractor& fx, const Waveform& wave);
std::vector<double> Energy(const FeatureExtractor& fx, const Waveform& wave);

}  // namespace voxsync::dsp::reference

#endif  // VOXSYNC_DSP_REFERENCE_H_
