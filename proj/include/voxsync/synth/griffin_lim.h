#ifndef VOXSYNC_SYNTH_GRIFFIN_LIM_H_
#define VOXSYNC_SYNTH_GRIFFIN_LIM_H_

#include <memory>

#include "voxsync/common/error.h"
#include "voxsync/dsp/features.h"

namespace voxsync::synth {

class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

// Mel -> waveform by filterbank pseudo-inverse and Griffin-Lim phase
// recovery, starting from zero phase. Output has (T - 1) * hop samples and
// is peak-normalized to 0.9 unless its peak is below 1e-6.
class GriffinLimVocoder {
 public:
  explicit GriffinLimVocoder(std::shared_ptr<const dsp::FeatureExtractor> fx,
                             int iterations = 32);

  int iterations() const { return iterations_; }

  // Throws ConfigMismatch when mel.config differs from the extractor's.
  dsp::Waveform Vocode(const dsp::MelSpectrogram& mel,
                       dsp::Exec exec = {}) const;

  // Linear magnitude estimate: max(0, pinv(F) exp(mel)) per frame.
  dsp::Matrix InverseMel(const dsp::Matrix& log_mel) const;

 private:
  std::shared_ptr<const dsp::FeatureExtractor> fx_;
  int iterations_;
  dsp::Matrix pinv_;  // n_bins x n_mels
};

}  // namespace voxsync::synth

#endif  // VOXSYNC_SYNTH_GRIFFIN_LIM_H_
