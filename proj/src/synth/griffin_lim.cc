#include "voxsync/synth/griffin_lim.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace voxsync::synth {

GriffinLimVocoder::GriffinLimVocoder(
    std::shared_ptr<const dsp::FeatureExtractor> fx, int iterations)
    : fx_(std::move(fx)), iterations_(iterations) {
  if (iterations < 0) throw dsp::InvalidConfig("iterations must be >= 0");
  const dsp::Matrix& w = fx_->filterbank().weights();
  const auto rows = static_cast<Eigen::Index>(w.rows());
  const auto cols = static_cast<Eigen::Index>(w.cols());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      f(w.data().data(), rows, cols);
  // The filters are linearly independent, so pinv(F) = F^T (F F^T)^-1.
  const Eigen::MatrixXd gram = f * f.transpose();
  const Eigen::MatrixXd x = gram.ldlt().solve(Eigen::MatrixXd(f));
  pinv_ = dsp::Matrix(w.cols(), w.rows());
  for (Eigen::Index k = 0; k < cols; ++k) {
    for (Eigen::Index m = 0; m < rows; ++m) pinv_(k, m) = x(m, k);
  }
}

dsp::Matrix GriffinLimVocoder::InverseMel(const dsp::Matrix& log_mel) const {
  const std::size_t bins = pinv_.rows();
  const std::size_t mels = pinv_.cols();
  dsp::Matrix out(log_mel.rows(), bins);
  std::vector<double> lin(mels);
  for (std::size_t t = 0; t < log_mel.rows(); ++t) {
    for (std::size_t m = 0; m < mels; ++m) lin[m] = std::exp(log_mel(t, m));
    for (std::size_t k = 0; k < bins; ++k) {
      double acc = 0.0;
      const auto p = pinv_.row(k);
      for (std::size_t m = 0; m < mels; ++m) acc += p[m] * lin[m];
      out(t, k) = std::max(acc, 0.0);
    }
  }
  return out;
}

dsp::Waveform GriffinLimVocoder::Vocode(const dsp::MelSpectrogram& mel,
                                        dsp::Exec exec) const {
  if (!(mel.config == fx_->config())) {
    throw ConfigMismatch("mel spectrogram was made with a different config");
  }
  if (mel.frames.cols() != static_cast<std::size_t>(fx_->config().n_mels)) {
    throw ConfigMismatch("mel spectrogram has the wrong number of bands");
  }
  dsp::Waveform out;
  out.sample_rate = fx_->config().sample_rate;
  if (mel.frames.rows() < 2) return out;

  const dsp::Stft& stft = fx_->stft();
  const dsp::Matrix mag = InverseMel(mel.frames);
  const std::size_t n = (mel.frames.rows() - 1) * fx_->config().hop;

  dsp::ComplexMatrix spec(mag.rows(), mag.cols());
  for (std::size_t i = 0; i < mag.data().size(); ++i) {
    spec.data()[i] = mag.data()[i];
  }
  for (int it = 0; it < iterations_; ++it) {
    const dsp::ComplexMatrix est = stft.Analyze(stft.Synthesize(spec, n, exec), exec);
    for (std::size_t i = 0; i < mag.data().size(); ++i) {
      const std::complex<double> z = est.data()[i];
      const double r = std::abs(z);
      spec.data()[i] = r > 0.0 ? mag.data()[i] * (z / r)
                               : std::complex<double>(mag.data()[i], 0.0);
    }
  }
  const std::vector<double> y = stft.Synthesize(spec, n, exec);

  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  const double gain = peak < 1e-6 ? 1.0 : 0.9 / peak;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.samples[i] = static_cast<float>(y[i] * gain);
  return out;
}

}  // namespace voxsync::synth
