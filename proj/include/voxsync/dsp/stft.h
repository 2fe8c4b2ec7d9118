#ifndef VOXSYNC_DSP_STFT_H_
#define VOXSYNC_DSP_STFT_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "voxsync/dsp/exec.h"
#include "voxsync/dsp/matrix.h"
#include "voxsync/dsp/mel.h"

namespace voxsync::dsp {

// Maps any integer index onto [0, n) by repeated mirror reflection without
// repeating the edge sample (numpy "reflect"). n == 1 maps everything to 0.
std::size_t ReflectIndex(std::ptrdiff_t i, std::size_t n);

// Periodic Hann window of win_length samples, zero-padded symmetrically to
// n_fft.
std::vector<double> PaddedHannWindow(int win_length, int n_fft);

// Centered short-time Fourier transform. Frame t covers samples
// [t*hop - n_fft/2, t*hop + n_fft/2) of the reflect-padded signal, so a
// signal of n samples yields floor(n/hop) + 1 frames.
//
// Planning happens once in the constructor; the transform methods are const
// and safe to call from several threads at once.
class Stft {
 public:
  explicit Stft(const MelConfig& config);
  ~Stft();
  Stft(const Stft&) = delete;
  Stft& operator=(const Stft&) = delete;

  int n_fft() const { return n_fft_; }
  int hop() const { return hop_; }
  int n_bins() const { return n_fft_ / 2 + 1; }
  std::size_t num_frames(std::size_t n) const { return n / hop_ + 1; }
  const std::vector<double>& window() const { return window_; }

  // |X(t, k)|, T x n_bins.
  Matrix Magnitude(std::span<const float> x, Exec exec = {}) const;
  Matrix Magnitude(std::span<const double> x, Exec exec = {}) const;

  // Complex spectrum, T x n_bins.
  ComplexMatrix Analyze(std::span<const double> x, Exec exec = {}) const;

  // Weighted overlap-add inverse of Analyze, n output samples. Output
  // samples are divided by the summed squared window at their position.
  std::vector<double> Synthesize(const ComplexMatrix& spectrum, std::size_t n,
                                 Exec exec = {}) const;

  // Single-frame forward transform of an already windowed n_fft buffer.
  void ForwardFrame(std::span<const double> frame,
                    std::span<std::complex<double>> out) const;

 private:
  struct Plans;

  int n_fft_;
  int win_length_;
  int hop_;
  std::vector<double> window_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_STFT_H_
