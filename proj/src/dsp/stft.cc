#include "voxsync/dsp/stft.h"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace voxsync::dsp {
namespace {

// The FFTW planner is not reentrant; execution with new arrays is.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

template <typename T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <typename T>
FftwBuffer<T> Allocate(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

}  // namespace

int Exec::resolved_threads() const {
  return threads > 0 ? threads : omp_get_max_threads();
}

std::size_t ReflectIndex(std::ptrdiff_t i, std::size_t n) {
  if (n <= 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<std::ptrdiff_t>(n)) m = period - m;
  return static_cast<std::size_t>(m);
}

std::vector<double> PaddedHannWindow(int win_length, int n_fft) {
  std::vector<double> w(n_fft, 0.0);
  const int offset = (n_fft - win_length) / 2;
  for (int k = 0; k < win_length; ++k) {
    w[offset + k] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * k / win_length);
  }
  return w;
}

struct Stft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Plans() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

Stft::Stft(const MelConfig& config)
    : n_fft_((Validate(config), config.n_fft)),
      win_length_(config.win_length),
      hop_(config.hop),
      window_(PaddedHannWindow(config.win_length, config.n_fft)),
      plans_(std::make_unique<Plans>()) {
  auto real = Allocate<double>(n_fft_);
  auto spec = Allocate<fftw_complex>(n_bins());
  std::lock_guard<std::mutex> lock(PlannerMutex());
  plans_->forward =
      fftw_plan_dft_r2c_1d(n_fft_, real.get(), spec.get(), FFTW_ESTIMATE);
  plans_->inverse =
      fftw_plan_dft_c2r_1d(n_fft_, spec.get(), real.get(), FFTW_ESTIMATE);
  if (!plans_->forward || !plans_->inverse) throw Error("FFTW planning failed");
}

Stft::~Stft() = default;

void Stft::ForwardFrame(std::span<const double> frame,
                        std::span<std::complex<double>> out) const {
  auto real = Allocate<double>(n_fft_);
  auto spec = Allocate<fftw_complex>(n_bins());
  std::copy(frame.begin(), frame.end(), real.get());
  fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
  for (int k = 0; k < n_bins(); ++k) out[k] = {spec[k][0], spec[k][1]};
}

namespace {

// Runs `emit(t, spectrum)` for every centered frame of x, frames split across
// OpenMP threads. Each thread owns its FFT buffers.
template <typename Sample, typename Emit>
void ForEachFrame(std::span<const Sample> x, int n_fft, int win_length,
                  int hop, const std::vector<double>& window, fftw_plan plan,
                  Exec exec, Emit emit) {
  const std::size_t n = x.size();
  const auto frames = static_cast<std::ptrdiff_t>(n / hop + 1);
  const int bins = n_fft / 2 + 1;
  const int first = (n_fft - win_length) / 2;
  const int last = first + win_length;
  const int threads = exec.resolved_threads();

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    auto real = Allocate<double>(n_fft);
    auto spec = Allocate<fftw_complex>(bins);
    std::fill(real.get(), real.get() + n_fft, 0.0);
#pragma omp for schedule(static)
    for (std::ptrdiff_t t = 0; t < frames; ++t) {
      const std::ptrdiff_t base = t * hop - n_fft / 2;
      for (int j = first; j < last; ++j) {
        real[j] = static_cast<double>(x[ReflectIndex(base + j, n)]) * window[j];
      }
      fftw_execute_dft_r2c(plan, real.get(), spec.get());
      emit(static_cast<std::size_t>(t), spec.get());
    }
  }
}

template <typename Sample>
Matrix MagnitudeImpl(std::span<const Sample> x, int n_fft, int win_length,
                     int hop, const std::vector<double>& window,
                     fftw_plan plan, Exec exec) {
  const int bins = n_fft / 2 + 1;
  Matrix out(x.size() / hop + 1, bins);
  ForEachFrame(x, n_fft, win_length, hop, window, plan, exec,
               [&](std::size_t t, const fftw_complex* spec) {
                 auto row = out.row(t);
                 for (int k = 0; k < bins; ++k) {
                   row[k] = std::hypot(spec[k][0], spec[k][1]);
                 }
               });
  return out;
}

}  // namespace

Matrix Stft::Magnitude(std::span<const float> x, Exec exec) const {
  if (x.empty()) throw InvalidConfig("STFT of an empty signal");
  return MagnitudeImpl(x, n_fft_, win_length_, hop_, window_, plans_->forward,
                       exec);
}

Matrix Stft::Magnitude(std::span<const double> x, Exec exec) const {
  if (x.empty()) throw InvalidConfig("STFT of an empty signal");
  return MagnitudeImpl(x, n_fft_, win_length_, hop_, window_, plans_->forward,
                       exec);
}

ComplexMatrix Stft::Analyze(std::span<const double> x, Exec exec) const {
  if (x.empty()) throw InvalidConfig("STFT of an empty signal");
  const int bins = n_bins();
  ComplexMatrix out(num_frames(x.size()), bins);
  ForEachFrame(x, n_fft_, win_length_, hop_, window_, plans_->forward, exec,
               [&](std::size_t t, const fftw_complex* spec) {
                 auto row = out.row(t);
                 for (int k = 0; k < bins; ++k) {
                   row[k] = {spec[k][0], spec[k][1]};
                 }
               });
  return out;
}

std::vector<double> Stft::Synthesize(const ComplexMatrix& spectrum,
                                     std::size_t n, Exec exec) const {
  const int bins = n_bins();
  if (static_cast<int>(spectrum.cols()) != bins) {
    throw InvalidConfig("spectrum has the wrong number of bins");
  }
  const auto frames = static_cast<std::ptrdiff_t>(spectrum.rows());
  const int first = (n_fft_ - win_length_) / 2;
  const int span = win_length_;

  // Inverse transforms in parallel into a frame buffer; the overlap-add
  // below is serial.
  Matrix windowed(spectrum.rows(), span);
  const int threads = exec.resolved_threads();
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    auto spec = Allocate<fftw_complex>(bins);
    auto real = Allocate<double>(n_fft_);
#pragma omp for schedule(static)
    for (std::ptrdiff_t t = 0; t < frames; ++t) {
      const auto row = spectrum.row(static_cast<std::size_t>(t));
      for (int k = 0; k < bins; ++k) {
        spec[k][0] = row[k].real();
        spec[k][1] = row[k].imag();
      }
      fftw_execute_dft_c2r(plans_->inverse, spec.get(), real.get());
      auto out = windowed.row(static_cast<std::size_t>(t));
      for (int j = 0; j < span; ++j) {
        out[j] = real[first + j] / n_fft_ * window_[first + j];
      }
    }
  }

  std::vector<double> y(n, 0.0);
  std::vector<double> weight(n, 0.0);
  for (std::ptrdiff_t t = 0; t < frames; ++t) {
    const std::ptrdiff_t base = t * hop_ - n_fft_ / 2 + first;
    const auto row = windowed.row(static_cast<std::size_t>(t));
    for (int j = 0; j < span; ++j) {
      const std::ptrdiff_t i = base + j;
      if (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) continue;
      y[i] += row[j];
      const double w = window_[first + j];
      weight[i] += w * w;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i] > 1e-8) y[i] /= weight[i];
  }
  return y;
}

}  // namespace voxsync::dsp
