#ifndef VOXSYNC_TESTS_ORACLE_DSP_ORACLE_H_
#define VOXSYNC_TESTS_ORACLE_DSP_ORACLE_H_

// Independent, deliberately naive DSP used as ground truth in tests. Nothing
// here calls into the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

inline double Mel(double hz) { return 1127.0 * std::log1p(hz / 700.0); }
inline double InvMel(double m) { return 700.0 * std::expm1(m / 1127.0); }

struct Filterbank {
  std::vector<std::vector<double>> rows;
  std::vector<double> centers;
};

inline Filterbank MakeFilterbank(int n_mels = 80, int n_fft = 2048,
                                 double sr = 24000, double fmin = 80,
                                 double fmax = 7600) {
  Filterbank fb;
  const double lo = Mel(fmin), hi = Mel(fmax);
  std::vector<double> edge(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i) {
    edge[i] = InvMel(lo + (hi - lo) * i / (n_mels + 1));
  }
  const int bins = n_fft / 2 + 1;
  for (int m = 0; m < n_mels; ++m) {
    std::vector<double> row(bins, 0.0);
    for (int k = 0; k < bins; ++k) {
      const double f = k * sr / n_fft;
      if (f > edge[m] && f <= edge[m + 1]) {
        row[k] = (f - edge[m]) / (edge[m + 1] - edge[m]);
      } else if (f > edge[m + 1] && f < edge[m + 2]) {
        row[k] = (edge[m + 2] - f) / (edge[m + 2] - edge[m + 1]);
      }
    }
    fb.rows.push_back(row);
    fb.centers.push_back(edge[m + 1]);
  }
  return fb;
}

// numpy.pad(x, n_fft / 2, mode="reflect"), built by explicit mirroring.
inline std::vector<double> ReflectPad(const std::vector<double>& x, int pad) {
  std::vector<double> out;
  const int n = static_cast<int>(x.size());
  for (int i = pad; i >= 1; --i) {
    int j = i;
    while (j >= n) j = 2 * (n - 1) - j;  // only for very short inputs
    out.push_back(x[std::abs(j)]);
  }
  out.insert(out.end(), x.begin(), x.end());
  for (int i = 1; i <= pad; ++i) {
    int j = n - 1 - i;
    while (j < 0) j = -j;
    out.push_back(x[j]);
  }
  return out;
}

// |DFT| of each centered frame by direct summation.
inline std::vector<std::vector<double>> Magnitude(const std::vector<double>& x,
                                                  int n_fft = 2048,
                                                  int win = 1200,
                                                  int hop = 300) {
  std::vector<double> window(n_fft, 0.0);
  const int off = (n_fft - win) / 2;
  for (int j = 0; j < win; ++j) {
    window[off + j] = std::pow(std::sin(kPi * j / win), 2);
  }
  std::vector<double> cosv(n_fft), sinv(n_fft);
  for (int i = 0; i < n_fft; ++i) {
    cosv[i] = std::cos(2 * kPi * i / n_fft);
    sinv[i] = std::sin(2 * kPi * i / n_fft);
  }
  const std::vector<double> padded = ReflectPad(x, n_fft / 2);
  const int frames = static_cast<int>(x.size()) / hop + 1;
  std::vector<std::vector<double>> out;
  std::vector<double> seg(n_fft);
  for (int t = 0; t < frames; ++t) {
    for (int j = 0; j < n_fft; ++j) seg[j] = padded[t * hop + j] * window[j];
    std::vector<double> mag(n_fft / 2 + 1);
    for (int k = 0; k <= n_fft / 2; ++k) {
      double re = 0, im = 0;
      for (int j = off; j < off + win; ++j) {
        const int idx = static_cast<int>((static_cast<long>(k) * j) % n_fft);
        re += seg[j] * cosv[idx];
        im -= seg[j] * sinv[idx];
      }
      mag[k] = std::sqrt(re * re + im * im);
    }
    out.push_back(std::move(mag));
  }
  return out;
}

inline std::vector<std::vector<double>> LogMel(const std::vector<double>& x) {
  const Filterbank fb = MakeFilterbank();
  std::vector<std::vector<double>> out;
  for (const auto& mag : Magnitude(x)) {
    std::vector<double> row;
    for (const auto& f : fb.rows) {
      double acc = 0;
      for (std::size_t k = 0; k < mag.size(); ++k) acc += f[k] * mag[k];
      row.push_back(std::log(std::max(acc, 1e-10)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Lag maximizing the normalized ACF of one segment over [lo, hi].
inline int BestAcfLag(const std::vector<double>& seg, int lo, int hi) {
  int best = lo;
  double best_r = -2;
  for (int lag = lo; lag <= hi; ++lag) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i + lag < seg.size(); ++i) {
      ab += seg[i] * seg[i + lag];
      aa += seg[i] * seg[i];
      bb += seg[i + lag] * seg[i + lag];
    }
    const double r = ab / std::sqrt(aa * bb);
    if (r > best_r + 1e-12) {
      best_r = r;
      best = lag;
    }
  }
  return best;
}

}  // namespace oracle

#endif  // VOXSYNC_TESTS_ORACLE_DSP_ORACLE_H_
