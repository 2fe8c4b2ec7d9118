#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "voxsync/dsp/features.h"
#include "voxsync/dsp/reference.h"
#include "voxsync/synth/griffin_lim.h"

namespace {

using namespace voxsync;

dsp::Waveform Signal(double seconds) {
  std::mt19937 rng(7);
  std::normal_distribution<double> noise(0.0, 0.05);
  dsp::Waveform w;
  w.sample_rate = 24000;
  const auto n = static_cast<std::size_t>(seconds * w.sample_rate);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / w.sample_rate;
    w.samples.push_back(static_cast<float>(
        0.4 * std::sin(2 * std::numbers::pi * 150 * t) + noise(rng)));
  }
  return w;
}

const dsp::Waveform& FiveSeconds() {
  static const dsp::Waveform w = Signal(5.0);
  return w;
}

void BM_LogMelReference(benchmark::State& state) {
  const auto& fx = dsp::DefaultExtractor();
  for (auto _ : state) benchmark::DoNotOptimize(dsp::reference::LogMel(fx, FiveSeconds()));
}
BENCHMARK(BM_LogMelReference)->Unit(benchmark::kMillisecond);

void BM_LogMel(benchmark::State& state) {
  const auto& fx = dsp::DefaultExtractor();
  const dsp::Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(fx.LogMel(FiveSeconds(), exec));
}
BENCHMARK(BM_LogMel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PitchReference(benchmark::State& state) {
  const auto& fx = dsp::DefaultExtractor();
  for (auto _ : state) benchmark::DoNotOptimize(dsp::reference::Pitch(fx, FiveSeconds()));
}
BENCHMARK(BM_PitchReference)->Unit(benchmark::kMillisecond);

void BM_Pitch(benchmark::State& state) {
  const auto& fx = dsp::DefaultExtractor();
  const dsp::Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(fx.Pitch(FiveSeconds(), exec));
}
BENCHMARK(BM_Pitch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GriffinLim(benchmark::State& state) {
  static const auto fx = std::make_shared<const dsp::FeatureExtractor>();
  static const synth::GriffinLimVocoder vocoder(fx);
  static const dsp::MelSpectrogram mel = fx->LogMel(Signal(1.0));
  const dsp::Exec exec{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(vocoder.Vocode(mel, exec));
}
BENCHMARK(BM_GriffinLim)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
