// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <benchmark/benchmark.h>

#include <cmath>

#include "kissgev/beamform.hpp"
#include "kissgev/metrics.hpp"
#include "kissgev/roomsim.hpp"
#include "kissgev/stft.hpp"
#include "kissgev/synth.hpp"

namespace {

using namespace kissgev;

ArrayGeometry circle8() {
  ArrayGeometry g;
  for (int k = 0; k < 8; ++k) {
    const double a = 2.0 * M_PI * k / 8;
    g.mics.emplace_back(0.0463 * std::cos(a), 0.0463 * std::sin(a), 0.0);
  }
  return g;
}

struct Scene {
  AudioClip mixture;
  ArrayGeometry geometry;
  DoA doa{Eigen::Vector3d(1, 0, 0)};

  Scene() : geometry(circle8()) {
    RoomSpec room;
    room.dimensions = {8, 7, 3};
    room.absorption = 0.4;
    room.rir_length = 4096;
    room.source_position = {4.5, 3.5, 1.5};
    const Eigen::Vector3d center(3.0, 3.5, 1.5);
    for (const auto& m : geometry.mics) room.mic_positions.push_back(center + m);

    MixtureScenario s;
    s.room = room;
    s.interference_position = {3.0, 1.5, 1.5};
    s.mics_array = geometry.mics;
    s.array_center = center;
    s.target_doa_unit = (room.source_position - center).normalized();
    const auto mix = synthesize_mixture(s, synth::speech_like(3.0, 16000, 1),
                                        synth::ambient_noise(3.0, 16000, 2, 0.2));
    mixture = mix.mixture;
    doa = DoA(s.target_doa_unit);
  }
};

const Scene& scene() {
  static const Scene s;
  return s;
}

void BM_StftRoundTrip(benchmark::State& state) {
  const AudioClip clip = synth::speech_like(3.0, 16000, 3);
  const StftConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(istft(stft(clip, cfg)));
  }
  state.SetItemsProcessed(state.iterations() * clip.length());
}
BENCHMARK(BM_StftRoundTrip)->Unit(benchmark::kMillisecond);

void BM_PowerRatio(benchmark::State& state) {
  const auto& s = scene();
  const auto spec = stft(s.mixture, {});
  const auto steer = reference_steering(s.geometry, s.doa, 16000, 512);
  const auto fb = make_filterbank(512, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(power_ratio(spec, steer, fb));
  }
}
BENCHMARK(BM_PowerRatio)->Unit(benchmark::kMillisecond);

void BM_EstimateScm(benchmark::State& state) {
  const auto& s = scene();
  const auto spec = stft(s.mixture, {});
  const auto steer = reference_steering(s.geometry, s.doa, 16000, 512);
  const auto ratio = power_ratio(spec, steer, make_filterbank(512, 100));
  const auto masks = binary_masks(ratio, mask_thresholds(ratio, 25.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_scm(spec, masks.target));
  }
}
BENCHMARK(BM_EstimateScm)->Unit(benchmark::kMillisecond);

void BM_SolveGev(benchmark::State& state) {
  const auto& s = scene();
  const auto spec = stft(s.mixture, {});
  const auto steer = reference_steering(s.geometry, s.doa, 16000, 512);
  const auto ratio = power_ratio(spec, steer, make_filterbank(512, 100));
  const auto masks = binary_masks(ratio, mask_thresholds(ratio, 25.0));
  SCMSet scms{estimate_scm(spec, masks.target), estimate_scm(spec, masks.noise)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gev(scms, steer));
  }
}
BENCHMARK(BM_SolveGev)->Unit(benchmark::kMillisecond);

void BM_ImageMethodRir(benchmark::State& state) {
  RoomSpec room;
  room.dimensions = {10, 8, 3.5};
  room.absorption = 0.4;
  room.rir_length = static_cast<int>(state.range(0));
  room.source_position = {6.0, 4.0, 1.5};
  const auto g = circle8();
  const Eigen::Vector3d center(3.0, 4.0, 1.5);
  for (const auto& m : g.mics) room.mic_positions.push_back(center + m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(image_method_rir(room));
  }
}
BENCHMARK(BM_ImageMethodRir)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_KissGevEnhance(benchmark::State& state) {
  const auto& s = scene();
  EnhanceParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kissgev_enhance(s.mixture, s.geometry, s.doa, params));
  }
  state.SetItemsProcessed(state.iterations() * s.mixture.length());
}
BENCHMARK(BM_KissGevEnhance)->Unit(benchmark::kMillisecond);

void BM_SiSdr(benchmark::State& state) {
  const AudioClip a = synth::speech_like(3.0, 16000, 4);
  const AudioClip b = synth::speech_like(3.0, 16000, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(si_sdr(a, b));
  }
}
BENCHMARK(BM_SiSdr)->Unit(benchmark::kMicrosecond);

}  // namespace
