#include <benchmark/benchmark.h>

#include <random>

#include "kcf/features.hpp"
#include "kcf/filter.hpp"
#include "kcf/fourier.hpp"
#include "kcf/kernels.hpp"
#include "kcf/pipeline.hpp"
#include "kcf/synthetic.hpp"

namespace {

kcf::FeatureMap random_map(std::size_t m, std::size_t n, std::size_t c,
                           std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  kcf::FeatureMap f(m, n, c);
  for (double& v : f.values()) v = d(rng);
  return f;
}

void BM_Dft2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const kcf::RealGrid2D g = random_map(n, n, 1).channel_grid(0);
  for (auto _ : state) benchmark::DoNotOptimize(kcf::dft2(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft2)->Arg(32)->Arg(64)->Arg(100)->Arg(128)->Arg(256);

void BM_KernelCorrelation(benchmark::State& state) {
  const auto c = static_cast<std::size_t>(state.range(0));
  const kcf::FeatureMap x = random_map(100, 100, c, 1), z = random_map(100, 100, c, 2);
  const kcf::KernelSpec k =
      state.range(1) ? kcf::KernelSpec::gaussian(0.5) : kcf::KernelSpec::linear();
  for (auto _ : state) benchmark::DoNotOptimize(kcf::kernel_correlation(x, z, k));
}
BENCHMARK(BM_KernelCorrelation)->ArgsProduct({{1, 31}, {0, 1}});

// One tracker step on a 100x100 single-channel window: detect, retrain,
// interpolate.
void BM_DetectTrain100(benchmark::State& state) {
  const kcf::FeatureMap x = random_map(100, 100, 1, 1), z = random_map(100, 100, 1, 2);
  const kcf::TargetGrid y = kcf::make_target(100, 100, 4.0);
  const kcf::KernelSpec k = kcf::KernelSpec::gaussian(0.2);
  kcf::FilterModel model = kcf::train(x, y, k, 1e-4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kcf::detect(model, z));
    model = kcf::interpolate_model(model, kcf::train(z, y, k, 1e-4), 0.075);
  }
}
BENCHMARK(BM_DetectTrain100)->Unit(benchmark::kMillisecond);

void BM_ExtractHog(benchmark::State& state) {
  const auto kscene = kcf::synthetic::translating_square({.frames = 1});
  const kcf::ImagePatch patch =
      kcf::get_subwindow(kscene.frames[0], 100, 100, 100 + state.range(0), 100);
  const kcf::FeatureConfig cfg{kcf::FeatureKind::hog, 4, 9};
  for (auto _ : state) benchmark::DoNotOptimize(kcf::extract_hog(patch, cfg));
}
BENCHMARK(BM_ExtractHog)->Arg(0)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_TrackFrame(benchmark::State& state) {
  const auto preset = static_cast<kcf::Preset>(state.range(0));
  const auto scene = kcf::synthetic::translating_square({.frames = 2});
  const kcf::TrackerState init =
      kcf::init(scene.frames[0], scene.truth[0], kcf::make_params(preset));
  for (auto _ : state) benchmark::DoNotOptimize(kcf::track_frame(init, scene.frames[1]));
  state.SetLabel(preset == kcf::Preset::kcf_raw   ? "kcf-raw"
                 : preset == kcf::Preset::kcf_hog ? "kcf-hog"
                 : preset == kcf::Preset::dcf_raw ? "dcf-raw"
                                                  : "dcf-hog");
}
BENCHMARK(BM_TrackFrame)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
