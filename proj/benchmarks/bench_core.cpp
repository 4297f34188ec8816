// Microbenchmarks for the per-frame cost centers: patch resampling, HOG
// encoding, statistics updates, factorization, training, and a whole
// tracked frame.

#include <vector>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <benchmark/benchmark.h>

#include "elda/background.hpp"
#include "elda/detector.hpp"
#include "elda/hog.hpp"
#include "elda/image.hpp"
#include "elda/rng.hpp"
#include "elda/synthetic.hpp"
#include "elda/tracker.hpp"

using namespace elda;

namespace {

GrayImage noise_image(int width, int height, std::uint64_t seed) {
  GrayImage img = GrayImage::filled(width, height, 0.0f);
  Rng rng(seed);
  for (float& p : img.pixels) {
    p = static_cast<float>(uniform_unit(rng));
  }
  return img;
}

std::vector<FeatureVector> noise_features(int count, std::uint64_t seed) {
  std::vector<FeatureVector> features;
  features.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    features.push_back(
        extract_hog(noise_image(64, 64, seed + static_cast<std::uint64_t>(i))));
  }
  return features;
}

void BM_ExtractPatch(benchmark::State& state) {
  const GrayImage frame = noise_image(320, 240, 1);
  const BoundingBox box{100.25, 80.5, 40, 40};
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_patch(frame, box));
  }
}
BENCHMARK(BM_ExtractPatch);

void BM_Hog(benchmark::State& state) {
  const GrayImage patch = noise_image(64, 64, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_hog(patch));
  }
}
BENCHMARK(BM_Hog);

void BM_BatchStats(benchmark::State& state) {
  const auto features = noise_features(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch_stats(features));
  }
}
BENCHMARK(BM_BatchStats)->Arg(16)->Arg(64);

void BM_Merge(benchmark::State& state) {
  const BackgroundModel a = batch_stats(noise_features(64, 4));
  const BackgroundModel b = batch_stats(noise_features(32, 5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(merge(a, b));
  }
}
BENCHMARK(BM_Merge);

void BM_Factorize(benchmark::State& state) {
  const BackgroundModel bg = batch_stats(noise_features(96, 6));
  const double reg = default_regularization(bg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BackgroundFactorization(bg, reg));
  }
}
BENCHMARK(BM_Factorize);

void BM_TrainDetector(benchmark::State& state) {
  const BackgroundModel bg = batch_stats(noise_features(96, 7));
  const BackgroundFactorization fact(bg, default_regularization(bg));
  const FeatureVector exemplar = extract_hog(noise_image(64, 64, 8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fact.train(exemplar, 2));
  }
}
BENCHMARK(BM_TrainDetector);

void BM_TrackFrame(benchmark::State& state) {
  SyntheticSpec spec;
  spec.noise_sigma = 0.02;
  spec.trajectory.assign(2, Point{160.0, 120.0});
  const SyntheticSequence seq = make_synthetic_sequence(spec);

  TrackerConfig config;
  config.detect_radius = static_cast<int>(state.range(0));
  config.search_stride = 2;
  Tracker tracker(seq.frames[0], seq.truth.boxes[0],
                  batch_stats(noise_features(96, 9)), config);

  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker.track(seq.frames[1]));
  }
}
BENCHMARK(BM_TrackFrame)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

} // namespace

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
#endif
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
