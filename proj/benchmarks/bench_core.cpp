#include <benchmark/benchmark.h>

#include "tunebands/cdf_bands.hpp"
#include "tunebands/coverage.hpp"
#include "tunebands/ground_truth.hpp"
#include "tunebands/kde.hpp"
#include "tunebands/numerics.hpp"
#include "tunebands/rng.hpp"
#include "tunebands/tuning_curves.hpp"

namespace {

using namespace tunebands;

void BM_BetaCdf(benchmark::State& state) {
  const BetaParams p(17, 32);
  double x = 0.30;
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_cdf(p, x));
    x = x < 0.70 ? x + 1e-4 : 0.30;
  }
}
BENCHMARK(BM_BetaCdf);

void BM_BetaQuantile(benchmark::State& state) {
  const BetaParams p(17, 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_quantile(p, 0.7));
  }
}
BENCHMARK(BM_BetaQuantile);

void BM_HighestDensityInterval(benchmark::State& state) {
  const BetaParams p(24, 25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(highest_density_interval(p, 0.983));
  }
}
BENCHMARK(BM_HighestDensityInterval);

void BM_SmallestIntervalCoverageHd(benchmark::State& state) {
  const BetaParams p(24, 25);
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        smallest_interval_coverage(p, x, IntervalKind::HighestDensity));
    x = x < 0.45 ? x + 1e-4 : 0.3;
  }
}
BENCHMARK(BM_SmallestIntervalCoverageHd);

void BM_LnNull(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_ln_null(n, IntervalKind::HighestDensity, 1000, 7, 1));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_LnNull)->Arg(8)->Arg(48);

void BM_LdBands(benchmark::State& state) {
  SplitRng rng(3);
  std::vector<double> scores(48);
  for (double& s : scores) s = rng.next_unit();
  const Sample sample(std::move(scores));
  const LnNull null =
      simulate_ln_null(48, IntervalKind::HighestDensity, 5000, 7, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ld_bands(sample, 0.8, IntervalKind::HighestDensity, null));
  }
}
BENCHMARK(BM_LdBands);

void BM_MedianCurveBands(benchmark::State& state) {
  SplitRng rng(3);
  std::vector<double> scores(48);
  for (double& s : scores) s = rng.next_unit();
  const Sample sample(std::move(scores));
  const LnNull null =
      simulate_ln_null(48, IntervalKind::HighestDensity, 5000, 7, 1);
  const CdfBands bands =
      ld_bands(sample, 0.8, IntervalKind::HighestDensity, null);
  const KGrid grid = KGrid::integers(48);
  for (auto _ : state) {
    benchmark::DoNotOptimize(median_curve_bands(bands, grid));
  }
}
BENCHMARK(BM_MedianCurveBands);

void BM_KdeCdf(benchmark::State& state) {
  const Kde kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true);
  double y = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kde_cdf(kde, y));
    y = y < 0.9 ? y + 1e-4 : 0.1;
  }
}
BENCHMARK(BM_KdeCdf);

void BM_MedianCoverageCheck(benchmark::State& state) {
  const GroundTruth truth = GroundTruth::uniform(0.0, 1.0);
  SplitRng rng(9);
  const Sample sample = truth.sample(48, rng);
  const LnNull null =
      simulate_ln_null(48, IntervalKind::HighestDensity, 5000, 7, 1);
  const CdfBands bands =
      ld_bands(sample, 0.8, IntervalKind::HighestDensity, null);
  for (auto _ : state) {
    benchmark::DoNotOptimize(median_curve_bands_cover(bands, truth));
  }
}
BENCHMARK(BM_MedianCoverageCheck);

}  // namespace

BENCHMARK_MAIN();
