#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "tunebands/bootstrap.hpp"
#include "tunebands/coverage.hpp"
#include "tunebands/ground_truth.hpp"
#include "tunebands/kde.hpp"
#include "tunebands/quadrature.hpp"
#include "tunebands/rng.hpp"

using namespace tunebands;

TEST_CASE("kde cdf with reflection pins the support endpoints") {
  const Kde edge({0.0}, 0.05, SupportBounds::unit(), true);
  CHECK(kde_cdf(edge, 0.0) == 0.0);
  CHECK(kde_cdf(edge, 1.0) == 1.0);
  // A kernel centered on the boundary folds half its mass back: the cdf near
  // one bandwidth should be close to a full-width Gaussian's  2*(Phi(1)-Phi(0)).
  CHECK(kde_cdf(edge, 0.05) ==
        doctest::Approx(2.0 * (normal_cdf(1.0) - 0.5)).epsilon(1e-9));

  const Kde interior({0.4}, 0.05, SupportBounds::unbounded(), false);
  CHECK(kde_cdf(interior, 0.4) == doctest::Approx(0.5).epsilon(1e-12));

  const Kde bimodal({0.3, 0.7}, 0.05, SupportBounds::unit(), true);
  CHECK(kde_cdf(bimodal, 0.5) == doctest::Approx(0.5).epsilon(1e-6));

  CHECK_THROWS_AS(Kde({0.5}, 0.0, SupportBounds::unit(), true),
                  std::domain_error);
  CHECK_THROWS_AS(Kde({1.5}, 0.1, SupportBounds::unit(), true), DataError);
}

TEST_CASE("kde cdf matches quadrature of the reflected density") {
  const Kde kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true);
  for (double y : {0.1, 0.35, 0.5, 0.82}) {
    const double by_quadrature = oracles::integrate(
        [&](double t) { return kde_pdf(kde, t); }, 0.0, y, 1e-11);
    CHECK(kde_cdf(kde, y) == doctest::Approx(by_quadrature).epsilon(1e-8));
  }
  // Monotone, 0 at lo, 1 at hi.
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double cur = kde_cdf(kde, i / 100.0);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK(std::fabs(kde_cdf(kde, 1.0) - 1.0) < 1e-9);
}

TEST_CASE("kde quantile inverts the cdf") {
  const Kde kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true);
  CHECK(kde_quantile(kde, 0.5) == doctest::Approx(0.5).epsilon(1e-6));
  for (double p : {0.01, 0.2, 0.5, 0.8, 0.99}) {
    const double y = kde_quantile(kde, p);
    CHECK(std::fabs(kde_cdf(kde, y) - p) < 1e-9);
    CHECK(std::fabs(kde_quantile(kde, kde_cdf(kde, y)) - y) < 1e-6);
  }
  CHECK_THROWS_AS(kde_quantile(kde, 1.5), std::domain_error);
}

TEST_CASE("kde sampling matches its own cdf in KS distance") {
  const Kde kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true);
  SplitRng rng(404);
  const Sample draws = kde_sample(kde, 100000, rng);
  // sup |eCDF - F| over the sample points.
  double d = 0.0;
  const double n = static_cast<double>(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = kde_cdf(kde, draws.scores()[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  CHECK(d < 0.01);
  CHECK(draws.min() >= 0.0);
  CHECK(draws.max() <= 1.0);
  CHECK_THROWS_AS(kde_sample(kde, 0, rng), DataError);
}

TEST_CASE("bandwidth diagnostics rank candidate fits") {
  SplitRng rng(99);
  const Kde source({0.3, 0.7}, 0.05, SupportBounds::unit(), true);
  const Sample centers = kde_sample(source, 400, rng);
  const auto fits = kde_bandwidth_fits(centers.scores(),
                                       {0.1, 0.05, 0.025, 0.0125, 0.00625},
                                       SupportBounds::unit(), true);
  CHECK(fits.size() == 5);
  for (const auto& fit : fits) {
    CHECK(fit.ks_distance >= 0.0);
    CHECK(fit.ks_distance <= 1.0);
  }
  // Oversmoothing slides the CDF away from the data; the widest bandwidth
  // fits worst.
  CHECK(fits[0].ks_distance > fits[2].ks_distance);
}

TEST_CASE("true tuning curves for analytic truths") {
  const GroundTruth uniform = GroundTruth::uniform(0.0, 1.0);
  CHECK(true_median_curve(uniform, 2.0) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(true_median_curve(uniform, 1.0) == doctest::Approx(0.5));
  CHECK(true_mean_curve(uniform, 2.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(true_mean_curve(uniform, 1.0) == doctest::Approx(0.5).epsilon(1e-8));

  // KDE truth: the defining equation F(q)^k = 1/2 holds at the median curve.
  const GroundTruth kde = GroundTruth::from_kde(
      Kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true));
  for (double k : {1.0, 4.0}) {
    const double q = true_median_curve(kde, k);
    CHECK(std::fabs(std::pow(kde.cdf(q), k) - 0.5) < 1e-9);
  }
}

TEST_CASE("true mean curve of a kde matches Monte Carlo") {
  const GroundTruth kde = GroundTruth::from_kde(
      Kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true));
  const std::size_t k = 3;
  const std::size_t reps = 400000;
  SplitRng rng(31337);
  double total = 0.0, total_sq = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    double best = kde.sample_one(rng);
    for (std::size_t j = 1; j < k; ++j) {
      best = std::max(best, kde.sample_one(rng));
    }
    total += best;
    total_sq += best * best;
  }
  const double mc_mean = total / reps;
  const double mc_var = total_sq / reps - mc_mean * mc_mean;
  const double mc_se = std::sqrt(mc_var / reps);
  const double exact = true_mean_curve(kde, static_cast<double>(k));
  CHECK(std::fabs(exact - mc_mean) < 3.0 * mc_se);
}

TEST_CASE("clopper_pearson intervals") {
  const auto none = clopper_pearson(0, 10, 0.95);
  CHECK(none.lo == 0.0);
  CHECK(none.hi ==
        doctest::Approx(1.0 - std::pow(0.025, 0.1)).epsilon(1e-9));
  const auto all = clopper_pearson(10, 10, 0.95);
  CHECK(all.hi == 1.0);
  CHECK(all.lo == doctest::Approx(std::pow(0.025, 0.1)).epsilon(1e-9));
  const auto half = clopper_pearson(5, 10, 0.95);
  CHECK(half.contains(0.5));
  CHECK_THROWS_AS(clopper_pearson(11, 10, 0.95), std::domain_error);
}

TEST_CASE("band_covers on degenerate and shifted bands") {
  const GroundTruth uniform = GroundTruth::uniform(0.0, 1.0);
  SplitRng rng(61);
  const Sample sample = uniform.sample(12, rng);

  // Bands wide open: must cover.
  std::vector<ProbabilityInterval> open(12, {0.0, 1.0});
  const CdfBands loose =
      bands_from_intervals(sample, 0.9, BandMethod::LdEqualTailed, open);
  CHECK(band_covers(loose, uniform));
  CHECK(median_curve_bands_cover(loose, uniform));

  // Bands shifted entirely above the truth: must fail.
  std::vector<double> knots = sample.scores();
  std::vector<double> high(12);
  for (std::size_t j = 0; j < 12; ++j) {
    high[j] = std::min(1.0, uniform.cdf(knots[j]) + 0.2);
  }
  const StepCdf lower_high(knots, high, 0.0);
  std::vector<double> upper_vals(12, 1.0);
  const StepCdf upper_one(knots, upper_vals, 0.3);
  const CdfBands shifted{lower_high, upper_one, 0.9, BandMethod::Dkw, sample};
  CHECK_FALSE(band_covers(shifted, uniform));
}

TEST_CASE("band_covers agrees with a dense-grid oracle") {
  const GroundTruth uniform = GroundTruth::uniform(0.0, 1.0);
  SplitRng rng(62);
  const LnNull null =
      simulate_ln_null(10, IntervalKind::EqualTailed, 20000, 8);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Sample sample = uniform.sample(10, rng);
    // Narrow confidence keeps both outcomes common in the fuzz population.
    const double confidence = 0.2 + 0.6 * rng.next_unit();
    const CdfBands bands =
        ld_bands(sample, confidence, IntervalKind::EqualTailed, null);

    // Dense grid over y including one-sided neighborhoods of every knot.
    bool grid_covered = true;
    std::vector<double> probes;
    for (int i = 0; i <= 10000; ++i) probes.push_back(i / 10000.0);
    for (double knot : sample.scores()) {
      probes.push_back(knot - 1e-9);
      probes.push_back(knot + 1e-9);
    }
    for (double y : probes) {
      if (y < 0.0 || y > 1.0) continue;
      const double f = uniform.cdf(y);
      if (f < bands.lower(y) - 1e-12 || f > bands.upper(y) + 1e-12) {
        grid_covered = false;
        break;
      }
    }
    CHECK(band_covers(bands, uniform) == grid_covered);
    checked += grid_covered ? 1 : 0;
  }
  // The fuzz population must exercise both branches.
  CHECK(checked > 5);
  CHECK(checked < 95);
}

TEST_CASE("median curve coverage agrees with a dense budget grid") {
  const GroundTruth uniform = GroundTruth::uniform(0.0, 1.0);
  SplitRng rng(63);
  const LnNull null =
      simulate_ln_null(8, IntervalKind::HighestDensity, 20000, 12);
  for (int trial = 0; trial < 60; ++trial) {
    const Sample sample = uniform.sample(8, rng);
    const double confidence = 0.2 + 0.6 * rng.next_unit();
    const CdfBands bands =
        ld_bands(sample, confidence, IntervalKind::HighestDensity, null);

    // Dense budgets: log-spaced plus one-sided neighborhoods of every jump.
    std::vector<double> budgets;
    for (int i = 0; i <= 4000; ++i) {
      budgets.push_back(std::exp(-6.0 + 14.0 * i / 4000.0));
    }
    const auto add_jumps = [&](const StepCdf& cdf) {
      const auto push = [&](double v) {
        if (v > 0.0 && v < 1.0) {
          const double kappa = std::log(0.5) / std::log(v);
          budgets.push_back(kappa * (1.0 - 1e-9));
          budgets.push_back(kappa * (1.0 + 1e-9));
        }
      };
      push(cdf.before_first());
      for (double v : cdf.values()) push(v);
    };
    add_jumps(bands.lower);
    add_jumps(bands.upper);

    bool grid_covered = true;
    for (double k : budgets) {
      const double truth_at_k = true_median_curve(uniform, k);
      if (truth_at_k < median_of_powered_cdf(bands.upper, k) ||
          truth_at_k > median_of_powered_cdf(bands.lower, k)) {
        grid_covered = false;
        break;
      }
    }
    CHECK(median_curve_bands_cover(bands, uniform) == grid_covered);
  }
}

TEST_CASE("coverage_experiment sanity cases") {
  const GroundTruth uniform = GroundTruth::uniform(0.0, 1.0);
  CoverageOptions options;
  options.null_replicates = 20000;
  options.threads = 2;

  // Nominal zero: zero-width intervals at the order statistics cannot cover
  // a continuous CDF.
  const auto zero =
      coverage_experiment(uniform, 12, 0.0, 200, BandMethod::LdEqualTailed,
                          CoverageTarget::Cdf, 5, options);
  CHECK(zero.rate < 0.01);

  // DKW stays conservative.
  const auto dkw = coverage_experiment(uniform, 20, 0.8, 500, BandMethod::Dkw,
                                       CoverageTarget::Cdf, 5, options);
  CHECK(dkw.rate >= 0.8);

  CHECK_THROWS_AS(coverage_experiment(uniform, 12, 0.8, 50, BandMethod::Dkw,
                                      CoverageTarget::Cdf, 5, options),
                  std::domain_error);
}

TEST_CASE("experiments are reproducible across thread counts") {
  const GroundTruth kde = GroundTruth::from_kde(
      Kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true));
  CoverageOptions one, four;
  one.null_replicates = four.null_replicates = 5000;
  one.threads = 1;
  four.threads = 4;
  const auto a =
      coverage_experiment(kde, 10, 0.8, 200, BandMethod::LdHighestDensity,
                          CoverageTarget::MedianCurve, 17, one);
  const auto b =
      coverage_experiment(kde, 10, 0.8, 200, BandMethod::LdHighestDensity,
                          CoverageTarget::MedianCurve, 17, four);
  CHECK(a.successes == b.successes);
}

TEST_CASE("bootstrap pointwise bands") {
  SUBCASE("constant samples give zero-width bands") {
    const Sample constant({2.0, 2.0, 2.0, 2.0, 2.0});
    const auto bands = bootstrap_pointwise_bands(
        constant, MeanEstimator::V, KGrid::integers(5), 1000, 0.95, 3);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(bands.lower[i] == 2.0);
      CHECK(bands.upper[i] == 2.0);
      CHECK(bands.point[i] == 2.0);
    }
  }

  SUBCASE("k=1 matches a direct bootstrap of the mean") {
    SplitRng rng(1000);
    std::vector<double> scores(40);
    for (double& s : scores) s = rng.next_unit();
    const Sample sample(scores);
    const std::size_t replicates = 4000;
    const auto bands = bootstrap_pointwise_bands(
        sample, MeanEstimator::V, KGrid::integers(1), replicates, 0.9, 55);

    // Replay the identical resampling protocol, but compute plain means.
    SplitRng master(55);
    std::vector<double> means(replicates);
    for (std::size_t r = 0; r < replicates; ++r) {
      SplitRng stream = master.substream(r);
      double total = 0.0;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        total += sample.scores()[stream.next_below(sample.size())];
      }
      means[r] = total / static_cast<double>(sample.size());
    }
    std::sort(means.begin(), means.end());
    const auto quantile = [&](double p) {
      const double pos = p * static_cast<double>(means.size() - 1);
      const std::size_t i = static_cast<std::size_t>(pos);
      return means[i] + (pos - i) * (means[i + 1] - means[i]);
    };
    CHECK(bands.lower[0] == doctest::Approx(quantile(0.05)).epsilon(1e-9));
    CHECK(bands.upper[0] == doctest::Approx(quantile(0.95)).epsilon(1e-9));
  }

  SUBCASE("u-estimator rejects fractional budgets") {
    const Sample sample({0.1, 0.2, 0.3});
    CHECK_THROWS_AS(
        bootstrap_pointwise_bands(sample, MeanEstimator::U,
                                  KGrid({1.0, 2.5}), 1000, 0.9, 1),
        std::domain_error);
  }

  SUBCASE("rejects too few resamples and bad reps") {
    const Sample sample({0.1, 0.2, 0.3});
    CHECK_THROWS_AS(bootstrap_pointwise_bands(sample, MeanEstimator::V,
                                              KGrid::integers(2), 10, 0.9, 1),
                    std::domain_error);
    const GroundTruth uniform = GroundTruth::uniform(0.0, 1.0);
    CHECK_THROWS_AS(
        bootstrap_coverage_experiment(uniform, 10, MeanEstimator::V,
                                      KGrid::integers(2), 0.95, 0, 1000, 1),
        std::domain_error);
  }
}
