#include "tunebands/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "tunebands/parallel.hpp"

namespace tunebands {

namespace {

// Relative step used to probe one-sided limits around discontinuities.
constexpr double kSideEps = 1e-12;

double knot_probe_step(const StepCdf& cdf) {
  const double range =
      std::max(cdf.knots().back() - cdf.knots().front(),
               std::max(std::fabs(cdf.knots().back()), 1.0));
  return kSideEps * range;
}

}  // namespace

ProbabilityInterval clopper_pearson(std::size_t successes, std::size_t trials,
                                    double confidence) {
  if (trials == 0) throw std::domain_error("need at least one trial");
  if (successes > trials) {
    throw std::domain_error("successes cannot exceed trials");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in (0, 1)");
  }
  const double alpha = 1.0 - confidence;
  const double s = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  double lo = 0.0, hi = 1.0;
  if (successes > 0) {
    lo = beta_quantile(BetaParams(s, n - s + 1.0), 0.5 * alpha);
  }
  if (successes < trials) {
    hi = beta_quantile(BetaParams(s + 1.0, n - s), 1.0 - 0.5 * alpha);
  }
  return {lo, hi};
}

bool band_covers(const CdfBands& bands, const GroundTruth& truth) {
  const auto& knots = bands.lower.knots();
  const double step = knot_probe_step(bands.lower);

  // Before the first knot the lower band must stay below F; only its
  // before-first value can violate (our constructions pin it at 0, but the
  // check is cheap and keeps the function honest for arbitrary bands).
  if (bands.lower.before_first() > 0.0) {
    const double probe = std::max(truth.support().lo, knots.front() - 1.0);
    if (truth.cdf(probe) < bands.lower.before_first()) return false;
  }
  for (std::size_t j = 0; j < knots.size(); ++j) {
    // Lower band: the piece starting at this knot claims F >= value; the
    // infimum of F on the piece is its left end.
    if (truth.cdf(knots[j] + step) < bands.lower.value_at(j)) return false;
    // Upper band: the piece ending at this knot claims F <= previous value;
    // the supremum of F on the piece is its right end.
    const double before =
        j == 0 ? bands.upper.before_first() : bands.upper.value_at(j - 1);
    if (truth.cdf(knots[j] - step) > before) return false;
  }
  // Past the last knot F climbs to 1.
  if (bands.upper.value_at(knots.size() - 1) < 1.0) return false;
  return true;
}

bool median_curve_bands_cover(const CdfBands& bands, const GroundTruth& truth) {
  // Lower curve (from the upper CDF band): left-continuous step in k that
  // jumps just past each kappa(v) = log(1/2)/log(v).  A piece is violated
  // when the true curve sits below the piece's value at its left end.
  {
    // With no mass allowed below the first knot, the lower curve stays at a
    // knot for arbitrarily small budgets while the true curve falls to the
    // support's lower end.
    if (bands.upper.before_first() <= 0.0) {
      const double first_positive = median_of_powered_cdf(bands.upper, 1e-6);
      if (truth.support().lo < first_positive) return false;
    }
    std::vector<double> values;
    values.push_back(bands.upper.before_first());
    for (double v : bands.upper.values()) values.push_back(v);
    for (double v : values) {
      if (!(v > 0.0 && v < 1.0)) continue;
      const double kappa = std::log(0.5) / std::log(v);
      const double k = kappa * (1.0 + 1e-9);
      const double lower_value = median_of_powered_cdf(bands.upper, k);
      if (true_median_curve(truth, k) < lower_value) return false;
    }
  }
  // Upper curve (from the lower CDF band): a piece is violated when the true
  // curve exceeds the piece's value at its right end.
  {
    std::vector<double> values;
    values.push_back(bands.lower.before_first());
    for (double v : bands.lower.values()) values.push_back(v);
    for (double v : values) {
      if (!(v > 0.0 && v < 1.0)) continue;
      const double kappa = std::log(0.5) / std::log(v);
      const double k = kappa * (1.0 - 1e-9);
      const double upper_value = median_of_powered_cdf(bands.lower, k);
      if (true_median_curve(truth, k) > upper_value) return false;
    }
    // Beyond the largest jump the upper curve is finite only if the lower
    // band reaches 1 somewhere; the true curve then climbs to the support's
    // upper end.
    if (bands.lower.values().back() >= 1.0) {
      const auto& lvals = bands.lower.values();
      const std::size_t first_one = static_cast<std::size_t>(
          std::lower_bound(lvals.begin(), lvals.end(), 1.0) - lvals.begin());
      if (truth.support().hi > bands.lower.knots()[first_one]) return false;
    }
  }
  return true;
}

bool band_covers(const CurveBandSet& set, const GroundTruth& truth) {
  if (set.kind == CurveKind::Median && set.source) {
    return median_curve_bands_cover(*set.source, truth);
  }
  for (std::size_t i = 0; i < set.grid.budgets.size(); ++i) {
    const double k = set.grid.budgets[i];
    const double t = set.kind == CurveKind::Median
                         ? true_median_curve(truth, k)
                         : true_mean_curve(truth, k);
    if (t < set.lower[i] || t > set.upper[i]) return false;
  }
  return true;
}

CoverageResult make_coverage_result(std::size_t successes, std::size_t trials,
                                    double nominal, double cp_confidence) {
  CoverageResult result;
  result.successes = successes;
  result.trials = trials;
  result.rate = static_cast<double>(successes) / static_cast<double>(trials);
  result.cp_interval = clopper_pearson(successes, trials, cp_confidence);
  result.nominal = nominal;
  return result;
}

std::string to_string(CoverageTarget target) {
  switch (target) {
    case CoverageTarget::Cdf:
      return "cdf";
    case CoverageTarget::MedianCurve:
      return "median";
    case CoverageTarget::MeanCurve:
      return "mean";
  }
  return "unknown";
}

CoverageResult coverage_experiment(const GroundTruth& truth, std::size_t n,
                                   double nominal, std::size_t reps,
                                   BandMethod method, CoverageTarget target,
                                   std::uint64_t seed,
                                   const CoverageOptions& options) {
  if (reps < 100) {
    throw std::domain_error("coverage experiments need at least 100 reps");
  }
  if (!(nominal >= 0.0 && nominal < 1.0)) {
    throw std::domain_error("nominal confidence must lie in [0, 1)");
  }
  if (target == CoverageTarget::MeanCurve && !truth.support().finite()) {
    throw std::domain_error("mean-curve coverage requires finite support");
  }

  SplitRng master(seed);
  // Substream 0 feeds the null simulations; replication r uses substream r+1.
  const std::uint64_t null_seed = master.substream(0).next_u64();

  // Band construction data shared across replications: the per-order-statistic
  // intervals (LD) or the band half width (DKW / KS) depend only on
  // (n, nominal, method).
  std::vector<ProbabilityInterval> intervals;
  double epsilon = 0.0;
  switch (method) {
    case BandMethod::Dkw:
      epsilon = dkw_epsilon(n, nominal == 0.0 ? 1e-12 : nominal);
      break;
    case BandMethod::Ks:
      epsilon = options.ks_epsilon
                    ? *options.ks_epsilon
                    : ks_critical_value(n, nominal, options.null_replicates,
                                        null_seed, options.threads);
      break;
    case BandMethod::LdEqualTailed:
    case BandMethod::LdHighestDensity: {
      const IntervalKind kind = interval_kind_of(method);
      double c;
      if (options.ln_null) {
        if (options.ln_null->n != n || options.ln_null->kind != kind) {
          throw std::invalid_argument(
              "precomputed L_n null does not match the experiment");
        }
        c = options.ln_null->quantile(nominal);
      } else {
        c = simulate_ln_null(n, kind, options.null_replicates, null_seed,
                             options.threads)
                .quantile(nominal);
      }
      intervals = ld_intervals(n, c, kind);
      break;
    }
  }

  const KGrid grid = options.grid ? *options.grid : KGrid::integers(n);

  std::vector<unsigned char> covered(reps, 0);
  parallel_for(reps, options.threads, [&](std::size_t r) {
    SplitRng rng = master.substream(r + 1);
    const Sample sample = truth.sample(n, rng);
    const CdfBands bands =
        intervals.empty()
            ? shifted_ecdf_bands(sample, nominal, epsilon, method)
            : bands_from_intervals(sample, nominal, method, intervals);
    switch (target) {
      case CoverageTarget::Cdf:
        covered[r] = band_covers(bands, truth) ? 1 : 0;
        break;
      case CoverageTarget::MedianCurve:
        covered[r] = median_curve_bands_cover(bands, truth) ? 1 : 0;
        break;
      case CoverageTarget::MeanCurve: {
        const CurveBandSet set = mean_curve_bands(bands, grid, truth.support());
        covered[r] = band_covers(set, truth) ? 1 : 0;
        break;
      }
    }
  });

  std::size_t successes = 0;
  for (unsigned char c : covered) successes += c;
  return make_coverage_result(successes, reps, nominal, options.cp_confidence);
}

}  // namespace tunebands
