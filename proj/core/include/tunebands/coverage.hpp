#ifndef TUNEBANDS_COVERAGE_HPP
#define TUNEBANDS_COVERAGE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tunebands/cdf_bands.hpp"
#include "tunebands/ground_truth.hpp"
#include "tunebands/numerics.hpp"
#include "tunebands/tuning_curves.hpp"

namespace tunebands {

// Exact binomial confidence interval from Beta quantiles.
ProbabilityInterval clopper_pearson(std::size_t successes, std::size_t trials,
                                    double confidence);

// True when the ground-truth CDF lies inside the bands everywhere.  The bands
// are step functions and the truth is continuous and monotone, so it is
// enough to test one-sided limits at every knot.
bool band_covers(const CdfBands& bands, const GroundTruth& truth);

// True when the true median tuning curve lies inside the median curve bands
// simultaneously over every positive real budget.  The curve bands are step
// functions of the budget whose jumps happen where a band value v crosses
// v^k = 1/2, so the check walks those discontinuities.
bool median_curve_bands_cover(const CdfBands& bands, const GroundTruth& truth);

// Grid-level check: the true curve value lies inside [lower, upper] at every
// stored budget.  For median sets carrying their source CDF bands this
// instead runs the continuous-budget check above.
bool band_covers(const CurveBandSet& set, const GroundTruth& truth);

struct CoverageResult {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double rate = 0.0;
  ProbabilityInterval cp_interval{0.0, 1.0};
  double nominal = 0.0;
};

CoverageResult make_coverage_result(std::size_t successes, std::size_t trials,
                                    double nominal, double cp_confidence);

enum class CoverageTarget { Cdf, MedianCurve, MeanCurve };

std::string to_string(CoverageTarget target);

struct CoverageOptions {
  std::size_t null_replicates = 100000;  // L_n / KS critical value simulation
  double cp_confidence = 0.99;
  int threads = 0;
  // Budget grid for mean-curve checks; defaults to integers 1..n.
  std::optional<KGrid> grid;
  // Reuse a precomputed L_n null (must match n and the method's kind).
  std::optional<LnNull> ln_null;
  // Reuse a precomputed KS critical value for (n, nominal).
  std::optional<double> ks_epsilon;
};

// Draws `reps` samples of size n from the truth, builds bands with the given
// method, and counts how often they cover the target simultaneously.  The
// L_n null (or KS critical value) is simulated once and shared across
// replications; every replication derives its stream from the seed and its
// index, so results do not depend on thread count.
CoverageResult coverage_experiment(const GroundTruth& truth, std::size_t n,
                                   double nominal, std::size_t reps,
                                   BandMethod method, CoverageTarget target,
                                   std::uint64_t seed,
                                   const CoverageOptions& options = {});

}  // namespace tunebands

#endif  // TUNEBANDS_COVERAGE_HPP
