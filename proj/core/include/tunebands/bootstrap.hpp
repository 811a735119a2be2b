#ifndef TUNEBANDS_BOOTSTRAP_HPP
#define TUNEBANDS_BOOTSTRAP_HPP

#include <cstdint>
#include <vector>

#include "tunebands/coverage.hpp"
#include "tunebands/ground_truth.hpp"
#include "tunebands/sample.hpp"
#include "tunebands/tuning_curves.hpp"

namespace tunebands {

enum class MeanEstimator { U, V };

std::string to_string(MeanEstimator estimator);

// Percentile-method pointwise bands for the mean tuning curve: resample the
// sample with replacement, evaluate the estimator at every budget, and take
// the per-budget percentile interval.  These bands are the baseline the exact
// bands replace; their per-budget coverage collapses at large budgets.
CurveBandSet bootstrap_pointwise_bands(const Sample& sample,
                                       MeanEstimator estimator,
                                       const KGrid& grid,
                                       std::size_t replicates,
                                       double confidence, std::uint64_t seed,
                                       int threads = 0);

// Per-budget empirical coverage of the true mean tuning curve by bootstrap
// bands, over `reps` independent samples of size n.
std::vector<CoverageResult> bootstrap_coverage_experiment(
    const GroundTruth& truth, std::size_t n, MeanEstimator estimator,
    const KGrid& grid, double nominal, std::size_t reps,
    std::size_t replicates, std::uint64_t seed, int threads = 0,
    double cp_confidence = 0.95);

}  // namespace tunebands

#endif  // TUNEBANDS_BOOTSTRAP_HPP
