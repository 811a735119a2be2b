#ifndef TUNEBANDS_CDF_BANDS_HPP
#define TUNEBANDS_CDF_BANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tunebands/numerics.hpp"
#include "tunebands/sample.hpp"
#include "tunebands/step_cdf.hpp"

namespace tunebands {

enum class BandMethod {
  Dkw,
  Ks,
  LdEqualTailed,
  LdHighestDensity,
};

std::string to_string(BandMethod method);
BandMethod band_method_from_string(const std::string& name);
IntervalKind interval_kind_of(BandMethod method);  // LD methods only

// Simultaneous confidence bands for a CDF: lower <= F <= upper everywhere
// with the stated probability.  Both bands are step functions whose knots are
// the sample's distinct scores.
struct CdfBands {
  StepCdf lower;
  StepCdf upper;
  double confidence;
  BandMethod method;
  Sample sample;

  // Ties make the score distribution effectively discrete; the bands then
  // hold conservatively rather than exactly.
  bool ties_present() const { return sample.has_ties(); }
};

// Empirical CDF: F(y) = #{scores <= y} / n.
StepCdf ecdf(const Sample& sample);

// Closed-form half width sqrt(log(2/alpha) / (2n)).
double dkw_epsilon(std::size_t n, double confidence);
CdfBands dkw_bands(const Sample& sample, double confidence);

// Monte-Carlo estimate of the 1-confidence two-sided Kolmogorov-Smirnov
// critical value: the ceil(confidence * replicates)-th order statistic of
// simulated sup-distances for uniform samples of size n.
double ks_critical_value(std::size_t n, double confidence,
                         std::size_t replicates, std::uint64_t seed,
                         int threads = 0);
CdfBands ks_bands(const Sample& sample, double confidence,
                  std::size_t replicates = 100000, std::uint64_t seed = 0,
                  int threads = 0);

// Simulated null distribution of L_n = max_i B_i(U_(i)), the maximum over
// order statistics of the smallest-interval coverage under Beta(i, n+1-i).
struct LnNull {
  std::size_t n;
  IntervalKind kind;
  std::size_t replicates;
  std::uint64_t seed;
  std::vector<double> sorted_statistics;

  // Conservative empirical quantile: the ceil(confidence * replicates)-th
  // order statistic.
  double quantile(double confidence) const;
};

LnNull simulate_ln_null(std::size_t n, IntervalKind kind,
                        std::size_t replicates, std::uint64_t seed,
                        int threads = 0);

// Per-order-statistic coverage intervals [l_(i), u_(i)] for Beta(i, n+1-i)
// at the given simultaneous coverage level.  Depends only on (n, coverage,
// kind), so coverage studies can compute it once and reuse it.
std::vector<ProbabilityInterval> ld_intervals(std::size_t n, double coverage,
                                              IntervalKind kind);

CdfBands ld_bands(const Sample& sample, double confidence, IntervalKind kind,
                  const LnNull& null);

// Assembles the band step functions from per-order-statistic intervals: the
// lower bound extends right from each order statistic, the upper bound
// extends left, the upper band is 1 at and beyond Y_(n).
CdfBands bands_from_intervals(const Sample& sample, double confidence,
                              BandMethod method,
                              const std::vector<ProbabilityInterval>& intervals);

// Bands obtained by shifting the eCDF up and down by a constant half width
// and clipping to [0, 1]; the DKW and KS shapes with a precomputed epsilon.
CdfBands shifted_ecdf_bands(const Sample& sample, double confidence,
                            double epsilon, BandMethod method);

}  // namespace tunebands

#endif  // TUNEBANDS_CDF_BANDS_HPP
