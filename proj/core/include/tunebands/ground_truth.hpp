#ifndef TUNEBANDS_GROUND_TRUTH_HPP
#define TUNEBANDS_GROUND_TRUTH_HPP

#include <functional>
#include <string>

#include "tunebands/kde.hpp"
#include "tunebands/rng.hpp"
#include "tunebands/sample.hpp"
#include "tunebands/tuning_curves.hpp"

namespace tunebands {

// A fully known continuous score distribution used to simulate random search
// and validate band coverage against the exact tuning curve.
class GroundTruth {
 public:
  static GroundTruth uniform(double lo, double hi);
  static GroundTruth from_kde(Kde kde);

  double cdf(double y) const { return cdf_(y); }
  double quantile(double p) const { return quantile_(p); }
  double sample_one(SplitRng& rng) const { return sample_(rng); }
  Sample sample(std::size_t n, SplitRng& rng) const;

  const SupportBounds& support() const { return support_; }
  const std::string& tag() const { return tag_; }

 private:
  GroundTruth(std::function<double(double)> cdf,
              std::function<double(double)> quantile,
              std::function<double(SplitRng&)> sample, SupportBounds support,
              std::string tag);

  std::function<double(double)> cdf_;
  std::function<double(double)> quantile_;
  std::function<double(SplitRng&)> sample_;
  SupportBounds support_;
  std::string tag_;
};

// Median of the best of k draws: quantile(0.5^{1/k}).
double true_median_curve(const GroundTruth& truth, double k);

// Mean of the best of k draws via adaptive quadrature of the survival
// function of F^k over the (finite) support.
double true_mean_curve(const GroundTruth& truth, double k);

}  // namespace tunebands

#endif  // TUNEBANDS_GROUND_TRUTH_HPP
