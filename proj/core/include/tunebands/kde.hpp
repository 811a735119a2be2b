#ifndef TUNEBANDS_KDE_HPP
#define TUNEBANDS_KDE_HPP

#include <cstdint>
#include <vector>

#include "tunebands/rng.hpp"
#include "tunebands/sample.hpp"
#include "tunebands/tuning_curves.hpp"

namespace tunebands {

// Gaussian-kernel density estimate.  With reflect on, each kernel is folded
// back at both support bounds and the CDF is renormalized so that it runs
// exactly from 0 at support.lo to 1 at support.hi.
struct Kde {
  std::vector<double> centers;
  double bandwidth;
  SupportBounds support;
  bool reflect;

  Kde(std::vector<double> centers_, double bandwidth_, SupportBounds support_,
      bool reflect_);
};

double kde_cdf(const Kde& kde, double y);
double kde_pdf(const Kde& kde, double y);

// Inverse CDF by bisection over the support.
double kde_quantile(const Kde& kde, double p);

// Draws one point: pick a center uniformly, add bandwidth-scaled Gaussian
// noise, fold back into the support when reflect is on.
double kde_sample_one(const Kde& kde, SplitRng& rng);

Sample kde_sample(const Kde& kde, std::size_t m, SplitRng& rng);
Sample kde_sample(const Kde& kde, std::size_t m, std::uint64_t seed);

// Bandwidth diagnostics: Kolmogorov-Smirnov distance between each candidate
// KDE's CDF and the centers' eCDF.  Bandwidths are usually picked by
// inspecting PDF/CDF plots; this reports the same information numerically.
struct BandwidthFit {
  double bandwidth;
  double ks_distance;
};
std::vector<BandwidthFit> kde_bandwidth_fits(
    const std::vector<double>& centers, const std::vector<double>& candidates,
    const SupportBounds& support, bool reflect);

}  // namespace tunebands

#endif  // TUNEBANDS_KDE_HPP
