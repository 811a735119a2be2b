#include "tunebands/ground_truth.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "tunebands/quadrature.hpp"

namespace tunebands {

GroundTruth::GroundTruth(std::function<double(double)> cdf,
                         std::function<double(double)> quantile,
                         std::function<double(SplitRng&)> sample,
                         SupportBounds support, std::string tag)
    : cdf_(std::move(cdf)),
      quantile_(std::move(quantile)),
      sample_(std::move(sample)),
      support_(support),
      tag_(std::move(tag)) {}

GroundTruth GroundTruth::uniform(double lo, double hi) {
  const SupportBounds support(lo, hi);
  if (!support.finite()) {
    throw std::domain_error("uniform truth requires finite bounds");
  }
  const double width = hi - lo;
  return GroundTruth(
      [lo, hi, width](double y) {
        if (y <= lo) return 0.0;
        if (y >= hi) return 1.0;
        return (y - lo) / width;
      },
      [lo, width](double p) { return lo + p * width; },
      [lo, width](SplitRng& rng) { return lo + width * rng.next_unit(); },
      support, "uniform");
}

GroundTruth GroundTruth::from_kde(Kde kde) {
  auto shared = std::make_shared<const Kde>(std::move(kde));
  SupportBounds support = shared->support;
  if (!shared->reflect) {
    // Effective support of the unreflected mixture; the Gaussian tail past
    // 40 bandwidths is far below double precision.
    double lo = shared->centers.front(), hi = shared->centers.front();
    for (double c : shared->centers) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    support = SupportBounds(lo - 40.0 * shared->bandwidth,
                            hi + 40.0 * shared->bandwidth);
  }
  return GroundTruth(
      [shared](double y) { return kde_cdf(*shared, y); },
      [shared](double p) { return kde_quantile(*shared, p); },
      [shared](SplitRng& rng) { return kde_sample_one(*shared, rng); },
      support, shared->reflect ? "kde-reflected" : "kde");
}

Sample GroundTruth::sample(std::size_t n, SplitRng& rng) const {
  if (n == 0) throw DataError("cannot draw an empty sample");
  std::vector<double> draws(n);
  for (double& y : draws) y = sample_(rng);
  return Sample(std::move(draws));
}

double true_median_curve(const GroundTruth& truth, double k) {
  if (!(k > 0.0)) throw std::domain_error("budget k must be positive");
  return truth.quantile(std::exp(std::log(0.5) / k));
}

double true_mean_curve(const GroundTruth& truth, double k) {
  if (!(k > 0.0)) throw std::domain_error("budget k must be positive");
  const SupportBounds& support = truth.support();
  if (!support.finite()) {
    throw std::domain_error("mean tuning curve requires finite support");
  }
  // E[T_k] = lo + integral of (1 - F(y)^k) over the support.
  const double integral = integrate(
      [&](double y) { return -std::expm1(k * std::log(truth.cdf(y))); },
      support.lo, support.hi, 1e-8);
  return support.lo + integral;
}

}  // namespace tunebands
