#include "tunebands/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tunebands/cdf_bands.hpp"
#include "tunebands/numerics.hpp"

namespace tunebands {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599344;

// Raw mixture CDF including the kernels reflected at both bounds.
double reflected_mass(const Kde& kde, double y) {
  const double h = kde.bandwidth;
  double total = 0.0;
  for (double c : kde.centers) {
    total += normal_cdf((y - c) / h);
    total += normal_cdf((y - (2.0 * kde.support.lo - c)) / h);
    total += normal_cdf((y - (2.0 * kde.support.hi - c)) / h);
  }
  return total / static_cast<double>(kde.centers.size());
}

double reflected_density(const Kde& kde, double y) {
  const double h = kde.bandwidth;
  double total = 0.0;
  for (double c : kde.centers) {
    const double z0 = (y - c) / h;
    const double z1 = (y - (2.0 * kde.support.lo - c)) / h;
    const double z2 = (y - (2.0 * kde.support.hi - c)) / h;
    total += std::exp(-0.5 * z0 * z0);
    total += std::exp(-0.5 * z1 * z1);
    total += std::exp(-0.5 * z2 * z2);
  }
  return total * kInvSqrt2Pi / (h * static_cast<double>(kde.centers.size()));
}

}  // namespace

Kde::Kde(std::vector<double> centers_, double bandwidth_,
         SupportBounds support_, bool reflect_)
    : centers(std::move(centers_)),
      bandwidth(bandwidth_),
      support(support_),
      reflect(reflect_) {
  if (centers.empty()) throw DataError("KDE needs at least one center");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw std::domain_error("KDE bandwidth must be positive");
  }
  if (reflect && !support.finite()) {
    throw std::domain_error("boundary reflection requires finite support");
  }
  for (double c : centers) {
    if (!std::isfinite(c)) throw DataError("KDE centers must be finite");
    if (reflect && (c < support.lo || c > support.hi)) {
      throw DataError("KDE centers must lie inside the reflected support");
    }
  }
}

double kde_cdf(const Kde& kde, double y) {
  if (!kde.reflect) {
    double total = 0.0;
    for (double c : kde.centers) {
      total += normal_cdf((y - c) / kde.bandwidth);
    }
    return total / static_cast<double>(kde.centers.size());
  }
  if (y <= kde.support.lo) return 0.0;
  if (y >= kde.support.hi) return 1.0;
  const double at_lo = reflected_mass(kde, kde.support.lo);
  const double at_hi = reflected_mass(kde, kde.support.hi);
  return std::clamp((reflected_mass(kde, y) - at_lo) / (at_hi - at_lo), 0.0,
                    1.0);
}

double kde_pdf(const Kde& kde, double y) {
  if (!kde.reflect) {
    double total = 0.0;
    for (double c : kde.centers) {
      const double z = (y - c) / kde.bandwidth;
      total += std::exp(-0.5 * z * z);
    }
    return total * kInvSqrt2Pi /
           (kde.bandwidth * static_cast<double>(kde.centers.size()));
  }
  if (y < kde.support.lo || y > kde.support.hi) return 0.0;
  const double at_lo = reflected_mass(kde, kde.support.lo);
  const double at_hi = reflected_mass(kde, kde.support.hi);
  return reflected_density(kde, y) / (at_hi - at_lo);
}

double kde_quantile(const Kde& kde, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("quantile argument must lie in [0, 1]");
  }
  double lo, hi;
  if (kde.reflect) {
    lo = kde.support.lo;
    hi = kde.support.hi;
    if (p == 0.0) return lo;
    if (p == 1.0) return hi;
  } else {
    const auto [cmin, cmax] =
        std::minmax_element(kde.centers.begin(), kde.centers.end());
    lo = *cmin - 40.0 * kde.bandwidth;
    hi = *cmax + 40.0 * kde.bandwidth;
  }
  const double tol = 1e-13 * std::max(1.0, hi - lo);
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kde_cdf(kde, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double kde_sample_one(const Kde& kde, SplitRng& rng) {
  const double c = kde.centers[rng.next_below(kde.centers.size())];
  double v = c + kde.bandwidth * rng.next_gaussian();
  if (kde.reflect) {
    for (int folds = 0; folds < 64; ++folds) {
      if (v < kde.support.lo) {
        v = 2.0 * kde.support.lo - v;
      } else if (v > kde.support.hi) {
        v = 2.0 * kde.support.hi - v;
      } else {
        break;
      }
    }
    v = std::clamp(v, kde.support.lo, kde.support.hi);
  }
  return v;
}

Sample kde_sample(const Kde& kde, std::size_t m, SplitRng& rng) {
  if (m == 0) throw DataError("cannot draw an empty sample");
  std::vector<double> draws(m);
  for (double& y : draws) y = kde_sample_one(kde, rng);
  return Sample(std::move(draws));
}

Sample kde_sample(const Kde& kde, std::size_t m, std::uint64_t seed) {
  SplitRng rng(seed);
  return kde_sample(kde, m, rng);
}

std::vector<BandwidthFit> kde_bandwidth_fits(
    const std::vector<double>& centers, const std::vector<double>& candidates,
    const SupportBounds& support, bool reflect) {
  const Sample sample(centers);
  const StepCdf empirical = ecdf(sample);
  std::vector<BandwidthFit> fits;
  fits.reserve(candidates.size());
  for (double h : candidates) {
    const Kde kde(centers, h, support, reflect);
    // sup |F_kde - eCDF| is attained against each eCDF step.
    double d = 0.0;
    const auto& knots = empirical.knots();
    const auto& values = empirical.values();
    double prev = 0.0;
    for (std::size_t j = 0; j < knots.size(); ++j) {
      const double f = kde_cdf(kde, knots[j]);
      d = std::max(d, std::max(values[j] - f, f - prev));
      prev = values[j];
    }
    fits.push_back({h, d});
  }
  return fits;
}

}  // namespace tunebands
