#include "tunebands/cdf_bands.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "tunebands/parallel.hpp"
#include "tunebands/rng.hpp"

namespace tunebands {

namespace {

void check_confidence(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in (0, 1), got " +
                            std::to_string(confidence));
  }
}

void check_replicates(std::size_t replicates) {
  if (replicates < 1000) {
    throw std::domain_error(
        "at least 1000 replicates are required for a usable quantile");
  }
}

// 1-based order-statistic index for the conservative empirical quantile,
// snapping away float noise in confidence * replicates.
std::size_t quantile_index(double confidence, std::size_t replicates) {
  const double x = confidence * static_cast<double>(replicates);
  const double rounded = std::round(x);
  double idx = (std::fabs(x - rounded) < 1e-6) ? rounded : std::ceil(x);
  idx = std::clamp(idx, 1.0, static_cast<double>(replicates));
  return static_cast<std::size_t>(idx);
}

// Distinct knots with the 1-based index of the last order statistic at each.
std::pair<std::vector<double>, std::vector<std::size_t>> unique_knots(
    const Sample& sample) {
  const auto& s = sample.scores();
  std::vector<double> knots;
  std::vector<std::size_t> last_index;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (knots.empty() || s[i] != knots.back()) {
      knots.push_back(s[i]);
      last_index.push_back(i + 1);
    } else {
      last_index.back() = i + 1;
    }
  }
  return {std::move(knots), std::move(last_index)};
}

// Evaluates B_i(x), the smallest-interval coverage for Beta(i, n+1-i), with
// per-i constants hoisted out of the replicate loop.  Interior
// highest-density cases bisect on the unnormalized log density.
struct OrderStatCoverage {
  double a, b;
  double mode = 0.0;
  IntervalKind kind;

  OrderStatCoverage(std::size_t i, std::size_t n, IntervalKind kind_)
      : a(static_cast<double>(i)),
        b(static_cast<double>(n + 1 - i)),
        kind(kind_) {
    if (a > 1.0 && b > 1.0) mode = (a - 1.0) / (a + b - 2.0);
  }

  double cdf(double x) const {
    if (a == 1.0) return -std::expm1(b * std::log1p(-x));
    if (b == 1.0) return std::pow(x, a);
    return beta_cdf(BetaParams(a, b), x);
  }

  double log_kernel(double x) const {
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
  }

  double operator()(double x) const {
    if (kind == IntervalKind::EqualTailed || (a == 1.0 && b == 1.0)) {
      return 2.0 * std::fabs(0.5 - cdf(x));
    }
    if (a == 1.0) return cdf(x);
    if (b == 1.0) return 1.0 - cdf(x);
    if (x <= 0.0 || x >= 1.0) return 1.0;
    if (x == mode) return 0.0;
    const double level = log_kernel(x);
    if (x < mode) {
      double lo = mode, hi = 1.0;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (log_kernel(mid) > level) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return std::clamp(cdf(0.5 * (lo + hi)) - cdf(x), 0.0, 1.0);
    }
    double lo = 0.0, hi = mode;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      if (log_kernel(mid) < level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::clamp(cdf(x) - cdf(0.5 * (lo + hi)), 0.0, 1.0);
  }
};

}  // namespace

std::string to_string(BandMethod method) {
  switch (method) {
    case BandMethod::Dkw:
      return "dkw";
    case BandMethod::Ks:
      return "ks";
    case BandMethod::LdEqualTailed:
      return "ld-et";
    case BandMethod::LdHighestDensity:
      return "ld-hd";
  }
  return "unknown";
}

BandMethod band_method_from_string(const std::string& name) {
  if (name == "dkw") return BandMethod::Dkw;
  if (name == "ks") return BandMethod::Ks;
  if (name == "ld-et") return BandMethod::LdEqualTailed;
  if (name == "ld-hd") return BandMethod::LdHighestDensity;
  throw std::domain_error("unknown band method: " + name);
}

IntervalKind interval_kind_of(BandMethod method) {
  switch (method) {
    case BandMethod::LdEqualTailed:
      return IntervalKind::EqualTailed;
    case BandMethod::LdHighestDensity:
      return IntervalKind::HighestDensity;
    default:
      throw std::domain_error("band method has no interval kind: " +
                              to_string(method));
  }
}

StepCdf ecdf(const Sample& sample) {
  auto [knots, last_index] = unique_knots(sample);
  const double n = static_cast<double>(sample.size());
  std::vector<double> values(knots.size());
  for (std::size_t j = 0; j < knots.size(); ++j) {
    values[j] = static_cast<double>(last_index[j]) / n;
  }
  return StepCdf(std::move(knots), std::move(values), 0.0);
}

double dkw_epsilon(std::size_t n, double confidence) {
  check_confidence(confidence);
  if (n == 0) throw DataError("sample must contain at least one score");
  const double alpha = 1.0 - confidence;
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

CdfBands shifted_ecdf_bands(const Sample& sample, double confidence,
                            double epsilon, BandMethod method) {
  auto [knots, last_index] = unique_knots(sample);
  const double n = static_cast<double>(sample.size());
  std::vector<double> lower(knots.size());
  std::vector<double> upper(knots.size());
  for (std::size_t j = 0; j < knots.size(); ++j) {
    const double f = static_cast<double>(last_index[j]) / n;
    lower[j] = std::max(f - epsilon, 0.0);
    upper[j] = std::min(f + epsilon, 1.0);
  }
  StepCdf lo(knots, std::move(lower), 0.0);
  StepCdf hi(std::move(knots), std::move(upper), std::min(epsilon, 1.0));
  return CdfBands{std::move(lo), std::move(hi), confidence, method, sample};
}

CdfBands dkw_bands(const Sample& sample, double confidence) {
  return shifted_ecdf_bands(sample, confidence,
                            dkw_epsilon(sample.size(), confidence),
                            BandMethod::Dkw);
}

double ks_critical_value(std::size_t n, double confidence,
                         std::size_t replicates, std::uint64_t seed,
                         int threads) {
  if (n == 0) throw DataError("sample must contain at least one score");
  if (!(confidence >= 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in [0, 1)");
  }
  check_replicates(replicates);

  SplitRng master(seed);
  std::vector<double> stats(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    SplitRng rng = master.substream(r);
    std::vector<double> u(n);
    for (double& v : u) v = rng.next_unit();
    std::sort(u.begin(), u.end());
    const double dn = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double hi = static_cast<double>(i + 1) / dn - u[i];
      const double lo = u[i] - static_cast<double>(i) / dn;
      d = std::max(d, std::max(hi, lo));
    }
    stats[r] = d;
  });
  std::sort(stats.begin(), stats.end());
  return stats[quantile_index(confidence, replicates) - 1];
}

CdfBands ks_bands(const Sample& sample, double confidence,
                  std::size_t replicates, std::uint64_t seed, int threads) {
  check_confidence(confidence);
  const double epsilon =
      ks_critical_value(sample.size(), confidence, replicates, seed, threads);
  return shifted_ecdf_bands(sample, confidence, epsilon, BandMethod::Ks);
}

double LnNull::quantile(double confidence) const {
  if (!(confidence >= 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in [0, 1)");
  }
  return sorted_statistics[quantile_index(confidence, replicates) - 1];
}

LnNull simulate_ln_null(std::size_t n, IntervalKind kind,
                        std::size_t replicates, std::uint64_t seed,
                        int threads) {
  if (n == 0) throw DataError("sample must contain at least one score");
  check_replicates(replicates);

  std::vector<OrderStatCoverage> coverage;
  coverage.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) coverage.emplace_back(i, n, kind);

  SplitRng master(seed);
  std::vector<double> stats(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    SplitRng rng = master.substream(r);
    std::vector<double> u(n);
    for (double& v : u) v = rng.next_unit();
    std::sort(u.begin(), u.end());
    double ln = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ln = std::max(ln, coverage[i](u[i]));
    }
    stats[r] = ln;
  });
  std::sort(stats.begin(), stats.end());
  return LnNull{n, kind, replicates, seed, std::move(stats)};
}

std::vector<ProbabilityInterval> ld_intervals(std::size_t n, double coverage,
                                              IntervalKind kind) {
  std::vector<ProbabilityInterval> intervals;
  intervals.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const BetaParams params(static_cast<double>(i),
                            static_cast<double>(n + 1 - i));
    intervals.push_back(beta_interval(params, coverage, kind));
  }
  return intervals;
}

CdfBands bands_from_intervals(
    const Sample& sample, double confidence, BandMethod method,
    const std::vector<ProbabilityInterval>& intervals) {
  if (intervals.size() != sample.size()) {
    throw std::invalid_argument(
        "need one coverage interval per order statistic");
  }
  auto [knots, last_index] = unique_knots(sample);
  const std::size_t n = sample.size();
  std::vector<double> lower(knots.size());
  std::vector<double> upper(knots.size());
  for (std::size_t j = 0; j < knots.size(); ++j) {
    const std::size_t li = last_index[j];
    lower[j] = intervals[li - 1].lo;
    upper[j] = (li == n) ? 1.0 : intervals[li].hi;
  }
  StepCdf lo(knots, std::move(lower), 0.0);
  StepCdf hi(std::move(knots), std::move(upper), intervals[0].hi);
  return CdfBands{std::move(lo), std::move(hi), confidence, method, sample};
}

CdfBands ld_bands(const Sample& sample, double confidence, IntervalKind kind,
                  const LnNull& null) {
  check_confidence(confidence);
  if (null.n != sample.size()) {
    throw std::invalid_argument("L_n null was simulated for a different n");
  }
  if (null.kind != kind) {
    throw std::invalid_argument(
        "L_n null was simulated for a different interval kind");
  }
  const double c = null.quantile(confidence);
  const BandMethod method = kind == IntervalKind::EqualTailed
                                ? BandMethod::LdEqualTailed
                                : BandMethod::LdHighestDensity;
  return bands_from_intervals(sample, confidence, method,
                              ld_intervals(sample.size(), c, kind));
}

}  // namespace tunebands
