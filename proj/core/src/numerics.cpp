#include "tunebands/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tunebands {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta function, modified Lentz.
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-16;

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    // Even term.
    double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    // Odd term.
    num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) return h;
  }
  throw NumericError("beta_cdf: continued fraction failed to converge");
}

double beta_cdf_impl(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(a, b)) *
                   beta_cf(b, a, 1.0 - x) / b;
}

void check_unit_range(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " +
                            std::to_string(x));
  }
}

void check_coverage(double coverage) {
  if (!(coverage >= 0.0 && coverage < 1.0)) {
    throw std::domain_error("coverage must lie in [0, 1), got " +
                            std::to_string(coverage));
  }
}

// These interval routines only face unimodal or monotone shapes; a < 1 or
// b < 1 would put unbounded mass at an endpoint.
void check_interval_shape(const BetaParams& p) {
  if (p.a < 1.0 || p.b < 1.0) {
    throw std::domain_error(
        "highest-density intervals require a >= 1 and b >= 1");
  }
}

}  // namespace

BetaParams::BetaParams(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0.0) || !std::isfinite(a) || !(b > 0.0) || !std::isfinite(b)) {
    throw std::domain_error("Beta shapes must be positive finite, got a=" +
                            std::to_string(a_) + " b=" + std::to_string(b_));
  }
}

double BetaParams::mode() const {
  if (!(a > 1.0) || !(b > 1.0)) {
    throw std::domain_error("Beta mode requires a > 1 and b > 1");
  }
  return (a - 1.0) / (a + b - 2.0);
}

double beta_cdf(const BetaParams& p, double x) {
  check_unit_range(x, "beta_cdf argument");
  return beta_cdf_impl(p.a, p.b, x);
}

double beta_pdf(const BetaParams& p, double x) {
  check_unit_range(x, "beta_pdf argument");
  if (x == 0.0) {
    if (p.a > 1.0) return 0.0;
    if (p.a == 1.0) return p.b;  // density b(1-x)^{b-1} at 0
    return kInf;
  }
  if (x == 1.0) {
    if (p.b > 1.0) return 0.0;
    if (p.b == 1.0) return p.a;
    return kInf;
  }
  return std::exp((p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x) -
                  log_beta(p.a, p.b));
}

double beta_log_kernel(const BetaParams& p, double x) {
  if (x <= 0.0) return (p.a == 1.0) ? 0.0 : -kInf;
  if (x >= 1.0) return (p.b == 1.0) ? 0.0 : -kInf;
  return (p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x);
}

double beta_quantile(const BetaParams& p, double q) {
  check_unit_range(q, "beta_quantile argument");
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  // Plain bisection; ~52 halvings reach the double-precision floor.
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (beta_cdf_impl(p.a, p.b, mid) < q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ProbabilityInterval equal_tailed_interval(const BetaParams& p,
                                          double coverage) {
  check_coverage(coverage);
  const double alpha = 1.0 - coverage;
  return {beta_quantile(p, 0.5 * alpha), beta_quantile(p, 1.0 - 0.5 * alpha)};
}

ProbabilityInterval highest_density_interval(const BetaParams& p,
                                             double coverage) {
  check_coverage(coverage);
  check_interval_shape(p);
  if (p.a == 1.0 && p.b == 1.0) {
    // Flat density: ill-defined; keep the equal-tailed interval (only arises
    // for samples of size one).
    return equal_tailed_interval(p, coverage);
  }
  if (p.a == 1.0) {
    // Decreasing density: mass packs against 0.
    return {0.0, beta_quantile(p, coverage)};
  }
  if (p.b == 1.0) {
    // Increasing density: mass packs against 1.
    return {beta_quantile(p, 1.0 - coverage), 1.0};
  }

  const double mode = p.mode();
  const double cdf_mode = beta_cdf_impl(p.a, p.b, mode);
  double lo = beta_quantile(p, std::max(cdf_mode - coverage, 0.0));
  double hi = std::min(mode, beta_quantile(p, 1.0 - coverage));
  if (hi < lo) hi = lo;

  // f(pl) = logg(pl) - logg(pu(pl)) with pu solving G(pu) = G(pl) + coverage.
  // f < 0 at the initial lower bound and f > 0 at the upper one.  The matching
  // upper endpoint moves monotonically with pl, so its bracket is reused and
  // re-tightened instead of re-solving the quantile from scratch.
  double pu_lo = mode, pu_hi = 1.0;
  const auto upper_endpoint = [&](double pl) {
    const double target = beta_cdf_impl(p.a, p.b, pl) + coverage;
    double ulo = pu_lo, uhi = pu_hi;
    while (uhi - ulo > 1e-12) {
      const double mid = 0.5 * (ulo + uhi);
      if (beta_cdf_impl(p.a, p.b, mid) < target) {
        ulo = mid;
      } else {
        uhi = mid;
      }
    }
    return 0.5 * (ulo + uhi);
  };

  int iter = 0;
  while (hi - lo > 1e-9 && ++iter <= 200) {
    const double mid = 0.5 * (lo + hi);
    const double pu = upper_endpoint(mid);
    const double f = beta_log_kernel(p, mid) - beta_log_kernel(p, pu);
    if (f < 0.0) {
      lo = mid;
      pu_lo = pu;
    } else {
      hi = mid;
      pu_hi = std::min(1.0, pu + 1e-12);
    }
  }
  const double pl = 0.5 * (lo + hi);
  pu_lo = mode;
  pu_hi = 1.0;
  return {pl, upper_endpoint(pl)};
}

ProbabilityInterval beta_interval(const BetaParams& p, double coverage,
                                  IntervalKind kind) {
  return kind == IntervalKind::EqualTailed
             ? equal_tailed_interval(p, coverage)
             : highest_density_interval(p, coverage);
}

double smallest_interval_coverage(const BetaParams& p, double x,
                                  IntervalKind kind) {
  check_unit_range(x, "smallest_interval_coverage argument");
  if (kind == IntervalKind::EqualTailed || (p.a == 1.0 && p.b == 1.0)) {
    if (kind == IntervalKind::HighestDensity) check_interval_shape(p);
    return 2.0 * std::fabs(0.5 - beta_cdf_impl(p.a, p.b, x));
  }
  check_interval_shape(p);
  if (p.a == 1.0) {
    // Decreasing density: smallest interval containing x is [0, x].
    return beta_cdf_impl(p.a, p.b, x);
  }
  if (p.b == 1.0) {
    return 1.0 - beta_cdf_impl(p.a, p.b, x);
  }

  const double mode = p.mode();
  if (x == mode) return 0.0;
  const double level = beta_log_kernel(p, x);
  if (x < mode) {
    // x is the lower endpoint; match the density on [mode, 1].
    double lo = mode, hi = 1.0;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      if (beta_log_kernel(p, mid) > level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double pu = 0.5 * (lo + hi);
    return std::clamp(
        beta_cdf_impl(p.a, p.b, pu) - beta_cdf_impl(p.a, p.b, x), 0.0, 1.0);
  }
  // x is the upper endpoint; match the density on [0, mode].
  double lo = 0.0, hi = mode;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (beta_log_kernel(p, mid) < level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double pl = 0.5 * (lo + hi);
  return std::clamp(beta_cdf_impl(p.a, p.b, x) - beta_cdf_impl(p.a, p.b, pl),
                    0.0, 1.0);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const BisectOptions& opts) {
  if (!(lo <= hi)) throw std::domain_error("bisect: lo must not exceed hi");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericError("bisect: f(lo) and f(hi) have the same sign");
  }
  for (int i = 0; i < opts.max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= opts.x_tol) return mid;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  if (hi - lo <= opts.x_tol) return 0.5 * (lo + hi);
  throw NumericError("bisect: did not converge within max_iter iterations");
}

}  // namespace tunebands
