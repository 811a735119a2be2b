#ifndef TUNEBANDS_NUMERICS_HPP
#define TUNEBANDS_NUMERICS_HPP

#include <functional>
#include <utility>

#include "tunebands/errors.hpp"

namespace tunebands {

// Shape parameters of a Beta(a, b) distribution.  Both must be positive.
struct BetaParams {
  double a;
  double b;

  BetaParams(double a_, double b_);

  // Mode (a-1)/(a+b-2); only defined for unimodal shapes (a > 1 and b > 1).
  double mode() const;
};

// A closed subinterval [lo, hi] of [0, 1].
struct ProbabilityInterval {
  double lo;
  double hi;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

enum class IntervalKind {
  EqualTailed,
  HighestDensity,
};

// Regularized incomplete beta function I_x(a, b), i.e. the Beta CDF.
// Continued-fraction evaluation (modified Lentz) with the symmetry split,
// absolute error around 1e-14.
double beta_cdf(const BetaParams& p, double x);

// Beta density at x.  Returns 0 at the endpoints when the exponent there is
// positive, and +inf when the density is unbounded (a < 1 at 0, b < 1 at 1).
double beta_pdf(const BetaParams& p, double x);

// Log of the unnormalized density (a-1)log(x) + (b-1)log(1-x).  Cheap enough
// for tight bisection loops; ordering matches beta_pdf.
double beta_log_kernel(const BetaParams& p, double x);

// Inverse CDF by bisection on [0, 1].
double beta_quantile(const BetaParams& p, double q);

// [G^{-1}((1-coverage)/2), G^{-1}((1+coverage)/2)].
ProbabilityInterval equal_tailed_interval(const BetaParams& p, double coverage);

// Interval of the requested mass whose density is equal at both endpoints.
// Monotone densities (a == 1 xor b == 1) yield the one-sided interval anchored
// at the corresponding support endpoint.  Beta(1, 1) has no well-defined
// highest-density interval; it falls back to equal-tailed semantics (the flat
// density makes every interval of the same width equally "densest").  Shapes
// with a < 1 or b < 1 are rejected.
ProbabilityInterval highest_density_interval(const BetaParams& p,
                                             double coverage);

ProbabilityInterval beta_interval(const BetaParams& p, double coverage,
                                  IntervalKind kind);

// Coverage of the smallest interval of the given kind that contains x.
// Equal-tailed: 2|1/2 - G(x)|.  Highest-density: x is one endpoint and the
// other endpoint has matching density, found by bisection on the far side of
// the mode.  Zero exactly at the kind's center (median resp. mode).
double smallest_interval_coverage(const BetaParams& p, double x,
                                  IntervalKind kind);

// Standard normal CDF.
double normal_cdf(double z);

struct BisectOptions {
  double x_tol = 1e-9;
  int max_iter = 200;
};

// Bisection root finding on [lo, hi].  Requires f(lo) and f(hi) of opposite
// sign (or zero at an endpoint).  Stops when the bracket width falls below
// x_tol; throws NumericError on a bad bracket or failure to converge.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const BisectOptions& opts = {});

}  // namespace tunebands

#endif  // TUNEBANDS_NUMERICS_HPP
