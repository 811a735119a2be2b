#ifndef TUNEBANDS_TUNING_CURVES_HPP
#define TUNEBANDS_TUNING_CURVES_HPP

#include <memory>
#include <string>
#include <vector>

#include "tunebands/cdf_bands.hpp"
#include "tunebands/sample.hpp"
#include "tunebands/step_cdf.hpp"

namespace tunebands {

// Known bounds on the score's support.  Infinite bounds are allowed; mean
// tuning-curve bands then become vacuous on the corresponding side.
struct SupportBounds {
  double lo;
  double hi;

  SupportBounds(double lo_, double hi_);

  static SupportBounds unbounded();
  static SupportBounds unit() { return SupportBounds(0.0, 1.0); }

  bool finite() const;
};

// Tuning budgets (numbers of search iterations, extended to positive reals)
// plus the average cost of one iteration for reporting on a cost axis.
struct KGrid {
  std::vector<double> budgets;
  double cost_multiplier = 1.0;

  KGrid(std::vector<double> budgets_, double cost_multiplier_ = 1.0);

  static KGrid integers(std::size_t k_max, double cost_multiplier = 1.0);

  double cost_at(std::size_t i) const { return budgets[i] * cost_multiplier; }
};

// Multiplies every budget by the given factor (converting an iteration axis
// into another model's iteration count at equal cost, or into raw cost).
KGrid scale_cost(const KGrid& grid, double multiplier);

enum class CurveKind { Median, Mean };

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& name);

// Lower band, point estimate, and upper band of a tuning curve on a budget
// grid.  Entries may be -inf/+inf where the corresponding confidence limit is
// vacuous (the band diverges past its endpoint).
struct CurveBandSet {
  CurveKind kind;
  double confidence;
  KGrid grid;
  std::vector<double> lower;
  std::vector<double> point;
  std::vector<double> upper;
  // "dkw", "ks", "ld-et", "ld-hd", "bootstrap-u", "bootstrap-v".
  std::string method;
  // Generating CDF bands; kept so coverage checks can inspect the bands as
  // functions of a continuous budget rather than just at the grid.
  std::shared_ptr<const CdfBands> source;
  // Set when a mean-curve side had to place mass on an infinite support bound.
  bool vacuous_lower = false;
  bool vacuous_upper = false;
};

// Raises every CDF value to the k-th power: the CDF of the best of k draws.
StepCdf power_transform(const StepCdf& cdf, double k);

// Generalized median of the distribution with CDF cdf(y)^k: the infimum over
// the whole real line of {y : cdf(y)^k >= 1/2}.  Returns -inf when the value
// before the first knot already qualifies and +inf when no value does.
double median_of_powered_cdf(const StepCdf& cdf, double k);

// Expectation of the distribution with CDF cdf(y)^k, placing the leftover
// probability mass on the support bounds.  Returns +/-inf when an infinite
// bound receives positive mass.
double mean_of_powered_cdf(const StepCdf& cdf, double k,
                           const SupportBounds& support);

// Median tuning-curve bands: lower from the upper CDF band, upper from the
// lower CDF band, point estimate from the eCDF.
CurveBandSet median_curve_bands(const CdfBands& bands, const KGrid& grid);

CurveBandSet mean_curve_bands(const CdfBands& bands, const KGrid& grid,
                              const SupportBounds& support);

// Plug-in estimate of E[max of k draws]: sum Y_(i) [(i/n)^k - ((i-1)/n)^k].
double point_estimate_mean_v(const Sample& sample, double k);

// Unbiased estimate: the average of max over all size-k subsets, via
// sum_{i=k..n} Y_(i) C(i-1, k-1) / C(n, k).  k must be an integer <= n.
double point_estimate_mean_u(const Sample& sample, std::size_t k);

double point_estimate_median(const Sample& sample, double k);

enum class Grade { None, WeakA, WeakB, Fair, StrongA, StrongB };

std::string to_string(Grade grade);

struct ComparisonReport {
  std::vector<Grade> per_budget;
  // Fraction of budgets at which the evidence reaches at least the given
  // strength in a consistent direction.
  double fraction_weak_a = 0.0, fraction_weak_b = 0.0;
  double fraction_fair_a = 0.0, fraction_fair_b = 0.0;
  double fraction_strong_a = 0.0, fraction_strong_b = 0.0;
  double nontrivial_fraction = 0.05;
  Grade overall = Grade::None;
};

// Grades the evidence that one model beats the other at each budget: weak if
// one band excludes the other's point estimate, fair if both bands do, strong
// if the bands are disjoint.  The overall grade is the strongest level
// holding on at least nontrivial_fraction of the budgets.
ComparisonReport compare_curves(const CurveBandSet& a, const CurveBandSet& b,
                                double nontrivial_fraction = 0.05);

}  // namespace tunebands

#endif  // TUNEBANDS_TUNING_CURVES_HPP
