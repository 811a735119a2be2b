#include "tunebands/tuning_curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tunebands {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogHalf = std::log(0.5);

void check_budget(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::domain_error("budget k must be a positive real");
  }
}

// True when v^k >= 1/2, compared on the log scale to dodge pow rounding.
bool qualifies(double v, double k) {
  if (v <= 0.0) return false;
  if (v >= 1.0) return true;
  return k * std::log(v) >= kLogHalf;
}

}  // namespace

SupportBounds::SupportBounds(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw std::domain_error("support bounds must satisfy lo < hi");
  }
}

SupportBounds SupportBounds::unbounded() { return SupportBounds(-kInf, kInf); }

bool SupportBounds::finite() const {
  return std::isfinite(lo) && std::isfinite(hi);
}

KGrid::KGrid(std::vector<double> budgets_, double cost_multiplier_)
    : budgets(std::move(budgets_)), cost_multiplier(cost_multiplier_) {
  if (budgets.empty()) throw std::domain_error("budget grid must be nonempty");
  if (!(cost_multiplier > 0.0) || !std::isfinite(cost_multiplier)) {
    throw std::domain_error("cost multiplier must be positive");
  }
  double prev = 0.0;
  for (double k : budgets) {
    if (!(k > prev) || !std::isfinite(k)) {
      throw std::domain_error(
          "budgets must be strictly ascending positive reals");
    }
    prev = k;
  }
}

KGrid KGrid::integers(std::size_t k_max, double cost_multiplier) {
  if (k_max == 0) throw std::domain_error("budget grid must be nonempty");
  std::vector<double> budgets(k_max);
  for (std::size_t i = 0; i < k_max; ++i) {
    budgets[i] = static_cast<double>(i + 1);
  }
  return KGrid(std::move(budgets), cost_multiplier);
}

KGrid scale_cost(const KGrid& grid, double multiplier) {
  if (!(multiplier > 0.0) || !std::isfinite(multiplier)) {
    throw std::domain_error("cost multiplier must be positive");
  }
  std::vector<double> budgets = grid.budgets;
  for (double& k : budgets) k *= multiplier;
  return KGrid(std::move(budgets), grid.cost_multiplier);
}

std::string to_string(CurveKind kind) {
  return kind == CurveKind::Median ? "median" : "mean";
}

CurveKind curve_kind_from_string(const std::string& name) {
  if (name == "median") return CurveKind::Median;
  if (name == "mean") return CurveKind::Mean;
  throw std::domain_error("unknown curve kind: " + name);
}

StepCdf power_transform(const StepCdf& cdf, double k) {
  check_budget(k);
  std::vector<double> values = cdf.values();
  for (double& v : values) v = std::pow(v, k);
  return StepCdf(cdf.knots(), std::move(values),
                 std::pow(cdf.before_first(), k));
}

double median_of_powered_cdf(const StepCdf& cdf, double k) {
  check_budget(k);
  if (qualifies(cdf.before_first(), k)) return -kInf;
  // Values are nondecreasing, so the first qualifying knot is found by
  // binary search on the threshold 0.5^{1/k}.
  const double threshold = std::exp(kLogHalf / k);
  const auto& values = cdf.values();
  auto it = std::lower_bound(values.begin(), values.end(), threshold);
  // The log-scale comparison is authoritative; fix up boundary rounding.
  std::size_t j = static_cast<std::size_t>(it - values.begin());
  while (j > 0 && qualifies(values[j - 1], k)) --j;
  while (j < values.size() && !qualifies(values[j], k)) ++j;
  if (j == values.size()) return kInf;
  return cdf.knots()[j];
}

double mean_of_powered_cdf(const StepCdf& cdf, double k,
                           const SupportBounds& support) {
  check_budget(k);
  const auto& knots = cdf.knots();
  const auto& values = cdf.values();
  if (knots.front() < support.lo || knots.back() > support.hi) {
    throw std::domain_error("support bounds must contain the CDF knots");
  }

  double total = 0.0;
  const double mass_lo = std::pow(cdf.before_first(), k);
  if (mass_lo > 0.0) {
    if (std::isinf(support.lo)) return -kInf;
    total += support.lo * mass_lo;
  }
  double prev = mass_lo;
  for (std::size_t j = 0; j < knots.size(); ++j) {
    const double cur = std::pow(values[j], k);
    total += knots[j] * (cur - prev);
    prev = cur;
  }
  const double mass_hi = 1.0 - prev;
  if (mass_hi > 0.0) {
    if (std::isinf(support.hi)) return kInf;
    total += support.hi * mass_hi;
  }
  return total;
}

CurveBandSet median_curve_bands(const CdfBands& bands, const KGrid& grid) {
  const StepCdf point_cdf = ecdf(bands.sample);
  CurveBandSet out{CurveKind::Median,
                   bands.confidence,
                   grid,
                   {},
                   {},
                   {},
                   to_string(bands.method),
                   std::make_shared<const CdfBands>(bands)};
  out.lower.reserve(grid.budgets.size());
  out.point.reserve(grid.budgets.size());
  out.upper.reserve(grid.budgets.size());
  for (double k : grid.budgets) {
    out.lower.push_back(median_of_powered_cdf(bands.upper, k));
    out.point.push_back(median_of_powered_cdf(point_cdf, k));
    out.upper.push_back(median_of_powered_cdf(bands.lower, k));
  }
  return out;
}

CurveBandSet mean_curve_bands(const CdfBands& bands, const KGrid& grid,
                              const SupportBounds& support) {
  const StepCdf point_cdf = ecdf(bands.sample);
  CurveBandSet out{CurveKind::Mean,
                   bands.confidence,
                   grid,
                   {},
                   {},
                   {},
                   to_string(bands.method),
                   std::make_shared<const CdfBands>(bands)};
  out.vacuous_lower = std::isinf(support.lo);
  out.vacuous_upper = std::isinf(support.hi);
  out.lower.reserve(grid.budgets.size());
  out.point.reserve(grid.budgets.size());
  out.upper.reserve(grid.budgets.size());
  for (double k : grid.budgets) {
    out.lower.push_back(mean_of_powered_cdf(bands.upper, k, support));
    out.point.push_back(mean_of_powered_cdf(point_cdf, k, support));
    out.upper.push_back(mean_of_powered_cdf(bands.lower, k, support));
  }
  return out;
}

double point_estimate_mean_v(const Sample& sample, double k) {
  check_budget(k);
  const auto& y = sample.scores();
  const double n = static_cast<double>(y.size());
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double cur = std::pow(static_cast<double>(i + 1) / n, k);
    total += y[i] * (cur - prev);
    prev = cur;
  }
  return total;
}

double point_estimate_mean_u(const Sample& sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 1 || k > n) {
    throw std::domain_error(
        "U-statistic budget must be an integer in [1, n]");
  }
  const auto& y = sample.scores();
  // Weight of Y_(i): C(i-1, k-1) / C(n, k), built downward from w_n = k/n via
  // w_{i-1} = w_i (i-k)/(i-1).
  double w = static_cast<double>(k) / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = n; i >= k; --i) {
    total += w * y[i - 1];
    if (i > 1) {
      w *= static_cast<double>(i - k) / static_cast<double>(i - 1);
    }
  }
  return total;
}

double point_estimate_median(const Sample& sample, double k) {
  return median_of_powered_cdf(ecdf(sample), k);
}

std::string to_string(Grade grade) {
  switch (grade) {
    case Grade::None:
      return "none";
    case Grade::WeakA:
      return "weak-a";
    case Grade::WeakB:
      return "weak-b";
    case Grade::Fair:
      return "fair";
    case Grade::StrongA:
      return "strong-a";
    case Grade::StrongB:
      return "strong-b";
  }
  return "unknown";
}

namespace {

struct BudgetEvidence {
  Grade grade = Grade::None;
  int direction = 0;  // +1 favors A, -1 favors B
  int level = 0;      // 0 none, 1 weak, 2 fair, 3 strong
};

BudgetEvidence grade_budget(double a_lo, double a_pt, double a_hi, double b_lo,
                            double b_pt, double b_hi) {
  BudgetEvidence e;
  if (a_lo > b_hi) {
    e = {Grade::StrongA, +1, 3};
  } else if (b_lo > a_hi) {
    e = {Grade::StrongB, -1, 3};
  } else {
    // Evidence that A beats B: B's point falls below A's band, or A's point
    // rises above B's band.  The two directions cannot mix at one budget.
    const int for_a = (b_pt < a_lo ? 1 : 0) + (a_pt > b_hi ? 1 : 0);
    const int for_b = (a_pt < b_lo ? 1 : 0) + (b_pt > a_hi ? 1 : 0);
    if (for_a == 2) {
      e = {Grade::Fair, +1, 2};
    } else if (for_b == 2) {
      e = {Grade::Fair, -1, 2};
    } else if (for_a == 1) {
      e = {Grade::WeakA, +1, 1};
    } else if (for_b == 1) {
      e = {Grade::WeakB, -1, 1};
    }
  }
  return e;
}

}  // namespace

ComparisonReport compare_curves(const CurveBandSet& a, const CurveBandSet& b,
                                double nontrivial_fraction) {
  if (a.kind != b.kind) {
    throw std::invalid_argument("cannot compare curves of different kinds");
  }
  if (a.confidence != b.confidence) {
    throw std::invalid_argument(
        "cannot compare curves at different confidence levels");
  }
  if (a.grid.budgets.size() != b.grid.budgets.size()) {
    throw std::invalid_argument("curve grids differ in length");
  }
  for (std::size_t i = 0; i < a.grid.budgets.size(); ++i) {
    const double ca = a.grid.cost_at(i);
    const double cb = b.grid.cost_at(i);
    if (std::fabs(ca - cb) > 1e-9 * std::max({1.0, std::fabs(ca), std::fabs(cb)})) {
      throw std::invalid_argument("curve grids cover different cost axes");
    }
  }
  if (!(nontrivial_fraction >= 0.0 && nontrivial_fraction <= 1.0)) {
    throw std::domain_error("nontrivial_fraction must lie in [0, 1]");
  }

  ComparisonReport report;
  report.nontrivial_fraction = nontrivial_fraction;
  const std::size_t m = a.grid.budgets.size();
  report.per_budget.reserve(m);
  std::size_t weak_a = 0, weak_b = 0, fair_a = 0, fair_b = 0, strong_a = 0,
              strong_b = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const BudgetEvidence e =
        grade_budget(a.lower[i], a.point[i], a.upper[i], b.lower[i],
                     b.point[i], b.upper[i]);
    report.per_budget.push_back(e.grade);
    if (e.direction > 0) {
      if (e.level >= 1) ++weak_a;
      if (e.level >= 2) ++fair_a;
      if (e.level >= 3) ++strong_a;
    } else if (e.direction < 0) {
      if (e.level >= 1) ++weak_b;
      if (e.level >= 2) ++fair_b;
      if (e.level >= 3) ++strong_b;
    }
  }
  const double dm = static_cast<double>(m);
  report.fraction_weak_a = weak_a / dm;
  report.fraction_weak_b = weak_b / dm;
  report.fraction_fair_a = fair_a / dm;
  report.fraction_fair_b = fair_b / dm;
  report.fraction_strong_a = strong_a / dm;
  report.fraction_strong_b = strong_b / dm;

  const double threshold = std::max(nontrivial_fraction, 1.0 / dm);
  const auto holds = [&](double fraction) { return fraction >= threshold; };
  if (holds(report.fraction_strong_a)) {
    report.overall = Grade::StrongA;
  } else if (holds(report.fraction_strong_b)) {
    report.overall = Grade::StrongB;
  } else if (holds(report.fraction_fair_a) || holds(report.fraction_fair_b)) {
    report.overall = Grade::Fair;
  } else if (holds(report.fraction_weak_a) && !holds(report.fraction_weak_b)) {
    report.overall = Grade::WeakA;
  } else if (holds(report.fraction_weak_b) && !holds(report.fraction_weak_a)) {
    report.overall = Grade::WeakB;
  }
  return report;
}

}  // namespace tunebands
