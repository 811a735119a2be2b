#include "tunebands/step_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tunebands {

StepCdf::StepCdf(std::vector<double> knots, std::vector<double> values,
                 double before_first)
    : knots_(std::move(knots)),
      values_(std::move(values)),
      before_first_(before_first) {
  if (knots_.empty() || knots_.size() != values_.size()) {
    throw DataError("step CDF needs one value per knot and at least one knot");
  }
  double prev = before_first_;
  if (!(prev >= 0.0 && prev <= 1.0)) {
    throw DataError("step CDF values must lie in [0, 1]");
  }
  double prev_knot = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i]) || knots_[i] <= prev_knot) {
      throw DataError("step CDF knots must be finite and strictly ascending");
    }
    if (!(values_[i] >= prev && values_[i] <= 1.0)) {
      throw DataError("step CDF values must be nondecreasing within [0, 1]");
    }
    prev_knot = knots_[i];
    prev = values_[i];
  }
}

double StepCdf::operator()(double y) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), y);
  if (it == knots_.begin()) return before_first_;
  return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

}  // namespace tunebands
