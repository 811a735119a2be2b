#ifndef TUNEBANDS_STEP_CDF_HPP
#define TUNEBANDS_STEP_CDF_HPP

#include <cstddef>
#include <vector>

#include "tunebands/errors.hpp"

namespace tunebands {

// Right-continuous step function on the real line with values in [0, 1].
// F(y) is the value attached to the greatest knot <= y, or before_first when
// y precedes every knot.  Knots are strictly ascending and values
// nondecreasing, so evaluation is a binary search.
class StepCdf {
 public:
  StepCdf(std::vector<double> knots, std::vector<double> values,
          double before_first);

  double operator()(double y) const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  double before_first() const { return before_first_; }
  std::size_t size() const { return knots_.size(); }

  // Value on the half-open piece starting at knot index i (0-based).
  double value_at(std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  double before_first_;
};

}  // namespace tunebands

#endif  // TUNEBANDS_STEP_CDF_HPP
