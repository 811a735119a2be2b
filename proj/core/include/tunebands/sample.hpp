#ifndef TUNEBANDS_SAMPLE_HPP
#define TUNEBANDS_SAMPLE_HPP

#include <cstddef>
#include <vector>

#include "tunebands/errors.hpp"

namespace tunebands {

// The order statistics of a set of validation scores.  Scores are sorted on
// construction; duplicates are kept and flagged (ties make the distribution
// effectively discrete, where the bands are conservative rather than exact).
class Sample {
 public:
  explicit Sample(std::vector<double> scores);

  const std::vector<double>& scores() const { return scores_; }
  std::size_t size() const { return scores_.size(); }
  bool has_ties() const { return has_ties_; }

  // 1-based order statistic Y_(i).
  double order_statistic(std::size_t i) const { return scores_.at(i - 1); }

  double min() const { return scores_.front(); }
  double max() const { return scores_.back(); }

 private:
  std::vector<double> scores_;
  bool has_ties_ = false;
};

}  // namespace tunebands

#endif  // TUNEBANDS_SAMPLE_HPP
