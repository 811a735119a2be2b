#include "tunebands/sample.hpp"

#include <algorithm>
#include <cmath>

namespace tunebands {

Sample::Sample(std::vector<double> scores) : scores_(std::move(scores)) {
  if (scores_.empty()) {
    throw DataError("sample must contain at least one score");
  }
  for (double s : scores_) {
    if (!std::isfinite(s)) {
      throw DataError("sample scores must be finite");
    }
  }
  std::sort(scores_.begin(), scores_.end());
  has_ties_ = std::adjacent_find(scores_.begin(), scores_.end()) != scores_.end();
}

}  // namespace tunebands
