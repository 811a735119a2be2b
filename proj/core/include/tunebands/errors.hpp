#ifndef TUNEBANDS_ERRORS_HPP
#define TUNEBANDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tunebands {

// Raised when an iterative routine fails to converge or a root bracket is
// invalid.  The CLI maps this to exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for malformed or inconsistent input data (bad CSV rows, empty
// samples, non-finite scores).  The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tunebands

#endif  // TUNEBANDS_ERRORS_HPP
