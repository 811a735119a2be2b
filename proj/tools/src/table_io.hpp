#ifndef TUNEBANDS_TOOLS_TABLE_IO_HPP
#define TUNEBANDS_TOOLS_TABLE_IO_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace tunebands::cli {

// 17 significant digits: enough for strtod to reproduce the exact double.
// Infinities print as the tokens inf / -inf.
inline std::string fmt_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// A machine-readable table: one '#'-prefixed JSON header line carrying the
// resolved configuration, then CSV rows (or, in jsonl mode, one JSON object
// per row after a {"header": ...} line).
class TableEmitter {
 public:
  TableEmitter(nlohmann::json header, std::vector<std::string> columns)
      : header_(std::move(header)), columns_(std::move(columns)) {}

  void add_row(std::vector<nlohmann::json> cells) {
    rows_.push_back(std::move(cells));
  }

  std::string render(const std::string& format) const;

 private:
  nlohmann::json header_;
  std::vector<std::string> columns_;
  std::vector<std::vector<nlohmann::json>> rows_;
};

}  // namespace tunebands::cli

#endif  // TUNEBANDS_TOOLS_TABLE_IO_HPP
