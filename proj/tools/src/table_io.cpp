#include "table_io.hpp"

#include <stdexcept>

namespace tunebands::cli {

namespace {

using nlohmann::json;

std::string csv_cell(const json& cell) {
  if (cell.is_number_float()) return fmt_double(cell.get<double>());
  if (cell.is_number_integer()) {
    return std::to_string(cell.get<long long>());
  }
  if (cell.is_number_unsigned()) {
    return std::to_string(cell.get<unsigned long long>());
  }
  if (cell.is_string()) return cell.get<std::string>();
  return cell.dump();
}

// JSON has no infinity literal; mirror the CSV tokens as strings.
json jsonl_cell(const json& cell) {
  if (cell.is_number_float()) {
    const double v = cell.get<double>();
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  }
  return cell;
}

}  // namespace

std::string TableEmitter::render(const std::string& format) const {
  std::string out;
  if (format == "csv") {
    out += "# " + header_.dump() + "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c > 0) out += ',';
      out += columns_[c];
    }
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out += ',';
        out += csv_cell(row[c]);
      }
      out += '\n';
    }
    return out;
  }
  if (format == "jsonl") {
    out += json{{"header", header_}}.dump() + "\n";
    for (const auto& row : rows_) {
      json object = json::object();
      for (std::size_t c = 0; c < row.size() && c < columns_.size(); ++c) {
        object[columns_[c]] = jsonl_cell(row[c]);
      }
      out += object.dump() + "\n";
    }
    return out;
  }
  throw std::domain_error("unknown output format: " + format);
}

}  // namespace tunebands::cli
