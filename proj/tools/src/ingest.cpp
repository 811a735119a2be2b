#include "ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tunebands/rng.hpp"

namespace tunebands::cli {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& message) {
  throw DataError(path + ":" + std::to_string(line) + ": " + message);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::string& path,
                    std::size_t line, const std::string& column) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    fail(path, line, "cannot parse " + column + " value '" + text + "'");
  }
}

std::uint64_t parse_iteration(const std::string& text, const std::string& path,
                              std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    fail(path, line, "cannot parse iteration value '" + text + "'");
  }
}

void add_record(Dataset& dataset, RunRecord record, const std::string& path,
                std::size_t line,
                std::set<std::pair<std::string, std::uint64_t>>& seen) {
  if (!std::isfinite(record.score)) {
    fail(path, line, "score must be finite");
  }
  if (!(record.cost > 0.0) || !std::isfinite(record.cost)) {
    fail(path, line, "cost must be a positive real");
  }
  if (!seen.emplace(record.model_id, record.iteration).second) {
    fail(path, line,
         "duplicate iteration " + std::to_string(record.iteration) +
             " for model '" + record.model_id + "'");
  }
  dataset.models[record.model_id].records.push_back(std::move(record));
}

Dataset ingest_csv(const std::string& path, std::ifstream& file) {
  Dataset dataset;
  std::set<std::pair<std::string, std::uint64_t>> seen;

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(file, line)) {
    throw DataError(path + ": empty file");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);

  auto column = [&](const std::string& name) -> std::ptrdiff_t {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  const std::ptrdiff_t model_col = column("model_id");
  const std::ptrdiff_t iter_col = column("iteration");
  const std::ptrdiff_t score_col = column("score");
  const std::ptrdiff_t cost_col = column("cost");
  if (model_col < 0 || iter_col < 0 || score_col < 0) {
    throw DataError(path + ": header must name model_id, iteration and score");
  }

  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      fail(path, line_no, "expected " + std::to_string(header.size()) +
                              " fields, found " +
                              std::to_string(fields.size()));
    }
    RunRecord record;
    record.model_id = fields[model_col];
    record.iteration = parse_iteration(fields[iter_col], path, line_no);
    record.score = parse_double(fields[score_col], path, line_no, "score");
    if (cost_col >= 0) {
      record.cost = parse_double(fields[cost_col], path, line_no, "cost");
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto sc = static_cast<std::ptrdiff_t>(c);
      if (sc == model_col || sc == iter_col || sc == score_col ||
          sc == cost_col) {
        continue;
      }
      record.metadata[header[c]] = fields[c];
    }
    add_record(dataset, std::move(record), path, line_no, seen);
  }
  return dataset;
}

Dataset ingest_jsonl(const std::string& path, std::ifstream& file) {
  Dataset dataset;
  std::set<std::pair<std::string, std::uint64_t>> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      fail(path, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!row.is_object()) fail(path, line_no, "expected a JSON object");
    if (!row.contains("model_id") || !row.contains("iteration") ||
        !row.contains("score")) {
      fail(path, line_no, "object must carry model_id, iteration and score");
    }
    RunRecord record;
    try {
      record.model_id = row.at("model_id").get<std::string>();
      record.iteration = row.at("iteration").get<std::uint64_t>();
      record.score = row.at("score").get<double>();
      if (row.contains("cost")) record.cost = row.at("cost").get<double>();
    } catch (const json::exception& e) {
      fail(path, line_no, std::string("bad field type: ") + e.what());
    }
    for (const auto& [key, value] : row.items()) {
      if (key == "model_id" || key == "iteration" || key == "score" ||
          key == "cost") {
        continue;
      }
      record.metadata[key] =
          value.is_string() ? value.get<std::string>() : value.dump();
    }
    add_record(dataset, std::move(record), path, line_no, seen);
  }
  return dataset;
}

}  // namespace

std::vector<double> ModelData::scores() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.score);
  return out;
}

double ModelData::average_cost() const {
  double total = 0.0;
  for (const auto& r : records) total += r.cost;
  return records.empty() ? 1.0 : total / static_cast<double>(records.size());
}

bool ModelData::unit_metric() const {
  if (records.empty()) return false;
  for (const auto& r : records) {
    const auto it = r.metadata.find("metric");
    if (it == r.metadata.end()) return false;
    const std::string metric = lower(it->second);
    if (metric != "accuracy" && metric != "f1") return false;
  }
  return true;
}

const ModelData& Dataset::model(const std::string& id) const {
  const auto it = models.find(id);
  if (it == models.end() || it->second.records.empty()) {
    throw DataError("no records for model '" + id + "'");
  }
  return it->second;
}

Dataset ingest(const std::string& path, const std::string& format) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open '" + path + "'");
  if (format == "csv") return ingest_csv(path, file);
  if (format == "jsonl") return ingest_jsonl(path, file);
  throw std::domain_error("unknown input format: " + format);
}

ModelData subsample(const ModelData& data, std::size_t n, std::uint64_t seed) {
  if (n == 0 || n > data.records.size()) {
    throw std::domain_error(
        "subsample size must lie in [1, number of records]");
  }
  std::vector<std::size_t> index(data.records.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
  SplitRng rng(seed);
  // Partial Fisher-Yates: the first n slots become the chosen subset.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.next_below(index.size() - i));
    std::swap(index[i], index[j]);
  }
  ModelData out;
  out.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.records.push_back(data.records[index[i]]);
  }
  return out;
}

}  // namespace tunebands::cli
