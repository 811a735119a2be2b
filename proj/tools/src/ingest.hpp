#ifndef TUNEBANDS_TOOLS_INGEST_HPP
#define TUNEBANDS_TOOLS_INGEST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tunebands/sample.hpp"

namespace tunebands::cli {

// One row of a random-search log.  Hyperparameter values and other extra
// columns ride along as opaque metadata.
struct RunRecord {
  std::string model_id;
  std::uint64_t iteration = 0;
  double score = 0.0;
  double cost = 1.0;
  std::map<std::string, std::string> metadata;
};

struct ModelData {
  std::vector<RunRecord> records;

  std::vector<double> scores() const;
  double average_cost() const;
  // True when every record declares a [0, 1]-bounded metric (accuracy or F1).
  bool unit_metric() const;
};

struct Dataset {
  std::map<std::string, ModelData> models;

  const ModelData& model(const std::string& id) const;
};

// Reads a dataset from CSV (header: model_id,iteration,score[,cost], extra
// columns kept as metadata) or JSONL (one object per line with the same
// keys).  Duplicate (model_id, iteration) pairs and non-finite scores are
// rejected with the offending line number.
Dataset ingest(const std::string& path, const std::string& format);

// Keeps `n` records chosen without replacement, deterministically in `seed`.
ModelData subsample(const ModelData& data, std::size_t n, std::uint64_t seed);

}  // namespace tunebands::cli

#endif  // TUNEBANDS_TOOLS_INGEST_HPP
