#ifndef TUNEBANDS_TOOLS_COMMANDS_HPP
#define TUNEBANDS_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tunebands::cli {

// Resolved analysis settings shared by every subcommand.  Defaults follow the
// recommendations validated in the coverage and ablation studies: 80%
// confidence, highest-density LD bands, median curves.
struct AnalysisConfig {
  double confidence = 0.8;
  std::string method = "ld-hd";
  std::string curve = "median";
  std::optional<double> support_lo;
  std::optional<double> support_hi;
  std::size_t k_max = 0;  // 0: use the sample size
  std::string cost_scale = "none";
  std::uint64_t seed = 0;
  std::size_t replicates = 100000;
  double nontrivial_fraction = 0.05;
  int threads = 0;
  std::size_t subsample_n = 0;  // 0: use every record
  double cp_confidence = 0.99;
  std::string format = "csv";

  void validate() const;
};

// Loads config-file values (JSON object with keys named after the flags).
AnalysisConfig load_config_file(const std::string& path);

struct OutputOptions {
  std::string out;      // empty: stdout
  std::string cdf_out;  // empty: derive from out, or skip on stdout
};

int run_bands(const AnalysisConfig& config, const std::string& dataset_path,
              const std::string& model_id, const OutputOptions& output);

int run_compare(const AnalysisConfig& config, const std::string& dataset_path,
                const std::string& model_a, const std::string& model_b,
                const OutputOptions& output);

struct CoverageRequest {
  std::string truth;  // "uniform:LO,HI" or "kde"
  std::string dataset_path;
  std::string model_id;
  double bandwidth = 0.0;
  std::size_t n = 48;
  std::size_t reps = 1000;
  std::vector<double> nominals;
  std::string target;  // "cdf", "median", "mean"; empty: follow config.curve
};

int run_coverage(const AnalysisConfig& config, const CoverageRequest& request,
                 const OutputOptions& output);

}  // namespace tunebands::cli

#endif  // TUNEBANDS_TOOLS_COMMANDS_HPP
