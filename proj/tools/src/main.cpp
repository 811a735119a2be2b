#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "tunebands/errors.hpp"

namespace {

using tunebands::cli::AnalysisConfig;
using tunebands::cli::CoverageRequest;
using tunebands::cli::OutputOptions;

// Registers the flags shared by every subcommand.  Each flag overrides
// exactly one config field; values from --config are applied first.
void add_config_flags(CLI::App* cmd, AnalysisConfig& config,
                      std::string& support_spec) {
  cmd->add_option("--confidence", config.confidence,
                  "Simultaneous confidence level in (0, 1)");
  cmd->add_option("--method", config.method,
                  "CDF band construction: dkw, ks, ld-et or ld-hd");
  cmd->add_option("--curve", config.curve, "Tuning curve kind: median or mean");
  cmd->add_option("--support", support_spec,
                  "Score support bounds LO:HI (required for useful mean bands)");
  cmd->add_option("--k-max", config.k_max,
                  "Largest budget on the grid (default: the sample size)");
  cmd->add_option("--cost-scale", config.cost_scale,
                  "Cost axis: none (iterations) or avg (average cost column)");
  cmd->add_option("--seed", config.seed, "Seed for every simulation");
  cmd->add_option("--replicates", config.replicates,
                  "Replicates for null-distribution simulations");
  cmd->add_option("--nontrivial-fraction", config.nontrivial_fraction,
                  "Fraction of budgets a grade must hold on to be reported");
  cmd->add_option("--threads", config.threads,
                  "Worker threads (0: all hardware threads)");
  cmd->add_option("--subsample", config.subsample_n,
                  "Analyze a seeded subsample of this many records");
  cmd->add_option("--cp-confidence", config.cp_confidence,
                  "Confidence for Clopper-Pearson reporting intervals");
  cmd->add_option("--format", config.format, "Input/output format: csv or jsonl");
}

void apply_support_spec(const std::string& spec, AnalysisConfig& config) {
  if (spec.empty()) return;
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::domain_error("--support expects LO:HI");
  }
  try {
    config.support_lo = std::stod(spec.substr(0, colon));
    config.support_hi = std::stod(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::domain_error("cannot parse --support bounds: " + spec);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution-free simultaneous confidence bands for "
               "random-search tuning curves"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file with config defaults (flags override)")
      ->check(CLI::ExistingFile);

  AnalysisConfig config;
  std::string support_spec;
  OutputOptions output;

  std::string dataset_path, model_id, model_a, model_b;
  CoverageRequest coverage;

  CLI::App* bands = app.add_subcommand(
      "bands", "Tuning-curve confidence bands for one model");
  bands->add_option("--data", dataset_path, "Random-search log")->required();
  bands->add_option("--model", model_id, "Model id to analyze")->required();
  add_config_flags(bands, config, support_spec);
  bands->add_option("--out", output.out, "Write the band table here");
  bands->add_option("--cdf-out", output.cdf_out,
                    "Write the CDF band sidecar here");

  CLI::App* compare =
      app.add_subcommand("compare", "Grade the evidence between two models");
  compare->add_option("--data", dataset_path, "Random-search log")->required();
  compare->add_option("--model-a", model_a, "First model id")->required();
  compare->add_option("--model-b", model_b, "Second model id")->required();
  add_config_flags(compare, config, support_spec);
  compare->add_option("--out", output.out, "Write the paired table here");

  CLI::App* cover = app.add_subcommand(
      "coverage", "Empirical simultaneous coverage in simulation");
  cover->add_option("--truth", coverage.truth,
                    "Ground truth: uniform:LO,HI or kde")
      ->required();
  cover->add_option("--data", coverage.dataset_path,
                    "Random-search log (kde truth centers)");
  cover->add_option("--model", coverage.model_id, "Model id for kde truth");
  cover->add_option("--bandwidth", coverage.bandwidth, "KDE truth bandwidth");
  cover->add_option("--n", coverage.n, "Sample size per replication");
  cover->add_option("--reps", coverage.reps, "Number of replications");
  cover->add_option("--nominal", coverage.nominals,
                    "Nominal confidence levels to test (repeatable)");
  cover->add_option("--target", coverage.target,
                    "Coverage target: cdf, median or mean");
  add_config_flags(cover, config, support_spec);
  cover->add_option("--out", output.out, "Write the coverage table here");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    if (!config_path.empty()) {
      AnalysisConfig from_file = tunebands::cli::load_config_file(config_path);
      // Flags the user actually passed win over the config file.
      CLI::App* active = app.get_subcommands().front();
      const auto keep = [&](const std::string& flag) {
        const CLI::Option* opt = active->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
      };
      AnalysisConfig merged = from_file;
      if (keep("--confidence")) merged.confidence = config.confidence;
      if (keep("--method")) merged.method = config.method;
      if (keep("--curve")) merged.curve = config.curve;
      if (keep("--k-max")) merged.k_max = config.k_max;
      if (keep("--cost-scale")) merged.cost_scale = config.cost_scale;
      if (keep("--seed")) merged.seed = config.seed;
      if (keep("--replicates")) merged.replicates = config.replicates;
      if (keep("--nontrivial-fraction")) {
        merged.nontrivial_fraction = config.nontrivial_fraction;
      }
      if (keep("--threads")) merged.threads = config.threads;
      if (keep("--subsample")) merged.subsample_n = config.subsample_n;
      if (keep("--cp-confidence")) merged.cp_confidence = config.cp_confidence;
      if (keep("--format")) merged.format = config.format;
      if (keep("--support")) {
        merged.support_lo.reset();
        merged.support_hi.reset();
        apply_support_spec(support_spec, merged);
      }
      config = merged;
    } else {
      apply_support_spec(support_spec, config);
    }
    config.validate();

    if (bands->parsed()) {
      return tunebands::cli::run_bands(config, dataset_path, model_id, output);
    }
    if (compare->parsed()) {
      return tunebands::cli::run_compare(config, dataset_path, model_a,
                                         model_b, output);
    }
    return tunebands::cli::run_coverage(config, coverage, output);
  } catch (const tunebands::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const tunebands::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
