#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ingest.hpp"
#include "table_io.hpp"
#include "tunebands/bootstrap.hpp"
#include "tunebands/cdf_bands.hpp"
#include "tunebands/coverage.hpp"
#include "tunebands/ground_truth.hpp"
#include "tunebands/kde.hpp"
#include "tunebands/rng.hpp"
#include "tunebands/tuning_curves.hpp"

namespace tunebands::cli {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

// The receipt carries every setting that determines the output; the thread
// count is omitted because results are thread-count invariant by design.
json config_to_json(const AnalysisConfig& config) {
  return json{{"confidence", config.confidence},
              {"method", config.method},
              {"curve", config.curve},
              {"support_lo", config.support_lo
                                 ? json(*config.support_lo)
                                 : json(nullptr)},
              {"support_hi", config.support_hi
                                 ? json(*config.support_hi)
                                 : json(nullptr)},
              {"k_max", config.k_max},
              {"cost_scale", config.cost_scale},
              {"seed", config.seed},
              {"replicates", config.replicates},
              {"nontrivial_fraction", config.nontrivial_fraction},
              {"subsample", config.subsample_n},
              {"cp_confidence", config.cp_confidence},
              {"format", config.format}};
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path + "'");
  file << text;
}

std::string derived_cdf_path(const OutputOptions& output) {
  if (!output.cdf_out.empty()) return output.cdf_out;
  if (output.out.empty()) return {};
  const std::size_t dot = output.out.find_last_of('.');
  if (dot == std::string::npos) return output.out + ".cdf";
  return output.out.substr(0, dot) + ".cdf" + output.out.substr(dot);
}

// Seeds for the null-distribution simulations, one substream per model slot.
std::uint64_t null_seed_for(std::uint64_t seed, std::uint64_t slot) {
  return SplitRng(seed).substream(slot).next_u64();
}

CdfBands build_cdf_bands(const Sample& sample, const AnalysisConfig& config,
                         std::uint64_t null_seed) {
  const BandMethod method = band_method_from_string(config.method);
  switch (method) {
    case BandMethod::Dkw:
      return dkw_bands(sample, config.confidence);
    case BandMethod::Ks:
      return ks_bands(sample, config.confidence, config.replicates, null_seed,
                      config.threads);
    default: {
      const IntervalKind kind = interval_kind_of(method);
      const LnNull null = simulate_ln_null(sample.size(), kind,
                                           config.replicates, null_seed,
                                           config.threads);
      return ld_bands(sample, config.confidence, kind, null);
    }
  }
}

std::optional<SupportBounds> resolve_support(const AnalysisConfig& config,
                                             const ModelData& model,
                                             std::string* source) {
  if (config.support_lo && config.support_hi) {
    *source = "flag";
    return SupportBounds(*config.support_lo, *config.support_hi);
  }
  if (model.unit_metric()) {
    *source = "metric";
    return SupportBounds(0.0, 1.0);
  }
  *source = "none";
  return std::nullopt;
}

struct ModelCurves {
  Sample sample;
  CurveBandSet curves;
  double average_cost = 1.0;
  std::string support_source = "none";
};

ModelCurves analyze_model(const AnalysisConfig& config, const ModelData& data,
                          const KGrid& grid, std::uint64_t null_seed) {
  Sample sample(data.scores());
  const CdfBands bands = build_cdf_bands(sample, config, null_seed);
  if (bands.ties_present() && (config.method == "ld-et" ||
                               config.method == "ld-hd")) {
    std::cerr << "warning: tied scores make the score distribution discrete; "
                 "the bands are conservative rather than exact\n";
  }

  std::string support_source = "none";
  CurveBandSet curves = [&] {
    if (config.curve == "mean") {
      const auto support = resolve_support(config, data, &support_source);
      SupportBounds bounds = support ? *support : SupportBounds::unbounded();
      if (!bounds.finite()) {
        std::cerr << "warning: mean curves without finite support bounds have "
                     "vacuous confidence limits; pass --support LO:HI\n";
      }
      return mean_curve_bands(bands, grid, bounds);
    }
    return median_curve_bands(bands, grid);
  }();
  return ModelCurves{std::move(sample), std::move(curves),
                     data.average_cost(), std::move(support_source)};
}

KGrid make_grid(const AnalysisConfig& config, std::size_t n,
                double cost_multiplier) {
  const std::size_t k_max = config.k_max == 0 ? n : config.k_max;
  if (k_max > n) {
    std::cerr << "warning: budgets beyond the sample size (" << n
              << ") extrapolate the point estimate\n";
  }
  return KGrid::integers(k_max, cost_multiplier);
}

GroundTruth parse_truth(const AnalysisConfig& config,
                        const CoverageRequest& request) {
  const std::string& spec = request.truth;
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  if (name == "uniform") {
    double lo = 0.0, hi = 1.0;
    if (colon != std::string::npos) {
      const std::string params = spec.substr(colon + 1);
      const std::size_t comma = params.find(',');
      if (comma == std::string::npos) {
        throw std::domain_error("uniform truth expects uniform:LO,HI");
      }
      try {
        lo = std::stod(params.substr(0, comma));
        hi = std::stod(params.substr(comma + 1));
      } catch (const std::exception&) {
        throw std::domain_error("cannot parse uniform truth bounds: " + params);
      }
    }
    return GroundTruth::uniform(lo, hi);
  }
  if (name == "kde") {
    if (request.dataset_path.empty() || request.model_id.empty()) {
      throw std::domain_error("kde truth requires --data and --model");
    }
    if (!(request.bandwidth > 0.0)) {
      throw std::domain_error("kde truth requires --bandwidth > 0");
    }
    const Dataset dataset = ingest(request.dataset_path, config.format);
    const ModelData& model = dataset.model(request.model_id);
    const bool reflect = config.support_lo && config.support_hi;
    const SupportBounds support =
        reflect ? SupportBounds(*config.support_lo, *config.support_hi)
                : SupportBounds::unbounded();
    return GroundTruth::from_kde(
        Kde(model.scores(), request.bandwidth, support, reflect));
  }
  throw std::domain_error("unknown truth '" + name +
                          "' (expected uniform:LO,HI or kde)");
}

}  // namespace

void AnalysisConfig::validate() const {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in (0, 1)");
  }
  band_method_from_string(method);
  curve_kind_from_string(curve);
  if (support_lo.has_value() != support_hi.has_value()) {
    throw std::domain_error("support needs both bounds (LO:HI)");
  }
  if (support_lo && !(*support_lo < *support_hi)) {
    throw std::domain_error("support bounds must satisfy lo < hi");
  }
  if (replicates < 1000) {
    throw std::domain_error("replicates must be at least 1000");
  }
  if (!(nontrivial_fraction >= 0.0 && nontrivial_fraction <= 1.0)) {
    throw std::domain_error("nontrivial-fraction must lie in [0, 1]");
  }
  if (threads < 0) throw std::domain_error("threads must be >= 0");
  if (!(cp_confidence > 0.0 && cp_confidence < 1.0)) {
    throw std::domain_error("cp-confidence must lie in (0, 1)");
  }
  if (cost_scale != "none" && cost_scale != "avg") {
    throw std::domain_error("cost-scale must be none or avg");
  }
  if (format != "csv" && format != "jsonl") {
    throw std::domain_error("format must be csv or jsonl");
  }
}

AnalysisConfig load_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::domain_error("cannot open config file '" + path + "'");
  json parsed;
  try {
    file >> parsed;
  } catch (const json::exception& e) {
    throw std::domain_error("config file is not valid JSON: " +
                            std::string(e.what()));
  }
  AnalysisConfig config;
  try {
    if (parsed.contains("confidence")) {
      config.confidence = parsed["confidence"].get<double>();
    }
    if (parsed.contains("method")) {
      config.method = parsed["method"].get<std::string>();
    }
    if (parsed.contains("curve")) {
      config.curve = parsed["curve"].get<std::string>();
    }
    if (parsed.contains("support_lo") && !parsed["support_lo"].is_null()) {
      config.support_lo = parsed["support_lo"].get<double>();
    }
    if (parsed.contains("support_hi") && !parsed["support_hi"].is_null()) {
      config.support_hi = parsed["support_hi"].get<double>();
    }
    if (parsed.contains("k_max")) {
      config.k_max = parsed["k_max"].get<std::size_t>();
    }
    if (parsed.contains("cost_scale")) {
      config.cost_scale = parsed["cost_scale"].get<std::string>();
    }
    if (parsed.contains("seed")) {
      config.seed = parsed["seed"].get<std::uint64_t>();
    }
    if (parsed.contains("replicates")) {
      config.replicates = parsed["replicates"].get<std::size_t>();
    }
    if (parsed.contains("nontrivial_fraction")) {
      config.nontrivial_fraction = parsed["nontrivial_fraction"].get<double>();
    }
    if (parsed.contains("threads")) {
      config.threads = parsed["threads"].get<int>();
    }
    if (parsed.contains("subsample")) {
      config.subsample_n = parsed["subsample"].get<std::size_t>();
    }
    if (parsed.contains("cp_confidence")) {
      config.cp_confidence = parsed["cp_confidence"].get<double>();
    }
    if (parsed.contains("format")) {
      config.format = parsed["format"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw std::domain_error("bad config value: " + std::string(e.what()));
  }
  return config;
}

int run_bands(const AnalysisConfig& config, const std::string& dataset_path,
              const std::string& model_id, const OutputOptions& output) {
  const Dataset dataset = ingest(dataset_path, config.format);
  ModelData data = dataset.model(model_id);
  if (config.subsample_n > 0) {
    data = subsample(data, config.subsample_n,
                     null_seed_for(config.seed, 100));
  }

  const double avg_cost =
      config.cost_scale == "avg" ? data.average_cost() : 1.0;
  const KGrid grid = make_grid(config, data.records.size(), avg_cost);
  const ModelCurves model =
      analyze_model(config, data, grid, null_seed_for(config.seed, 0));

  json header = json{{"command", "bands"},
                     {"dataset", dataset_path},
                     {"model", model_id},
                     {"n", model.sample.size()},
                     {"average_cost", avg_cost},
                     {"support_source", model.support_source},
                     {"ties", model.sample.has_ties()},
                     {"config", config_to_json(config)}};

  TableEmitter table(header, {"k", "k_cost", "lower", "point", "upper"});
  const auto& curves = model.curves;
  for (std::size_t i = 0; i < curves.grid.budgets.size(); ++i) {
    table.add_row({curves.grid.budgets[i], curves.grid.cost_at(i),
                   curves.lower[i], curves.point[i], curves.upper[i]});
  }
  write_output(table.render(config.format), output.out);

  const std::string cdf_path = derived_cdf_path(output);
  if (!cdf_path.empty() && curves.source) {
    json cdf_header = header;
    cdf_header["command"] = "bands-cdf";
    TableEmitter cdf_table(cdf_header, {"knot", "lower", "upper"});
    const CdfBands& bands = *curves.source;
    cdf_table.add_row(
        {-kInf, bands.lower.before_first(), bands.upper.before_first()});
    for (std::size_t j = 0; j < bands.lower.size(); ++j) {
      cdf_table.add_row({bands.lower.knots()[j], bands.lower.value_at(j),
                         bands.upper.value_at(j)});
    }
    write_output(cdf_table.render(config.format), cdf_path);
  }
  return 0;
}

int run_compare(const AnalysisConfig& config, const std::string& dataset_path,
                const std::string& model_a, const std::string& model_b,
                const OutputOptions& output) {
  const Dataset dataset = ingest(dataset_path, config.format);
  ModelData data_a = dataset.model(model_a);
  ModelData data_b = dataset.model(model_b);
  if (config.subsample_n > 0) {
    data_a = subsample(data_a, config.subsample_n,
                       null_seed_for(config.seed, 100));
    data_b = subsample(data_b, config.subsample_n,
                       null_seed_for(config.seed, 101));
  }

  const std::size_t shared_n =
      std::min(data_a.records.size(), data_b.records.size());
  double cost_a = 1.0, cost_b = 1.0;
  if (config.cost_scale == "avg") {
    cost_a = data_a.average_cost();
    cost_b = data_b.average_cost();
  }
  // Model A's iteration grid defines the shared cost axis; model B is
  // evaluated at the (possibly fractional) iteration counts of equal cost.
  const KGrid grid_a = make_grid(config, shared_n, cost_a);
  const KGrid grid_b = scale_cost(grid_a, cost_a / cost_b);

  const ModelCurves a =
      analyze_model(config, data_a, grid_a, null_seed_for(config.seed, 0));
  const ModelCurves b =
      analyze_model(config, data_b,
                    KGrid(grid_b.budgets, cost_b),
                    null_seed_for(config.seed, 1));

  const ComparisonReport report =
      compare_curves(a.curves, b.curves, config.nontrivial_fraction);

  json header =
      json{{"command", "compare"},
           {"dataset", dataset_path},
           {"model_a", model_a},
           {"model_b", model_b},
           {"average_cost_a", cost_a},
           {"average_cost_b", cost_b},
           {"config", config_to_json(config)},
           {"report",
            json{{"overall", to_string(report.overall)},
                 {"nontrivial_fraction", report.nontrivial_fraction},
                 {"fraction_weak_a", report.fraction_weak_a},
                 {"fraction_weak_b", report.fraction_weak_b},
                 {"fraction_fair_a", report.fraction_fair_a},
                 {"fraction_fair_b", report.fraction_fair_b},
                 {"fraction_strong_a", report.fraction_strong_a},
                 {"fraction_strong_b", report.fraction_strong_b}}}};

  TableEmitter table(header,
                     {"k_cost", "a_k", "a_lower", "a_point", "a_upper", "b_k",
                      "b_lower", "b_point", "b_upper", "grade"});
  for (std::size_t i = 0; i < grid_a.budgets.size(); ++i) {
    table.add_row({grid_a.cost_at(i), grid_a.budgets[i], a.curves.lower[i],
                   a.curves.point[i], a.curves.upper[i], grid_b.budgets[i],
                   b.curves.lower[i], b.curves.point[i], b.curves.upper[i],
                   to_string(report.per_budget[i])});
  }
  write_output(table.render(config.format), output.out);
  return 0;
}

int run_coverage(const AnalysisConfig& config, const CoverageRequest& request,
                 const OutputOptions& output) {
  const GroundTruth truth = parse_truth(config, request);
  const BandMethod method = band_method_from_string(config.method);

  std::string target_name =
      request.target.empty() ? config.curve : request.target;
  CoverageTarget target;
  if (target_name == "cdf") {
    target = CoverageTarget::Cdf;
  } else if (target_name == "median") {
    target = CoverageTarget::MedianCurve;
  } else if (target_name == "mean") {
    target = CoverageTarget::MeanCurve;
  } else {
    throw std::domain_error("unknown coverage target: " + target_name);
  }

  std::vector<double> nominals = request.nominals;
  if (nominals.empty()) nominals.push_back(config.confidence);

  CoverageOptions options;
  options.null_replicates = config.replicates;
  options.cp_confidence = config.cp_confidence;
  options.threads = config.threads;
  if (target == CoverageTarget::MeanCurve) {
    if (!truth.support().finite()) {
      throw std::domain_error(
          "mean-curve coverage requires a finite-support truth");
    }
    options.grid = KGrid::integers(request.n);
  }
  // The L_n null depends only on (n, kind); simulate it once for all rows.
  if (method == BandMethod::LdEqualTailed ||
      method == BandMethod::LdHighestDensity) {
    options.ln_null =
        simulate_ln_null(request.n, interval_kind_of(method),
                         config.replicates, null_seed_for(config.seed, 0),
                         config.threads);
  }

  json header = json{{"command", "coverage"},
                     {"truth", request.truth},
                     {"target", target_name},
                     {"n", request.n},
                     {"reps", request.reps},
                     {"config", config_to_json(config)}};

  TableEmitter table(header, {"nominal", "method", "target", "n", "reps",
                              "successes", "rate", "cp_lo", "cp_hi"});
  for (double nominal : nominals) {
    const CoverageResult result =
        coverage_experiment(truth, request.n, nominal, request.reps, method,
                            target, config.seed, options);
    table.add_row({nominal, config.method, target_name, request.n,
                   request.reps, result.successes, result.rate,
                   result.cp_interval.lo, result.cp_interval.hi});
  }
  write_output(table.render(config.format), output.out);
  return 0;
}

}  // namespace tunebands::cli
