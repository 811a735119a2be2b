// Acceptance suite: end-to-end statistical checks at pinned tolerances.
// Each criterion prints one PASS/FAIL line; the process exits nonzero if any
// criterion fails.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tunebands/bootstrap.hpp"
#include "tunebands/cdf_bands.hpp"
#include "tunebands/coverage.hpp"
#include "tunebands/ground_truth.hpp"
#include "tunebands/kde.hpp"
#include "tunebands/rng.hpp"
#include "tunebands/tuning_curves.hpp"

using namespace tunebands;

namespace {

constexpr int kThreads = 0;  // all hardware threads
constexpr std::uint64_t kSeed = 20240817;

std::map<std::pair<std::size_t, IntervalKind>, LnNull> g_null_cache;

const LnNull& cached_null(std::size_t n, IntervalKind kind,
                          std::size_t replicates) {
  const auto key = std::make_pair(n, kind);
  auto it = g_null_cache.find(key);
  if (it == g_null_cache.end()) {
    it = g_null_cache
             .emplace(key, simulate_ln_null(n, kind, replicates, kSeed + n,
                                            kThreads))
             .first;
  }
  return it->second;
}

GroundTruth bimodal_kde_truth() {
  return GroundTruth::from_kde(
      Kde({0.3, 0.7}, 0.05, SupportBounds::unit(), true));
}

// Budget at which the upper median band diverges: the largest k with
// v_max^k >= 1/2, where v_max is the lower band's value at Y_(n).
double trivial_budget(double lower_band_max) {
  return std::log(0.5) / std::log(lower_band_max);
}

struct Check {
  std::string label;
  std::function<bool(std::string&)> run;
};

// --- criterion 1: exact simultaneous coverage of LD-HD median bands -------

bool criterion_exact_median_coverage(std::string& detail) {
  const std::vector<double> nominals{0.5, 0.8, 0.95};
  CoverageOptions options;
  options.threads = kThreads;
  options.cp_confidence = 0.99;
  options.ln_null = cached_null(48, IntervalKind::HighestDensity, 100000);

  bool ok = true;
  std::ostringstream out;
  for (const auto& [name, truth] :
       {std::pair<std::string, GroundTruth>{"uniform",
                                            GroundTruth::uniform(0.0, 1.0)},
        std::pair<std::string, GroundTruth>{"bimodal-kde",
                                            bimodal_kde_truth()}}) {
    for (double nominal : nominals) {
      const CoverageResult r = coverage_experiment(
          truth, 48, nominal, 1000, BandMethod::LdHighestDensity,
          CoverageTarget::MedianCurve, kSeed, options);
      const bool inside = r.cp_interval.contains(nominal);
      out << " " << name << "@" << nominal << ": " << r.rate
          << (inside ? "" : " [OUTSIDE CP]");
      ok = ok && inside;
    }
  }
  detail = out.str();
  return ok;
}

// --- criterion 2: exact LD and KS CDF bands, conservative DKW -------------

bool criterion_exact_cdf_coverage(std::string& detail) {
  const std::vector<double> nominals{0.5, 0.8, 0.95};
  const GroundTruth uniform = GroundTruth::uniform(0.0, 1.0);
  const GroundTruth kde = bimodal_kde_truth();

  bool ok = true;
  std::ostringstream out;

  for (const auto& [label, method, kind] :
       {std::tuple<std::string, BandMethod, IntervalKind>{
            "ld-hd", BandMethod::LdHighestDensity,
            IntervalKind::HighestDensity},
        std::tuple<std::string, BandMethod, IntervalKind>{
            "ld-et", BandMethod::LdEqualTailed, IntervalKind::EqualTailed}}) {
    CoverageOptions options;
    options.threads = kThreads;
    options.ln_null = cached_null(48, kind, 100000);
    for (const auto& [name, truth] :
         {std::pair<std::string, const GroundTruth*>{"uniform", &uniform},
          std::pair<std::string, const GroundTruth*>{"kde", &kde}}) {
      for (double nominal : nominals) {
        const CoverageResult r =
            coverage_experiment(*truth, 48, nominal, 1000, method,
                                CoverageTarget::Cdf, kSeed, options);
        const bool inside = r.cp_interval.contains(nominal);
        out << " " << label << "/" << name << "@" << nominal << ": " << r.rate
            << (inside ? "" : " [OUTSIDE CP]");
        ok = ok && inside;
      }
    }
  }

  for (double nominal : nominals) {
    CoverageOptions options;
    options.threads = kThreads;
    options.ks_epsilon = ks_critical_value(48, nominal, 100000,
                                           kSeed + 1000, kThreads);
    for (const auto& [name, truth] :
         {std::pair<std::string, const GroundTruth*>{"uniform", &uniform},
          std::pair<std::string, const GroundTruth*>{"kde", &kde}}) {
      const CoverageResult r =
          coverage_experiment(*truth, 48, nominal, 1000, BandMethod::Ks,
                              CoverageTarget::Cdf, kSeed, options);
      const bool inside = r.cp_interval.contains(nominal);
      out << " ks/" << name << "@" << nominal << ": " << r.rate
          << (inside ? "" : " [OUTSIDE CP]");
      ok = ok && inside;
    }
  }

  for (double nominal : nominals) {
    CoverageOptions options;
    options.threads = kThreads;
    const CoverageResult r =
        coverage_experiment(uniform, 20, nominal, 1000, BandMethod::Dkw,
                            CoverageTarget::Cdf, kSeed, options);
    const bool conservative = r.rate >= nominal;
    out << " dkw@" << nominal << ": " << r.rate
        << (conservative ? "" : " [BELOW NOMINAL]");
    ok = ok && conservative;
  }

  detail = out.str();
  return ok;
}

// --- criterion 3: bootstrap pointwise coverage collapses at large k -------

bool criterion_bootstrap_failure(std::string& detail) {
  const GroundTruth truth = bimodal_kde_truth();
  const KGrid grid = KGrid::integers(50);
  bool ok = true;
  std::ostringstream out;
  for (const MeanEstimator estimator : {MeanEstimator::U, MeanEstimator::V}) {
    const auto results = bootstrap_coverage_experiment(
        truth, 50, estimator, grid, 0.95, 1000, 2048, kSeed + 2, kThreads);
    const double at_first = results.front().rate;
    const double at_last = results.back().rate;
    const bool first_ok = std::fabs(at_first - 0.95) <= 0.03;
    const bool last_ok = at_last < 0.90;
    out << " " << to_string(estimator) << ": k=1 " << at_first
        << (first_ok ? "" : " [OFF NOMINAL]") << ", k=50 " << at_last
        << (last_ok ? "" : " [NOT COLLAPSED]");
    ok = ok && first_ok && last_ok;
  }
  detail = out.str();
  return ok;
}

// --- criterion 4: estimators equal literal enumeration --------------------

bool criterion_estimator_oracles(std::string& detail) {
  SplitRng rng(kSeed + 3);
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next_below(7);  // n in [2, 8]
    std::vector<double> scores(n);
    for (double& s : scores) s = rng.next_unit();
    const Sample sample(std::move(scores));
    for (std::size_t k = 1; k <= 4; ++k) {
      const double v_expected =
          oracles::v_statistic_by_enumeration(sample.scores(), k);
      if (std::fabs(point_estimate_mean_v(sample, k) - v_expected) > 1e-12) {
        ++failures;
      }
      if (k <= n) {
        const double u_expected =
            oracles::u_statistic_by_enumeration(sample.scores(), k);
        if (std::fabs(point_estimate_mean_u(sample, k) - u_expected) > 1e-12) {
          ++failures;
        }
      }
      if (point_estimate_median(sample, static_cast<double>(k)) !=
          oracles::median_of_max_by_enumeration(sample.scores(), k)) {
        ++failures;
      }
    }
  }
  detail = " mismatches: " + std::to_string(failures);
  return failures == 0;
}

// --- criterion 5: ablation ordering of the divergence budget --------------

bool criterion_ablation_ordering(std::string& detail) {
  const std::size_t n = 48;
  const double confidence = 0.8;
  SplitRng rng(kSeed + 4);
  std::vector<double> scores(n);
  for (double& s : scores) s = rng.next_unit();
  const Sample sample(std::move(scores));

  const CdfBands hd = ld_bands(sample, confidence, IntervalKind::HighestDensity,
                               cached_null(n, IntervalKind::HighestDensity,
                                           100000));
  const CdfBands et = ld_bands(sample, confidence, IntervalKind::EqualTailed,
                               cached_null(n, IntervalKind::EqualTailed,
                                           100000));
  const CdfBands ks = ks_bands(sample, confidence, 100000, kSeed + 5,
                               kThreads);
  const CdfBands dkw = dkw_bands(sample, confidence);

  const auto k_star = [](const CdfBands& bands) {
    return trivial_budget(bands.lower.values().back());
  };
  const double k_hd = k_star(hd), k_et = k_star(et), k_ks = k_star(ks),
               k_dkw = k_star(dkw);
  std::ostringstream out;
  out << " k*: ld-hd " << k_hd << ", ld-et " << k_et << ", ks " << k_ks
      << ", dkw " << k_dkw;
  detail = out.str();
  return k_hd >= k_ks && k_ks >= k_dkw && k_hd >= k_et;
}

// --- criterion 6: linear growth of the bounded range with sample size -----

bool criterion_sample_size_law(std::string& detail) {
  const std::vector<std::size_t> sizes{32, 64, 128, 256, 512};
  std::vector<double> xs, ys;
  for (std::size_t n : sizes) {
    const LnNull null =
        simulate_ln_null(n, IntervalKind::HighestDensity, 20000,
                         kSeed + 6 + n, kThreads);
    const double c = null.quantile(0.8);
    // The lower band value at Y_(n) comes from the Beta(n, 1) interval, which
    // is the monotone closed form (1 - c)^(1/n).
    const auto intervals = ld_intervals(n, c, IntervalKind::HighestDensity);
    xs.push_back(static_cast<double>(n));
    ys.push_back(trivial_budget(intervals.back().lo));
  }
  const oracles::LinearFit fit = oracles::fit_line(xs, ys);
  std::ostringstream out;
  out << " k*(n): ";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    out << sizes[i] << "->" << ys[i] << " ";
  }
  out << "slope=" << fit.slope << " R2=" << fit.r_squared;
  detail = out.str();
  return fit.r_squared >= 0.995 && fit.slope >= 0.10 && fit.slope <= 0.25;
}

// --- criterion 7: mean bands are looser than median bands -----------------

bool criterion_median_vs_mean(std::string& detail) {
  const std::size_t n = 48;
  const LnNull& null = cached_null(n, IntervalKind::HighestDensity, 100000);
  const KGrid grid = KGrid::integers(n);

  const auto widths_at_k1 = [&](const Sample& sample) {
    const CdfBands bands =
        ld_bands(sample, 0.8, IntervalKind::HighestDensity, null);
    const CurveBandSet median = median_curve_bands(bands, grid);
    const CurveBandSet mean =
        mean_curve_bands(bands, grid, SupportBounds::unit());
    return std::make_pair(median.upper[0] - median.lower[0],
                          mean.upper[0] - mean.lower[0]);
  };

  SplitRng rng(kSeed + 7);
  std::vector<double> uniform_scores(n);
  for (double& s : uniform_scores) s = rng.next_unit();
  const auto [median_width, mean_width] =
      widths_at_k1(Sample(std::move(uniform_scores)));

  // Companion measurement on a concentrated, accuracy-like score
  // distribution (steep CDF near its upper mode), where the looseness of the
  // mean bands actually manifests; reported for context alongside the
  // uniform instance this criterion pins.
  std::vector<double> steep_scores(n);
  for (double& s : steep_scores) {
    const double u = rng.next_unit();
    s = 0.85 + 0.1 * u * u;
  }
  const auto [steep_median, steep_mean] = widths_at_k1(Sample(std::move(steep_scores)));

  std::ostringstream out;
  out << " uniform k=1 widths: median " << median_width << ", mean "
      << mean_width << "; concentrated: median " << steep_median << ", mean "
      << steep_mean;
  detail = out.str();
  return mean_width > median_width;
}

// --- criterion 8: CDF and median-curve coverage indicators coincide -------

bool criterion_indicator_equivalence(std::string& detail) {
  const GroundTruth truth = GroundTruth::uniform(0.0, 1.0);
  const LnNull& null = cached_null(16, IntervalKind::HighestDensity, 100000);
  SplitRng master(kSeed + 8);
  int mismatches = 0;
  int covered = 0;
  for (int rep = 0; rep < 500; ++rep) {
    SplitRng rng = master.substream(rep);
    const Sample sample = truth.sample(16, rng);
    const CdfBands bands =
        ld_bands(sample, 0.8, IntervalKind::HighestDensity, null);
    const bool cdf_covered = band_covers(bands, truth);
    const bool curve_covered = median_curve_bands_cover(bands, truth);
    if (cdf_covered != curve_covered) ++mismatches;
    if (cdf_covered) ++covered;
  }
  std::ostringstream out;
  out << " mismatches: " << mismatches << " (coverage " << covered / 500.0
      << ")";
  detail = out.str();
  return mismatches == 0;
}

// --- criterion 9: determinism across runs and thread counts ---------------

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return {};
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

bool criterion_determinism(std::string& detail) {
  const LnNull a =
      simulate_ln_null(24, IntervalKind::HighestDensity, 20000, 7, 1);
  const LnNull b =
      simulate_ln_null(24, IntervalKind::HighestDensity, 20000, 7, 4);
  const bool library_ok = a.sorted_statistics == b.sorted_statistics;

  bool cli_ok = true;
#ifdef TUNEBANDS_CLI_PATH
  const std::string base =
      std::string(TUNEBANDS_CLI_PATH) +
      " coverage --truth uniform:0,1 --method ld-hd --n 8 --reps 200 "
      "--replicates 2000 --seed 31 --nominal 0.8";
  const auto run = [&](const std::string& suffix) {
    return std::system((base + suffix + " 2>/dev/null").c_str());
  };
  cli_ok = run(" --threads 1 --out acceptance_det_a.csv") == 0 &&
           run(" --threads 1 --out acceptance_det_b.csv") == 0 &&
           run(" --threads 2 --out acceptance_det_c.csv") == 0;
  if (cli_ok) {
    const std::string first = read_file("acceptance_det_a.csv");
    cli_ok = !first.empty() &&
             first == read_file("acceptance_det_b.csv") &&
             first == read_file("acceptance_det_c.csv");
  }
#endif
  detail = std::string(" library ") + (library_ok ? "ok" : "MISMATCH") +
           ", cli " + (cli_ok ? "ok" : "MISMATCH");
  return library_ok && cli_ok;
}

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"exact LD-HD median-curve coverage (n=48, 1000 reps, 99% CP)",
       criterion_exact_median_coverage},
      {"exact LD/KS CDF coverage; DKW conservative at n=20",
       criterion_exact_cdf_coverage},
      {"bootstrap pointwise coverage collapses by k=50, near nominal at k=1",
       criterion_bootstrap_failure},
      {"U/V/median point estimators equal literal enumeration (n<=8, k<=4)",
       criterion_estimator_oracles},
      {"divergence-budget ordering ld-hd >= ks >= dkw and ld-hd >= ld-et",
       criterion_ablation_ordering},
      {"bounded range grows linearly in n (R2 >= 0.995, slope in [0.10,0.25])",
       criterion_sample_size_law},
      {"mean bands wider than median bands at k=1",
       criterion_median_vs_mean},
      {"CDF and median-curve coverage indicators equal on 500 replications",
       criterion_indicator_equivalence},
      {"seeded runs byte-identical across repeats and thread counts",
       criterion_determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = checks[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string(" exception: ") + e.what();
    }
    std::printf("[%s] criterion %zu: %s —%s\n", ok ? "PASS" : "FAIL", i + 1,
                checks[i].label.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  if (failed > 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failed,
                checks.size());
  } else {
    std::printf("all %zu acceptance criteria passed\n", checks.size());
  }
  return failed == 0 ? 0 : 1;
}
