#include "tunebands/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "tunebands/parallel.hpp"
#include "tunebands/rng.hpp"

namespace tunebands {

namespace {

// Weights over sorted values for both estimators at each budget, so one
// resample costs a sort plus a dot product per budget.
struct EstimatorWeights {
  std::size_t n;
  std::vector<std::vector<double>> per_budget;  // [budget][order statistic]

  EstimatorWeights(std::size_t n_, MeanEstimator estimator, const KGrid& grid)
      : n(n_) {
    per_budget.reserve(grid.budgets.size());
    for (double k : grid.budgets) {
      std::vector<double> w(n, 0.0);
      if (estimator == MeanEstimator::V) {
        double prev = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
          const double cur = std::pow(static_cast<double>(i) / n, k);
          w[i - 1] = cur - prev;
          prev = cur;
        }
      } else {
        const double rounded = std::round(k);
        if (std::fabs(k - rounded) > 1e-9 || rounded < 1.0 ||
            rounded > static_cast<double>(n)) {
          throw std::domain_error(
              "U-statistic budgets must be integers in [1, n]");
        }
        const std::size_t ki = static_cast<std::size_t>(rounded);
        double wi = static_cast<double>(ki) / static_cast<double>(n);
        for (std::size_t i = n; i >= ki; --i) {
          w[i - 1] = wi;
          if (i > 1) {
            wi *= static_cast<double>(i - ki) / static_cast<double>(i - 1);
          }
        }
      }
      per_budget.push_back(std::move(w));
    }
  }

  void evaluate(const std::vector<double>& sorted_values,
                std::vector<double>& out) const {
    for (std::size_t b = 0; b < per_budget.size(); ++b) {
      const auto& w = per_budget[b];
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += w[i] * sorted_values[i];
      out[b] = total;
    }
  }
};

// Type-7 (linear interpolation) sample quantile on sorted data.
double sorted_quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

void check_bootstrap_args(std::size_t replicates, double confidence) {
  if (replicates < 1000) {
    throw std::domain_error("bootstrap needs at least 1000 resamples");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("confidence must lie in (0, 1)");
  }
}

// Resampled estimator values for every budget; [budget][replicate].
std::vector<std::vector<double>> bootstrap_matrix(
    const Sample& sample, const EstimatorWeights& weights,
    std::size_t replicates, std::uint64_t seed, int threads) {
  const std::size_t n = sample.size();
  const std::size_t n_budgets = weights.per_budget.size();
  const auto& scores = sample.scores();

  std::vector<std::vector<double>> matrix(
      n_budgets, std::vector<double>(replicates, 0.0));
  SplitRng master(seed);
  parallel_for(replicates, threads, [&](std::size_t r) {
    SplitRng rng = master.substream(r);
    std::vector<double> resampled(n);
    for (double& v : resampled) v = scores[rng.next_below(n)];
    std::sort(resampled.begin(), resampled.end());
    std::vector<double> estimates(n_budgets);
    weights.evaluate(resampled, estimates);
    for (std::size_t b = 0; b < n_budgets; ++b) matrix[b][r] = estimates[b];
  });
  return matrix;
}

}  // namespace

std::string to_string(MeanEstimator estimator) {
  return estimator == MeanEstimator::U ? "u" : "v";
}

CurveBandSet bootstrap_pointwise_bands(const Sample& sample,
                                       MeanEstimator estimator,
                                       const KGrid& grid,
                                       std::size_t replicates,
                                       double confidence, std::uint64_t seed,
                                       int threads) {
  check_bootstrap_args(replicates, confidence);
  const EstimatorWeights weights(sample.size(), estimator, grid);
  auto matrix = bootstrap_matrix(sample, weights, replicates, seed, threads);

  CurveBandSet out{CurveKind::Mean,
                   confidence,
                   grid,
                   {},
                   {},
                   {},
                   "bootstrap-" + to_string(estimator),
                   nullptr};
  out.lower.resize(grid.budgets.size());
  out.point.resize(grid.budgets.size());
  out.upper.resize(grid.budgets.size());

  std::vector<double> point(grid.budgets.size());
  weights.evaluate(sample.scores(), point);
  const double alpha = 1.0 - confidence;
  for (std::size_t b = 0; b < grid.budgets.size(); ++b) {
    std::sort(matrix[b].begin(), matrix[b].end());
    out.lower[b] = sorted_quantile(matrix[b], 0.5 * alpha);
    out.upper[b] = sorted_quantile(matrix[b], 1.0 - 0.5 * alpha);
    out.point[b] = point[b];
  }
  return out;
}

std::vector<CoverageResult> bootstrap_coverage_experiment(
    const GroundTruth& truth, std::size_t n, MeanEstimator estimator,
    const KGrid& grid, double nominal, std::size_t reps,
    std::size_t replicates, std::uint64_t seed, int threads,
    double cp_confidence) {
  if (reps == 0) {
    throw std::domain_error("coverage experiments need at least one rep");
  }
  check_bootstrap_args(replicates, nominal);
  const EstimatorWeights weights(n, estimator, grid);
  const std::size_t n_budgets = grid.budgets.size();

  std::vector<double> true_curve(n_budgets);
  for (std::size_t b = 0; b < n_budgets; ++b) {
    true_curve[b] = true_mean_curve(truth, grid.budgets[b]);
  }

  SplitRng master(seed);
  std::vector<std::vector<unsigned char>> covered(
      reps, std::vector<unsigned char>(n_budgets, 0));
  parallel_for(reps, threads, [&](std::size_t rep) {
    SplitRng rng = master.substream(rep);
    const Sample sample = truth.sample(n, rng);
    const std::uint64_t boot_seed = rng.next_u64();

    auto matrix =
        bootstrap_matrix(sample, weights, replicates, boot_seed, 1);
    const double alpha = 1.0 - nominal;
    for (std::size_t b = 0; b < n_budgets; ++b) {
      auto& column = matrix[b];
      std::sort(column.begin(), column.end());
      const double lo = sorted_quantile(column, 0.5 * alpha);
      const double hi = sorted_quantile(column, 1.0 - 0.5 * alpha);
      covered[rep][b] = (true_curve[b] >= lo && true_curve[b] <= hi) ? 1 : 0;
    }
  });

  std::vector<CoverageResult> results;
  results.reserve(n_budgets);
  for (std::size_t b = 0; b < n_budgets; ++b) {
    std::size_t successes = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) successes += covered[rep][b];
    results.push_back(
        make_coverage_result(successes, reps, nominal, cp_confidence));
  }
  return results;
}

}  // namespace tunebands
