#include "wsbm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wsbm/sampler.hpp"
#include "wsbm/stats.hpp"

namespace wsbm {

namespace {

/// Runs fn(i) for i in [0, count) across worker threads. Callers store
/// results by index, so scheduling does not affect the outcome.
void parallel_for(int count, const std::function<void(int)>& fn) {
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

BlockModel gaussian_setting_model(bool different_means, bool different_scales) {
  const double mu1 = 5.0;  // the level is immaterial; only differences matter
  const double mu2 = different_means ? mu1 + 2.0 : mu1;
  const double sd1 = different_scales ? 4.0 : 9.0;
  const double sd2 = 9.0;
  const auto within = WeightDistribution::normal(mu1, sd1);
  const auto between = WeightDistribution::normal(mu2, sd2);
  return BlockModel({0.5, 0.5}, rank_one_b(0.52, 0.48),
                    {{within, between}, {between, within}});
}

BlockModel poisson_setting_model(double rate1, double rate2) {
  const auto within = WeightDistribution::poisson(rate1);
  const auto between = WeightDistribution::poisson(rate2);
  return BlockModel({0.5, 0.5}, rank_one_b(0.52, 0.48),
                    {{within, between}, {between, within}});
}

std::vector<int> default_n_grid() { return {150, 200, 250, 300, 350, 400, 450, 500}; }

/// Splits a total across k blocks as evenly as possible, remainder first.
std::vector<int> split_evenly(int total, int k) {
  std::vector<int> out(k, total / k);
  for (int u = 0; u < total % k; ++u) ++out[u];
  return out;
}

struct ReplicateOutcome {
  std::vector<double> errors;  // one per strategy; empty when the replicate failed
};

}  // namespace

Setting parse_setting(const std::string& name) {
  if (name == "1") return Setting::kGauss1;
  if (name == "2") return Setting::kGauss2;
  if (name == "3") return Setting::kGauss3;
  if (name == "4") return Setting::kGauss4;
  if (name == "poisson-diff") return Setting::kPoissonDiff;
  if (name == "poisson-same") return Setting::kPoissonSame;
  throw std::invalid_argument("unknown setting: " + name);
}

std::string setting_name(Setting setting) {
  switch (setting) {
    case Setting::kGauss1: return "1";
    case Setting::kGauss2: return "2";
    case Setting::kGauss3: return "3";
    case Setting::kGauss4: return "4";
    case Setting::kPoissonDiff: return "poisson-diff";
    case Setting::kPoissonSame: return "poisson-same";
  }
  throw std::logic_error("unreachable");
}

BuiltinSetting builtin_setting(Setting setting) {
  switch (setting) {
    case Setting::kGauss1:
      return {gaussian_setting_model(true, true), default_n_grid(), 0.1};
    case Setting::kGauss2:
      return {gaussian_setting_model(true, false), default_n_grid(), 0.1};
    case Setting::kGauss3:
      return {gaussian_setting_model(false, true), default_n_grid(), 0.1};
    case Setting::kGauss4:
      return {gaussian_setting_model(false, false), default_n_grid(), 0.1};
    case Setting::kPoissonDiff:
      return {poisson_setting_model(3.0, 6.0), default_n_grid(), 0.1};
    case Setting::kPoissonSame:
      return {poisson_setting_model(3.0, 3.0), default_n_grid(), 0.1};
  }
  throw std::logic_error("unreachable");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_grid.empty()) throw std::invalid_argument("empty n grid");
  if (cfg.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (cfg.strategies.empty()) throw std::invalid_argument("no strategies");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
    throw std::invalid_argument("train fraction must lie in (0, 1)");

  const int k = cfg.model.block_count();
  const int n_strategies = static_cast<int>(cfg.strategies.size());
  ExperimentResult result;

  for (std::size_t grid_idx = 0; grid_idx < cfg.n_grid.size(); ++grid_idx) {
    const int n = cfg.n_grid[grid_idx];
    const std::vector<int> block_counts = split_evenly(n, k);
    const int train_total = static_cast<int>(std::lround(n * cfg.train_fraction));
    const std::vector<int> train_counts = split_evenly(train_total, k);

    std::vector<ReplicateOutcome> outcomes(cfg.replicates);
    parallel_for(cfg.replicates, [&](int m) {
      // Each replicate owns 4 derived seeds: the base attempt plus 3 retries.
      const std::uint64_t replicate_key =
          (static_cast<std::uint64_t>(grid_idx) << 32) | static_cast<std::uint64_t>(m);
      for (int attempt = 0; attempt < 4; ++attempt) {
        const std::uint64_t seed =
            derive_seed(cfg.seed, replicate_key * 4 + attempt);
        try {
          const SbmSample sample =
              sample_sbm(cfg.model, block_counts, train_counts, seed);
          ClassifierContext context(sample.graph, sample.training);
          std::vector<double> errors(n_strategies);
          for (int s = 0; s < n_strategies; ++s) {
            const auto predictions = context.classify(cfg.strategies[s]);
            int wrong = 0;
            for (const auto& p : predictions)
              if (p.block != sample.labels[p.node]) ++wrong;
            errors[s] =
                predictions.empty()
                    ? 0.0
                    : static_cast<double>(wrong) / static_cast<double>(predictions.size());
          }
          outcomes[m].errors = std::move(errors);
          return;
        } catch (const std::exception&) {
          // Degenerate replicate (missing evidence or degenerate fit): retry.
        }
      }
    });

    for (int s = 0; s < n_strategies; ++s) {
      std::vector<double> errs;
      errs.reserve(cfg.replicates);
      for (const auto& o : outcomes)
        if (!o.errors.empty()) errs.push_back(o.errors[s]);
      const int used = static_cast<int>(errs.size());
      double mean = 0.0, half = 0.0;
      if (used > 0)
        mean = std::accumulate(errs.begin(), errs.end(), 0.0) / used;
      if (used > 1) {
        double ss = 0.0;
        for (double e : errs) ss += (e - mean) * (e - mean);
        half = 1.96 * std::sqrt(ss / (used - 1)) / std::sqrt(static_cast<double>(used));
      }
      result.cells.push_back({cfg.setting_label,
                              strategy_name(cfg.strategies[s].strategy), n, mean,
                              half, used, cfg.replicates - used});
    }
  }
  return result;
}

void write_results_csv(std::ostream& out, const ExperimentResult& result) {
  out << "setting,strategy,n,mean_error,ci_half_width,replicates\n";
  for (const auto& c : result.cells) {
    std::ostringstream row;
    row.precision(10);
    row << c.setting << ',' << c.strategy << ',' << c.n << ',' << c.mean_error << ','
        << c.ci_half_width << ',' << c.replicates << '\n';
    out << row.str();
  }
}

std::vector<PowerPoint> power_curve(const PowerCurveConfig& cfg) {
  if (cfg.mu_diff_grid.empty()) throw std::invalid_argument("empty mu_diff grid");
  if (cfg.replicates < 1) throw std::invalid_argument("replicates must be >= 1");

  std::vector<PowerPoint> out;
  for (std::size_t g = 0; g < cfg.mu_diff_grid.size(); ++g) {
    const double diff = cfg.mu_diff_grid[g];
    const auto within = WeightDistribution::normal(cfg.base_mean, cfg.sd);
    const auto between = WeightDistribution::normal(cfg.base_mean + diff, cfg.sd);
    const BlockModel model({0.5, 0.5}, rank_one_b(0.52, 0.48),
                           {{within, between}, {between, within}});
    const std::vector<int> block_counts = split_evenly(cfg.n, 2);
    const int train_total = static_cast<int>(std::lround(cfg.n * cfg.train_fraction));
    const std::vector<int> train_counts = split_evenly(train_total, 2);

    std::vector<int> reject(cfg.replicates, 0), correct(cfg.replicates, 0);
    parallel_for(cfg.replicates, [&](int m) {
      const std::uint64_t seed =
          derive_seed(cfg.seed, (static_cast<std::uint64_t>(g) << 32) |
                                    static_cast<std::uint64_t>(m));
      const SbmSample sample = sample_sbm(model, block_counts, train_counts, seed);
      const BlockWeightSamples bw =
          collect_block_weights(sample.graph, sample.training);
      const auto pooled_within = bw.pooled_within();
      const auto pooled_between = bw.pooled_between();
      if (pooled_within.empty() || pooled_between.empty()) return;
      ThreeDecision decision;
      try {
        decision = three_decision_test(pooled_within, pooled_between, cfg.alpha);
      } catch (const std::invalid_argument&) {
        return;  // zero-variance pooled samples: no rejection
      }
      if (decision == ThreeDecision::kFailToReject) return;
      reject[m] = 1;
      // Correct ordering: within-block means sit below between-block means
      // when diff > 0, above when diff < 0. At diff = 0 no order is correct.
      if (diff > 0.0 && decision == ThreeDecision::kOrderWithinLess) correct[m] = 1;
      if (diff < 0.0 && decision == ThreeDecision::kOrderBetweenLess) correct[m] = 1;
    });

    const double rej = std::accumulate(reject.begin(), reject.end(), 0);
    const double cor = std::accumulate(correct.begin(), correct.end(), 0);
    out.push_back({diff, rej / cfg.replicates, cor / cfg.replicates, cfg.replicates});
  }
  return out;
}

HoldoutSplit make_holdout_split(const PartialLabels& labels, double fraction,
                                std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("holdout fraction must lie in (0, 1)");
  const int k = labels.block_count();
  std::vector<std::vector<int>> by_block(k);
  for (int i = 0; i < labels.node_count(); ++i)
    if (labels.is_labeled(i)) by_block[labels.block_of(i)].push_back(i);

  std::mt19937_64 rng(derive_seed(seed, 0x9d0ul));
  std::vector<int> assignment(labels.node_count(), -1);
  for (int i = 0; i < labels.node_count(); ++i)
    if (labels.is_labeled(i)) assignment[i] = labels.block_of(i);

  std::vector<int> held_out;
  for (int u = 0; u < k; ++u) {
    auto& nodes = by_block[u];
    const int withhold = static_cast<int>(std::lround(fraction * nodes.size()));
    if (static_cast<int>(nodes.size()) - withhold < 2)
      throw std::runtime_error("holdout leaves a block with fewer than 2 labels");
    std::shuffle(nodes.begin(), nodes.end(), rng);
    for (int t = 0; t < withhold; ++t) {
      assignment[nodes[t]] = -1;
      held_out.push_back(nodes[t]);
    }
  }
  std::sort(held_out.begin(), held_out.end());
  return {PartialLabels(std::move(assignment), k), std::move(held_out)};
}

void write_power_csv(std::ostream& out, const std::vector<PowerPoint>& points) {
  out << "mu_diff,test,power,replicates\n";
  for (const auto& p : points) {
    std::ostringstream row;
    row.precision(10);
    row << p.mu_diff << ",two_decision," << p.two_decision << ',' << p.replicates
        << '\n'
        << p.mu_diff << ",three_decision," << p.three_decision << ','
        << p.replicates << '\n';
    out << row.str();
  }
}

}  // namespace wsbm
