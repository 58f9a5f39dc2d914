#ifndef WSBM_EXPERIMENTS_HPP
#define WSBM_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsbm/block_model.hpp"
#include "wsbm/classify.hpp"

namespace wsbm {

/// The built-in simulation settings: four Gaussian settings crossing
/// equal/different means with equal/different scales, plus two Poisson
/// variants. All share B = rank_one_b(0.52, 0.48) and uniform priors.
enum class Setting {
  kGauss1,  // different means, different scales
  kGauss2,  // different means, same scale
  kGauss3,  // same mean, different scales
  kGauss4,  // same mean, same scale
  kPoissonDiff,
  kPoissonSame,
};

/// Parses "1".."4", "poisson-diff", "poisson-same".
Setting parse_setting(const std::string& name);
std::string setting_name(Setting setting);

struct BuiltinSetting {
  BlockModel model;
  std::vector<int> n_grid;  // {150, 200, ..., 500}
  double train_fraction;    // 0.1
};

BuiltinSetting builtin_setting(Setting setting);

struct ExperimentConfig {
  BlockModel model;
  std::string setting_label;  // tag written to the CSV "setting" column
  std::vector<int> n_grid;
  double train_fraction = 0.1;
  int replicates = 100;
  std::vector<ClassifyConfig> strategies;
  std::uint64_t seed = 0;
};

struct ExperimentCell {
  std::string setting;
  std::string strategy;
  int n;
  double mean_error;
  double ci_half_width;  // 95% normal CI for the mean
  int replicates;        // replicates aggregated (failures excluded)
  int failures;          // replicates excluded after retries
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
};

/// Runs every strategy on the identical graph and label split per replicate.
/// A replicate whose classification fails (degenerate fit or missing weight
/// evidence) is retried with the next derived seed up to 3 times, then
/// excluded and counted. Deterministic given cfg.seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// CSV with header: setting,strategy,n,mean_error,ci_half_width,replicates
void write_results_csv(std::ostream& out, const ExperimentResult& result);

struct PowerCurveConfig {
  std::vector<double> mu_diff_grid = {-6, -4, -2, -1, 0, 1, 2, 4, 6};
  double base_mean = 5.0;
  double sd = 9.0;
  int n = 200;
  double train_fraction = 0.1;
  double alpha = 0.1;
  int replicates = 500;
  std::uint64_t seed = 0;
};

struct PowerPoint {
  double mu_diff;
  double two_decision;    // rejection frequency
  double three_decision;  // frequency of rejecting AND ordering correctly
  int replicates;
};

/// Estimated power of the two- and three-decision location tests on pooled
/// within- vs between-block training weights, over a grid of mean
/// differences. At mu_diff = 0 no ordering is correct, so the three-decision
/// count stays 0 there.
std::vector<PowerPoint> power_curve(const PowerCurveConfig& cfg);

/// CSV with header: mu_diff,test,power,replicates (long format).
void write_power_csv(std::ostream& out, const std::vector<PowerPoint>& points);

struct HoldoutSplit {
  PartialLabels training;     // original labels minus the held-out nodes
  std::vector<int> held_out;  // nodes whose labels were withheld
};

/// Withholds round(fraction * count) labeled nodes per block, selected by a
/// seeded shuffle. Throws when a block would keep fewer than 2 labeled nodes.
HoldoutSplit make_holdout_split(const PartialLabels& labels, double fraction,
                                std::uint64_t seed);

}  // namespace wsbm

#endif  // WSBM_EXPERIMENTS_HPP
