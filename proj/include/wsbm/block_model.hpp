#ifndef WSBM_BLOCK_MODEL_HPP
#define WSBM_BLOCK_MODEL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "wsbm/matrix.hpp"

namespace wsbm {

/// Distribution of edge weights for one block pair: Normal, Poisson, or the
/// empirical distribution of a fixed sample.
class WeightDistribution {
 public:
  enum class Kind { kNormal, kPoisson, kEmpirical };

  static WeightDistribution normal(double mean, double sd);
  static WeightDistribution poisson(double rate);
  static WeightDistribution empirical(std::vector<double> samples);

  Kind kind() const { return kind_; }
  double mean() const { return a_; }  // Normal only
  double sd() const { return b_; }    // Normal only
  double rate() const { return a_; }  // Poisson only
  const std::vector<double>& samples() const { return samples_; }

  double sample(std::mt19937_64& rng) const;

  bool operator==(const WeightDistribution& other) const = default;

 private:
  WeightDistribution(Kind kind, double a, double b, std::vector<double> samples)
      : kind_(kind), a_(a), b_(b), samples_(std::move(samples)) {}

  Kind kind_;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> samples_;
};

/// K-block model: membership priors, edge-probability matrix B, and the
/// matrix of edge-weight distributions F. B and F are symmetric; F[u][v]
/// governs weights on edges between blocks u and v.
class BlockModel {
 public:
  BlockModel(std::vector<double> priors, Matrix edge_probability,
             std::vector<std::vector<WeightDistribution>> weight_distributions);

  int block_count() const { return static_cast<int>(priors_.size()); }
  const std::vector<double>& priors() const { return priors_; }
  const Matrix& edge_probability() const { return edge_probability_; }
  const WeightDistribution& weight_distribution(int u, int v) const {
    return weight_distributions_[u][v];
  }

 private:
  std::vector<double> priors_;
  Matrix edge_probability_;
  std::vector<std::vector<WeightDistribution>> weight_distributions_;
};

/// The rank-one 2x2 edge-probability matrix [[p^2, pq], [pq, q^2]].
/// Requires p, q in (0, 1]; its nonzero eigenvalue is p^2 + q^2.
Matrix rank_one_b(double p, double q);

/// Partially observed block assignment over n nodes; unknown entries are -1.
class PartialLabels {
 public:
  /// assignment[i] in [0, block_count) or -1 for unlabeled.
  PartialLabels(std::vector<int> assignment, int block_count);

  int node_count() const { return static_cast<int>(assignment_.size()); }
  int block_count() const { return block_count_; }
  bool is_labeled(int node) const { return assignment_[node] >= 0; }
  /// Block of a node, or -1 when unlabeled.
  int block_of(int node) const { return assignment_[node]; }

  std::vector<int> labeled_nodes() const;
  std::vector<int> unlabeled_nodes() const;
  /// Number of labeled nodes per block.
  std::vector<int> labeled_counts() const;

 private:
  std::vector<int> assignment_;
  int block_count_ = 0;
};

}  // namespace wsbm

#endif  // WSBM_BLOCK_MODEL_HPP
