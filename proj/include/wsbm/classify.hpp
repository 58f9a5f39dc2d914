#ifndef WSBM_CLASSIFY_HPP
#define WSBM_CLASSIFY_HPP

#include <optional>
#include <span>
#include <vector>

#include "wsbm/block_model.hpp"
#include "wsbm/embedding.hpp"
#include "wsbm/stats.hpp"
#include "wsbm/weighted_graph.hpp"

namespace wsbm {

/// Length-K nonnegative vector summing to 1 (within 1e-12).
class PriorVector {
 public:
  explicit PriorVector(std::vector<double> values);
  static PriorVector uniform(int k);

  int size() const { return static_cast<int>(values_.size()); }
  double at(int u) const { return values_[u]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Length-K nonnegative vector, not all zero.
class SimilarityVector {
 public:
  explicit SimilarityVector(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Per-block univariate Gaussians with class priors, estimated from the
/// labeled positions.
class PlugInMixture {
 public:
  PlugInMixture(std::vector<double> means, std::vector<double> sds, PriorVector priors);

  int block_count() const { return static_cast<int>(means_.size()); }
  double mean(int u) const { return means_[u]; }
  double sd(int u) const { return sds_[u]; }
  const PriorVector& priors() const { return priors_; }

 private:
  std::vector<double> means_;
  std::vector<double> sds_;
  PriorVector priors_;
};

/// Weights on present edges between labeled nodes, grouped by unordered
/// block pair.
class BlockWeightSamples {
 public:
  explicit BlockWeightSamples(int block_count);

  int block_count() const { return block_count_; }
  std::span<const double> pair(int u, int v) const;
  void add(int u, int v, double w);

  /// Union of all within-block multisets / all between-block multisets.
  std::vector<double> pooled_within() const;
  std::vector<double> pooled_between() const;

 private:
  int block_count_;
  std::vector<std::vector<double>> samples_;  // indexed by unordered pair
};

/// Weights between labeled block-u and labeled block-v nodes, for all pairs.
BlockWeightSamples collect_block_weights(const WeightedGraph& graph,
                                         const PartialLabels& labels);

/// Weights on present edges between `node` and the labeled nodes of each
/// block; element u holds the multiset for block u.
std::vector<std::vector<double>> collect_node_weights(const WeightedGraph& graph,
                                                      int node,
                                                      const PartialLabels& labels);

/// Gaussian parameters per block from labeled positions: mean, sample sd
/// (n-1 denominator), and priors proportional to labeled counts. Requires
/// >= 2 labeled nodes per block and nonzero within-block spread.
PlugInMixture fit_plug_in_mixture(std::span<const double> positions,
                                  const PartialLabels& labels);

/// argmax_u prior_u * phi(x; mu_u, sd_u); ties go to the smaller index.
int bayes_classify(const PlugInMixture& mixture, double x, const PriorVector& prior);

/// Points where pi1 * phi(x; mu1, sd1) = pi2 * phi(x; mu2, sd2): the roots of
/// a quadratic when sd1 != sd2 (0, 1 or 2 of them), a single point otherwise.
std::vector<double> decision_boundaries(double mu1, double sd1, double pi1,
                                        double mu2, double sd2, double pi2);

/// Per-block orderings of [K] by ascending mean edge weight to each block;
/// ties break by block index. Throws when a needed pair multiset is empty.
std::vector<Permutation> estimate_orderings(const BlockWeightSamples& samples);

/// Ordering of [K] for one unlabeled node by ascending mean weight to each
/// block's labeled nodes; a block with no present edges contributes mean 0.
Permutation estimate_node_ordering(const WeightedGraph& graph, int node,
                                   const PartialLabels& labels);

/// Intermediate quantities of the ordered prior update, exposed for
/// inspection.
struct OrderedUpdate {
  std::vector<double> distances;             // footrule + smoothing, per block
  std::vector<double> normalized_distances;  // ND
  SimilarityVector similarity;               // S = 1 - ND
  PriorVector updated;
};

/// Footrule-dissimilarity prior update with additive smoothing. When all
/// distances are equal the update is the identity and `updated` == base.
OrderedUpdate update_priors_ordered_detailed(const PriorVector& base,
                                             const Permutation& node_ordering,
                                             const std::vector<Permutation>& block_orderings,
                                             double smoothing);

PriorVector update_priors_ordered(const PriorVector& base,
                                  const Permutation& node_ordering,
                                  const std::vector<Permutation>& block_orderings,
                                  double smoothing);

/// q(p) = 1 + (r - 1) * p, mapping a combined p-value in [0,1] to an
/// additive smoothing level in [1, r]. Requires r >= 1.
double dynamic_smoothing(double combined_p, double r);

/// Per candidate block u, the Fisher combination over j of KS p-values
/// comparing the node's weights to block j against the training weights
/// between blocks u and j. Blocks with no testable pair get p = 1.
std::vector<double> general_block_pvalues(
    const std::vector<std::vector<double>>& node_samples,
    const BlockWeightSamples& block_samples);

/// Prior update for general edge-weight distributions: base_u scaled by the
/// combined p-value for block u, renormalized.
PriorVector update_priors_general(const PriorVector& base,
                                  const std::vector<std::vector<double>>& node_samples,
                                  const BlockWeightSamples& block_samples);

enum class Strategy {
  kPtrQda,          // QDA on the embedding of the rank-transformed weights
  kOrdered,         // embedding of A + footrule prior updates
  kOrderedGated,    // ordered, gated by a within-vs-between location test
  kOrderedDynamic,  // ordered with test-driven additive smoothing
  kGeneral,         // embedding of A + KS/Fisher prior updates
  kGeneralLogit,    // general with logit-sharpened p-values
};

/// Parses "ptr_qda", "ordered", "ordered_gated", "ordered_dynamic",
/// "general", "general_logit". Throws std::invalid_argument otherwise.
Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy strategy);

struct ClassifyConfig {
  Strategy strategy = Strategy::kOrdered;
  int embed_dim = 1;
  PtrScale ptr_scale = PtrScale::kUnit;
  bool augment_diagonal = false;
  double smoothing = 1.0;      // additive smoothing for the ordered update
  double alpha = 0.1;          // gate level for ordered_gated
  double smoothing_r = 100.0;  // cap for dynamic smoothing
  double logit_coeff = 1.0;    // sharpening coefficient for general_logit
};

struct Prediction {
  int node;
  int block;
};

/// Caches the artifacts shared across strategies (embeddings, mixtures,
/// training weight samples) for one (graph, labels) instance, so several
/// strategies can classify the same replicate without recomputation.
class ClassifierContext {
 public:
  ClassifierContext(const WeightedGraph& graph, const PartialLabels& labels);

  /// Predictions for every unlabeled node, sorted by node index.
  std::vector<Prediction> classify(const ClassifyConfig& config);

 private:
  struct EmbeddedMixture {
    std::vector<double> positions;  // first embedding coordinate per node
    PlugInMixture mixture;
  };

  const EmbeddedMixture& adjacency_mixture(const ClassifyConfig& config);
  const EmbeddedMixture& ptr_mixture(const ClassifyConfig& config);
  const BlockWeightSamples& block_samples();

  const WeightedGraph& graph_;
  const PartialLabels& labels_;
  std::optional<EmbeddedMixture> adjacency_mixture_;
  std::optional<EmbeddedMixture> ptr_mixture_;
  std::optional<BlockWeightSamples> block_samples_;
};

/// One-shot classification of all unlabeled nodes under a strategy.
std::vector<Prediction> classify_nodes(const WeightedGraph& graph,
                                       const PartialLabels& labels,
                                       const ClassifyConfig& config);

}  // namespace wsbm

#endif  // WSBM_CLASSIFY_HPP
