#include "wsbm/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wsbm {

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Permutation of [K] by ascending key; equal keys ordered by block index.
Permutation order_blocks_by(const std::vector<double>& keys) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
  });
  return Permutation(std::move(order));
}

}  // namespace

PriorVector::PriorVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("empty prior vector");
  double sum = 0.0;
  for (double v : values_) {
    if (v < 0.0) throw std::invalid_argument("negative prior entry");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("priors must sum to 1");
}

PriorVector PriorVector::uniform(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<double> v(k, 1.0 / k);
  // Force an exact simplex even when 1/k is inexact.
  v[0] += 1.0 - std::accumulate(v.begin(), v.end(), 0.0);
  return PriorVector(std::move(v));
}

SimilarityVector::SimilarityVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("empty similarity vector");
  double sum = 0.0;
  for (double v : values_) {
    if (v < 0.0) throw std::invalid_argument("negative similarity entry");
    sum += v;
  }
  if (sum == 0.0) throw std::invalid_argument("similarity vector is all zero");
}

PlugInMixture::PlugInMixture(std::vector<double> means, std::vector<double> sds,
                             PriorVector priors)
    : means_(std::move(means)), sds_(std::move(sds)), priors_(std::move(priors)) {
  if (means_.size() != sds_.size() ||
      static_cast<int>(means_.size()) != priors_.size())
    throw std::invalid_argument("mixture component count mismatch");
  for (double s : sds_)
    if (!(s > 0.0)) throw std::invalid_argument("mixture sd must be > 0");
}

BlockWeightSamples::BlockWeightSamples(int block_count) : block_count_(block_count) {
  if (block_count_ < 1) throw std::invalid_argument("block count must be >= 1");
  samples_.resize(static_cast<std::size_t>(block_count_) * (block_count_ + 1) / 2);
}

namespace {
std::size_t pair_index(int k, int u, int v) {
  if (u < 0 || v < 0 || u >= k || v >= k)
    throw std::out_of_range("block index out of range");
  if (u > v) std::swap(u, v);
  // Row-major upper triangle including the diagonal.
  return static_cast<std::size_t>(u) * k - static_cast<std::size_t>(u) * (u - 1) / 2 +
         (v - u);
}
}  // namespace

std::span<const double> BlockWeightSamples::pair(int u, int v) const {
  return samples_[pair_index(block_count_, u, v)];
}

void BlockWeightSamples::add(int u, int v, double w) {
  samples_[pair_index(block_count_, u, v)].push_back(w);
}

std::vector<double> BlockWeightSamples::pooled_within() const {
  std::vector<double> out;
  for (int u = 0; u < block_count_; ++u) {
    const auto s = pair(u, u);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::vector<double> BlockWeightSamples::pooled_between() const {
  std::vector<double> out;
  for (int u = 0; u < block_count_; ++u)
    for (int v = u + 1; v < block_count_; ++v) {
      const auto s = pair(u, v);
      out.insert(out.end(), s.begin(), s.end());
    }
  return out;
}

BlockWeightSamples collect_block_weights(const WeightedGraph& graph,
                                         const PartialLabels& labels) {
  BlockWeightSamples out(labels.block_count());
  for (const auto& e : graph.edges()) {
    const int u = labels.block_of(e.i);
    const int v = labels.block_of(e.j);
    if (u >= 0 && v >= 0) out.add(u, v, e.weight);
  }
  return out;
}

std::vector<std::vector<double>> collect_node_weights(const WeightedGraph& graph,
                                                      int node,
                                                      const PartialLabels& labels) {
  std::vector<std::vector<double>> out(labels.block_count());
  for (const auto& [nbr, w] : graph.neighbors(node)) {
    const int v = labels.block_of(nbr);
    if (v >= 0) out[v].push_back(w);
  }
  return out;
}

PlugInMixture fit_plug_in_mixture(std::span<const double> positions,
                                  const PartialLabels& labels) {
  if (static_cast<int>(positions.size()) != labels.node_count())
    throw std::invalid_argument("positions/labels length mismatch");
  const int k = labels.block_count();
  std::vector<double> sums(k, 0.0);
  std::vector<int> counts(k, 0);
  for (int i = 0; i < labels.node_count(); ++i) {
    const int u = labels.block_of(i);
    if (u >= 0) {
      sums[u] += positions[i];
      ++counts[u];
    }
  }
  int total = 0;
  for (int u = 0; u < k; ++u) {
    if (counts[u] < 2)
      throw std::invalid_argument("every block needs >= 2 labeled nodes");
    total += counts[u];
  }
  std::vector<double> means(k), sds(k, 0.0), priors(k);
  for (int u = 0; u < k; ++u) means[u] = sums[u] / counts[u];
  for (int i = 0; i < labels.node_count(); ++i) {
    const int u = labels.block_of(i);
    if (u >= 0) {
      const double c = positions[i] - means[u];
      sds[u] += c * c;
    }
  }
  for (int u = 0; u < k; ++u) {
    sds[u] = std::sqrt(sds[u] / (counts[u] - 1));
    if (!(sds[u] > 0.0))
      throw std::invalid_argument("labeled positions are constant within a block");
    priors[u] = static_cast<double>(counts[u]) / total;
  }
  double drift = 1.0 - std::accumulate(priors.begin(), priors.end(), 0.0);
  priors[0] += drift;
  return PlugInMixture(std::move(means), std::move(sds),
                       PriorVector(std::move(priors)));
}

int bayes_classify(const PlugInMixture& mixture, double x, const PriorVector& prior) {
  if (prior.size() != mixture.block_count())
    throw std::invalid_argument("prior length mismatch");
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int u = 0; u < mixture.block_count(); ++u) {
    const double pi_u = prior.at(u);
    double score = -std::numeric_limits<double>::infinity();
    if (pi_u > 0.0) {
      const double z = (x - mixture.mean(u)) / mixture.sd(u);
      score = std::log(pi_u) - std::log(mixture.sd(u)) - 0.5 * z * z;
    }
    if (score > best_score) {
      best_score = score;
      best = u;
    }
  }
  return best;
}

std::vector<double> decision_boundaries(double mu1, double sd1, double pi1,
                                        double mu2, double sd2, double pi2) {
  if (!(sd1 > 0.0) || !(sd2 > 0.0))
    throw std::invalid_argument("sds must be > 0");
  const double v1 = sd1 * sd1;
  const double v2 = sd2 * sd2;
  if (sd1 == sd2) {
    // Equal variances: the log-density difference is linear.
    if (mu1 == mu2) return {};  // identical curves scaled by priors never cross
    return {(mu1 + mu2) / 2.0 + v1 * std::log(pi1 / pi2) / (mu2 - mu1)};
  }
  // pi1 phi(x; mu1, sd1) = pi2 phi(x; mu2, sd2) expands to a quadratic.
  const double a = v1 - v2;
  const double b = -2.0 * (mu2 * v1 - mu1 * v2);
  const double c =
      mu2 * mu2 * v1 - mu1 * mu1 * v2 + 2.0 * v1 * v2 * std::log(pi1 * sd2 / (pi2 * sd1));
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double root = std::sqrt(disc);
  std::vector<double> out = {(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)};
  std::sort(out.begin(), out.end());
  if (out[0] == out[1]) out.pop_back();
  return out;
}

std::vector<Permutation> estimate_orderings(const BlockWeightSamples& samples) {
  const int k = samples.block_count();
  std::vector<Permutation> out;
  out.reserve(k);
  for (int u = 0; u < k; ++u) {
    std::vector<double> means(k);
    for (int v = 0; v < k; ++v) {
      const auto s = samples.pair(u, v);
      if (s.empty())
        throw std::invalid_argument("no training weights between a block pair");
      means[v] = mean_of(s);
    }
    out.push_back(order_blocks_by(means));
  }
  return out;
}

Permutation estimate_node_ordering(const WeightedGraph& graph, int node,
                                   const PartialLabels& labels) {
  if (labels.is_labeled(node))
    throw std::invalid_argument("node ordering is defined for unlabeled nodes");
  const auto by_block = collect_node_weights(graph, node, labels);
  std::vector<double> means(by_block.size());
  for (std::size_t v = 0; v < by_block.size(); ++v)
    means[v] = by_block[v].empty() ? 0.0 : mean_of(by_block[v]);
  return order_blocks_by(means);
}

OrderedUpdate update_priors_ordered_detailed(const PriorVector& base,
                                             const Permutation& node_ordering,
                                             const std::vector<Permutation>& block_orderings,
                                             double smoothing) {
  const int k = base.size();
  if (static_cast<int>(block_orderings.size()) != k || node_ordering.size() != k)
    throw std::invalid_argument("ordering count must match block count");
  if (smoothing < 0.0) throw std::invalid_argument("smoothing must be >= 0");

  std::vector<double> d(k);
  for (int u = 0; u < k; ++u)
    d[u] = footrule_distance(node_ordering, block_orderings[u]) + smoothing;

  const bool all_equal = std::all_of(d.begin(), d.end(),
                                     [&](double x) { return x == d.front(); });
  if (all_equal) {
    // Identical dissimilarity to every block carries no information.
    std::vector<double> nd(k, 1.0 / k), s(k, 1.0 - 1.0 / k);
    return {d, std::move(nd), SimilarityVector(std::move(s)), base};
  }

  const double d_sum = std::accumulate(d.begin(), d.end(), 0.0);
  std::vector<double> nd(k), s(k);
  for (int u = 0; u < k; ++u) {
    nd[u] = d[u] / d_sum;
    s[u] = 1.0 - nd[u];
  }
  SimilarityVector similarity{std::vector<double>(s)};
  const double s_sum = std::accumulate(s.begin(), s.end(), 0.0);
  std::vector<double> updated(k);
  double dot = 0.0;
  for (int u = 0; u < k; ++u) {
    updated[u] = base.at(u) * (s[u] / s_sum);  // base * NS
    dot += updated[u];
  }
  if (dot <= 0.0)
    throw std::domain_error("prior update annihilated every block");
  for (double& v : updated) v /= dot;
  double drift = 1.0 - std::accumulate(updated.begin(), updated.end(), 0.0);
  updated[0] += drift;
  return {std::move(d), std::move(nd), std::move(similarity),
          PriorVector(std::move(updated))};
}

PriorVector update_priors_ordered(const PriorVector& base,
                                  const Permutation& node_ordering,
                                  const std::vector<Permutation>& block_orderings,
                                  double smoothing) {
  return update_priors_ordered_detailed(base, node_ordering, block_orderings, smoothing)
      .updated;
}

double dynamic_smoothing(double combined_p, double r) {
  if (r < 1.0) throw std::invalid_argument("dynamic smoothing needs r >= 1");
  if (combined_p < 0.0 || combined_p > 1.0)
    throw std::invalid_argument("combined p must lie in [0, 1]");
  return 1.0 + (r - 1.0) * combined_p;
}

std::vector<double> general_block_pvalues(
    const std::vector<std::vector<double>>& node_samples,
    const BlockWeightSamples& block_samples) {
  const int k = block_samples.block_count();
  if (static_cast<int>(node_samples.size()) != k)
    throw std::invalid_argument("node sample count must match block count");
  std::vector<double> combined(k, 1.0);
  for (int u = 0; u < k; ++u) {
    std::vector<double> ps;
    for (int j = 0; j < k; ++j) {
      const auto training = block_samples.pair(u, j);
      if (!node_samples[j].empty() && !training.empty())
        ps.push_back(ks_two_sample(node_samples[j], training).p_value);
    }
    if (!ps.empty()) combined[u] = fishers_method(ps).p_value;
    // No testable pair: keep p = 1 (no evidence against block u).
  }
  return combined;
}

PriorVector update_priors_general(const PriorVector& base,
                                  const std::vector<std::vector<double>>& node_samples,
                                  const BlockWeightSamples& block_samples) {
  const auto p = general_block_pvalues(node_samples, block_samples);
  const int k = base.size();
  std::vector<double> updated(k);
  double dot = 0.0;
  for (int u = 0; u < k; ++u) {
    updated[u] = base.at(u) * p[u];
    dot += updated[u];
  }
  if (dot <= 0.0) return base;  // every candidate annihilated: no information
  for (double& v : updated) v /= dot;
  double drift = 1.0 - std::accumulate(updated.begin(), updated.end(), 0.0);
  updated[0] += drift;
  return PriorVector(std::move(updated));
}

Strategy parse_strategy(const std::string& name) {
  if (name == "ptr_qda") return Strategy::kPtrQda;
  if (name == "ordered") return Strategy::kOrdered;
  if (name == "ordered_gated") return Strategy::kOrderedGated;
  if (name == "ordered_dynamic") return Strategy::kOrderedDynamic;
  if (name == "general") return Strategy::kGeneral;
  if (name == "general_logit") return Strategy::kGeneralLogit;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::kPtrQda: return "ptr_qda";
    case Strategy::kOrdered: return "ordered";
    case Strategy::kOrderedGated: return "ordered_gated";
    case Strategy::kOrderedDynamic: return "ordered_dynamic";
    case Strategy::kGeneral: return "general";
    case Strategy::kGeneralLogit: return "general_logit";
  }
  throw std::logic_error("unreachable");
}

ClassifierContext::ClassifierContext(const WeightedGraph& graph,
                                     const PartialLabels& labels)
    : graph_(graph), labels_(labels) {
  if (graph_.node_count() != labels_.node_count())
    throw std::invalid_argument("graph/labels node count mismatch");
  if (graph_.node_count() == 0) throw std::invalid_argument("empty graph");
}

const ClassifierContext::EmbeddedMixture& ClassifierContext::adjacency_mixture(
    const ClassifyConfig& config) {
  if (!adjacency_mixture_) {
    const EmbeddingResult embedding =
        ase(graph_.unweighted_adjacency(), config.embed_dim,
            {.augment_diagonal = config.augment_diagonal});
    std::vector<double> positions = embedding.positions.column(0);
    PlugInMixture mixture = fit_plug_in_mixture(positions, labels_);
    adjacency_mixture_ = EmbeddedMixture{std::move(positions), std::move(mixture)};
  }
  return *adjacency_mixture_;
}

const ClassifierContext::EmbeddedMixture& ClassifierContext::ptr_mixture(
    const ClassifyConfig& config) {
  if (!ptr_mixture_) {
    const EmbeddingResult embedding =
        ase(pass_to_ranks(graph_, config.ptr_scale), config.embed_dim,
            {.augment_diagonal = config.augment_diagonal});
    std::vector<double> positions = embedding.positions.column(0);
    PlugInMixture mixture = fit_plug_in_mixture(positions, labels_);
    ptr_mixture_ = EmbeddedMixture{std::move(positions), std::move(mixture)};
  }
  return *ptr_mixture_;
}

const BlockWeightSamples& ClassifierContext::block_samples() {
  if (!block_samples_) block_samples_ = collect_block_weights(graph_, labels_);
  return *block_samples_;
}

std::vector<Prediction> ClassifierContext::classify(const ClassifyConfig& config) {
  const std::vector<int> unlabeled = labels_.unlabeled_nodes();
  std::vector<Prediction> out;
  out.reserve(unlabeled.size());

  if (config.strategy == Strategy::kPtrQda) {
    const auto& em = ptr_mixture(config);
    for (int i : unlabeled)
      out.push_back({i, bayes_classify(em.mixture, em.positions[i],
                                       em.mixture.priors())});
    return out;
  }

  const auto& em = adjacency_mixture(config);
  const PriorVector& base = em.mixture.priors();

  if (config.strategy == Strategy::kOrdered ||
      config.strategy == Strategy::kOrderedGated ||
      config.strategy == Strategy::kOrderedDynamic) {
    double smoothing = config.smoothing;
    if (config.strategy == Strategy::kOrderedGated ||
        config.strategy == Strategy::kOrderedDynamic) {
      const auto within = block_samples().pooled_within();
      const auto between = block_samples().pooled_between();
      if (config.strategy == Strategy::kOrderedGated) {
        if (three_decision_test(within, between, config.alpha) ==
            ThreeDecision::kFailToReject) {
          for (int i : unlabeled)
            out.push_back({i, bayes_classify(em.mixture, em.positions[i], base)});
          return out;
        }
      } else {
        const std::vector<double> gate_ps = {mann_whitney_u(within, between).p_value};
        smoothing =
            dynamic_smoothing(fishers_method(gate_ps).p_value, config.smoothing_r);
      }
    }
    const std::vector<Permutation> block_ords = estimate_orderings(block_samples());
    for (int i : unlabeled) {
      const Permutation node_ord = estimate_node_ordering(graph_, i, labels_);
      const PriorVector updated =
          update_priors_ordered(base, node_ord, block_ords, smoothing);
      out.push_back({i, bayes_classify(em.mixture, em.positions[i], updated)});
    }
    return out;
  }

  // General edge-weight strategies (KS/Fisher similarities).
  for (int i : unlabeled) {
    const auto node_samples = collect_node_weights(graph_, i, labels_);
    PriorVector updated = base;
    if (config.strategy == Strategy::kGeneral) {
      updated = update_priors_general(base, node_samples, block_samples());
    } else {
      std::vector<double> p = general_block_pvalues(node_samples, block_samples());
      for (double& v : p) v = logistic_sharpen(v, config.logit_coeff);
      std::vector<double> scaled(p.size());
      double dot = 0.0;
      for (int u = 0; u < base.size(); ++u) {
        scaled[u] = base.at(u) * p[u];
        dot += scaled[u];
      }
      if (dot > 0.0) {
        for (double& v : scaled) v /= dot;
        scaled[0] += 1.0 - std::accumulate(scaled.begin(), scaled.end(), 0.0);
        updated = PriorVector(std::move(scaled));
      }
    }
    out.push_back({i, bayes_classify(em.mixture, em.positions[i], updated)});
  }
  return out;
}

std::vector<Prediction> classify_nodes(const WeightedGraph& graph,
                                       const PartialLabels& labels,
                                       const ClassifyConfig& config) {
  ClassifierContext context(graph, labels);
  return context.classify(config);
}

}  // namespace wsbm
