#include <doctest.h>

#include <cmath>
#include <random>

#include "wsbm/classify.hpp"
#include "wsbm/sampler.hpp"
#include "worked_example.hpp"

using namespace wsbm;
using wsbm::testing::small_example_graph;
using wsbm::testing::small_example_labels;

namespace {

double log_weighted_density(double x, double mu, double sd, double pi) {
  return std::log(pi) - std::log(sd) - (x - mu) * (x - mu) / (2 * sd * sd);
}

}  // namespace

TEST_CASE("PriorVector and SimilarityVector invariants") {
  CHECK_THROWS_AS(PriorVector({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(PriorVector({-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(SimilarityVector({0.0, 0.0}), std::invalid_argument);
  CHECK(PriorVector::uniform(3).at(1) == doctest::Approx(1.0 / 3));
}

TEST_CASE("collect_block_weights matches the worked multisets") {
  const WeightedGraph g = small_example_graph();
  const PartialLabels labels = small_example_labels();
  const BlockWeightSamples bw = collect_block_weights(g, labels);

  const auto w11 = bw.pair(0, 0);
  REQUIRE(w11.size() == 1);
  CHECK(w11[0] == 2.0);

  auto w12 = std::vector<double>(bw.pair(0, 1).begin(), bw.pair(0, 1).end());
  std::sort(w12.begin(), w12.end());
  CHECK(w12 == std::vector<double>{1.0, 4.0, 4.0});

  const auto w22 = bw.pair(1, 1);
  REQUIRE(w22.size() == 1);
  CHECK(w22[0] == 2.0);
}

TEST_CASE("collect_block_weights counting on a complete unit graph") {
  std::vector<WeightedEdge> edges;
  const int n = 6;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  const WeightedGraph g(n, std::move(edges));
  // blocks: {0,1,2} labeled 0, {3,4} labeled 1, node 5 unlabeled
  const PartialLabels labels({0, 0, 0, 1, 1, -1}, 2);
  const BlockWeightSamples bw = collect_block_weights(g, labels);
  CHECK(bw.pair(0, 0).size() == 3);  // C(3,2)
  CHECK(bw.pair(0, 1).size() == 6);  // 3*2
  CHECK(bw.pair(1, 1).size() == 1);  // C(2,2)
}

TEST_CASE("fit_plug_in_mixture reproduces the worked parameters") {
  const WeightedGraph g = small_example_graph();
  const EmbeddingResult ptr = ase(pass_to_ranks(g, PtrScale::kUnit), 1);
  const PlugInMixture mix =
      fit_plug_in_mixture(ptr.positions.column(0), small_example_labels());
  CHECK(std::fabs(mix.mean(0) - 0.51) < 0.01);
  CHECK(std::fabs(mix.sd(0) - 0.36) < 0.01);
  CHECK(std::fabs(mix.mean(1) - 0.54) < 0.01);
  CHECK(std::fabs(mix.sd(1) - 0.15) < 0.01);
  CHECK(mix.priors().at(0) == 0.5);  // equal labeled counts
  CHECK(mix.priors().at(1) == 0.5);
}

TEST_CASE("fit_plug_in_mixture degenerate inputs") {
  const std::vector<double> positions = {1.0, 1.0, 2.0, 3.0};
  CHECK_THROWS_AS(fit_plug_in_mixture(positions, PartialLabels({0, 0, 1, -1}, 2)),
                  std::invalid_argument);  // block 1 has a single labeled node
  CHECK_THROWS_AS(fit_plug_in_mixture(positions, PartialLabels({0, 0, 1, 1}, 2)),
                  std::invalid_argument);  // block 0 positions constant
}

TEST_CASE("bayes_classify argmax and tie-breaking") {
  const PlugInMixture mix({0.0, 2.0}, {1.0, 1.0}, PriorVector({0.5, 0.5}));
  CHECK(bayes_classify(mix, 0.0, mix.priors()) == 0);   // at mu_1
  CHECK(bayes_classify(mix, 0.99, mix.priors()) == 0);  // left of the midpoint
  CHECK(bayes_classify(mix, 1.01, mix.priors()) == 1);
  CHECK(bayes_classify(mix, 1.0, mix.priors()) == 0);   // tie -> smaller index

  const PriorVector degenerate({1.0, 0.0});
  for (double x : {-5.0, 1.5, 7.0})
    CHECK(bayes_classify(mix, x, degenerate) == 0);

  // Scaling all prior entries by a positive constant before normalization
  // cannot change the argmax.
  const PriorVector p1({0.3, 0.7});
  const PriorVector p2({0.3, 0.7});  // same direction, normalized
  for (double x = -2.0; x <= 4.0; x += 0.25)
    CHECK(bayes_classify(mix, x, p1) == bayes_classify(mix, x, p2));
}

TEST_CASE("decision_boundaries closed forms") {
  const auto mid = decision_boundaries(0, 1, 0.5, 2, 1, 0.5);
  REQUIRE(mid.size() == 1);
  CHECK(mid[0] == doctest::Approx(1.0).epsilon(1e-12));

  const auto two = decision_boundaries(0, 1, 0.5, 2, 2, 0.5);
  REQUIRE(two.size() == 2);
  for (double x : two)
    CHECK(std::fabs(log_weighted_density(x, 0, 1, 0.5) -
                    log_weighted_density(x, 2, 2, 0.5)) < 1e-9);

  // Raising pi_1 pushes the boundary toward block 2's mean.
  const auto base = decision_boundaries(0, 1, 0.5, 2, 1, 0.5);
  const auto tilted = decision_boundaries(0, 1, 0.75, 2, 1, 0.25);
  CHECK(tilted[0] > base[0]);
}

TEST_CASE("decision_boundaries density equality over random draws") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> mu(-5.0, 5.0);
  std::uniform_real_distribution<double> sd(0.2, 4.0);
  std::uniform_real_distribution<double> pi(0.05, 0.95);
  int with_roots = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const double m1 = mu(rng), m2 = mu(rng);
    double s1 = sd(rng), s2 = sd(rng);
    if (s1 == s2) s2 += 0.1;
    const double p1 = pi(rng);
    const auto roots = decision_boundaries(m1, s1, p1, m2, s2, 1 - p1);
    with_roots += !roots.empty();
    for (double x : roots)
      CHECK(std::fabs(log_weighted_density(x, m1, s1, p1) -
                      log_weighted_density(x, m2, s2, 1 - p1)) < 1e-9);
  }
  CHECK(with_roots > 500);  // the residual check must not be vacuous
}

TEST_CASE("estimate_orderings matches the worked example") {
  const BlockWeightSamples bw =
      collect_block_weights(small_example_graph(), small_example_labels());
  const auto ords = estimate_orderings(bw);
  REQUIRE(ords.size() == 2);
  CHECK(ords[0] == Permutation({0, 1}));  // within mean 2 < cross mean 3
  CHECK(ords[1] == Permutation({1, 0}));

  BlockWeightSamples empty(2);
  empty.add(0, 0, 1.0);
  CHECK_THROWS_AS(estimate_orderings(empty), std::invalid_argument);

  // All means equal: identity ordering by the index tie-break.
  BlockWeightSamples tied(3);
  for (int u = 0; u < 3; ++u)
    for (int v = u; v < 3; ++v) tied.add(u, v, 2.0);
  for (const auto& o : estimate_orderings(tied)) CHECK(o == Permutation({0, 1, 2}));
}

TEST_CASE("estimate_node_ordering matches node 6 of the worked example") {
  const WeightedGraph g = small_example_graph();
  const PartialLabels labels = small_example_labels();
  // Node 6 in the paper's 1-based indexing is index 5 here: one weight-2 edge
  // to block-0 training, none to block-1 training -> block 1 first.
  CHECK(estimate_node_ordering(g, 5, labels) == Permutation({1, 0}));
  CHECK_THROWS_AS(estimate_node_ordering(g, 0, labels), std::invalid_argument);

  // Identical means to both blocks -> (0, 1) by tie-break.
  const WeightedGraph h(5, {{0, 4, 3.0}, {2, 4, 3.0}});
  const PartialLabels hl({0, 0, 1, 1, -1}, 2);
  CHECK(estimate_node_ordering(h, 4, hl) == Permutation({0, 1}));

  // Means 1 vs 5: block 0 first.
  const WeightedGraph h2(5, {{0, 4, 1.0}, {2, 4, 5.0}, {3, 4, 5.0}});
  CHECK(estimate_node_ordering(h2, 4, hl) == Permutation({0, 1}));
}

TEST_CASE("update_priors_ordered reproduces the worked update") {
  const std::vector<Permutation> block_ords = {Permutation({0, 1}), Permutation({1, 0})};
  const PriorVector base = PriorVector::uniform(2);

  // Node ordering matches block 0 (the section 3.3 case).
  const OrderedUpdate match0 = update_priors_ordered_detailed(
      base, Permutation({0, 1}), block_ords, 1.0);
  CHECK(match0.distances == std::vector<double>{1.0, 3.0});
  CHECK(match0.normalized_distances == std::vector<double>{0.25, 0.75});
  CHECK(match0.similarity.values() == std::vector<double>{0.75, 0.25});
  CHECK(match0.updated.values() == std::vector<double>{0.75, 0.25});

  // Node ordering matches block 1 (the node-6 case): priors (1/4, 3/4).
  const PriorVector updated =
      update_priors_ordered(base, Permutation({1, 0}), block_ords, 1.0);
  CHECK(updated.values() == std::vector<double>{0.25, 0.75});

  // Huge smoothing washes the update out.
  const PriorVector washed =
      update_priors_ordered(base, Permutation({1, 0}), block_ords, 10000.0);
  CHECK(std::fabs(washed.at(0) - 0.5) < 1e-3);
  CHECK(std::fabs(washed.at(1) - 0.5) < 1e-3);

  // Without smoothing a perfect match hands everything to that block.
  const PriorVector hard =
      update_priors_ordered(base, Permutation({0, 1}), block_ords, 0.0);
  CHECK(hard.at(0) == 1.0);
  CHECK(hard.at(1) == 0.0);
}

TEST_CASE("update_priors_ordered equal distances return the base exactly") {
  const std::vector<Permutation> same_ords = {Permutation({0, 1}), Permutation({0, 1})};
  const PriorVector base({0.37, 0.63});
  for (double smoothing : {0.0, 1.0, 25.0}) {
    const PriorVector out =
        update_priors_ordered(base, Permutation({1, 0}), same_ords, smoothing);
    CHECK(out.values() == base.values());
  }
}

TEST_CASE("update_priors_ordered properties") {
  std::mt19937_64 rng(59);
  for (int k = 2; k <= 5; ++k) {
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    for (int rep = 0; rep < 50; ++rep) {
      auto shuffle_perm = [&] {
        std::vector<int> v = id;
        std::shuffle(v.begin(), v.end(), rng);
        return Permutation(v);
      };
      std::vector<Permutation> ords;
      for (int u = 0; u < k; ++u) ords.push_back(shuffle_perm());
      std::uniform_real_distribution<double> u01(0.01, 1.0);
      std::vector<double> raw(k);
      double sum = 0;
      for (auto& v : raw) {
        v = u01(rng);
        sum += v;
      }
      for (auto& v : raw) v /= sum;
      raw[0] += 1.0 - std::accumulate(raw.begin(), raw.end(), 0.0);
      const PriorVector base(raw);
      const PriorVector out =
          update_priors_ordered(base, shuffle_perm(), ords, 1.0);
      double total = 0;
      for (int u = 0; u < k; ++u) {
        CHECK(out.at(u) >= 0.0);
        total += out.at(u);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  // K=2 monotonicity: growing d_0 with d_1 fixed never raises prior 0.
  // Realized through orderings: distances take values {0,2} + smoothing, so
  // compare a matching vs a non-matching node ordering directly.
  const std::vector<Permutation> ords = {Permutation({0, 1}), Permutation({1, 0})};
  const PriorVector base = PriorVector::uniform(2);
  const double near = update_priors_ordered(base, Permutation({0, 1}), ords, 1.0).at(0);
  const double far = update_priors_ordered(base, Permutation({1, 0}), ords, 1.0).at(0);
  CHECK(far < near);
}

TEST_CASE("dynamic_smoothing endpoints and slope") {
  CHECK(dynamic_smoothing(0.0, 101.0) == 1.0);
  CHECK(dynamic_smoothing(1.0, 101.0) == 101.0);
  CHECK(dynamic_smoothing(0.5, 101.0) == 51.0);
  CHECK(dynamic_smoothing(0.25, 1.0) == 1.0);  // r = 1 pins q at 1
  CHECK_THROWS_AS(dynamic_smoothing(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(dynamic_smoothing(1.5, 2.0), std::invalid_argument);
}

TEST_CASE("update_priors_general worked cases") {
  // K=2 with fixed per-block p-values is pure renormalization; drive the
  // block samples so the KS pieces produce predictable extremes.
  BlockWeightSamples bw(2);
  for (int rep = 0; rep < 30; ++rep) {
    bw.add(0, 0, 1.0 + rep * 0.01);  // tight cluster near 1
    bw.add(0, 1, 50.0 + rep * 0.01);
    bw.add(1, 1, 1.0 + rep * 0.01);
  }
  // Node identical to block-0's profile: weights near 1 to block 0, near 50
  // to block 1.
  std::vector<std::vector<double>> node(2);
  for (int rep = 0; rep < 15; ++rep) {
    node[0].push_back(1.0 + rep * 0.02);
    node[1].push_back(50.0 + rep * 0.02);
  }
  const auto p = general_block_pvalues(node, bw);
  REQUIRE(p.size() == 2);
  CHECK(p[0] > 0.5);   // consistent with block 0
  CHECK(p[1] < 0.01);  // wildly inconsistent with block 1
  const PriorVector updated = update_priors_general(PriorVector::uniform(2), node, bw);
  CHECK(updated.at(0) > 0.95);

  // No testable pairs at all: everything stays at the base.
  std::vector<std::vector<double>> silent(2);
  const PriorVector kept = update_priors_general(PriorVector({0.3, 0.7}), silent, bw);
  CHECK(kept.values() == std::vector<double>{0.3, 0.7});
}

TEST_CASE("update_priors_general proportionality identity") {
  // When every candidate block ends with the same combined p, the update is
  // the identity. Symmetric block samples force p_0 = p_1.
  BlockWeightSamples bw(2);
  for (int rep = 0; rep < 20; ++rep) {
    const double v = 0.1 * rep;
    bw.add(0, 0, v);
    bw.add(1, 1, v);
    bw.add(0, 1, v + 0.05);
  }
  std::vector<std::vector<double>> node(2);
  for (int rep = 0; rep < 10; ++rep) {
    node[0].push_back(0.21 * rep);
    node[1].push_back(0.21 * rep);
  }
  // pair(0, j) and pair(1, j) see identical training data by construction,
  // so the two candidates get identical combined p-values.
  const PriorVector base({0.3, 0.7});
  const PriorVector out = update_priors_general(base, node, bw);
  CHECK(out.at(0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(out.at(1) == doctest::Approx(0.7).epsilon(1e-12));
}

namespace {

BlockModel informative_model() {
  const auto within = WeightDistribution::normal(5, 1);
  const auto between = WeightDistribution::normal(10, 1);
  return BlockModel({0.5, 0.5}, rank_one_b(0.9, 0.1),
                    {{within, between}, {between, within}});
}

double error_rate(const std::vector<Prediction>& preds, const std::vector<int>& truth) {
  int wrong = 0;
  for (const auto& p : preds) wrong += p.block != truth[p.node];
  return static_cast<double>(wrong) / preds.size();
}

}  // namespace

TEST_CASE("classify_nodes with constant weights reduces to the base classifier") {
  const auto c = WeightDistribution::empirical({3.0});  // every weight is 3
  const BlockModel model({0.5, 0.5}, rank_one_b(0.7, 0.4), {{c, c}, {c, c}});
  const SbmSample s = sample_sbm(model, {30, 30}, {5, 5}, 61);

  ClassifierContext ctx(s.graph, s.training);
  const auto ordered = ctx.classify({.strategy = Strategy::kOrdered});

  // Base classifier: same embedding, mixture priors, no update.
  const EmbeddingResult emb = ase(s.graph.unweighted_adjacency(), 1);
  const PlugInMixture mix =
      fit_plug_in_mixture(emb.positions.column(0), s.training);
  for (const auto& p : ordered) {
    const int base = bayes_classify(mix, emb.positions(p.node, 0), mix.priors());
    CHECK(p.block == base);
  }
}

TEST_CASE("classify_nodes sanity on a strongly separated model") {
  // q = 0.1 makes within-block-1 edges scarce; a larger training pool keeps
  // the block-pair multisets nonempty at this seed.
  const SbmSample s = sample_sbm(informative_model(), {100, 100}, {25, 25}, 67);
  ClassifierContext ctx(s.graph, s.training);
  for (Strategy strat : {Strategy::kPtrQda, Strategy::kOrdered,
                         Strategy::kOrderedGated, Strategy::kOrderedDynamic,
                         Strategy::kGeneral, Strategy::kGeneralLogit}) {
    ClassifyConfig cfg;
    cfg.strategy = strat;
    cfg.logit_coeff = 10.0;
    const auto preds = ctx.classify(cfg);
    CHECK(preds.size() == 150);
    CHECK(error_rate(preds, s.labels) < 0.05);
  }
}

TEST_CASE("huge smoothing converges to the unweighted base classifier") {
  const auto within = WeightDistribution::normal(5, 1);
  const auto between = WeightDistribution::normal(10, 1);
  const BlockModel model({0.5, 0.5}, rank_one_b(0.7, 0.5),
                         {{within, between}, {between, within}});
  const SbmSample s = sample_sbm(model, {40, 40}, {8, 8}, 71);
  ClassifierContext ctx(s.graph, s.training);
  ClassifyConfig big;
  big.strategy = Strategy::kOrdered;
  big.smoothing = 1e6;
  const auto smoothed = ctx.classify(big);

  const EmbeddingResult emb = ase(s.graph.unweighted_adjacency(), 1);
  const PlugInMixture mix = fit_plug_in_mixture(emb.positions.column(0), s.training);
  for (const auto& p : smoothed)
    CHECK(p.block == bayes_classify(mix, emb.positions(p.node, 0), mix.priors()));
}

TEST_CASE("forced degenerate prior labels everything block 0") {
  const SbmSample s = sample_sbm(informative_model(), {30, 30}, {5, 5}, 73);
  const EmbeddingResult emb = ase(s.graph.unweighted_adjacency(), 1);
  const PlugInMixture mix = fit_plug_in_mixture(emb.positions.column(0), s.training);
  const PriorVector all_zero({1.0, 0.0});
  int block2_unlabeled = 0, wrong = 0, total = 0;
  for (int i : s.training.unlabeled_nodes()) {
    ++total;
    block2_unlabeled += s.labels[i] == 1;
    wrong += bayes_classify(mix, emb.positions(i, 0), all_zero) != s.labels[i];
  }
  CHECK(wrong == block2_unlabeled);  // misclassification = block-2 fraction
  CHECK(total > 0);
}
