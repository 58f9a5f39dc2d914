#ifndef WSBM_SAMPLER_HPP
#define WSBM_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "wsbm/block_model.hpp"
#include "wsbm/weighted_graph.hpp"

namespace wsbm {

/// Deterministic seed derivation (splitmix64 over master ^ index). Used to
/// give replicates and sub-streams independent, reproducible seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct SbmSample {
  WeightedGraph graph;
  PartialLabels training;    // reveals the training nodes only
  std::vector<int> labels;   // full ground truth, one block per node
};

/// Samples a graph conditioned on exact per-block node counts. Nodes are laid
/// out contiguously by block; the first train_counts[u] nodes of each block
/// are revealed in `training`. Pairs are visited row-major over i < j.
/// Presence and weights are drawn from two independent streams derived from
/// `seed`, so weights are conditionally independent of the edge pattern.
SbmSample sample_sbm(const BlockModel& model, const std::vector<int>& block_counts,
                     const std::vector<int>& train_counts, std::uint64_t seed);

/// Same, with the two streams seeded explicitly. Fixing presence_seed and
/// varying weight_seed resamples weights on an identical edge pattern.
SbmSample sample_sbm(const BlockModel& model, const std::vector<int>& block_counts,
                     const std::vector<int>& train_counts,
                     std::uint64_t presence_seed, std::uint64_t weight_seed);

}  // namespace wsbm

#endif  // WSBM_SAMPLER_HPP
