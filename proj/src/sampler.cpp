#include "wsbm/sampler.hpp"

#include <stdexcept>

namespace wsbm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 1));
}

SbmSample sample_sbm(const BlockModel& model, const std::vector<int>& block_counts,
                     const std::vector<int>& train_counts, std::uint64_t seed) {
  return sample_sbm(model, block_counts, train_counts, derive_seed(seed, 0),
                    derive_seed(seed, 1));
}

SbmSample sample_sbm(const BlockModel& model, const std::vector<int>& block_counts,
                     const std::vector<int>& train_counts,
                     std::uint64_t presence_seed, std::uint64_t weight_seed) {
  const int k = model.block_count();
  if (static_cast<int>(block_counts.size()) != k ||
      static_cast<int>(train_counts.size()) != k)
    throw std::invalid_argument("count vectors must have one entry per block");
  int n = 0;
  for (int u = 0; u < k; ++u) {
    if (block_counts[u] < 0 || train_counts[u] < 0)
      throw std::invalid_argument("counts must be nonnegative");
    if (train_counts[u] > block_counts[u])
      throw std::invalid_argument("training count exceeds block count");
    n += block_counts[u];
  }

  // Nodes laid out contiguously by block; training nodes first within each.
  std::vector<int> labels(n);
  std::vector<int> revealed(n, -1);
  int offset = 0;
  for (int u = 0; u < k; ++u) {
    for (int t = 0; t < block_counts[u]; ++t) {
      labels[offset + t] = u;
      if (t < train_counts[u]) revealed[offset + t] = u;
    }
    offset += block_counts[u];
  }

  std::mt19937_64 presence_rng(presence_seed);
  std::mt19937_64 weight_rng(weight_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Matrix& b = model.edge_probability();

  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(presence_rng) < b(labels[i], labels[j])) {
        const double w =
            model.weight_distribution(labels[i], labels[j]).sample(weight_rng);
        edges.push_back({i, j, w});
      }
    }
  }

  return SbmSample{WeightedGraph(n, std::move(edges)),
                   PartialLabels(std::move(revealed), k), std::move(labels)};
}

}  // namespace wsbm
