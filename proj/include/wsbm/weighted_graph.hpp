#ifndef WSBM_WEIGHTED_GRAPH_HPP
#define WSBM_WEIGHTED_GRAPH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "wsbm/matrix.hpp"

namespace wsbm {

/// One undirected edge, stored with i < j.
struct WeightedEdge {
  int i;
  int j;
  double weight;
};

/// Symmetric, hollow, weighted graph. Presence and weight are separate
/// pieces of information: an edge may exist with weight 0, which is not
/// the same as no edge. Immutable after construction.
class WeightedGraph {
 public:
  /// Builds from an edge list. Endpoint order within an edge is free and
  /// gets normalized to i < j. Throws std::invalid_argument on self loops,
  /// duplicate pairs, out-of-range endpoints, or non-finite weights.
  WeightedGraph(int node_count, std::vector<WeightedEdge> edges);

  int node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges sorted row-major by (i, j), i < j.
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  /// Weight of the (i, j) edge; nullopt when absent. Symmetric in (i, j).
  std::optional<double> edge_weight(int i, int j) const;

  /// Neighbors of i with edge weights, sorted by neighbor index.
  const std::vector<std::pair<int, double>>& neighbors(int i) const {
    return adjacency_[i];
  }

  /// 0/1 presence matrix A (hollow, symmetric).
  Matrix unweighted_adjacency() const;

 private:
  int node_count_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

}  // namespace wsbm

#endif  // WSBM_WEIGHTED_GRAPH_HPP
