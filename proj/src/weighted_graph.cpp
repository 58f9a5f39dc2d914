#include "wsbm/weighted_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wsbm {

WeightedGraph::WeightedGraph(int node_count, std::vector<WeightedEdge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 0) throw std::invalid_argument("negative node count");
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= node_count_)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.i == e.j)
      throw std::invalid_argument("self loop on node " + std::to_string(e.i));
    if (!std::isfinite(e.weight))
      throw std::invalid_argument("non-finite edge weight");
  }
  std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[k].i) +
                                  ", " + std::to_string(edges_[k].j) + ")");
  adjacency_.resize(node_count_);
  for (const auto& e : edges_) {
    adjacency_[e.i].emplace_back(e.j, e.weight);
    adjacency_[e.j].emplace_back(e.i, e.weight);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool WeightedGraph::has_edge(int i, int j) const {
  return edge_weight(i, j).has_value();
}

std::optional<double> WeightedGraph::edge_weight(int i, int j) const {
  if (i == j) return std::nullopt;
  const auto& nbrs = adjacency_[i];
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j,
                             [](const std::pair<int, double>& p, int v) { return p.first < v; });
  if (it != nbrs.end() && it->first == j) return it->second;
  return std::nullopt;
}

Matrix WeightedGraph::unweighted_adjacency() const {
  const auto n = static_cast<std::size_t>(node_count_);
  Matrix a(n, n, 0.0);
  for (const auto& e : edges_) {
    a(e.i, e.j) = 1.0;
    a(e.j, e.i) = 1.0;
  }
  return a;
}

}  // namespace wsbm
