#include "wsbm/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wsbm/sym_eigen.hpp"

namespace wsbm {

Matrix pass_to_ranks(const WeightedGraph& graph, PtrScale scale) {
  const auto& edges = graph.edges();
  const std::size_t m = edges.size();
  if (m == 0) throw std::invalid_argument("pass_to_ranks needs at least one edge");

  // Sort edge indices by weight; ties get the average of their rank span.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges[a].weight < edges[b].weight;
  });

  std::vector<double> rank(m);
  std::size_t lo = 0;
  while (lo < m) {
    std::size_t hi = lo;
    while (hi < m && edges[order[hi]].weight == edges[order[lo]].weight) ++hi;
    const double avg = static_cast<double>(lo + 1 + hi) / 2.0;  // ranks lo+1 .. hi
    for (std::size_t k = lo; k < hi; ++k) rank[order[k]] = avg;
    lo = hi;
  }

  const double factor = scale == PtrScale::kTwo ? 2.0 : 1.0;
  const auto n = static_cast<std::size_t>(graph.node_count());
  Matrix out(n, n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double value = factor * rank[k] / static_cast<double>(m);
    out(edges[k].i, edges[k].j) = value;
    out(edges[k].j, edges[k].i) = value;
  }
  return out;
}

EmbeddingResult ase(const Matrix& m, int d, const AseOptions& options) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("ase needs a square matrix");
  if (d < 1 || static_cast<std::size_t>(d) > n)
    throw std::invalid_argument("embedding dimension out of range");
  if (max_abs_asymmetry(m) > 1e-10)
    throw std::invalid_argument("ase needs a symmetric matrix");

  Matrix work = m;
  if (options.augment_diagonal) {
    for (std::size_t i = 0; i < n; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) row_sum += work(i, j);
      work(i, i) = n > 1 ? row_sum / static_cast<double>(n - 1) : 0.0;
    }
  }

  const SymEigen eig = sym_eigen_decompose(work);  // values ascending
  double spectral_radius = 0.0;
  for (double v : eig.values) spectral_radius = std::max(spectral_radius, std::fabs(v));
  const double positive_floor = spectral_radius * 1e-12;

  EmbeddingResult result;
  result.positions = Matrix(n, d, 0.0);
  result.eigenvalues.resize(d);
  for (int k = 0; k < d; ++k) {
    const std::size_t src = n - 1 - k;  // k-th largest by signed value
    const double lambda = eig.values[src];
    if (!(lambda > positive_floor))
      throw std::invalid_argument("fewer than d positive eigenvalues");
    result.eigenvalues[k] = lambda;
    const double root = std::sqrt(lambda);
    double col_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) col_sum += eig.vectors(i, src);
    const double sign = col_sum < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      result.positions(i, k) = sign * root * eig.vectors(i, src);
  }
  return result;
}

}  // namespace wsbm
