#ifndef WSBM_EMBEDDING_HPP
#define WSBM_EMBEDDING_HPP

#include <vector>

#include "wsbm/matrix.hpp"
#include "wsbm/weighted_graph.hpp"

namespace wsbm {

/// Target range of the rank transform: ranks scaled into [0,1] or [0,2].
enum class PtrScale { kUnit, kTwo };

/// Replaces each present edge weight by scale * rank / |E|, ranks ascending
/// with ties averaged over their span; absent edges map to 0. The output is
/// symmetric and hollow. Throws std::invalid_argument on an edgeless graph.
Matrix pass_to_ranks(const WeightedGraph& graph, PtrScale scale);

struct EmbeddingResult {
  Matrix positions;                 // n x d, rows are estimated positions
  std::vector<double> eigenvalues;  // the d retained eigenvalues, nonincreasing
};

struct AseOptions {
  /// Replace each diagonal entry by (row sum)/(n-1) before decomposing.
  bool augment_diagonal = false;
};

/// Adjacency spectral embedding: positions = U_d Lambda_d^{1/2} from the d
/// algebraically largest eigenpairs. Requires m symmetric within 1e-10 and
/// at least d strictly positive eigenvalues. Column signs are fixed so each
/// column of positions has nonnegative sum.
EmbeddingResult ase(const Matrix& m, int d, const AseOptions& options = {});

}  // namespace wsbm

#endif  // WSBM_EMBEDDING_HPP
