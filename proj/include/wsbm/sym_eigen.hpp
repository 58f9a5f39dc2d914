#ifndef WSBM_SYM_EIGEN_HPP
#define WSBM_SYM_EIGEN_HPP

#include <vector>

#include "wsbm/matrix.hpp"

namespace wsbm {

/// Full eigendecomposition of a symmetric matrix: values ascending,
/// vectors(i, k) = i-th component of the k-th eigenvector (orthonormal).
struct SymEigen {
  std::vector<double> values;
  Matrix vectors;
};

/// Householder tridiagonalization followed by implicit-shift QL.
/// Throws std::runtime_error if QL fails to converge.
SymEigen sym_eigen_decompose(const Matrix& a);

}  // namespace wsbm

#endif  // WSBM_SYM_EIGEN_HPP
