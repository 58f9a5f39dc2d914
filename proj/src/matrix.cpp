#include "wsbm/matrix.hpp"

#include <cmath>

namespace wsbm {

double max_abs_asymmetry(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix is not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      worst = std::max(worst, std::fabs(a(i, j) - a(j, i)));
  return worst;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("shape mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double d = a(i, j) - b(i, j);
      sum += d * d;
    }
  return std::sqrt(sum);
}

}  // namespace wsbm
