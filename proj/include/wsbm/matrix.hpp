#ifndef WSBM_MATRIX_HPP
#define WSBM_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wsbm {

/// Dense row-major matrix of doubles. Small value type; no view semantics.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  const std::vector<double>& data() const { return data_; }

  /// Column j copied out as a vector.
  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// max_ij |A_ij - A_ji|; throws if A is not square.
double max_abs_asymmetry(const Matrix& a);

/// ||A - B||_F
double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace wsbm

#endif  // WSBM_MATRIX_HPP
