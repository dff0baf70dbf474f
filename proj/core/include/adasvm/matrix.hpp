#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace adasvm {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const double* data() const { return data_.data(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Non-owning view of a row-major block. `cols <= stride`, so a column
// prefix of a wider matrix can be passed without copying.
struct MatrixView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t stride = 0;

  static MatrixView of(const Matrix& m) {
    return {m.data(), m.rows(), m.cols(), m.cols()};
  }

  MatrixView prefix_cols(std::size_t n_cols) const {
    MatrixView v = *this;
    v.cols = n_cols;
    return v;
  }

  std::span<const double> row(std::size_t r) const { return {data + r * stride, cols}; }
};

}  // namespace adasvm
