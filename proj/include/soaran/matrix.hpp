#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "soaran/error.hpp"

namespace soaran {

// Dense row-major |I| x |K| grid of reals. Row i is a radio element, column k
// an application; this is the shape of every per-cell quantity in the model.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw DimensionMismatch("Matrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t k) noexcept {
    assert(i < rows_ && k < cols_);
    return data_[i * cols_ + k];
  }
  double operator()(std::size_t i, std::size_t k) const noexcept {
    assert(i < rows_ && k < cols_);
    return data_[i * cols_ + k];
  }

  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> flat() noexcept { return data_; }
  std::span<const double> flat() const noexcept { return data_; }

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double row_sum(std::size_t i) const noexcept {
    double acc = 0.0;
    for (double v : row(i)) acc += v;
    return acc;
  }

  double col_sum(std::size_t k) const noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, k);
    return acc;
  }

  Matrix& operator*=(double a) noexcept {
    for (double& v : data_) v *= a;
    return *this;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Matrix operator*(Matrix m, double a) { return m *= a; }

}  // namespace soaran
