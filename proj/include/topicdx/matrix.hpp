#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace topicdx {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  void append_row(std::span<const double> values);

  std::vector<double> column(std::size_t c) const;
  std::vector<double> column(std::size_t c, std::span<const std::size_t> rows) const;

  /// Rows selected (with repetition) by `rows`, columns by `cols`.
  Matrix gather(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Matrix gather_rows(std::span<const std::size_t> rows) const;

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace topicdx
