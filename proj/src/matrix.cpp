#include "topicdx/matrix.hpp"

#include <algorithm>

#include "topicdx/error.hpp"

namespace topicdx {

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "row of width " + std::to_string(values.size()) +
                                                  " appended to matrix of width " +
                                                  std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
  return out;
}

std::vector<double> Matrix::column(std::size_t c, std::span<const std::size_t> rows) const {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = data_[rows[i] * cols_ + c];
  return out;
}

Matrix Matrix::gather(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double* src = data_.data() + rows[i] * cols_;
    double* dst = out.data_.data() + i * cols.size();
    for (std::size_t j = 0; j < cols.size(); ++j) dst[j] = src[cols[j]];
  }
  return out;
}

Matrix Matrix::gather_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(data_.data() + rows[i] * cols_, cols_, out.data_.data() + i * cols_);
  }
  return out;
}

}  // namespace topicdx
