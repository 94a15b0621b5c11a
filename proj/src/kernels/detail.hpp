#pragma once

// Per-element building blocks shared by the serial and OpenMP kernels, so the
// two differ only in how the outer loop is distributed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "topicdx/kernels.hpp"
#include "topicdx/stats.hpp"

namespace topicdx::kernels::detail {

inline bool standardize_into(std::span<const double> x, std::span<double> out) {
  if (stats::is_constant(x)) {
    std::fill(out.begin(), out.end(), 0.0);
    return true;
  }
  const double m = stats::mean(x);
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] - m;
    ss += out[i] * out[i];
  }
  if (!(ss > 0.0)) {
    std::fill(out.begin(), out.end(), 0.0);
    return true;
  }
  const double inv = 1.0 / std::sqrt(ss);
  for (double& v : out) v *= inv;
  return false;
}

inline double dot_clamped(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return std::clamp(s, -1.0, 1.0);
}

/// F = r^2 / (1 - r^2) * (n - 2); +inf for a perfect fit.
inline double f_from_r(double r, std::size_t n) {
  const double r2 = r * r;
  const double rest = 1.0 - r2;
  if (rest <= 0.0) return std::numeric_limits<double>::infinity();
  return r2 / rest * static_cast<double>(n - 2);
}

inline double column_f(const Matrix& x, std::span<const std::size_t> rows, std::size_t col,
                       std::span<const double> y, std::vector<double>& scratch) {
  scratch.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) scratch[i] = x(rows[i], col);
  const auto r = stats::pearson_r(scratch, y);
  return r ? f_from_r(*r, rows.size()) : 0.0;
}

inline bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid()) return a.valid();
  if (!a.valid()) return false;
  if (a.merit != b.merit) return a.merit > b.merit;
  return a.feature < b.feature;
}

}  // namespace topicdx::kernels::detail
