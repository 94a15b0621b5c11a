#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

namespace topicdx::stats {

inline double mean(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

inline bool is_constant(std::span<const double> x) {
  for (double v : x) {
    if (v != x.front()) return false;
  }
  return true;
}

/// Two-pass sample Pearson correlation, clamped to [-1, 1]. Empty optional when
/// either argument has zero variance.
inline std::optional<double> pearson_r(std::span<const double> x, std::span<const double> y) {
  if (is_constant(x) || is_constant(y)) return std::nullopt;
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace topicdx::stats
