#pragma once

// Reference computations written independently of the library, in long
// double and without shared helpers.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "topicdx/matrix.hpp"

namespace topicdx::oracle {

inline long double mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return s / static_cast<long double>(v.size());
}

/// Textbook sample correlation; 0 when either side is constant.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double mx = mean(x), my = mean(y);
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

inline std::vector<double> column(const Matrix& x, std::size_t c) {
  std::vector<double> v(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) v[r] = x(r, c);
  return v;
}

/// Regression ANOVA: fit y = a + b x by least squares, then
/// F = (SS_regression / 1) / (SS_residual / (n - 2)).
inline double anova_f(const std::vector<double>& x, const std::vector<double>& y) {
  const long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const long double a = (sy - b * sx) / n;
  const long double ybar = sy / n;
  long double ss_reg = 0, ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double fit = a + b * x[i];
    ss_reg += (fit - ybar) * (fit - ybar);
    ss_res += (y[i] - fit) * (y[i] - fit);
  }
  return static_cast<double>(ss_reg / (ss_res / (n - 2)));
}

struct CfsOptimum {
  double merit = -1.0;
  std::uint64_t mask = 0;
};

/// Maximum of k*avg|r_cf| / sqrt(k + k(k-1)*avg|r_ff|) over all non-empty
/// subsets, correlations recomputed from the raw columns.
inline CfsOptimum exhaustive_cfs(const Matrix& x, const std::vector<double>& y) {
  const std::size_t d = x.cols();
  std::vector<double> rcf(d);
  std::vector<std::vector<double>> rff(d, std::vector<double>(d, 0.0));
  std::vector<std::vector<double>> cols;
  for (std::size_t j = 0; j < d; ++j) cols.push_back(column(x, j));
  for (std::size_t i = 0; i < d; ++i) {
    rcf[i] = std::abs(pearson(cols[i], y));
    for (std::size_t j = 0; j < d; ++j) rff[i][j] = std::abs(pearson(cols[i], cols[j]));
  }
  CfsOptimum best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
    long double cf = 0, ff = 0, k = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (!(mask >> i & 1U)) continue;
      ++k;
      cf += rcf[i];
      for (std::size_t j = i + 1; j < d; ++j) {
        if (mask >> j & 1U) ff += rff[i][j];
      }
    }
    const long double avg_cf = cf / k;
    const long double avg_ff = k > 1 ? ff / (k * (k - 1) / 2) : 0;
    const double merit = static_cast<double>(k * avg_cf / std::sqrt(k + k * (k - 1) * avg_ff));
    if (merit > best.merit) best = {merit, mask};
  }
  return best;
}

inline double rmse(const std::vector<double>& y, const std::vector<double>& p) {
  long double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - p[i]) * (y[i] - p[i]);
  return static_cast<double>(std::sqrt(s / static_cast<long double>(y.size())));
}

inline double mae(const std::vector<double>& y, const std::vector<double>& p) {
  long double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::fabs(static_cast<long double>(y[i]) - p[i]);
  return static_cast<double>(s / static_cast<long double>(y.size()));
}

/// F1 from explicit confusion counts; 0 when precision + recall is 0.
inline double f1(const std::vector<double>& y, const std::vector<double>& p, double threshold) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool truth = y[i] >= threshold;
    const bool guess = p[i] >= threshold;
    if (truth && guess) ++tp;
    if (!truth && guess) ++fp;
    if (truth && !guess) ++fn;
  }
  const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

}  // namespace topicdx::oracle
