#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicdx/kernels.hpp"
#include "topicdx/matrix.hpp"

namespace topicdx::select {

/// Sample Pearson correlation. Throws LengthMismatch, or DegenerateInput when
/// either side has zero variance or fewer than two values.
double pearson(std::span<const double> x, std::span<const double> y);

/// Feature-label correlations up front, feature-feature correlations on
/// demand. Rows of the feature-feature matrix are memoized; concurrent reads
/// are safe.
class CorrelationCache {
 public:
  /// Correlations over `rows` of x (all rows when empty) against y, which is
  /// indexed like `rows`.
  CorrelationCache(const Matrix& x, std::span<const double> y,
                   std::span<const std::size_t> rows = {});

  std::size_t feature_count() const noexcept { return z_.features; }
  std::size_t sample_count() const noexcept { return z_.samples; }
  bool degenerate(std::size_t j) const { return z_.degenerate[j] != 0; }
  bool labels_degenerate() const noexcept { return labels_degenerate_; }

  /// Correlation with the label; 0 for degenerate features.
  double label(std::size_t j) const { return label_[j]; }
  const std::vector<double>& label_correlations() const noexcept { return label_; }

  /// Correlation between two features; 1 on the diagonal for usable features,
  /// 0 whenever either side is degenerate.
  double pair(std::size_t i, std::size_t j) const;

  /// Correlations of feature i with every feature.
  const std::vector<double>& row(std::size_t i) const;

 private:
  kernels::StandardizedColumns z_;
  std::vector<double> label_;
  bool labels_degenerate_ = false;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::size_t, std::unique_ptr<std::vector<double>>> rows_;
};

/// Hall's merit k*mean|r_cf| / sqrt(k + k(k-1)*mean|r_ff|).
double cfs_merit(std::span<const std::size_t> subset, const CorrelationCache& cache);

struct CfsResult {
  std::vector<std::size_t> subset;  // in the order features were added
  double merit = 0.0;
};

constexpr std::size_t kDefaultPatience = 5;

/// Greedy forward search: add the merit-maximizing feature each step (ties to
/// the lower index), stop after `patience` consecutive expansions without a
/// strict merit gain, and return the best prefix seen.
CfsResult cfs_search(const CorrelationCache& cache, std::size_t patience = kDefaultPatience);
CfsResult cfs_search(const Matrix& x, std::span<const double> y,
                     std::size_t patience = kDefaultPatience);

/// Best subset by enumerating all non-empty subsets. Only for small feature
/// counts; used to measure the greedy gap.
CfsResult cfs_exhaustive(const CorrelationCache& cache);

/// Univariate regression F statistic (r^2/(1-r^2))(n-2). Degenerate x gives 0,
/// a perfect fit gives +inf.
double f_value(std::span<const double> x, std::span<const double> y);

/// F values for `cols` of x restricted to `rows` (all rows when empty).
std::vector<double> f_values(const Matrix& x, std::span<const double> y,
                             std::span<const std::size_t> cols,
                             std::span<const std::size_t> rows = {});

/// `subset` sorted by descending F (ties to the lower index).
std::vector<std::size_t> rank_by_f(const Matrix& x, std::span<const double> y,
                                   std::span<const std::size_t> subset,
                                   std::span<const std::size_t> rows = {});

/// First k of rank_by_f. Throws KTooLarge when k exceeds the subset.
std::vector<std::size_t> rank_and_truncate(const Matrix& x, std::span<const double> y,
                                           std::span<const std::size_t> subset, std::size_t k,
                                           std::span<const std::size_t> rows = {});

enum class Mode { TwoStep, Step2Only };
std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

constexpr std::size_t kDefaultMaxK = 46;

struct SelectOptions {
  Mode mode = Mode::TwoStep;
  std::size_t patience = kDefaultPatience;
  std::size_t max_k = kDefaultMaxK;
};

struct SelectionReport {
  Mode mode = Mode::TwoStep;
  std::vector<std::size_t> cfs_subset;  // every feature in step-2-only mode
  double cfs_merit = 0.0;
  std::vector<std::size_t> f_ranked;
  std::vector<double> f_values;  // aligned with f_ranked
  std::size_t chosen_k = 0;

  /// The first chosen_k ranked features.
  std::vector<std::size_t> chosen() const;
};

/// Step 1 (CFS, two-step mode only) then step 2 (F ranking) over the whole
/// sample set.
SelectionReport select_features(const Matrix& x, std::span<const double> y,
                                const SelectOptions& options);

/// JSON rendering; `names` (may be empty) labels feature indices.
std::string format_report(const SelectionReport& report, const std::vector<std::string>& names);

}  // namespace topicdx::select
