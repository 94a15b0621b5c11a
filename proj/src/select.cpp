#include "topicdx/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "topicdx/error.hpp"
#include "topicdx/stats.hpp"

namespace topicdx::select {

namespace {

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

std::vector<std::size_t> all_features(std::size_t n) { return all_rows(n); }

void check_labels(std::span<const double> y) {
  if (y.size() < 3) {
    throw Error(ErrorCode::TooFewSamples, "need at least 3 samples, got " + std::to_string(y.size()));
  }
  if (stats::is_constant(y)) throw Error(ErrorCode::DegenerateLabels, "labels are constant");
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  if (x.size() < 2) throw Error(ErrorCode::DegenerateInput, "need at least 2 values");
  const auto r = stats::pearson_r(x, y);
  if (!r) throw Error(ErrorCode::DegenerateInput, "zero variance");
  return *r;
}

// ---- correlation cache -------------------------------------------------------

CorrelationCache::CorrelationCache(const Matrix& x, std::span<const double> y,
                                   std::span<const std::size_t> rows) {
  const auto own_rows = rows.empty() ? all_rows(x.rows()) : std::vector<std::size_t>();
  const std::span<const std::size_t> use_rows = rows.empty() ? std::span<const std::size_t>(own_rows) : rows;
  if (use_rows.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "labels do not match sample count");
  }
  const auto cols = all_features(x.cols());
  z_ = kernels::standardize_columns(x, use_rows, cols);
  bool degenerate = false;
  const auto target = kernels::standardize(y, &degenerate);
  labels_degenerate_ = degenerate;
  label_ = kernels::correlate_with(z_, target);
}

double CorrelationCache::pair(std::size_t i, std::size_t j) const {
  if (degenerate(i) || degenerate(j)) return 0.0;
  if (i == j) return 1.0;
  {
    std::lock_guard lock(mutex_);
    if (const auto it = rows_.find(i); it != rows_.end()) return (*it->second)[j];
    if (const auto it = rows_.find(j); it != rows_.end()) return (*it->second)[i];
  }
  const auto a = z_.column(i);
  const auto b = z_.column(j);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return std::clamp(s, -1.0, 1.0);
}

const std::vector<double>& CorrelationCache::row(std::size_t i) const {
  {
    std::lock_guard lock(mutex_);
    if (const auto it = rows_.find(i); it != rows_.end()) return *it->second;
  }
  auto computed = std::make_unique<std::vector<double>>(kernels::correlate_with(z_, z_.column(i)));
  if (!degenerate(i)) (*computed)[i] = 1.0;
  std::lock_guard lock(mutex_);
  const auto [it, inserted] = rows_.emplace(i, std::move(computed));
  return *it->second;
}

// ---- CFS -----------------------------------------------------------------------

double cfs_merit(std::span<const std::size_t> subset, const CorrelationCache& cache) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "CFS merit of an empty subset");
  double label_sum = 0.0;
  double pair_sum = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    label_sum += std::abs(cache.label(subset[a]));
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      pair_sum += std::abs(cache.pair(subset[a], subset[b]));
    }
  }
  const double k = static_cast<double>(subset.size());
  return label_sum / std::sqrt(k + 2.0 * pair_sum);
}

CfsResult cfs_search(const CorrelationCache& cache, std::size_t patience) {
  if (cache.labels_degenerate()) throw Error(ErrorCode::DegenerateLabels, "labels are constant");
  const std::size_t d = cache.feature_count();
  std::vector<double> label_abs(d);
  std::vector<char> eligible(d);
  bool any = false;
  for (std::size_t j = 0; j < d; ++j) {
    label_abs[j] = std::abs(cache.label(j));
    eligible[j] = cache.degenerate(j) ? 0 : 1;
    any = any || eligible[j];
  }
  if (!any) throw Error(ErrorCode::NoUsableFeatures, "every feature has zero variance");

  std::vector<double> pair_acc(d, 0.0);
  std::vector<std::size_t> order;
  double label_sum = 0.0;
  double pair_sum = 0.0;
  double best_merit = -std::numeric_limits<double>::infinity();
  std::size_t best_size = 0;
  std::size_t stale = 0;
  while (true) {
    const auto cand = kernels::best_candidate(label_abs, pair_acc, eligible, label_sum, pair_sum,
                                              order.size());
    if (!cand.valid()) break;
    const std::size_t c = cand.feature;
    order.push_back(c);
    eligible[c] = 0;
    label_sum += label_abs[c];
    pair_sum += pair_acc[c];
    const auto& row = cache.row(c);
    for (std::size_t j = 0; j < d; ++j) pair_acc[j] += std::abs(row[j]);
    if (cand.merit > best_merit) {
      best_merit = cand.merit;
      best_size = order.size();
      stale = 0;
    } else if (++stale >= patience) {
      break;
    }
  }
  order.resize(best_size);
  CfsResult result;
  result.merit = cfs_merit(order, cache);
  result.subset = std::move(order);
  return result;
}

CfsResult cfs_search(const Matrix& x, std::span<const double> y, std::size_t patience) {
  if (x.rows() < 2) throw Error(ErrorCode::TooFewSamples, "CFS needs at least 2 samples");
  return cfs_search(CorrelationCache(x, y), patience);
}

CfsResult cfs_exhaustive(const CorrelationCache& cache) {
  const std::size_t d = cache.feature_count();
  if (d == 0 || d > 24) throw Error(ErrorCode::InvalidSpec, "exhaustive CFS supports 1..24 features");
  std::vector<double> label_abs(d);
  std::vector<double> pair_abs(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    label_abs[i] = std::abs(cache.label(i));
    for (std::size_t j = 0; j < d; ++j) pair_abs[i * d + j] = std::abs(cache.pair(i, j));
  }
  CfsResult best;
  best.merit = -1.0;
  const std::uint64_t limit = std::uint64_t{1} << d;
  std::vector<std::size_t> members;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    members.clear();
    for (std::size_t i = 0; i < d; ++i) {
      if (mask >> i & 1U) members.push_back(i);
    }
    double label_sum = 0.0;
    double pair_sum = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      label_sum += label_abs[members[a]];
      for (std::size_t b = a + 1; b < members.size(); ++b) pair_sum += pair_abs[members[a] * d + members[b]];
    }
    const double merit = label_sum / std::sqrt(static_cast<double>(members.size()) + 2.0 * pair_sum);
    if (merit > best.merit) {
      best.merit = merit;
      best.subset = members;
    }
  }
  return best;
}

// ---- F ranking ---------------------------------------------------------------

double f_value(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  check_labels(y);
  const auto r = stats::pearson_r(x, y);
  if (!r) return 0.0;
  const double r2 = *r * *r;
  if (1.0 - r2 <= 0.0) return std::numeric_limits<double>::infinity();
  return r2 / (1.0 - r2) * static_cast<double>(x.size() - 2);
}

std::vector<double> f_values(const Matrix& x, std::span<const double> y,
                             std::span<const std::size_t> cols, std::span<const std::size_t> rows) {
  const auto own_rows = rows.empty() ? all_rows(x.rows()) : std::vector<std::size_t>();
  const std::span<const std::size_t> use_rows = rows.empty() ? std::span<const std::size_t>(own_rows) : rows;
  if (use_rows.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "labels do not match sample count");
  check_labels(y);
  return kernels::f_values(x, use_rows, cols, y);
}

std::vector<std::size_t> rank_by_f(const Matrix& x, std::span<const double> y,
                                   std::span<const std::size_t> subset,
                                   std::span<const std::size_t> rows) {
  const auto f = f_values(x, y, subset, rows);
  std::vector<std::size_t> order(subset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return subset[a] < subset[b];
  });
  std::vector<std::size_t> ranked(subset.size());
  for (std::size_t i = 0; i < order.size(); ++i) ranked[i] = subset[order[i]];
  return ranked;
}

std::vector<std::size_t> rank_and_truncate(const Matrix& x, std::span<const double> y,
                                           std::span<const std::size_t> subset, std::size_t k,
                                           std::span<const std::size_t> rows) {
  if (k > subset.size()) {
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds subset size " +
                                          std::to_string(subset.size()));
  }
  auto ranked = rank_by_f(x, y, subset, rows);
  ranked.resize(k);
  return ranked;
}

// ---- two-step selection --------------------------------------------------------

std::string_view to_string(Mode mode) {
  return mode == Mode::TwoStep ? "two_step" : "step2_only";
}

Mode parse_mode(std::string_view text) {
  if (text == "two_step") return Mode::TwoStep;
  if (text == "step2_only") return Mode::Step2Only;
  throw Error(ErrorCode::InvalidSpec, "unknown selection mode '" + std::string(text) + "'");
}

std::vector<std::size_t> SelectionReport::chosen() const {
  return {f_ranked.begin(), f_ranked.begin() + static_cast<std::ptrdiff_t>(chosen_k)};
}

SelectionReport select_features(const Matrix& x, std::span<const double> y,
                                const SelectOptions& options) {
  check_labels(y);
  SelectionReport report;
  report.mode = options.mode;
  if (options.mode == Mode::TwoStep) {
    const auto cfs = cfs_search(x, y, options.patience);
    report.cfs_subset = cfs.subset;
    report.cfs_merit = cfs.merit;
  } else {
    report.cfs_subset = all_features(x.cols());
  }
  auto sorted = report.cfs_subset;
  std::sort(sorted.begin(), sorted.end());
  report.f_ranked = rank_by_f(x, y, sorted);
  const auto f = f_values(x, y, report.f_ranked);
  report.f_values = f;
  report.chosen_k = std::min(options.max_k, report.f_ranked.size());
  return report;
}

std::string format_report(const SelectionReport& report, const std::vector<std::string>& names) {
  auto label = [&](std::size_t i) {
    return i < names.size() ? names[i] : std::to_string(i);
  };
  nlohmann::ordered_json doc;
  doc["mode"] = to_string(report.mode);
  doc["cfs_merit"] = report.cfs_merit;
  doc["cfs_size"] = report.cfs_subset.size();
  doc["chosen_k"] = report.chosen_k;
  auto& chosen = doc["chosen"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.chosen_k; ++i) {
    const double f = report.f_values[i];
    chosen.push_back({{"index", report.f_ranked[i]},
                      {"name", label(report.f_ranked[i])},
                      {"f_value", std::isfinite(f) ? nlohmann::ordered_json(f) : nlohmann::ordered_json("inf")}});
  }
  if (report.mode == Mode::TwoStep) {
    auto& cfs = doc["cfs_subset"] = nlohmann::ordered_json::array();
    for (auto i : report.cfs_subset) cfs.push_back({{"index", i}, {"name", label(i)}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace topicdx::select
