#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topicdx/corpus.hpp"
#include "topicdx/features.hpp"
#include "topicdx/folds.hpp"
#include "topicdx/model.hpp"
#include "topicdx/select.hpp"

namespace topicdx::eval {

/// Throw LengthMismatch / EmptyInput.
double rmse(std::span<const double> y, std::span<const double> y_hat);
double mae(std::span<const double> y, std::span<const double> y_hat);

struct FlaggedValue {
  double value = 0.0;
  bool degenerate = false;  // value is reported as 0
};

/// Pearson correlation; a constant side is flagged degenerate.
FlaggedValue pearson_cc(std::span<const double> y, std::span<const double> y_hat);

/// F1 of the depressed class after binarizing both sides at >= threshold.
/// Zero precision + recall is flagged degenerate.
FlaggedValue f1_at_threshold(std::span<const double> y, std::span<const double> y_hat,
                             double threshold = kDepressedThreshold);

struct Metrics {
  std::size_t n = 0;
  double rmse = 0.0;
  double mae = 0.0;
  FlaggedValue cc;
  FlaggedValue f1;
};

/// All four metrics; with `clamp`, predictions are first clipped to [0, 24].
Metrics compute_metrics(std::span<const double> y, std::span<const double> y_hat,
                        bool clamp = false);

enum class Protocol { Cv, Dev, Test };
std::string_view to_string(Protocol protocol);
Protocol parse_protocol(std::string_view text);

struct EvalConfig {
  std::vector<model::RegressorSpec> grid = {model::RegressorSpec{}};
  /// Candidate feature counts. Empty means 1..min(max_k, selectable).
  std::vector<std::size_t> k_range;
  select::SelectOptions selection;
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  bool clamp = false;
};

struct FoldMetrics {
  std::size_t fold = 0;
  Metrics metrics;
};

struct EvalReport {
  Protocol protocol = Protocol::Cv;
  std::string method;  // row label in the results table
  Metrics metrics;
  std::vector<FoldMetrics> folds;  // cv only
  model::RegressorSpec spec;
  std::size_t k = 0;
  select::Mode mode = select::Mode::TwoStep;
  std::uint64_t seed = 0;
  std::size_t feature_dim = 0;
  std::size_t cfs_size = 0;
  std::vector<std::size_t> features;  // chosen on the full training pool
  std::vector<std::string> feature_names;
  std::vector<std::string> session_ids;  // evaluated sessions, sorted
  std::vector<double> labels;
  std::vector<double> predictions;
  std::vector<std::string> notes;
  std::string grid_table;  // model,k,rmse rows when a grid was searched
};

/// Cross-validation on one pool of sessions. Feature-subset search runs once
/// on the whole pool; oversampling, F ranking and fitting happen per fold. The
/// best (model, k) cell of the grid is reported with pooled metrics. Rows are
/// canonicalized by session id first, so input order does not matter.
EvalReport run_cv(const features::FeatureTable& table, const EvalConfig& config);

struct FittedPipeline {
  model::RegressorSpec spec;  // with the fitting seed
  model::TrainedModel model;
  std::size_t cfs_size = 0;
  std::string grid_table;
  std::vector<std::string> notes;
};

/// Subset search, oversampling, F ranking and the final fit on all of
/// `train`. A grid or k range is resolved by CV on `train` first.
FittedPipeline fit_pipeline(const features::FeatureTable& train, const EvalConfig& config);

/// Fits the whole pipeline on `train` and scores `holdout` once. When the
/// config holds more than one grid cell, the cell is chosen by CV on `train`.
/// Throws OverlapError when a session appears in both tables; passing the
/// same table twice is allowed as a flagged sanity check.
EvalReport run_holdout(const features::FeatureTable& train, const features::FeatureTable& holdout,
                       const EvalConfig& config, Protocol protocol = Protocol::Dev);

/// Constant training-mean predictor under the CV folds / on a holdout set.
EvalReport baseline_mean_cv(const features::FeatureTable& table, const EvalConfig& config);
EvalReport baseline_mean_holdout(const features::FeatureTable& train,
                                 const features::FeatureTable& holdout, Protocol protocol);

/// run_cv on whole-interview (391-dimensional) vectors.
EvalReport baseline_context_unaware(const corpus::Dataset& dataset,
                                    const features::WordCategoryDictionary& categories,
                                    const EvalConfig& config);

std::string format_report(const EvalReport& report);

/// Aligned text table: one row per method, RMSE/MAE/CC/F1 groups with
/// CV/Dev/Test columns; '/' where a protocol was not run, '*' marks a
/// degenerate value reported as 0.
std::string format_results_table(const std::vector<EvalReport>& reports);

}  // namespace topicdx::eval
