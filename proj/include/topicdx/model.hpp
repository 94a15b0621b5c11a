#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topicdx/folds.hpp"
#include "topicdx/matrix.hpp"

namespace topicdx::model {

/// Row positions after balancing: each exact score group is repeated
/// floor(max/count) times and topped up with a seeded draw without
/// replacement, so every score ends within one of the largest group.
/// Groups appear in ascending score order. Throws EmptyInput.
std::vector<std::size_t> oversample(std::span<const int> scores, std::uint64_t seed);

struct Balanced {
  Matrix x;
  std::vector<double> y;
  std::vector<std::size_t> source_rows;
};
Balanced oversample(const Matrix& x, std::span<const int> scores, std::uint64_t seed);

enum class Kind { SgdSquared, SvrLinear, RandomForest, Mean };
std::string_view to_string(Kind kind);
Kind parse_kind(std::string_view text);

struct RegressorSpec {
  Kind kind = Kind::SgdSquared;
  // linear kinds
  double eta0 = 0.05;
  double power_t = 0.25;  // step at epoch e is eta0 / e^power_t
  std::size_t epochs = 200;
  std::size_t batch = 8;
  double l2 = 1e-4;
  double epsilon = 0.1;  // svr_linear only
  // random_forest
  std::size_t tree_count = 10;
  int max_depth = -1;  // -1 unbounded, 0 a single leaf
  std::size_t min_leaf = 1;
  double feature_fraction = 1.0 / 3.0;
  std::uint64_t seed = 0;

  /// Applies one `key=value` override; throws InvalidSpec on unknown keys.
  void set(std::string_view key, std::string_view value);
  /// Short human-readable label, e.g. "random_forest(trees=40)".
  std::string label() const;
};

/// The regression forest sizes searched by default.
const std::vector<std::size_t>& default_forest_sizes();

/// sgd_squared, svr_linear, then one random_forest per default size.
std::vector<RegressorSpec> default_grid();

struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

using Tree = std::vector<TreeNode>;  // node 0 is the root

struct TrainedModel {
  RegressorSpec spec;
  std::vector<std::size_t> feature_indices;  // columns of the full vector
  std::vector<double> mean;                  // standardization, per used feature
  std::vector<double> scale;
  std::vector<double> weights;  // linear kinds, standardized space
  double bias = 0.0;
  std::vector<Tree> trees;

  /// Linear weights and intercept in the original feature units.
  std::pair<std::vector<double>, double> raw_coefficients() const;
};

/// Fits on x (n x |feature_indices|). Throws DegenerateInput for n < 2,
/// LengthMismatch, NonFiniteFeature.
TrainedModel train(const RegressorSpec& spec, const Matrix& x, std::span<const double> y,
                   std::vector<std::size_t> feature_indices = {});

/// x must have one column per model feature. No clamping is applied.
std::vector<double> predict(const TrainedModel& model, const Matrix& x);

/// Predictions of a single tree of a forest model.
std::vector<double> predict_tree(const TrainedModel& model, std::size_t tree, const Matrix& x);

/// Constant predictor at the training mean. Throws EmptyInput.
TrainedModel baseline_mean(std::span<const double> y_train);

std::string save_model(const TrainedModel& model);
TrainedModel load_model(std::string_view json_text);

struct GridCell {
  std::size_t spec_index = 0;
  std::size_t k = 0;
  double rmse = 0.0;
  std::vector<double> fold_rmse;
  std::vector<double> predictions;  // pooled, indexed by sample position
};

struct GridResult {
  std::vector<GridCell> cells;  // spec-major, k ascending within a spec
  std::size_t best = 0;         // index into cells
};

struct GridData {
  const Matrix& x;              // all samples, full feature vectors
  std::span<const int> scores;  // labels, one per row of x
  std::span<const std::size_t> subset;  // candidate features for F ranking
};

/// Every (spec, k) cell is scored by pooled RMSE over the folds, each fold
/// running oversample -> F-rank on the balanced training rows -> truncate to
/// k -> train -> predict. Best cell: lowest RMSE, then fewer features, then
/// grid order. Task seeds derive from (seed, cell, fold).
GridResult grid_search(const std::vector<RegressorSpec>& grid, const std::vector<std::size_t>& k_range,
                       const GridData& data, const eval::FoldPlan& plan, std::uint64_t seed);

/// Delimited `model,k,rmse` table.
std::string format_grid_table(const GridResult& result, const std::vector<RegressorSpec>& grid);

}  // namespace topicdx::model
