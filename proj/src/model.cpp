#include "topicdx/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"
#include "topicdx/error.hpp"
#include "topicdx/parallel.hpp"
#include "topicdx/rng.hpp"
#include "topicdx/select.hpp"
#include "topicdx/textio.hpp"

namespace topicdx::model {

// ---- oversampling --------------------------------------------------------------

std::vector<std::size_t> oversample(std::span<const int> scores, std::uint64_t seed) {
  if (scores.empty()) throw Error(ErrorCode::EmptyInput, "nothing to oversample");
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < scores.size(); ++i) groups[scores[i]].push_back(i);
  std::size_t largest = 0;
  for (const auto& [score, rows] : groups) largest = std::max(largest, rows.size());

  Rng rng(seed);
  std::vector<std::size_t> out;
  out.reserve(largest * groups.size());
  for (auto& [score, rows] : groups) {
    const std::size_t copies = largest / rows.size();
    const std::size_t rest = largest % rows.size();
    for (std::size_t c = 0; c < copies; ++c) out.insert(out.end(), rows.begin(), rows.end());
    if (rest > 0) {
      auto pool = rows;
      rng.shuffle(std::span<std::size_t>(pool));
      out.insert(out.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(rest));
    }
  }
  return out;
}

Balanced oversample(const Matrix& x, std::span<const int> scores, std::uint64_t seed) {
  if (x.rows() != scores.size()) throw Error(ErrorCode::LengthMismatch, "rows and scores differ");
  Balanced b;
  b.source_rows = oversample(scores, seed);
  b.x = x.gather_rows(b.source_rows);
  b.y.reserve(b.source_rows.size());
  for (auto r : b.source_rows) b.y.push_back(scores[r]);
  return b;
}

// ---- specs -------------------------------------------------------------------

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::SgdSquared: return "sgd_squared";
    case Kind::SvrLinear: return "svr_linear";
    case Kind::RandomForest: return "random_forest";
    case Kind::Mean: return "mean";
  }
  return "sgd_squared";
}

Kind parse_kind(std::string_view text) {
  for (Kind k : {Kind::SgdSquared, Kind::SvrLinear, Kind::RandomForest, Kind::Mean}) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorCode::InvalidSpec, "unknown model kind '" + std::string(text) + "'");
}

namespace {

double spec_number(std::string_view key, std::string_view value) {
  const auto v = textio::parse_double(value);
  if (!v || !std::isfinite(*v)) {
    throw Error(ErrorCode::InvalidSpec, "bad value '" + std::string(value) + "' for " + std::string(key));
  }
  return *v;
}

std::size_t spec_count(std::string_view key, std::string_view value) {
  const double v = spec_number(key, value);
  if (v < 0 || v != std::floor(v)) {
    throw Error(ErrorCode::InvalidSpec, std::string(key) + " must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

void RegressorSpec::set(std::string_view key, std::string_view value) {
  if (key == "eta0") eta0 = spec_number(key, value);
  else if (key == "power_t") power_t = spec_number(key, value);
  else if (key == "epochs") epochs = spec_count(key, value);
  else if (key == "batch") batch = std::max<std::size_t>(1, spec_count(key, value));
  else if (key == "l2") l2 = spec_number(key, value);
  else if (key == "epsilon") epsilon = spec_number(key, value);
  else if (key == "tree_count") tree_count = std::max<std::size_t>(1, spec_count(key, value));
  else if (key == "max_depth") max_depth = static_cast<int>(spec_number(key, value));
  else if (key == "min_leaf") min_leaf = std::max<std::size_t>(1, spec_count(key, value));
  else if (key == "feature_fraction") feature_fraction = spec_number(key, value);
  else if (key == "seed") seed = static_cast<std::uint64_t>(spec_count(key, value));
  else throw Error(ErrorCode::InvalidSpec, "unknown hyperparameter '" + std::string(key) + "'");
}

std::string RegressorSpec::label() const {
  std::string out(to_string(kind));
  if (kind == Kind::RandomForest) out += "(trees=" + std::to_string(tree_count) + ")";
  return out;
}

const std::vector<std::size_t>& default_forest_sizes() {
  static const std::vector<std::size_t> sizes = {1, 10, 20, 30, 40, 50, 100, 200};
  return sizes;
}

std::vector<RegressorSpec> default_grid() {
  std::vector<RegressorSpec> grid;
  grid.push_back(RegressorSpec{});
  RegressorSpec svr;
  svr.kind = Kind::SvrLinear;
  grid.push_back(svr);
  for (auto n : default_forest_sizes()) {
    RegressorSpec rf;
    rf.kind = Kind::RandomForest;
    rf.tree_count = n;
    grid.push_back(rf);
  }
  return grid;
}

// ---- linear models -------------------------------------------------------------

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Mini-batch descent with per-sample normalized steps: each sample's step is
// capped by eta / (1 + eta * (|x|^2 + 1)), which keeps the update stable
// regardless of feature count.
void fit_linear(const RegressorSpec& spec, const Matrix& z, std::span<const double> y,
                TrainedModel& model) {
  const std::size_t n = z.rows();
  const std::size_t d = z.cols();
  model.weights.assign(d, 0.0);
  model.bias = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = dot(z.row(i), z.row(i)) + 1.0;

  Rng rng(spec.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> grad(d);
  const std::size_t batch = std::max<std::size_t>(1, spec.batch);
  for (std::size_t epoch = 1; epoch <= spec.epochs; ++epoch) {
    const double eta = spec.eta0 / std::pow(static_cast<double>(epoch), spec.power_t);
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      std::fill(grad.begin(), grad.end(), 0.0);
      double grad_bias = 0.0;
      for (std::size_t p = start; p < end; ++p) {
        const std::size_t i = order[p];
        const auto row = z.row(i);
        const double residual = dot(model.weights, row) + model.bias - y[i];
        double step;
        if (spec.kind == Kind::SvrLinear) {
          const double excess = std::abs(residual) - spec.epsilon;
          if (excess <= 0.0) continue;
          step = std::min(eta, excess / norms[i]) * (residual > 0 ? 1.0 : -1.0);
        } else {
          step = eta / (1.0 + eta * norms[i]) * residual;
        }
        for (std::size_t j = 0; j < d; ++j) grad[j] += step * row[j];
        grad_bias += step;
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      const double shrink = 1.0 - eta * spec.l2;
      for (std::size_t j = 0; j < d; ++j) model.weights[j] = model.weights[j] * shrink - grad[j] * inv;
      model.bias -= grad_bias * inv;
    }
  }
}

// ---- regression trees ------------------------------------------------------------

struct TreeBuilder {
  const Matrix& z;
  std::span<const double> y;
  const RegressorSpec& spec;
  std::size_t mtry;
  Rng rng;
  Tree nodes;
  std::vector<std::size_t> features;
  std::vector<std::pair<double, double>> pairs;

  int leaf(std::span<const std::size_t> rows) {
    double s = 0.0;
    for (auto r : rows) s += y[r];
    TreeNode node;
    node.value = s / static_cast<double>(rows.size());
    nodes.push_back(node);
    return static_cast<int>(nodes.size() - 1);
  }

  int build(std::vector<std::size_t>& rows, int depth) {
    const std::size_t n = rows.size();
    const bool depth_left = spec.max_depth < 0 || depth < spec.max_depth;
    bool pure = true;
    for (auto r : rows) pure = pure && y[r] == y[rows.front()];
    if (!depth_left || pure || n < 2 * spec.min_leaf) return leaf(rows);

    double total = 0.0;
    for (auto r : rows) total += y[r];
    // Partial Fisher-Yates draw of mtry candidate features.
    for (std::size_t i = 0; i < mtry; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.index(features.size() - i));
      std::swap(features[i], features[j]);
    }
    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    const double base = total * total / static_cast<double>(n);
    for (std::size_t fi = 0; fi < mtry; ++fi) {
      const std::size_t f = features[fi];
      pairs.clear();
      for (auto r : rows) pairs.emplace_back(z(r, f), y[r]);
      std::sort(pairs.begin(), pairs.end());
      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_sum += pairs[i].second;
        const std::size_t nl = i + 1;
        const std::size_t nr = n - nl;
        if (nl < spec.min_leaf || nr < spec.min_leaf) continue;
        if (pairs[i].first == pairs[i + 1].first) continue;
        const double right_sum = total - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(nl) +
                            right_sum * right_sum / static_cast<double>(nr) - base;
        if (gain > best_gain + 1e-12 * std::abs(base)) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          double mid = pairs[i].first + (pairs[i + 1].first - pairs[i].first) / 2.0;
          if (!(mid < pairs[i + 1].first)) mid = pairs[i].first;
          best_threshold = mid;
        }
      }
    }
    if (best_feature < 0) return leaf(rows);

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (auto r : rows) {
      (z(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(TreeNode{best_feature, best_threshold, -1, -1, 0.0});
    const int l = build(left_rows, depth + 1);
    const int r = build(right_rows, depth + 1);
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }
};

void fit_forest(const RegressorSpec& spec, const Matrix& z, std::span<const double> y,
                TrainedModel& model) {
  const std::size_t n = z.rows();
  const std::size_t d = z.cols();
  const std::size_t trees = std::max<std::size_t>(1, spec.tree_count);
  const double fraction = spec.feature_fraction > 0.0 ? spec.feature_fraction : 1.0 / 3.0;
  const std::size_t mtry =
      d == 0 ? 0 : std::clamp<std::size_t>(static_cast<std::size_t>(static_cast<double>(d) * fraction), 1, d);
  model.trees.assign(trees, Tree{});
  for (std::size_t t = 0; t < trees; ++t) {
    TreeBuilder b{z, y, spec, mtry, Rng(derive_seed(spec.seed, t)), {}, {}, {}};
    b.features.resize(d);
    std::iota(b.features.begin(), b.features.end(), std::size_t{0});
    std::vector<std::size_t> rows(n);
    if (trees == 1) {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    } else {
      for (auto& r : rows) r = static_cast<std::size_t>(b.rng.index(n));
      std::sort(rows.begin(), rows.end());
    }
    if (d == 0) {
      b.leaf(rows);
    } else {
      b.build(rows, 0);
    }
    model.trees[t] = std::move(b.nodes);
  }
}

double tree_value(const Tree& tree, std::span<const double> z) {
  std::size_t node = 0;
  while (tree[node].feature >= 0) {
    const auto& nd = tree[node];
    node = static_cast<std::size_t>(z[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right);
  }
  return tree[node].value;
}

Matrix standardized(const TrainedModel& model, const Matrix& x) {
  Matrix z(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) z(i, j) = (x(i, j) - model.mean[j]) / model.scale[j];
  }
  return z;
}

}  // namespace

std::pair<std::vector<double>, double> TrainedModel::raw_coefficients() const {
  std::vector<double> w(weights.size());
  double b = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    w[j] = weights[j] / scale[j];
    b -= w[j] * mean[j];
  }
  return {w, b};
}

TrainedModel train(const RegressorSpec& spec, const Matrix& x, std::span<const double> y,
                   std::vector<std::size_t> feature_indices) {
  if (x.rows() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(x.rows()) + " rows vs " +
                                               std::to_string(y.size()) + " labels");
  }
  if (x.rows() < 2) throw Error(ErrorCode::DegenerateInput, "training needs at least 2 samples");
  if (feature_indices.empty()) {
    feature_indices.resize(x.cols());
    std::iota(feature_indices.begin(), feature_indices.end(), std::size_t{0});
  }
  if (feature_indices.size() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "feature index count differs from column count");
  }
  TrainedModel model;
  model.spec = spec;
  model.feature_indices = std::move(feature_indices);
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  model.mean.assign(d, 0.0);
  model.scale.assign(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x(i, j);
    const double m = s / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (x(i, j) - m) * (x(i, j) - m);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    model.mean[j] = m;
    model.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  const Matrix z = standardized(model, x);
  for (double v : z.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteFeature, "non-finite value after standardization");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteFeature, "non-finite label");
  }
  switch (spec.kind) {
    case Kind::SgdSquared:
    case Kind::SvrLinear: fit_linear(spec, z, y, model); break;
    case Kind::RandomForest: fit_forest(spec, z, y, model); break;
    case Kind::Mean:
      model.bias = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
      model.weights.assign(d, 0.0);
      break;
  }
  return model;
}

std::vector<double> predict(const TrainedModel& model, const Matrix& x) {
  if (x.rows() == 0) return {};
  if (x.cols() != model.feature_indices.size()) {
    throw Error(ErrorCode::DimensionMismatch, "model uses " + std::to_string(model.feature_indices.size()) +
                                                  " features, input has " + std::to_string(x.cols()));
  }
  const Matrix z = standardized(model, x);
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (model.spec.kind == Kind::RandomForest) {
      double s = 0.0;
      for (const auto& tree : model.trees) s += tree_value(tree, z.row(i));
      out[i] = s / static_cast<double>(model.trees.size());
    } else {
      out[i] = dot(model.weights, z.row(i)) + model.bias;
    }
  }
  return out;
}

std::vector<double> predict_tree(const TrainedModel& model, std::size_t tree, const Matrix& x) {
  if (x.cols() != model.feature_indices.size()) {
    throw Error(ErrorCode::DimensionMismatch, "column count differs from model features");
  }
  const Matrix z = standardized(model, x);
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = tree_value(model.trees.at(tree), z.row(i));
  return out;
}

TrainedModel baseline_mean(std::span<const double> y_train) {
  if (y_train.empty()) throw Error(ErrorCode::EmptyInput, "no training labels");
  TrainedModel model;
  model.spec.kind = Kind::Mean;
  model.bias = std::accumulate(y_train.begin(), y_train.end(), 0.0) / static_cast<double>(y_train.size());
  return model;
}

// ---- persistence ---------------------------------------------------------------

std::string save_model(const TrainedModel& model) {
  const auto& s = model.spec;
  nlohmann::ordered_json doc;
  doc["spec"] = {{"kind", to_string(s.kind)}, {"eta0", s.eta0},       {"power_t", s.power_t},
                 {"epochs", s.epochs},        {"batch", s.batch},     {"l2", s.l2},
                 {"epsilon", s.epsilon},      {"tree_count", s.tree_count},
                 {"max_depth", s.max_depth},  {"min_leaf", s.min_leaf},
                 {"feature_fraction", s.feature_fraction}, {"seed", s.seed}};
  doc["feature_indices"] = model.feature_indices;
  doc["mean"] = model.mean;
  doc["scale"] = model.scale;
  doc["weights"] = model.weights;
  doc["bias"] = model.bias;
  auto& trees = doc["trees"] = nlohmann::ordered_json::array();
  for (const auto& tree : model.trees) {
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : tree) nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    trees.push_back(std::move(nodes));
  }
  return doc.dump(1) + "\n";
}

TrainedModel load_model(std::string_view json_text) {
  try {
    const auto doc = nlohmann::json::parse(json_text);
    TrainedModel model;
    const auto& s = doc.at("spec");
    model.spec.kind = parse_kind(s.at("kind").get<std::string>());
    model.spec.eta0 = s.at("eta0").get<double>();
    model.spec.power_t = s.at("power_t").get<double>();
    model.spec.epochs = s.at("epochs").get<std::size_t>();
    model.spec.batch = s.at("batch").get<std::size_t>();
    model.spec.l2 = s.at("l2").get<double>();
    model.spec.epsilon = s.at("epsilon").get<double>();
    model.spec.tree_count = s.at("tree_count").get<std::size_t>();
    model.spec.max_depth = s.at("max_depth").get<int>();
    model.spec.min_leaf = s.at("min_leaf").get<std::size_t>();
    model.spec.feature_fraction = s.at("feature_fraction").get<double>();
    model.spec.seed = s.at("seed").get<std::uint64_t>();
    model.feature_indices = doc.at("feature_indices").get<std::vector<std::size_t>>();
    model.mean = doc.at("mean").get<std::vector<double>>();
    model.scale = doc.at("scale").get<std::vector<double>>();
    model.weights = doc.at("weights").get<std::vector<double>>();
    model.bias = doc.at("bias").get<double>();
    for (const auto& t : doc.at("trees")) {
      Tree tree;
      for (const auto& n : t) {
        tree.push_back(TreeNode{n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                                n.at(3).get<int>(), n.at(4).get<double>()});
      }
      model.trees.push_back(std::move(tree));
    }
    const std::size_t d = model.feature_indices.size();
    if (model.mean.size() != d || model.scale.size() != d) {
      throw Error(ErrorCode::BadFormat, "model standardization does not match its features");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadFormat, std::string("model file: ") + e.what());
  }
}

// ---- grid search ---------------------------------------------------------------

namespace {

struct FoldWork {
  std::vector<std::size_t> train_rows;  // balanced, positions in the data
  std::vector<double> train_y;
  std::vector<std::size_t> ranked;      // subset by descending F on train_rows
};

double pooled_rmse(std::span<const double> pred, std::span<const int> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - y[i];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(pred.size()));
}

}  // namespace

GridResult grid_search(const std::vector<RegressorSpec>& grid, const std::vector<std::size_t>& k_range,
                       const GridData& data, const eval::FoldPlan& plan, std::uint64_t seed) {
  if (grid.empty() || k_range.empty()) throw Error(ErrorCode::InvalidSpec, "empty grid or k range");
  const std::size_t n = data.x.rows();
  if (data.scores.size() != n || plan.sample_count() != n) {
    throw Error(ErrorCode::LengthMismatch, "fold plan, labels and samples disagree");
  }
  for (auto k : k_range) {
    if (k == 0 || k > data.subset.size()) {
      throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " outside 1.." +
                                            std::to_string(data.subset.size()));
    }
  }
  const std::size_t folds = plan.folds.size();

  // Balancing and F ranking depend only on the fold, so they are shared by
  // every cell.
  std::vector<FoldWork> work(folds);
  parallel_for(folds, [&](std::size_t f) {
    try {
      const auto train_pos = plan.train_positions(f);
      std::vector<int> train_scores;
      for (auto p : train_pos) train_scores.push_back(data.scores[p]);
      const auto balanced = oversample(train_scores, derive_seed(seed, 0x6f76, f));
      auto& w = work[f];
      for (auto b : balanced) {
        w.train_rows.push_back(train_pos[b]);
        w.train_y.push_back(data.scores[train_pos[b]]);
      }
      w.ranked = select::rank_by_f(data.x, w.train_y, data.subset, w.train_rows);
    } catch (const Error& e) {
      throw Error(e.code(), "fold " + std::to_string(f) + ": " + e.what());
    }
  });

  GridResult result;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    for (auto k : k_range) {
      GridCell cell;
      cell.spec_index = s;
      cell.k = k;
      cell.predictions.assign(n, 0.0);
      cell.fold_rmse.assign(folds, 0.0);
      result.cells.push_back(std::move(cell));
    }
  }

  const std::size_t tasks = result.cells.size() * folds;
  parallel_for(tasks, [&](std::size_t t) {
    const std::size_t c = t / folds;
    const std::size_t f = t % folds;
    auto& cell = result.cells[c];
    try {
      const auto& w = work[f];
      const std::vector<std::size_t> features(w.ranked.begin(),
                                              w.ranked.begin() + static_cast<std::ptrdiff_t>(cell.k));
      RegressorSpec spec = grid[cell.spec_index];
      spec.seed = derive_seed(seed, c, f);
      const auto model = train(spec, data.x.gather(w.train_rows, features), w.train_y, features);
      const auto& held = plan.folds[f];
      const auto pred = predict(model, data.x.gather(held, features));
      double s = 0.0;
      for (std::size_t i = 0; i < held.size(); ++i) {
        cell.predictions[held[i]] = pred[i];
        const double e = pred[i] - data.scores[held[i]];
        s += e * e;
      }
      cell.fold_rmse[f] = held.empty() ? 0.0 : std::sqrt(s / static_cast<double>(held.size()));
    } catch (const Error& e) {
      throw Error(e.code(), grid[cell.spec_index].label() + " k=" + std::to_string(cell.k) +
                                " fold " + std::to_string(f) + ": " + e.what());
    }
  });

  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    auto& cell = result.cells[c];
    cell.rmse = pooled_rmse(cell.predictions, data.scores);
    const auto& best = result.cells[result.best];
    if (c == 0 || cell.rmse < best.rmse || (cell.rmse == best.rmse && cell.k < best.k)) {
      result.best = c;
    }
  }
  return result;
}

std::string format_grid_table(const GridResult& result, const std::vector<RegressorSpec>& grid) {
  std::string out = "model,k,rmse\n";
  for (const auto& cell : result.cells) {
    out += grid[cell.spec_index].label();
    out += ',';
    out += std::to_string(cell.k);
    out += ',';
    textio::append_double(out, cell.rmse);
    out += '\n';
  }
  return out;
}

}  // namespace topicdx::model
