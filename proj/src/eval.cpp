#include "topicdx/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"
#include "topicdx/error.hpp"
#include "topicdx/rng.hpp"
#include "topicdx/stats.hpp"
#include "topicdx/textio.hpp"

namespace topicdx::eval {

namespace {

void check_pair(std::span<const double> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(y.size()) + " labels vs " +
                                               std::to_string(y_hat.size()) + " predictions");
  }
  if (y.empty()) throw Error(ErrorCode::EmptyInput, "no predictions to score");
}

}  // namespace

double rmse(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
  return std::sqrt(s / static_cast<double>(y.size()));
}

double mae(std::span<const double> y, std::span<const double> y_hat) {
  check_pair(y, y_hat);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - y_hat[i]);
  return s / static_cast<double>(y.size());
}

FlaggedValue pearson_cc(std::span<const double> y, std::span<const double> y_hat) {
  if (y.size() != y_hat.size()) throw Error(ErrorCode::LengthMismatch, "pearson_cc lengths differ");
  if (y.size() < 2) return {0.0, true};
  const auto r = stats::pearson_r(y, y_hat);
  if (!r) return {0.0, true};
  return {*r, false};
}

FlaggedValue f1_at_threshold(std::span<const double> y, std::span<const double> y_hat,
                             double threshold) {
  check_pair(y, y_hat);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const bool truth = y[i] >= threshold;
    const bool guess = y_hat[i] >= threshold;
    if (truth && guess) ++tp;
    if (!truth && guess) ++fp;
    if (truth && !guess) ++fn;
  }
  if (tp == 0) return {0.0, fp == 0 || fn == 0};
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return {2.0 * precision * recall / (precision + recall), false};
}

Metrics compute_metrics(std::span<const double> y, std::span<const double> y_hat, bool clamp) {
  std::vector<double> pred(y_hat.begin(), y_hat.end());
  if (clamp) {
    for (double& v : pred) v = std::clamp(v, 0.0, 24.0);
  }
  Metrics m;
  m.n = y.size();
  m.rmse = rmse(y, pred);
  m.mae = mae(y, pred);
  m.cc = pearson_cc(y, pred);
  m.f1 = f1_at_threshold(y, pred);
  return m;
}

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::Cv: return "cv";
    case Protocol::Dev: return "dev";
    case Protocol::Test: return "test";
  }
  return "cv";
}

Protocol parse_protocol(std::string_view text) {
  for (Protocol p : {Protocol::Cv, Protocol::Dev, Protocol::Test}) {
    if (to_string(p) == text) return p;
  }
  throw Error(ErrorCode::InvalidSpec, "unknown protocol '" + std::string(text) + "'");
}

// ---- protocols -----------------------------------------------------------------

namespace {

constexpr std::uint64_t kFoldStream = 0x666f6c64;
constexpr std::uint64_t kGridStream = 0x67726964;
constexpr std::uint64_t kFitStream = 0x666974;

struct Pool {
  std::vector<std::string> ids;
  std::vector<int> scores;
  std::vector<double> labels;
  Matrix x;
};

Pool canonical(const features::FeatureTable& table) {
  if (table.size() == 0) throw Error(ErrorCode::EmptyDataset, "feature table has no sessions");
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return table.session_ids[a] < table.session_ids[b]; });
  Pool pool;
  pool.x = table.values.gather_rows(order);
  for (auto i : order) {
    pool.ids.push_back(table.session_ids[i]);
    pool.scores.push_back(table.phq8[i]);
    pool.labels.push_back(table.phq8[i]);
  }
  return pool;
}

std::vector<std::size_t> select_subset(const Pool& pool, const select::SelectOptions& options,
                                       double* merit) {
  if (options.mode == select::Mode::Step2Only) {
    std::vector<std::size_t> all(pool.x.cols());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  auto cfs = select::cfs_search(pool.x, pool.labels, options.patience);
  if (merit) *merit = cfs.merit;
  std::sort(cfs.subset.begin(), cfs.subset.end());
  return cfs.subset;
}

std::vector<std::size_t> resolve_k_range(const EvalConfig& config, std::size_t selectable) {
  if (!config.k_range.empty()) return config.k_range;
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= std::min(config.selection.max_k, selectable); ++k) ks.push_back(k);
  return ks;
}

void describe_features(EvalReport& report, const features::FeatureTable& table) {
  for (auto i : report.features) {
    report.feature_names.push_back(i < table.names.size() ? table.names[i] : std::to_string(i));
  }
}

void base_fields(EvalReport& report, const EvalConfig& config, const features::FeatureTable& table) {
  report.mode = config.selection.mode;
  report.seed = config.seed;
  report.feature_dim = table.values.cols();
}

}  // namespace

EvalReport run_cv(const features::FeatureTable& table, const EvalConfig& config) {
  const Pool pool = canonical(table);
  const auto plan = stratified_folds(pool.scores, config.folds, derive_seed(config.seed, kFoldStream));

  EvalReport report;
  report.protocol = Protocol::Cv;
  base_fields(report, config, table);
  double merit = 0.0;
  const auto subset = select_subset(pool, config.selection, &merit);
  report.cfs_size = subset.size();
  const auto ks = resolve_k_range(config, subset.size());

  const model::GridData data{pool.x, pool.scores, subset};
  const auto grid = model::grid_search(config.grid, ks, data, plan, derive_seed(config.seed, kGridStream));
  const auto& best = grid.cells[grid.best];
  report.spec = config.grid[best.spec_index];
  report.k = best.k;
  report.metrics = compute_metrics(pool.labels, best.predictions, config.clamp);
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    std::vector<double> y, p;
    for (auto i : plan.folds[f]) {
      y.push_back(pool.labels[i]);
      p.push_back(best.predictions[i]);
    }
    report.folds.push_back({f, compute_metrics(y, p, config.clamp)});
  }
  report.features = select::rank_and_truncate(pool.x, pool.labels, subset, best.k);
  describe_features(report, table);
  report.session_ids = pool.ids;
  report.labels = pool.labels;
  report.predictions = best.predictions;
  if (grid.cells.size() > 1) report.grid_table = model::format_grid_table(grid, config.grid);

  report.notes.push_back("metrics pooled over all held-out predictions");
  if (config.selection.mode == select::Mode::TwoStep) {
    report.notes.push_back(
        "feature-subset search ran once on the whole pool before splitting; the estimate is "
        "over-optimistic");
  }
  if (grid.cells.size() > 1) report.notes.push_back("model and k chosen on the same folds");
  return report;
}

FittedPipeline fit_pipeline(const features::FeatureTable& train, const EvalConfig& config) {
  const Pool fit = canonical(train);
  FittedPipeline out;
  model::RegressorSpec spec = config.grid.front();
  const auto subset = select_subset(fit, config.selection, nullptr);
  out.cfs_size = subset.size();
  const auto ks = resolve_k_range(config, subset.size());
  std::size_t k = ks.back();
  if (config.grid.size() > 1 || ks.size() > 1) {
    const auto cv = run_cv(train, config);
    spec = cv.spec;
    k = cv.k;
    out.grid_table = cv.grid_table;
    out.notes.push_back("model and k chosen by cross-validation on the training set");
  }
  if (k > subset.size()) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " exceeds " + std::to_string(subset.size()) +
                                          " selectable features");
  }

  const auto balanced = model::oversample(fit.scores, derive_seed(config.seed, kFitStream, 0));
  std::vector<double> y;
  for (auto r : balanced) y.push_back(fit.labels[r]);
  const auto ranked = select::rank_by_f(fit.x, y, subset, balanced);
  const std::vector<std::size_t> chosen(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k));
  spec.seed = derive_seed(config.seed, kFitStream, 1);
  out.model = model::train(spec, fit.x.gather(balanced, chosen), y, chosen);
  out.spec = spec;
  return out;
}

EvalReport run_holdout(const features::FeatureTable& train, const features::FeatureTable& holdout,
                       const EvalConfig& config, Protocol protocol) {
  if (train.values.cols() != holdout.values.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "train and holdout vectors differ in dimension");
  }
  const Pool fit = canonical(train);
  const Pool test = canonical(holdout);
  const bool sanity = fit.ids == test.ids;
  if (!sanity) {
    const std::set<std::string> seen(fit.ids.begin(), fit.ids.end());
    for (const auto& id : test.ids) {
      if (seen.count(id)) throw Error(ErrorCode::OverlapError, "session " + id + " is in both sets");
    }
  }

  const FittedPipeline fitted = fit_pipeline(train, config);

  EvalReport report;
  report.protocol = protocol;
  base_fields(report, config, train);
  report.cfs_size = fitted.cfs_size;
  report.grid_table = fitted.grid_table;
  report.notes = fitted.notes;
  const auto& trained = fitted.model;
  const auto& chosen = trained.feature_indices;
  const std::size_t k = chosen.size();
  const model::RegressorSpec spec = fitted.spec;
  std::vector<std::size_t> all_rows(test.x.rows());
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  const auto pred = model::predict(trained, test.x.gather(all_rows, chosen));

  report.spec = config.grid.size() > 1 ? spec : config.grid.front();
  report.k = k;
  report.metrics = compute_metrics(test.labels, pred, config.clamp);
  report.features = chosen;
  describe_features(report, train);
  report.session_ids = test.ids;
  report.labels = test.labels;
  report.predictions = pred;
  if (sanity) report.notes.push_back("holdout equals the training set: training-fit metrics");
  return report;
}

EvalReport baseline_mean_cv(const features::FeatureTable& table, const EvalConfig& config) {
  const Pool pool = canonical(table);
  const auto plan = stratified_folds(pool.scores, config.folds, derive_seed(config.seed, kFoldStream));
  EvalReport report;
  report.protocol = Protocol::Cv;
  base_fields(report, config, table);
  report.spec.kind = model::Kind::Mean;
  report.predictions.assign(pool.labels.size(), 0.0);
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    std::vector<double> train_y;
    for (auto i : plan.train_positions(f)) train_y.push_back(pool.labels[i]);
    const auto m = model::baseline_mean(train_y);
    std::vector<double> y, p;
    for (auto i : plan.folds[f]) {
      report.predictions[i] = m.bias;
      y.push_back(pool.labels[i]);
      p.push_back(m.bias);
    }
    report.folds.push_back({f, compute_metrics(y, p, config.clamp)});
  }
  report.metrics = compute_metrics(pool.labels, report.predictions, config.clamp);
  report.session_ids = pool.ids;
  report.labels = pool.labels;
  report.notes.push_back("constant predictor at the training-fold mean");
  return report;
}

EvalReport baseline_mean_holdout(const features::FeatureTable& train,
                                 const features::FeatureTable& holdout, Protocol protocol) {
  const Pool fit = canonical(train);
  const Pool test = canonical(holdout);
  const auto m = model::baseline_mean(fit.labels);
  EvalReport report;
  report.protocol = protocol;
  report.spec.kind = model::Kind::Mean;
  report.feature_dim = train.values.cols();
  report.predictions.assign(test.labels.size(), m.bias);
  report.metrics = compute_metrics(test.labels, report.predictions);
  report.session_ids = test.ids;
  report.labels = test.labels;
  report.notes.push_back("constant predictor at the training mean");
  return report;
}

EvalReport baseline_context_unaware(const corpus::Dataset& dataset,
                                    const features::WordCategoryDictionary& categories,
                                    const EvalConfig& config) {
  const auto table = features::featurize_context_unaware(dataset, categories);
  auto report = run_cv(table, config);
  report.notes.push_back("whole-interview features, no topic segmentation");
  return report;
}

// ---- output --------------------------------------------------------------------

namespace {

nlohmann::ordered_json metrics_json(const Metrics& m) {
  return {{"n", m.n},
          {"rmse", m.rmse},
          {"mae", m.mae},
          {"cc", m.cc.value},
          {"cc_degenerate", m.cc.degenerate},
          {"f1", m.f1.value},
          {"f1_degenerate", m.f1.degenerate}};
}

}  // namespace

std::string format_report(const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["protocol"] = to_string(report.protocol);
  doc["method"] = report.method;
  doc["metrics"] = metrics_json(report.metrics);
  const auto& s = report.spec;
  doc["model"] = {{"kind", model::to_string(s.kind)}, {"label", s.label()}, {"eta0", s.eta0},
                  {"power_t", s.power_t}, {"epochs", s.epochs}, {"batch", s.batch}, {"l2", s.l2},
                  {"epsilon", s.epsilon}, {"tree_count", s.tree_count}, {"max_depth", s.max_depth},
                  {"min_leaf", s.min_leaf}, {"feature_fraction", s.feature_fraction}};
  doc["k"] = report.k;
  doc["selection_mode"] = select::to_string(report.mode);
  doc["seed"] = report.seed;
  doc["feature_dim"] = report.feature_dim;
  doc["cfs_size"] = report.cfs_size;
  auto& feats = doc["features"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.features.size(); ++i) {
    feats.push_back({{"index", report.features[i]},
                     {"name", i < report.feature_names.size() ? report.feature_names[i] : ""}});
  }
  auto& folds = doc["folds"] = nlohmann::ordered_json::array();
  for (const auto& f : report.folds) {
    auto entry = metrics_json(f.metrics);
    entry["fold"] = f.fold;
    folds.push_back(std::move(entry));
  }
  auto& preds = doc["predictions"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.session_ids.size(); ++i) {
    preds.push_back({{"session_id", report.session_ids[i]},
                     {"phq8", report.labels[i]},
                     {"predicted", report.predictions[i]}});
  }
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

std::string format_results_table(const std::vector<EvalReport>& reports) {
  std::vector<std::string> methods;
  std::map<std::pair<std::string, Protocol>, const EvalReport*> cells;
  for (const auto& r : reports) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    cells[{r.method, r.protocol}] = &r;
  }
  const Protocol protocols[] = {Protocol::Cv, Protocol::Dev, Protocol::Test};
  const char* metric_names[] = {"RMSE", "MAE", "CC", "F1"};

  auto value = [](const EvalReport& r, int metric) {
    char buf[32];
    switch (metric) {
      case 0: std::snprintf(buf, sizeof(buf), "%.2f", r.metrics.rmse); break;
      case 1: std::snprintf(buf, sizeof(buf), "%.2f", r.metrics.mae); break;
      case 2:
        std::snprintf(buf, sizeof(buf), "%.2f%s", r.metrics.cc.value, r.metrics.cc.degenerate ? "*" : "");
        break;
      default:
        std::snprintf(buf, sizeof(buf), "%.2f%s", r.metrics.f1.value, r.metrics.f1.degenerate ? "*" : "");
        break;
    }
    return std::string(buf);
  };

  std::size_t label_width = 6;
  for (const auto& m : methods) label_width = std::max(label_width, m.size());
  constexpr int kCell = 7;
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  std::string out = std::string(label_width, ' ');
  for (const char* name : metric_names) out += " |" + pad(name, 3 * kCell);
  out += '\n';
  out += std::string(label_width, ' ');
  for (int m = 0; m < 4; ++m) {
    out += " |";
    for (Protocol p : protocols) out += pad(std::string(to_string(p)), kCell);
  }
  out += '\n';
  for (const auto& method : methods) {
    std::string row = method + std::string(label_width - method.size(), ' ');
    for (int m = 0; m < 4; ++m) {
      row += " |";
      for (Protocol p : protocols) {
        const auto it = cells.find({method, p});
        row += pad(it == cells.end() ? "/" : value(*it->second, m), kCell);
      }
    }
    out += row + '\n';
  }
  out += "* degenerate value reported as 0\n";
  return out;
}

}  // namespace topicdx::eval
