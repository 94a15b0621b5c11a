#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "topicdx/error.hpp"
#include "topicdx/folds.hpp"
#include "topicdx/model.hpp"
#include "topicdx/parallel.hpp"

using namespace topicdx;
using topicdx::testing::normal_matrix;
using topicdx::testing::random_scores;

namespace {

std::vector<double> linear_target(const Matrix& x, Rng& rng, double noise) {
  std::vector<double> y(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) y[r] = 5.0 + 3.0 * x(r, 0) - 2.0 * x(r, 1) + noise * rng.normal();
  return y;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("oversample balances every exact score within one of the largest group") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto scores = random_scores(rng, 1 + rng.index(80));
    const auto seed = rng.next();
    const auto rows = model::oversample(scores, seed);
    CHECK(rows == model::oversample(scores, seed));
    std::map<int, std::size_t> before, after;
    for (int s : scores) ++before[s];
    for (auto r : rows) ++after[scores[r]];
    std::size_t largest = 0;
    for (const auto& [s, c] : before) largest = std::max(largest, c);
    CHECK(after.size() == before.size());
    for (const auto& [s, c] : after) {
      CHECK(c + 1 >= largest);
      CHECK(c <= largest + 1);
    }
    // Every original row survives.
    std::vector<char> seen(scores.size(), 0);
    for (auto r : rows) seen[r] = 1;
    CHECK(std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; }));
  }
  CHECK(code_of([] { model::oversample(std::vector<int>{}, 1); }) == ErrorCode::EmptyInput);
}

TEST_CASE("SGD recovers a noiseless linear function") {
  Rng rng(42);
  const Matrix x = normal_matrix(rng, 200, 3);
  const auto y = linear_target(x, rng, 0.0);
  model::RegressorSpec spec;
  const auto m = model::train(spec, x, y);
  const auto pred = model::predict(m, x);
  CHECK(oracle::rmse(y, pred) < 0.05);
  const auto [w, b] = m.raw_coefficients();
  CHECK(w[0] == doctest::Approx(3.0).epsilon(0.02));
  CHECK(w[1] == doctest::Approx(-2.0).epsilon(0.02));
  CHECK(std::abs(w[2]) < 0.05);
  CHECK(b == doctest::Approx(5.0).epsilon(0.02));
}

TEST_CASE("linear SVR fits within a little more than its tube") {
  Rng rng(43);
  const Matrix x = normal_matrix(rng, 200, 2);
  const auto y = linear_target(x, rng, 0.0);
  model::RegressorSpec spec;
  spec.kind = model::Kind::SvrLinear;
  const auto m = model::train(spec, x, y);
  CHECK(oracle::mae(y, model::predict(m, x)) < 0.3);
}

TEST_CASE("forests fit a step function and single trees interpolate") {
  Rng rng(44);
  const Matrix x = normal_matrix(rng, 150, 3);
  std::vector<double> y(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) y[r] = x(r, 1) > 0.0 ? 10.0 : 0.0;
  model::RegressorSpec spec;
  spec.kind = model::Kind::RandomForest;
  spec.tree_count = 30;
  spec.seed = 5;
  const auto forest = model::train(spec, x, y);
  CHECK(forest.trees.size() == 30);
  Matrix probe(2, 3, 0.0);
  probe(0, 1) = 2.0;
  probe(1, 1) = -2.0;
  const auto p = model::predict(forest, probe);
  CHECK(p[0] > 8.0);
  CHECK(p[1] < 2.0);

  spec.tree_count = 1;
  spec.feature_fraction = 1.0;
  const auto tree = model::train(spec, x, y);
  CHECK(model::predict(tree, x) == y);

  spec.max_depth = 0;
  const auto stump = model::train(spec, x, y);
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  CHECK(model::predict(stump, probe)[0] == doctest::Approx(mean));
}

TEST_CASE("forest predictions average the trees") {
  Rng rng(45);
  const Matrix x = normal_matrix(rng, 60, 4);
  const auto y = linear_target(x, rng, 1.0);
  model::RegressorSpec spec;
  spec.kind = model::Kind::RandomForest;
  spec.tree_count = 7;
  const auto m = model::train(spec, x, y);
  const auto pred = model::predict(m, x);
  std::vector<double> sum(x.rows(), 0.0);
  for (std::size_t t = 0; t < 7; ++t) {
    const auto pt = model::predict_tree(m, t, x);
    for (std::size_t r = 0; r < x.rows(); ++r) sum[r] += pt[r];
  }
  for (std::size_t r = 0; r < x.rows(); ++r) CHECK(pred[r] == doctest::Approx(sum[r] / 7.0).epsilon(1e-12));
}

TEST_CASE("mean model and saved models") {
  const auto base = model::baseline_mean(std::vector<double>{1, 2, 6});
  CHECK(model::predict(base, Matrix(2, 0))[1] == 3.0);
  CHECK(code_of([] { model::baseline_mean(std::vector<double>{}); }) == ErrorCode::EmptyInput);

  Rng rng(46);
  const Matrix x = normal_matrix(rng, 80, 3);
  const auto y = linear_target(x, rng, 0.5);
  for (auto kind : {model::Kind::SgdSquared, model::Kind::SvrLinear, model::Kind::RandomForest}) {
    model::RegressorSpec spec;
    spec.kind = kind;
    spec.tree_count = 5;
    const auto m = model::train(spec, x, y, {10, 11, 12});
    const auto back = model::load_model(model::save_model(m));
    CHECK(back.feature_indices == std::vector<std::size_t>{10, 11, 12});
    CHECK(model::predict(back, x) == model::predict(m, x));
  }
}

TEST_CASE("train validation") {
  Rng rng(47);
  Matrix x = normal_matrix(rng, 10, 2);
  std::vector<double> y(10, 1.0);
  y[0] = 2.0;
  model::RegressorSpec spec;
  CHECK(code_of([&] { model::train(spec, x, std::vector<double>(9, 1.0)); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { model::train(spec, normal_matrix(rng, 1, 2), std::vector<double>{1.0}); }) ==
        ErrorCode::DegenerateInput);
  x(3, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { model::train(spec, x, y); }) == ErrorCode::NonFiniteFeature);
  CHECK(code_of([&] { model::predict(model::train(spec, normal_matrix(rng, 10, 2), y), Matrix(3, 5)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { spec.set("nope", "1"); }) == ErrorCode::InvalidSpec);
  spec.set("eta0", "0.2");
  CHECK(spec.eta0 == 0.2);
  CHECK(model::parse_kind("random_forest") == model::Kind::RandomForest);
}

TEST_CASE("grid search picks the lowest pooled RMSE and is thread-count independent") {
  Rng rng(48);
  const std::size_t n = 90;
  Matrix x = normal_matrix(rng, n, 12);
  std::vector<int> scores(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double v = 10.0 + 3.0 * x(r, 2) - 2.0 * x(r, 7) + rng.normal();
    scores[r] = static_cast<int>(std::clamp(std::round(v), 0.0, 24.0));
  }
  const std::vector<std::size_t> subset = {0, 2, 4, 7, 9};
  const auto plan = eval::stratified_folds(scores, 5, 3);
  model::RegressorSpec sgd, forest;
  forest.kind = model::Kind::RandomForest;
  forest.tree_count = 5;
  const std::vector<model::RegressorSpec> grid = {sgd, forest};
  const std::vector<std::size_t> ks = {1, 2, 3};
  const model::GridData data{x, scores, subset};

  set_jobs(1);
  const auto a = model::grid_search(grid, ks, data, plan, 77);
  set_jobs(3);
  const auto b = model::grid_search(grid, ks, data, plan, 77);
  set_jobs(0);
  REQUIRE(a.cells.size() == 6);
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    CHECK(a.cells[c].rmse == b.cells[c].rmse);
    CHECK(a.cells[c].predictions == b.cells[c].predictions);
    std::vector<double> y(scores.begin(), scores.end());
    CHECK(a.cells[c].rmse == doctest::Approx(oracle::rmse(y, a.cells[c].predictions)).epsilon(1e-12));
  }
  for (const auto& cell : a.cells) CHECK(a.cells[a.best].rmse <= cell.rmse);
  CHECK(a.best == b.best);
  CHECK(a.cells[a.best].k >= 2);
  const auto table = model::format_grid_table(a, grid);
  CHECK(table.rfind("model,k,rmse\n", 0) == 0);
}
