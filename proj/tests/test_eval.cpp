#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "topicdx/error.hpp"
#include "topicdx/eval.hpp"

using namespace topicdx;
using topicdx::testing::normal_matrix;
using topicdx::testing::normal_vector;

namespace {

features::FeatureTable make_table(Rng& rng, std::size_t n, std::size_t d, const std::string& prefix) {
  features::FeatureTable t;
  t.values = normal_matrix(rng, n, d);
  for (std::size_t j = 0; j < d; ++j) t.names.push_back("f" + std::to_string(j));
  for (std::size_t r = 0; r < n; ++r) {
    const double v = 9.0 + 3.0 * t.values(r, 1) + 2.0 * t.values(r, 4) + 0.7 * rng.normal();
    t.phq8.push_back(static_cast<int>(std::clamp(std::round(v), 0.0, 24.0)));
    t.gender.push_back(static_cast<int>(r % 2));
    t.split.push_back(corpus::Split::Train);
    char id[32];
    std::snprintf(id, sizeof(id), "%s%03zu", prefix.c_str(), r);
    t.session_ids.push_back(id);
  }
  return t;
}

features::FeatureTable permuted(const features::FeatureTable& t, Rng& rng) {
  std::vector<std::size_t> order(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  features::FeatureTable out;
  out.names = t.names;
  out.values = t.values.gather_rows(order);
  for (auto i : order) {
    out.session_ids.push_back(t.session_ids[i]);
    out.phq8.push_back(t.phq8[i]);
    out.gender.push_back(t.gender[i]);
    out.split.push_back(t.split[i]);
  }
  return out;
}

eval::EvalConfig small_config() {
  eval::EvalConfig c;
  c.folds = 5;
  c.seed = 19;
  return c;
}

}  // namespace

TEST_CASE("metrics match brute-force references") {
  Rng rng(51);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 2 + rng.index(50);
    std::vector<double> y(n), p(n);
    for (std::size_t k = 0; k < n; ++k) {
      y[k] = static_cast<double>(rng.index(25));
      p[k] = rng.uniform(-2.0, 26.0);
    }
    const double r = eval::rmse(y, p);
    const double a = eval::mae(y, p);
    CHECK(r == doctest::Approx(oracle::rmse(y, p)).epsilon(1e-12));
    CHECK(a == doctest::Approx(oracle::mae(y, p)).epsilon(1e-12));
    CHECK(a <= r + 1e-15);
    const auto cc = eval::pearson_cc(y, p);
    if (!cc.degenerate) CHECK(cc.value == doctest::Approx(oracle::pearson(y, p)).epsilon(1e-12));
    CHECK(eval::f1_at_threshold(y, p).value == doctest::Approx(oracle::f1(y, p, 10.0)).epsilon(1e-12));
  }
}

TEST_CASE("degenerate metric cases are flagged") {
  const std::vector<double> y = {1, 12, 15, 3};
  const std::vector<double> flat(4, 5.0);
  const auto cc = eval::pearson_cc(y, flat);
  CHECK(cc.degenerate);
  CHECK(cc.value == 0.0);
  const auto f1 = eval::f1_at_threshold(y, flat);
  CHECK(f1.degenerate);
  CHECK(f1.value == 0.0);
  CHECK(eval::f1_at_threshold(y, y).value == 1.0);
  CHECK_THROWS_AS(eval::rmse(y, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(eval::mae(std::vector<double>{}, std::vector<double>{}), Error);
  const auto clamped = eval::compute_metrics(std::vector<double>{0, 24}, std::vector<double>{-5, 30}, true);
  CHECK(clamped.rmse == 0.0);
}

TEST_CASE("stratified folds partition the samples with balanced classes") {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng.index(150);
    const auto scores = testing::random_scores(rng, n);
    const std::size_t k = 2 + rng.index(9);
    const auto plan = eval::stratified_folds(scores, k, rng.next());
    REQUIRE(plan.folds.size() == k);
    std::vector<int> seen(n, 0);
    std::size_t lo_size = n, hi_size = 0, lo_pos = n, hi_pos = 0;
    for (const auto& fold : plan.folds) {
      CHECK(std::is_sorted(fold.begin(), fold.end()));
      std::size_t pos = 0;
      for (auto i : fold) {
        ++seen[i];
        pos += scores[i] >= eval::kDepressedThreshold;
      }
      lo_size = std::min(lo_size, fold.size());
      hi_size = std::max(hi_size, fold.size());
      lo_pos = std::min(lo_pos, pos);
      hi_pos = std::max(hi_pos, pos);
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    CHECK(hi_size - lo_size <= 1);
    CHECK(hi_pos - lo_pos <= 1);
    const auto train = plan.train_positions(0);
    CHECK(train.size() + plan.folds[0].size() == n);
  }
  CHECK_THROWS_AS(eval::stratified_folds(std::vector<int>{1, 2}, 3, 1), Error);
}

TEST_CASE("cross-validation ignores input row order") {
  Rng rng(53);
  const auto table = make_table(rng, 60, 10, "s");
  const auto shuffled = permuted(table, rng);
  const auto a = eval::run_cv(table, small_config());
  const auto b = eval::run_cv(shuffled, small_config());
  CHECK(eval::format_report(a) == eval::format_report(b));
  CHECK(a.metrics.n == 60);
  CHECK(a.folds.size() == 5);
  CHECK(std::is_sorted(a.session_ids.begin(), a.session_ids.end()));
  CHECK(a.metrics.rmse == doctest::Approx(oracle::rmse(a.labels, a.predictions)).epsilon(1e-12));

  const auto mean = eval::baseline_mean_cv(table, small_config());
  CHECK(a.metrics.rmse < mean.metrics.rmse);
}

TEST_CASE("holdout protocol") {
  Rng rng(54);
  const auto train = make_table(rng, 50, 8, "a");
  const auto test = make_table(rng, 20, 8, "b");
  auto config = small_config();
  config.k_range = {2};
  const auto r = eval::run_holdout(train, test, config, eval::Protocol::Dev);
  CHECK(r.protocol == eval::Protocol::Dev);
  CHECK(r.metrics.n == 20);
  CHECK(r.features.size() == 2);

  const auto fitted = eval::fit_pipeline(train, config);
  CHECK(fitted.model.feature_indices == r.features);

  const auto same = eval::run_holdout(train, train, config);
  CHECK(std::find(same.notes.begin(), same.notes.end(),
                  "holdout equals the training set: training-fit metrics") != same.notes.end());
  auto overlap = test;
  overlap.session_ids[3] = train.session_ids[0];
  CHECK_THROWS_AS(eval::run_holdout(train, overlap, config), Error);
  auto narrow = test;
  narrow.values = Matrix(20, 7);
  CHECK_THROWS_AS(eval::run_holdout(train, narrow, config), Error);
}

TEST_CASE("results table layout") {
  Rng rng(55);
  const auto table = make_table(rng, 40, 6, "t");
  auto cv = eval::run_cv(table, small_config());
  cv.method = "Topic-wise";
  auto mean = eval::baseline_mean_cv(table, small_config());
  mean.method = "Mean";
  const auto text = eval::format_results_table({cv, mean});
  CHECK(text.find("Topic-wise") != std::string::npos);
  CHECK(text.find("RMSE") != std::string::npos);
  CHECK(text.find(" / ") != std::string::npos);
  CHECK(eval::parse_protocol("test") == eval::Protocol::Test);
}
