#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "topicdx/kernels.hpp"
#include "topicdx/parallel.hpp"

using namespace topicdx;
using topicdx::testing::normal_matrix;
using topicdx::testing::normal_vector;

namespace {

std::vector<std::size_t> iota_n(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

struct JobsGuard {
  ~JobsGuard() { set_jobs(0); }
};

}  // namespace

TEST_CASE("OpenMP kernels are bit-identical to the serial references") {
  JobsGuard guard;
  Rng rng(31);
  Matrix x = normal_matrix(rng, 57, 203);
  for (std::size_t r = 0; r < x.rows(); ++r) x(r, 17) = 2.5;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < 80; ++i) rows.push_back(rng.index(57));
  const auto cols = iota_n(x.cols());
  const auto y = normal_vector(rng, rows.size());
  const auto target = kernels::standardize(y);

  const auto z_ref = kernels::serial::standardize_columns(x, rows, cols);
  const auto corr_ref = kernels::serial::correlate_with(z_ref, target);
  const auto f_ref = kernels::serial::f_values(x, rows, cols, y);

  std::vector<double> label_abs(cols.size()), pair_sum(cols.size());
  std::vector<char> eligible(cols.size(), 1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    label_abs[j] = std::abs(corr_ref[j]);
    pair_sum[j] = std::abs(rng.normal());
  }
  eligible[3] = 0;
  const auto best_ref = kernels::serial::best_candidate(label_abs, pair_sum, eligible, 1.3, 0.7, 2);

  std::vector<std::string> sentences;
  for (int i = 0; i < 120; ++i) {
    std::string s(3 + rng.index(6), 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng.index(3));
    sentences.push_back(s);
  }
  const auto pairs_ref = kernels::serial::near_pairs(sentences, 2);

  for (int jobs : {1, 2, 3, 8}) {
    CAPTURE(jobs);
    set_jobs(jobs);
    const auto z = kernels::standardize_columns(x, rows, cols);
    CHECK(z.values == z_ref.values);
    CHECK(z.degenerate == z_ref.degenerate);
    CHECK(z.degenerate[17] == 1);
    CHECK(kernels::correlate_with(z, target) == corr_ref);
    CHECK(kernels::f_values(x, rows, cols, y) == f_ref);
    const auto best = kernels::best_candidate(label_abs, pair_sum, eligible, 1.3, 0.7, 2);
    CHECK(best.feature == best_ref.feature);
    CHECK(best.merit == best_ref.merit);
    CHECK(kernels::near_pairs(sentences, 2) == pairs_ref);
  }
}

TEST_CASE("best_candidate prefers the lower index on ties and skips ineligible features") {
  const std::vector<double> label = {0.5, 0.5, 0.9};
  const std::vector<double> pairs = {0.0, 0.0, 0.0};
  const std::vector<char> eligible = {1, 1, 0};
  const auto best = kernels::serial::best_candidate(label, pairs, eligible, 0.0, 0.0, 0);
  CHECK(best.feature == 0);
  CHECK(best.merit == doctest::Approx(0.5));
  const std::vector<char> none = {0, 0, 0};
  CHECK_FALSE(kernels::best_candidate(label, pairs, none, 0.0, 0.0, 0).valid());
}

TEST_CASE("standardize yields centered unit vectors") {
  Rng rng(32);
  const auto v = normal_vector(rng, 40);
  const auto z = kernels::standardize(v);
  double sum = 0.0, sq = 0.0;
  for (double e : z) {
    sum += e;
    sq += e * e;
  }
  CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sq == doctest::Approx(1.0));
  bool degenerate = false;
  const auto flat = kernels::standardize(std::vector<double>(5, 3.0), &degenerate);
  CHECK(degenerate);
  CHECK(flat == std::vector<double>(5, 0.0));
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  JobsGuard guard;
  set_jobs(4);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i % 10 == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}
