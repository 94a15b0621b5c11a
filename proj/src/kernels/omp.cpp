#include <omp.h>

#include "detail.hpp"
#include "topicdx/parallel.hpp"
#include "topicdx/topic.hpp"

namespace topicdx::kernels {

namespace {
long long as_ll(std::size_t n) { return static_cast<long long>(n); }
}  // namespace

StandardizedColumns standardize_columns(const Matrix& x, std::span<const std::size_t> rows,
                                        std::span<const std::size_t> cols) {
  StandardizedColumns z;
  z.samples = rows.size();
  z.features = cols.size();
  z.values.resize(z.samples * z.features);
  z.degenerate.resize(z.features);
#pragma omp parallel num_threads(jobs())
  {
    std::vector<double> gathered(rows.size());
#pragma omp for schedule(static)
    for (long long jj = 0; jj < as_ll(cols.size()); ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      for (std::size_t i = 0; i < rows.size(); ++i) gathered[i] = x(rows[i], cols[j]);
      z.degenerate[j] = detail::standardize_into(
          gathered, std::span<double>(z.values.data() + j * z.samples, z.samples));
    }
  }
  return z;
}

std::vector<double> correlate_with(const StandardizedColumns& z, std::span<const double> target) {
  std::vector<double> out(z.features);
#pragma omp parallel for schedule(static) num_threads(jobs())
  for (long long jj = 0; jj < as_ll(z.features); ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    out[j] = detail::dot_clamped(z.column(j), target);
  }
  return out;
}

std::vector<double> f_values(const Matrix& x, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols, std::span<const double> y) {
  std::vector<double> out(cols.size());
#pragma omp parallel num_threads(jobs())
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (long long jj = 0; jj < as_ll(cols.size()); ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      out[j] = detail::column_f(x, rows, cols[j], y, scratch);
    }
  }
  return out;
}

Candidate best_candidate(std::span<const double> label_abs, std::span<const double> pair_abs_sum,
                         std::span<const char> eligible, double label_sum, double pair_sum,
                         std::size_t k) {
  Candidate best;
#pragma omp parallel num_threads(jobs())
  {
    Candidate local;
#pragma omp for schedule(static) nowait
    for (long long jj = 0; jj < as_ll(label_abs.size()); ++jj) {
      const auto j = static_cast<std::size_t>(jj);
      if (!eligible[j]) continue;
      const Candidate c{j, grown_merit(label_sum, pair_sum, k, label_abs[j], pair_abs_sum[j])};
      if (detail::better(c, local)) local = c;
    }
#pragma omp critical(topicdx_best_candidate)
    {
      if (detail::better(local, best)) best = local;
    }
  }
  return best;
}

PairList near_pairs(const std::vector<std::string>& sentences, std::size_t max_dist) {
  std::vector<PairList> per_row(sentences.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs())
  for (long long ii = 0; ii < as_ll(sentences.size()); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < sentences.size(); ++j) {
      if (topic::bounded_edit_distance(sentences[i], sentences[j], max_dist) <= max_dist) {
        per_row[i].emplace_back(i, j);
      }
    }
  }
  PairList pairs;
  for (auto& row : per_row) pairs.insert(pairs.end(), row.begin(), row.end());
  return pairs;
}

}  // namespace topicdx::kernels
