#include "detail.hpp"
#include "topicdx/topic.hpp"

namespace topicdx::kernels {

std::vector<double> standardize(std::span<const double> x, bool* degenerate) {
  std::vector<double> out(x.size());
  const bool deg = detail::standardize_into(x, out);
  if (degenerate) *degenerate = deg;
  return out;
}

namespace serial {

StandardizedColumns standardize_columns(const Matrix& x, std::span<const std::size_t> rows,
                                        std::span<const std::size_t> cols) {
  StandardizedColumns z;
  z.samples = rows.size();
  z.features = cols.size();
  z.values.resize(z.samples * z.features);
  z.degenerate.resize(z.features);
  std::vector<double> gathered(rows.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) gathered[i] = x(rows[i], cols[j]);
    z.degenerate[j] = detail::standardize_into(
        gathered, std::span<double>(z.values.data() + j * z.samples, z.samples));
  }
  return z;
}

std::vector<double> correlate_with(const StandardizedColumns& z, std::span<const double> target) {
  std::vector<double> out(z.features);
  for (std::size_t j = 0; j < z.features; ++j) out[j] = detail::dot_clamped(z.column(j), target);
  return out;
}

std::vector<double> f_values(const Matrix& x, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols, std::span<const double> y) {
  std::vector<double> out(cols.size());
  std::vector<double> scratch;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out[j] = detail::column_f(x, rows, cols[j], y, scratch);
  }
  return out;
}

Candidate best_candidate(std::span<const double> label_abs, std::span<const double> pair_abs_sum,
                         std::span<const char> eligible, double label_sum, double pair_sum,
                         std::size_t k) {
  Candidate best;
  for (std::size_t j = 0; j < label_abs.size(); ++j) {
    if (!eligible[j]) continue;
    const Candidate c{j, grown_merit(label_sum, pair_sum, k, label_abs[j], pair_abs_sum[j])};
    if (detail::better(c, best)) best = c;
  }
  return best;
}

PairList near_pairs(const std::vector<std::string>& sentences, std::size_t max_dist) {
  PairList pairs;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (std::size_t j = i + 1; j < sentences.size(); ++j) {
      if (topic::bounded_edit_distance(sentences[i], sentences[j], max_dist) <= max_dist) {
        pairs.emplace_back(i, j);
      }
    }
  }
  return pairs;
}

}  // namespace serial
}  // namespace topicdx::kernels
