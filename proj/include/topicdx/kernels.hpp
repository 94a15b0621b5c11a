#pragma once

// Data-parallel inner loops of the pipeline. Each kernel exists twice: the
// OpenMP version in `topicdx::kernels` and a plain loop in
// `topicdx::kernels::serial`. Both return bit-identical results; the serial
// one is the reference for tests and the benchmark.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topicdx/matrix.hpp"

namespace topicdx::kernels {

/// Column-major, centered, unit-norm copy of a sample matrix, so the Pearson
/// correlation of two columns is their dot product. Constant columns are
/// stored as zeros and flagged degenerate.
struct StandardizedColumns {
  std::size_t samples = 0;
  std::size_t features = 0;
  std::vector<double> values;    // features x samples
  std::vector<char> degenerate;  // per feature

  std::span<const double> column(std::size_t j) const {
    return {values.data() + j * samples, samples};
  }
};

/// Centered, unit-norm copy of one vector (zeros when constant).
std::vector<double> standardize(std::span<const double> x, bool* degenerate = nullptr);

/// Best greedy CFS expansion.
struct Candidate {
  std::size_t feature = static_cast<std::size_t>(-1);
  double merit = -1.0;
  bool valid() const { return feature != static_cast<std::size_t>(-1); }
};

/// CFS merit of a subset of size k+1 whose label-correlation sum is
/// label_sum + cand_label and pairwise sum is pair_sum + cand_pairs.
inline double grown_merit(double label_sum, double pair_sum, std::size_t k, double cand_label,
                          double cand_pairs) {
  const double size = static_cast<double>(k + 1);
  return (label_sum + cand_label) / std::sqrt(size + 2.0 * (pair_sum + cand_pairs));
}

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

// ---- OpenMP kernels -------------------------------------------------------

StandardizedColumns standardize_columns(const Matrix& x, std::span<const std::size_t> rows,
                                        std::span<const std::size_t> cols);

/// Dot product of every standardized column with `target` (a standardized
/// vector of the same sample count), clamped to [-1, 1].
std::vector<double> correlate_with(const StandardizedColumns& z, std::span<const double> target);

/// Univariate regression F statistic of each column in `cols` (restricted to
/// `rows`) against y.
std::vector<double> f_values(const Matrix& x, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols, std::span<const double> y);

/// Among eligible features, the one maximizing grown_merit; ties go to the
/// lower index.
Candidate best_candidate(std::span<const double> label_abs, std::span<const double> pair_abs_sum,
                         std::span<const char> eligible, double label_sum, double pair_sum,
                         std::size_t k);

/// Index pairs (i < j) of sentences within edit distance max_dist, sorted.
PairList near_pairs(const std::vector<std::string>& sentences, std::size_t max_dist);

// ---- serial references ----------------------------------------------------

namespace serial {

StandardizedColumns standardize_columns(const Matrix& x, std::span<const std::size_t> rows,
                                        std::span<const std::size_t> cols);
std::vector<double> correlate_with(const StandardizedColumns& z, std::span<const double> target);
std::vector<double> f_values(const Matrix& x, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols, std::span<const double> y);
Candidate best_candidate(std::span<const double> label_abs, std::span<const double> pair_abs_sum,
                         std::span<const char> eligible, double label_sum, double pair_sum,
                         std::size_t k);
PairList near_pairs(const std::vector<std::string>& sentences, std::size_t max_dist);

}  // namespace serial

}  // namespace topicdx::kernels
