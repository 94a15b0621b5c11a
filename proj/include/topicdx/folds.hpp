#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace topicdx::eval {

constexpr int kDepressedThreshold = 10;

/// k disjoint held-out folds of sample positions covering 0..n-1.
struct FoldPlan {
  std::vector<std::vector<std::size_t>> folds;  // each sorted ascending
  std::uint64_t seed = 0;
  int threshold = kDepressedThreshold;

  std::size_t sample_count() const;
  /// Positions outside fold f, ascending.
  std::vector<std::size_t> train_positions(std::size_t f) const;
};

/// Stratifies on score >= threshold. Within each class the positions are
/// shuffled with the seeded generator and dealt round-robin; the dealing
/// offset carries over from the first class to the second so fold sizes stay
/// within one of each other. Throws TooFewSamples when n < k.
FoldPlan stratified_folds(std::span<const int> scores, std::size_t k, std::uint64_t seed,
                          int threshold = kDepressedThreshold);

}  // namespace topicdx::eval
