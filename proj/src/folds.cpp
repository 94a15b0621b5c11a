#include "topicdx/folds.hpp"

#include <algorithm>
#include <string>

#include "topicdx/error.hpp"
#include "topicdx/rng.hpp"

namespace topicdx::eval {

std::size_t FoldPlan::sample_count() const {
  std::size_t n = 0;
  for (const auto& f : folds) n += f.size();
  return n;
}

std::vector<std::size_t> FoldPlan::train_positions(std::size_t f) const {
  std::vector<std::size_t> out;
  out.reserve(sample_count());
  for (std::size_t g = 0; g < folds.size(); ++g) {
    if (g != f) out.insert(out.end(), folds[g].begin(), folds[g].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

FoldPlan stratified_folds(std::span<const int> scores, std::size_t k, std::uint64_t seed,
                          int threshold) {
  if (k == 0 || scores.size() < k) {
    throw Error(ErrorCode::TooFewSamples, std::to_string(scores.size()) + " samples for " +
                                              std::to_string(k) + " folds");
  }
  std::vector<std::size_t> negatives;
  std::vector<std::size_t> positives;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (scores[i] >= threshold ? positives : negatives).push_back(i);
  }
  FoldPlan plan;
  plan.seed = seed;
  plan.threshold = threshold;
  plan.folds.resize(k);
  Rng rng(seed);
  std::size_t next = 0;
  for (auto* group : {&positives, &negatives}) {
    rng.shuffle(std::span<std::size_t>(*group));
    for (auto pos : *group) {
      plan.folds[next].push_back(pos);
      next = (next + 1) % k;
    }
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

}  // namespace topicdx::eval
