#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace topicdx {

/// Worker count used by every OpenMP region in the library. Zero or negative
/// selects the OpenMP default (available cores).
void set_jobs(int jobs);
int jobs();

/// Runs body(i) for i in [0, n) on the OpenMP team. If any iteration throws,
/// the exception from the lowest index is rethrown after the loop, so error
/// reporting does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs())
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace topicdx
