#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "topicdx/corpus.hpp"
#include "topicdx/matrix.hpp"
#include "topicdx/rng.hpp"

namespace topicdx::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("topicdx_" + tag + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::vector<double> normal_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

inline Matrix normal_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.normal();
  }
  return m;
}

inline std::vector<int> random_scores(Rng& rng, std::size_t n) {
  std::vector<int> s(n);
  for (auto& v : s) v = static_cast<int>(rng.index(25));
  return s;
}

/// Frame series on a 10 ms clock from t0 with `frames` rows; channel c of
/// frame f holds base + c + 0.001 f.
inline corpus::FrameSeries ramp_series(std::size_t channels, std::size_t frames, double t0,
                                       double base = 0.0) {
  corpus::FrameSeries s;
  s.channels = Matrix(frames, channels);
  for (std::size_t f = 0; f < frames; ++f) {
    s.timestamps.push_back(t0 + 0.01 * static_cast<double>(f));
    for (std::size_t c = 0; c < channels; ++c) {
      s.channels(f, c) = base + static_cast<double>(c) + 0.001 * static_cast<double>(f);
    }
  }
  return s;
}

inline corpus::Utterance interviewer(double a, double b, std::string text) {
  return {a, b, corpus::Speaker::Interviewer, std::move(text)};
}

inline corpus::Utterance participant(double a, double b, std::string text) {
  return {a, b, corpus::Speaker::Participant, std::move(text)};
}

}  // namespace topicdx::testing
