#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topicdx/corpus.hpp"

namespace topicdx::topic {

/// Lowercases, keeps letters, digits, underscore, apostrophe and space,
/// collapses whitespace runs and trims.
std::string normalize_sentence(std::string_view text);

/// Unit-cost Levenshtein distance.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Levenshtein distance if it is <= bound, otherwise bound + 1.
std::size_t bounded_edit_distance(std::string_view a, std::string_view b, std::size_t bound);

constexpr std::size_t kMatchDistance = 3;

struct TopicEntry {
  int index = 0;  // 1-based
  std::string name;
  bool is_key_topic = false;
  std::vector<std::string> trigger_sentences;  // normalized
};

class TopicDictionary {
 public:
  TopicDictionary() = default;
  /// Validates contiguous 1-based indices, non-empty trigger lists and
  /// trigger uniqueness across entries. Triggers are normalized.
  explicit TopicDictionary(std::vector<TopicEntry> entries);

  const std::vector<TopicEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const TopicEntry& entry(int topic_index) const { return entries_.at(topic_index - 1); }

  /// Topic indices flagged as key topics, in topic order.
  std::vector<int> key_topics() const;

  /// Topic owning this exact normalized trigger, if any.
  std::optional<int> exact_match(std::string_view normalized) const;

  /// All (trigger, topic index) pairs in topic order.
  const std::vector<std::pair<std::string, int>>& triggers() const noexcept { return triggers_; }

 private:
  std::vector<TopicEntry> entries_;
  std::vector<std::pair<std::string, int>> triggers_;
  std::unordered_map<std::string, int> exact_;
};

TopicDictionary parse_dictionary(std::string_view json_text);
std::string format_dictionary(const TopicDictionary& dict);
TopicDictionary load_dictionary(const std::filesystem::path& path);

/// The 83-topic example dictionary with one sample question per topic.
const TopicDictionary& example_dictionary();

struct SentenceCount {
  std::string sentence;
  std::size_t frequency = 0;

  friend bool operator==(const SentenceCount&, const SentenceCount&) = default;
};

/// Distinct normalized interviewer sentences with corpus frequency, most
/// frequent first (ties by first occurrence).
std::vector<SentenceCount> build_preliminary_dictionary(const corpus::Dataset& dataset);
std::vector<SentenceCount> build_preliminary_dictionary(
    const std::vector<corpus::Transcript>& transcripts);

using Cluster = std::vector<std::string>;

/// Single-linkage closure of edit_distance <= max_dist. Members sorted, and
/// clusters ordered by their smallest member.
std::vector<Cluster> cluster_sentences(const std::vector<std::string>& sentences,
                                       std::size_t max_dist = kMatchDistance);

/// Exact trigger match first, then the nearest trigger within distance 3
/// (ties to the lowest topic index).
std::optional<int> match_topic(const TopicDictionary& dict, std::string_view sentence);

struct TopicSegment {
  int topic_index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::string participant_text;

  friend bool operator==(const TopicSegment&, const TopicSegment&) = default;
};

/// One topic after merging its repeated occurrences.
struct TopicWindows {
  int topic_index = 0;
  std::vector<std::pair<double, double>> windows;
  std::string participant_text;
};

/// Segments in interview order; each closes where the next matched question
/// starts, the last at the final utterance's stop time.
std::vector<TopicSegment> segment_interview(const TopicDictionary& dict,
                                            const corpus::Transcript& transcript);

/// Folds repeated topics into one entry each, ordered by topic index.
std::vector<TopicWindows> merge_segments(const std::vector<TopicSegment>& segments);

std::string format_segments(const std::vector<TopicSegment>& segments);

struct CoverageStats {
  std::vector<double> cover_rate;   // per topic, topic order
  std::array<std::size_t, 10> histogram{};  // topics per cover-rate bin over [0, 1]
  std::size_t interview_count = 0;
};

CoverageStats coverage_stats(const std::vector<std::vector<TopicSegment>>& segmented,
                             const TopicDictionary& dict);
CoverageStats coverage_stats(const corpus::Dataset& dataset, const TopicDictionary& dict);

}  // namespace topicdx::topic
