#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicdx/corpus.hpp"
#include "topicdx/matrix.hpp"
#include "topicdx/topic.hpp"

namespace topicdx::features {

constexpr double kMissing = -1.0;
constexpr std::size_t kCategoryCount = 93;
constexpr std::size_t kStatCount = 3;  // mean, max, min
constexpr std::size_t kCovarepSlots = corpus::kCovarepChannels * kStatCount;  // 222
constexpr std::size_t kFormantSlots = corpus::kFormantChannels * kStatCount;  // 15
constexpr std::size_t kAudioSlots = kCovarepSlots + kFormantSlots;            // 237
constexpr std::size_t kVideoSlots = corpus::kActionUnitChannels * kStatCount; // 60
constexpr std::size_t kTopicBlock = kCategoryCount + kAudioSlots + kVideoSlots;  // 390
constexpr std::size_t kUnawareDim = 1 + kTopicBlock;                             // 391

enum class Stat { Mean = 0, Max = 1, Min = 2 };
std::string_view to_string(Stat stat);

/// Word -> category mapping with trailing-wildcard prefix entries.
class WordCategoryDictionary {
 public:
  WordCategoryDictionary() = default;
  WordCategoryDictionary(std::vector<std::string> category_names,
                         std::vector<std::pair<std::string, std::vector<std::size_t>>> entries);

  const std::vector<std::string>& category_names() const noexcept { return names_; }
  std::optional<std::size_t> category_index(std::string_view name) const;

  /// Categories of a token: exact entry first, else the longest prefix entry.
  const std::vector<std::size_t>* lookup(std::string_view token) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::vector<std::size_t>> exact_;
  std::unordered_map<std::string, std::vector<std::size_t>> prefix_;
  std::size_t longest_prefix_ = 0;
};

/// Text format:
///   [categories]
///   name            (one per line, 93 lines)
///   [entries]
///   word[*] : cat,cat,...
/// '#' starts a comment line.
WordCategoryDictionary parse_word_categories(std::string_view text);
WordCategoryDictionary load_word_categories(const std::filesystem::path& path);
const WordCategoryDictionary& example_word_categories();

struct KeyTopicCategory {
  std::string name;
  std::vector<std::string> phrases;  // normalized
};

struct KeyTopicRule {
  int topic_index = 0;
  std::vector<KeyTopicCategory> categories;  // 2 or 3, code = position
};

/// JSON: {"rules": [{"topic": 78, "categories": [{"name": .., "phrases": [..]}, ..]}]}
std::vector<KeyTopicRule> parse_key_topic_rules(std::string_view json_text);
std::vector<KeyTopicRule> load_key_topic_rules(const std::filesystem::path& path);
const std::vector<KeyTopicRule>& example_key_topic_rules();

/// Per-channel (mean, max, min) over finite values, channel-major. Channels
/// without finite values get the missing marker. Throws EmptySegment when
/// `frames` has no rows.
std::vector<double> apply_functionals(const Matrix& frames);

/// 222 COVAREP + 15 formant slots over the union of windows. A stream with no
/// frame inside the windows contributes missing markers for its whole block.
std::vector<double> audio_features(const corpus::FrameSeries& covarep,
                                   const corpus::FrameSeries& formant,
                                   const std::vector<std::pair<double, double>>& windows);
std::vector<double> video_features(const corpus::FrameSeries& aus,
                                   const std::vector<std::pair<double, double>>& windows);

std::vector<double> audio_features_for_segment(const corpus::FrameSeries& covarep,
                                               const corpus::FrameSeries& formant,
                                               const topic::TopicSegment& segment);
std::vector<double> video_features_for_segment(const corpus::FrameSeries& aus,
                                               const topic::TopicSegment& segment);

/// Per-category token frequencies (count / token count).
std::vector<double> liwc_counts(const WordCategoryDictionary& dict, std::string_view text);

/// Code of the first category with a phrase occurring in the text, or -1.
double classify_key_topic(const KeyTopicRule& rule, std::string_view text);

enum class BlockKind { Gender, Presence, Key, Liwc, Covarep, Formant, ActionUnit };
std::string_view to_string(BlockKind kind);

struct SlotDescriptor {
  BlockKind kind = BlockKind::Gender;
  int topic = 0;            // 0 for gender
  std::size_t channel = 0;  // category index for liwc
  Stat stat = Stat::Mean;

  friend bool operator==(const SlotDescriptor&, const SlotDescriptor&) = default;
};

/// Fixed vector layout: gender, presence (topic order), key (key-topic order),
/// then per topic [liwc 93, covarep 222, formant 15, au 60].
class FeatureLayout {
 public:
  explicit FeatureLayout(const topic::TopicDictionary& dict);

  std::size_t total_dim() const noexcept { return total_; }
  std::size_t topic_count() const noexcept { return topics_; }
  const std::vector<int>& key_topics() const noexcept { return key_topics_; }

  std::size_t gender_index() const noexcept { return 0; }
  std::size_t presence_index(int topic) const;
  std::optional<std::size_t> key_index(int topic) const;
  std::size_t topic_block_start(int topic) const;
  std::size_t liwc_index(int topic, std::size_t category) const;
  std::size_t covarep_index(int topic, std::size_t channel, Stat stat) const;
  std::size_t formant_index(int topic, std::size_t channel, Stat stat) const;
  std::size_t au_index(int topic, std::size_t channel, Stat stat) const;
  std::size_t index_of(const SlotDescriptor& slot) const;

  SlotDescriptor describe(std::size_t index) const;
  std::string name(std::size_t index) const;
  std::optional<std::size_t> index_of_name(std::string_view name) const;

  /// Slot count per block kind.
  std::size_t block_size(BlockKind kind) const;

 private:
  std::size_t topics_ = 0;
  std::vector<int> key_topics_;
  std::size_t total_ = 0;
  int topic_width_ = 2;
  std::unordered_map<std::string, std::size_t> by_name_;
};

struct FeatureVector {
  std::vector<double> values;
};

struct FeatureInputs {
  const topic::TopicDictionary& topics;
  const WordCategoryDictionary& categories;
  const std::vector<KeyTopicRule>& rules;
};

FeatureVector assemble_vector(const corpus::Session& session,
                              const std::vector<topic::TopicSegment>& segments,
                              const FeatureLayout& layout, const FeatureInputs& inputs);

/// Whole-interview features: gender, liwc 93, covarep 222, formant 15, au 60.
FeatureVector context_unaware_vector(const corpus::Session& session,
                                     const WordCategoryDictionary& categories);
std::vector<std::string> context_unaware_names();

/// Vectors for a whole dataset, one row per session in dataset order.
struct FeatureTable {
  std::vector<std::string> session_ids;
  std::vector<int> phq8;
  std::vector<int> gender;
  std::vector<corpus::Split> split;  // in memory only, not serialized
  Matrix values;
  std::vector<std::string> names;

  std::size_t size() const noexcept { return session_ids.size(); }
};

FeatureTable featurize(const corpus::Dataset& dataset, const FeatureInputs& inputs);
FeatureTable featurize_context_unaware(const corpus::Dataset& dataset,
                                       const WordCategoryDictionary& categories);

/// Comma-delimited text: header `session_id,phq8,gender,<slot names..>`, one
/// row per session, values in shortest round-trip form.
std::string format_feature_table(const FeatureTable& table);
FeatureTable parse_feature_table(std::string_view text);
std::string format_layout(const std::vector<std::string>& names);
std::vector<std::string> parse_layout(std::string_view text);

}  // namespace topicdx::features
