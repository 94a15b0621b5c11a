#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "topicdx/features.hpp"
#include "topicdx/select.hpp"
#include "topicdx/topic.hpp"

namespace topicdx::synth {

/// One informative slot. `channel` is the stream channel for audio/video
/// kinds and the category index for liwc; key slots ignore it.
struct PlantedFeature {
  int topic = 0;
  features::BlockKind kind = features::BlockKind::Covarep;
  std::size_t channel = 0;
  double weight = 1.6;  // label points per standard deviation of the slot
};

struct SynthSpec {
  std::size_t session_count = 150;
  std::uint64_t seed = 7;
  std::vector<int> common_topics = {1, 2, 3, 4, 7, 9, 11, 21, 28, 35, 66, 71, 78, 80};
  double common_presence = 0.9;
  double sparse_presence = 0.12;
  std::vector<PlantedFeature> planted;  // empty selects default_planted()
  double intercept = 8.0;
  double noise_stdev = 1.0;
  double dev_fraction = 0.3;  // remaining sessions are train
  /// Hold planted audio/video channels constant over the whole interview
  /// instead of only inside the planted topic's window.
  bool global_signal = false;
  std::size_t trigger_edits = 1;  // at most 3

  /// Throws InvalidSpec.
  void validate(const topic::TopicDictionary& dict) const;
  /// Presence probability actually used for a topic (planted topics: 1).
  double presence(int topic) const;
};

/// Eight planted slots spread over audio, formant, video, word-category and
/// key-topic blocks of common topics.
std::vector<PlantedFeature> default_planted();

SynthSpec parse_spec(std::string_view json_text);
std::string format_spec(const SynthSpec& spec);

struct PlantedSlot {
  std::size_t index = 0;  // layout index
  std::string name;
  double weight = 0.0;  // label points per unit of the raw slot value
  double center = 0.0;  // slot value contributing zero
};

struct PlantedTruth {
  std::vector<PlantedSlot> slots;
  double intercept = 0.0;
  std::vector<std::string> session_ids;
  std::vector<std::vector<double>> values;  // per session, per slot
  std::vector<int> labels;
};

std::string format_truth(const PlantedTruth& truth);
PlantedTruth parse_truth(std::string_view json_text);

/// Writes manifest.json, per-session transcript and frame files under
/// sessions/, planted_truth.json and synth_spec.json. Output depends only on
/// the generator spec.
PlantedTruth generate_corpus(const SynthSpec& spec, const std::filesystem::path& out_dir,
                             const topic::TopicDictionary& dict = topic::example_dictionary(),
                             const features::WordCategoryDictionary& categories =
                                 features::example_word_categories(),
                             const std::vector<features::KeyTopicRule>& rules =
                                 features::example_key_topic_rules());

/// Fraction of planted indices among `selected`.
double verify_recovery(const PlantedTruth& truth, const std::vector<std::size_t>& selected);
double verify_recovery(const PlantedTruth& truth, const select::SelectionReport& report);
/// As above, but a selected column identical to a planted column over every
/// row of `x` also counts (nested word categories produce such twins).
double verify_recovery(const PlantedTruth& truth, const std::vector<std::size_t>& selected,
                       const Matrix& x);

}  // namespace topicdx::synth
