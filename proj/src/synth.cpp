#include "topicdx/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "topicdx/error.hpp"
#include "topicdx/parallel.hpp"
#include "topicdx/rng.hpp"
#include "topicdx/textio.hpp"

namespace topicdx::synth {

using features::BlockKind;

namespace {

BlockKind parse_kind(std::string_view text) {
  for (BlockKind k : {BlockKind::Liwc, BlockKind::Covarep, BlockKind::Formant,
                      BlockKind::ActionUnit, BlockKind::Key}) {
    if (features::to_string(k) == text) return k;
  }
  throw Error(ErrorCode::InvalidSpec, "plantable kinds are liwc, covarep, formant, au, key; got '" +
                                          std::string(text) + "'");
}

std::size_t stream_channels(BlockKind kind) {
  switch (kind) {
    case BlockKind::Covarep: return corpus::kCovarepChannels;
    case BlockKind::Formant: return corpus::kFormantChannels;
    case BlockKind::ActionUnit: return corpus::kActionUnitChannels;
    case BlockKind::Liwc: return features::kCategoryCount;
    default: return 1;
  }
}

bool is_stream(BlockKind kind) {
  return kind == BlockKind::Covarep || kind == BlockKind::Formant || kind == BlockKind::ActionUnit;
}

// Words without any category in the example dictionary.
constexpr const char* kNeutralWords[] = {
    "weather", "pizza",  "garden",  "yesterday", "coffee", "street", "basically", "guess",
    "probably", "kind",  "stuff",   "thing",     "place",  "morning", "evening",  "city",
    "car",      "bus",   "phone",   "book",      "dog",    "park",    "beach",    "season",
    "summer",   "winter", "food",   "cooking",   "really", "just",    "like",     "then",
    "there",    "around", "usually", "pretty",   "lot",    "went",    "got",      "back"};

// Common words that do map to categories, mixed into filler answers.
constexpr const char* kCommonWords[] = {"i",    "the",  "and", "it",    "was",  "my",
                                        "work", "home", "music", "think", "know", "today"};

// Pool for planting word-category proportions.
constexpr const char* kCategoryWords[] = {
    "sad",    "lonely",  "crying", "depressed", "hopeless", "worried", "nervous", "afraid",
    "anxious", "angry",  "hate",   "annoyed",   "hurt",     "awful",   "terrible", "abandoned",
    "happy",  "great",   "love",   "nice",      "enjoy",    "glad",    "proud",    "mom",
    "dad",    "brother", "sister", "family",    "friends",  "talking", "because",  "maybe",
    "always", "sleep",   "tired",  "doctor",    "therapy",  "sick",    "eating",   "job",
    "school", "travel",  "movies", "house",     "money",    "pay",     "death",    "were",
    "did",    "will",    "now",    "lately",    "yes",      "yeah",    "um",       "uh"};

constexpr const char* kIntro = "hi i'm ellie thanks for coming in today";

constexpr std::size_t kLiwcTokens = 12;
constexpr double kLiwcCenterCount = 4.0;
constexpr double kLiwcSpreadCount = 2.0;
constexpr std::size_t kNoiseFactors = 4;

// Time is kept in 5 ms ticks; utterance boundaries sit on odd ticks so they
// never coincide with a 10 ms audio frame.
constexpr double kTick = 0.005;

std::string tick_time(long long ticks) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", static_cast<double>(ticks) * kTick);
  return buf;
}

double round_to(double v, double scale) { return std::round(v * scale) / scale; }

const features::KeyTopicRule* rule_for(const std::vector<features::KeyTopicRule>& rules, int topic) {
  for (const auto& r : rules) {
    if (r.topic_index == topic) return &r;
  }
  return nullptr;
}

std::string perturb(const std::string& s, Rng& rng, std::size_t edits) {
  std::string out = s;
  for (std::size_t e = 0; e < edits && out.size() > 1; ++e) {
    const std::size_t pos = static_cast<std::size_t>(rng.index(out.size()));
    const char letter = static_cast<char>('a' + rng.index(26));
    switch (rng.index(3)) {
      case 0: out[pos] = letter; break;
      case 1: out.erase(pos, 1); break;
      default: out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), letter); break;
    }
  }
  return out;
}

std::string filler(Rng& rng, std::size_t words) {
  std::string out;
  for (std::size_t w = 0; w < words; ++w) {
    if (!out.empty()) out.push_back(' ');
    if (rng.bernoulli(0.25)) {
      out += kCommonWords[rng.index(std::size(kCommonWords))];
    } else {
      out += kNeutralWords[rng.index(std::size(kNeutralWords))];
    }
  }
  return out;
}

struct Window {
  int topic = 0;
  double start = 0.0;
  double end = 0.0;
};

struct SessionPlan {
  std::string id;
  corpus::Split split = corpus::Split::Train;
  int gender = 0;
  int phq8 = 0;
  std::vector<double> planted_values;
};

class Generator {
 public:
  Generator(const SynthSpec& spec, const topic::TopicDictionary& dict,
            const features::WordCategoryDictionary& categories,
            const std::vector<features::KeyTopicRule>& rules)
      : spec_(spec), dict_(dict), categories_(categories), rules_(rules), layout_(dict) {
    planted_ = spec.planted.empty() ? default_planted() : spec.planted;
    for (const auto& p : planted_) {
      PlantedSlot slot;
      switch (p.kind) {
        case BlockKind::Covarep:
          slot.index = layout_.covarep_index(p.topic, p.channel, features::Stat::Mean);
          break;
        case BlockKind::Formant:
          slot.index = layout_.formant_index(p.topic, p.channel, features::Stat::Mean);
          break;
        case BlockKind::ActionUnit:
          slot.index = layout_.au_index(p.topic, p.channel, features::Stat::Mean);
          break;
        case BlockKind::Liwc: {
          slot.index = layout_.liwc_index(p.topic, p.channel);
          std::vector<std::string> words;
          for (const char* w : kCategoryWords) {
            const auto* cats = categories_.lookup(w);
            if (cats && std::find(cats->begin(), cats->end(), p.channel) != cats->end()) words.emplace_back(w);
          }
          if (words.empty()) {
            throw Error(ErrorCode::InvalidSpec, "no generator word maps to category " +
                                                    categories_.category_names().at(p.channel));
          }
          liwc_words_.push_back(std::move(words));
          break;
        }
        case BlockKind::Key: {
          const auto key = layout_.key_index(p.topic);
          if (!key || !rule_for(rules_, p.topic)) {
            throw Error(ErrorCode::InvalidSpec, "topic " + std::to_string(p.topic) + " has no key-topic rule");
          }
          slot.index = *key;
          break;
        }
        default: throw Error(ErrorCode::InvalidSpec, "cannot plant gender or presence");
      }
      slot.name = layout_.name(slot.index);
      double spread = 1.0;
      if (p.kind == BlockKind::Liwc) {
        slot.center = kLiwcCenterCount / static_cast<double>(kLiwcTokens);
        spread = kLiwcSpreadCount / static_cast<double>(kLiwcTokens);
      } else if (p.kind == BlockKind::Key) {
        const double k = static_cast<double>(rule_for(rules_, p.topic)->categories.size());
        slot.center = (k - 1.0) / 2.0;
        spread = std::sqrt((k * k - 1.0) / 12.0);
      }
      slot.weight = p.weight / spread;
      truth_.slots.push_back(std::move(slot));
    }
    truth_.intercept = spec.intercept;
    intro_matches_ = topic::match_topic(dict_, kIntro).has_value();
  }

  PlantedTruth run(const std::filesystem::path& out_dir) {
    const std::size_t n = spec_.session_count;
    std::vector<SessionPlan> plans(n);
    parallel_for(n, [&](std::size_t i) {
      char id[16];
      std::snprintf(id, sizeof(id), "s%04zu", i + 1);
      plans[i] = session(id, out_dir);
    });

    nlohmann::ordered_json manifest;
    auto& sessions = manifest["sessions"] = nlohmann::ordered_json::array();
    for (const auto& p : plans) {
      const std::string dir = "sessions/" + p.id + "/";
      sessions.push_back({{"id", p.id},
                          {"transcript_path", dir + "transcript.tsv"},
                          {"covarep_path", dir + "covarep.csv"},
                          {"formant_path", dir + "formant.csv"},
                          {"au_path", dir + "au.csv"},
                          {"gender", p.gender},
                          {"phq8", p.phq8},
                          {"split", std::string(corpus::to_string(p.split))}});
      truth_.session_ids.push_back(p.id);
      truth_.values.push_back(p.planted_values);
      truth_.labels.push_back(p.phq8);
    }
    textio::write_file(out_dir / "manifest.json", manifest.dump(1) + "\n");
    textio::write_file(out_dir / "planted_truth.json", format_truth(truth_));
    SynthSpec echo = spec_;
    echo.planted = planted_;
    textio::write_file(out_dir / "synth_spec.json", format_spec(echo));
    return truth_;
  }

 private:
  SessionPlan session(const std::string& id, const std::filesystem::path& out_dir) const {
    Rng rng(derive_seed(spec_.seed, hash_string(id)));
    SessionPlan plan;
    plan.id = id;
    plan.split = rng.bernoulli(spec_.dev_fraction) ? corpus::Split::Dev : corpus::Split::Train;
    plan.gender = rng.bernoulli(0.5) ? 1 : 0;

    std::vector<int> topics;
    for (const auto& e : dict_.entries()) {
      if (rng.bernoulli(spec_.presence(e.index))) topics.push_back(e.index);
    }
    rng.shuffle(std::span<int>(topics));

    // Planted values: audio/video values directly, word-category and key
    // values through the text that realizes them.
    std::vector<double> stream_value(planted_.size(), 0.0);
    std::vector<std::size_t> liwc_count(planted_.size(), 0);
    std::vector<std::size_t> key_code(planted_.size(), 0);
    for (std::size_t p = 0; p < planted_.size(); ++p) {
      const auto& pf = planted_[p];
      if (is_stream(pf.kind)) {
        stream_value[p] = round_to(rng.normal(), 1e4);
      } else if (pf.kind == BlockKind::Liwc) {
        const double c = std::round(kLiwcCenterCount + kLiwcSpreadCount * rng.normal());
        liwc_count[p] = static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(kLiwcTokens)));
      } else {
        key_code[p] = static_cast<std::size_t>(rng.index(rule_for(rules_, pf.topic)->categories.size()));
      }
    }

    corpus::Transcript transcript;
    std::vector<Window> windows;
    long long tick = 1;
    if (!intro_matches_) {
      transcript.push_back({static_cast<double>(tick) * kTick, 0.0, corpus::Speaker::Interviewer, kIntro});
      transcript.back().stop = static_cast<double>(tick + 40) * kTick;
      tick += 50;
    }
    std::vector<std::string> starts;  // question start strings, to re-parse
    for (int t : topics) {
      const auto& entry = dict_.entry(t);
      std::string question = entry.trigger_sentences[rng.index(entry.trigger_sentences.size())];
      if (spec_.trigger_edits > 0 && question.size() >= 12 && rng.bernoulli(0.3)) {
        const auto edits = 1 + static_cast<std::size_t>(rng.index(spec_.trigger_edits));
        auto changed = perturb(question, rng, edits);
        if (topic::match_topic(dict_, changed) == t) question = std::move(changed);
      }
      const long long q_start = tick;
      const long long q_stop = q_start + 40;
      const long long a_start = q_stop + 10;
      const long long a_stop = a_start + 60 + 2 * static_cast<long long>(rng.index(31));
      tick = a_stop + 10;

      std::string answer = answer_text(t, rng, liwc_count, key_code);
      transcript.push_back({textio::parse_double(tick_time(q_start)).value(),
                            textio::parse_double(tick_time(q_stop)).value(),
                            corpus::Speaker::Interviewer, question});
      transcript.push_back({textio::parse_double(tick_time(a_start)).value(),
                            textio::parse_double(tick_time(a_stop)).value(),
                            corpus::Speaker::Participant, answer});
      windows.push_back({t, transcript[transcript.size() - 2].start, 0.0});
    }
    const double final_stop = transcript.empty() ? 0.0 : transcript.back().stop;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      windows[w].end = w + 1 < windows.size() ? windows[w + 1].start : final_stop;
    }

    // Realized planted values and the label.
    plan.planted_values.resize(planted_.size());
    double label = spec_.intercept;
    for (std::size_t p = 0; p < planted_.size(); ++p) {
      const auto& pf = planted_[p];
      double v;
      if (is_stream(pf.kind)) {
        v = stream_value[p];
      } else if (pf.kind == BlockKind::Liwc) {
        v = static_cast<double>(liwc_count[p]) / static_cast<double>(kLiwcTokens);
      } else {
        v = static_cast<double>(key_code[p]);
      }
      plan.planted_values[p] = v;
      label += truth_.slots[p].weight * (v - truth_.slots[p].center);
    }
    label += spec_.noise_stdev * rng.normal();
    plan.phq8 = static_cast<int>(std::clamp(std::round(label), 0.0, 24.0));

    const auto dir = out_dir / "sessions" / id;
    textio::write_file(dir / "transcript.tsv", corpus::format_transcript(transcript));
    const double end_time = final_stop + 0.1;
    textio::write_file(dir / "covarep.csv",
                       frames(BlockKind::Covarep, windows, stream_value, end_time, rng));
    textio::write_file(dir / "formant.csv",
                       frames(BlockKind::Formant, windows, stream_value, end_time, rng));
    textio::write_file(dir / "au.csv", frames(BlockKind::ActionUnit, windows, stream_value, end_time, rng));
    return plan;
  }

  std::string answer_text(int topic, Rng& rng, const std::vector<std::size_t>& liwc_count,
                          const std::vector<std::size_t>& key_code) const {
    std::string planted_words;
    std::size_t planted_tokens = 0;
    std::size_t liwc_slot = 0;
    for (std::size_t p = 0; p < planted_.size(); ++p) {
      if (planted_[p].kind != BlockKind::Liwc) continue;
      const auto& pool = liwc_words_[liwc_slot++];
      if (planted_[p].topic != topic) continue;
      for (std::size_t w = 0; w < kLiwcTokens; ++w) {
        if (!planted_words.empty()) planted_words.push_back(' ');
        planted_words += w < liwc_count[p] ? pool[rng.index(pool.size())]
                                           : kNeutralWords[rng.index(std::size(kNeutralWords))];
      }
      planted_tokens = kLiwcTokens;
    }
    if (planted_tokens > 0) return planted_words;

    const auto* rule = rule_for(rules_, topic);
    if (!rule) return filler(rng, 6 + static_cast<std::size_t>(rng.index(5)));

    std::size_t code = static_cast<std::size_t>(rng.index(rule->categories.size()));
    for (std::size_t p = 0; p < planted_.size(); ++p) {
      if (planted_[p].kind == BlockKind::Key && planted_[p].topic == topic) code = key_code[p];
    }
    const auto& phrases = rule->categories[code].phrases;
    for (int attempt = 0; attempt < 32; ++attempt) {
      const std::string text = filler(rng, 3) + " " + phrases[rng.index(phrases.size())] + " " + filler(rng, 3);
      if (features::classify_key_topic(*rule, topic::normalize_sentence(text)) == static_cast<double>(code)) {
        return text;
      }
    }
    throw Error(ErrorCode::InvalidSpec, "cannot realize key category " + std::to_string(code) +
                                            " of topic " + std::to_string(topic));
  }

  std::string frames(BlockKind kind, const std::vector<Window>& windows,
                     const std::vector<double>& stream_value, double end_time, Rng& rng) const {
    const std::size_t channels = stream_channels(kind);
    // Which channels are planted, and where.
    std::vector<int> planted_topic(channels, 0);
    std::vector<double> planted_value(channels, 0.0);
    for (std::size_t p = 0; p < planted_.size(); ++p) {
      if (planted_[p].kind != kind) continue;
      planted_topic[planted_[p].channel] = planted_[p].topic;
      planted_value[planted_[p].channel] = stream_value[p];
    }
    // Per-window noise levels: a few shared factors plus a channel term, so
    // channels within a window move together.
    const std::size_t segments = windows.size() + 1;  // last: outside every window
    std::vector<double> level(segments * channels);
    for (std::size_t s = 0; s < segments; ++s) {
      double factors[kNoiseFactors];
      for (double& f : factors) f = rng.normal();
      for (std::size_t c = 0; c < channels; ++c) {
        level[s * channels + c] = 0.9 * factors[c % kNoiseFactors] + 0.45 * rng.normal();
      }
    }

    const bool au = kind == BlockKind::ActionUnit;
    std::string out;
    if (au) {
      out = "frame,timestamp,confidence,success";
      for (const auto& name : corpus::action_unit_names()) out += "," + name;
      out += '\n';
    }
    const double rate = au ? 30.0 : 1.0 / corpus::kAudioFrameStep;
    const auto count = static_cast<std::size_t>(std::ceil(end_time * rate));
    std::size_t w = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const double t = au ? round_to(static_cast<double>(i) / 30.0, 1e3)
                          : static_cast<double>(i) * corpus::kAudioFrameStep;
      while (w < windows.size() && t >= windows[w].end) ++w;
      const bool inside = w < windows.size() && t >= windows[w].start;
      const std::size_t seg = inside ? w : windows.size();
      if (au) {
        out += std::to_string(i + 1);
        out += ',';
        textio::append_double(out, t);
        out += ",0.98,1";
      }
      for (std::size_t c = 0; c < channels; ++c) {
        if (au || c > 0) out += ',';
        double v;
        const bool planted_here =
            planted_topic[c] != 0 && (spec_.global_signal || (inside && windows[seg].topic == planted_topic[c]));
        if (planted_here) {
          v = planted_value[c];
        } else {
          v = round_to(level[seg * channels + c] + 0.05 * rng.normal(), 1e2);
        }
        textio::append_double(out, v);
      }
      out += '\n';
    }
    return out;
  }

  const SynthSpec& spec_;
  const topic::TopicDictionary& dict_;
  const features::WordCategoryDictionary& categories_;
  const std::vector<features::KeyTopicRule>& rules_;
  features::FeatureLayout layout_;
  std::vector<PlantedFeature> planted_;
  std::vector<std::vector<std::string>> liwc_words_;
  PlantedTruth truth_;
  bool intro_matches_ = false;
};

}  // namespace

std::vector<PlantedFeature> default_planted() {
  const auto negemo = features::example_word_categories().category_index("negemo").value();
  return {
      {66, BlockKind::Covarep, 0, 1.6},   {4, BlockKind::Covarep, 12, 1.6},
      {21, BlockKind::Covarep, 40, 1.6},  {71, BlockKind::Formant, 1, 1.6},
      {80, BlockKind::ActionUnit, 3, 1.6}, {35, BlockKind::ActionUnit, 10, 1.6},
      {9, BlockKind::Liwc, negemo, 1.6},  {78, BlockKind::Key, 0, 1.6},
  };
}

double SynthSpec::presence(int topic) const {
  const auto& chosen = planted.empty() ? default_planted() : planted;
  for (const auto& p : chosen) {
    if (p.topic == topic) return 1.0;
  }
  if (std::find(common_topics.begin(), common_topics.end(), topic) != common_topics.end()) {
    return common_presence;
  }
  return sparse_presence;
}

void SynthSpec::validate(const topic::TopicDictionary& dict) const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidSpec, msg); };
  if (session_count == 0) fail("session_count must be positive");
  for (double p : {common_presence, sparse_presence, dev_fraction}) {
    if (!(p >= 0.0 && p <= 1.0)) fail("probabilities must lie in [0, 1]");
  }
  if (trigger_edits > 3) fail("trigger_edits must be at most 3");
  if (!(noise_stdev >= 0.0)) fail("noise_stdev must be non-negative");
  const auto topics = static_cast<int>(dict.size());
  for (int t : common_topics) {
    if (t < 1 || t > topics) fail("common topic " + std::to_string(t) + " outside dictionary");
  }
  const auto& chosen = planted.empty() ? default_planted() : planted;
  std::set<std::pair<int, std::pair<int, std::size_t>>> seen;
  std::set<std::pair<int, std::size_t>> stream_channels_used;
  for (const auto& p : chosen) {
    if (p.topic < 1 || p.topic > topics) fail("planted topic " + std::to_string(p.topic) + " outside dictionary");
    if (p.kind != BlockKind::Key && p.channel >= stream_channels(p.kind)) fail("planted channel out of range");
    if (p.kind == BlockKind::Key) {
      const auto& keys = dict.key_topics();
      if (std::find(keys.begin(), keys.end(), p.topic) == keys.end()) {
        fail("topic " + std::to_string(p.topic) + " has no key-topic slot");
      }
    }
    if (!std::isfinite(p.weight)) fail("planted weight must be finite");
    if (!seen.insert({p.topic, {static_cast<int>(p.kind), p.channel}}).second) fail("duplicate planted slot");
    if (is_stream(p.kind) && !stream_channels_used.insert({static_cast<int>(p.kind), p.channel}).second) {
      fail("a stream channel can carry only one planted value");
    }
  }
  for (const auto& p : chosen) {
    if (p.kind != BlockKind::Liwc) continue;
    for (const auto& q : chosen) {
      if (&p != &q && q.kind == BlockKind::Liwc && q.topic == p.topic) fail("one planted category per topic");
    }
  }
}

// ---- spec and truth files ------------------------------------------------------

SynthSpec parse_spec(std::string_view json_text) {
  SynthSpec spec;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    spec.session_count = doc.value("session_count", spec.session_count);
    spec.seed = doc.value("seed", spec.seed);
    spec.common_topics = doc.value("common_topics", spec.common_topics);
    spec.common_presence = doc.value("common_presence", spec.common_presence);
    spec.sparse_presence = doc.value("sparse_presence", spec.sparse_presence);
    spec.intercept = doc.value("intercept", spec.intercept);
    spec.noise_stdev = doc.value("noise_stdev", spec.noise_stdev);
    spec.dev_fraction = doc.value("dev_fraction", spec.dev_fraction);
    spec.global_signal = doc.value("global_signal", spec.global_signal);
    spec.trigger_edits = doc.value("trigger_edits", spec.trigger_edits);
    if (doc.contains("planted")) {
      for (const auto& p : doc.at("planted")) {
        PlantedFeature f;
        f.topic = p.at("topic").get<int>();
        f.kind = parse_kind(p.at("kind").get<std::string>());
        f.channel = p.value("channel", std::size_t{0});
        f.weight = p.value("weight", f.weight);
        spec.planted.push_back(f);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadFormat, std::string("synth spec: ") + e.what());
  }
  return spec;
}

std::string format_spec(const SynthSpec& spec) {
  nlohmann::ordered_json doc;
  doc["session_count"] = spec.session_count;
  doc["seed"] = spec.seed;
  doc["common_topics"] = spec.common_topics;
  doc["common_presence"] = spec.common_presence;
  doc["sparse_presence"] = spec.sparse_presence;
  doc["intercept"] = spec.intercept;
  doc["noise_stdev"] = spec.noise_stdev;
  doc["dev_fraction"] = spec.dev_fraction;
  doc["global_signal"] = spec.global_signal;
  doc["trigger_edits"] = spec.trigger_edits;
  auto& planted = doc["planted"] = nlohmann::ordered_json::array();
  for (const auto& p : spec.planted) {
    planted.push_back({{"topic", p.topic},
                       {"kind", features::to_string(p.kind)},
                       {"channel", p.channel},
                       {"weight", p.weight}});
  }
  return doc.dump(2) + "\n";
}

std::string format_truth(const PlantedTruth& truth) {
  nlohmann::ordered_json doc;
  doc["intercept"] = truth.intercept;
  auto& slots = doc["slots"] = nlohmann::ordered_json::array();
  for (const auto& s : truth.slots) {
    slots.push_back({{"index", s.index}, {"name", s.name}, {"weight", s.weight}, {"center", s.center}});
  }
  auto& sessions = doc["sessions"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < truth.session_ids.size(); ++i) {
    sessions.push_back({{"id", truth.session_ids[i]}, {"phq8", truth.labels[i]}, {"values", truth.values[i]}});
  }
  return doc.dump(1) + "\n";
}

PlantedTruth parse_truth(std::string_view json_text) {
  PlantedTruth truth;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    truth.intercept = doc.at("intercept").get<double>();
    for (const auto& s : doc.at("slots")) {
      truth.slots.push_back({s.at("index").get<std::size_t>(), s.at("name").get<std::string>(),
                             s.at("weight").get<double>(), s.at("center").get<double>()});
    }
    for (const auto& s : doc.at("sessions")) {
      truth.session_ids.push_back(s.at("id").get<std::string>());
      truth.labels.push_back(s.at("phq8").get<int>());
      truth.values.push_back(s.at("values").get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadFormat, std::string("planted truth: ") + e.what());
  }
  return truth;
}

PlantedTruth generate_corpus(const SynthSpec& spec, const std::filesystem::path& out_dir,
                             const topic::TopicDictionary& dict,
                             const features::WordCategoryDictionary& categories,
                             const std::vector<features::KeyTopicRule>& rules) {
  spec.validate(dict);
  Generator gen(spec, dict, categories, rules);
  return gen.run(out_dir);
}

double verify_recovery(const PlantedTruth& truth, const std::vector<std::size_t>& selected) {
  if (truth.slots.empty()) return 0.0;
  const std::set<std::size_t> chosen(selected.begin(), selected.end());
  std::size_t hits = 0;
  for (const auto& s : truth.slots) hits += chosen.count(s.index);
  return static_cast<double>(hits) / static_cast<double>(truth.slots.size());
}

double verify_recovery(const PlantedTruth& truth, const select::SelectionReport& report) {
  return verify_recovery(truth, report.chosen());
}

double verify_recovery(const PlantedTruth& truth, const std::vector<std::size_t>& selected,
                       const Matrix& x) {
  if (truth.slots.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : truth.slots) {
    if (s.index >= x.cols()) throw Error(ErrorCode::DimensionMismatch, "planted index outside the matrix");
    const bool found = std::any_of(selected.begin(), selected.end(), [&](std::size_t c) {
      if (c == s.index) return true;
      for (std::size_t r = 0; r < x.rows(); ++r) {
        if (x(r, c) != x(r, s.index)) return false;
      }
      return true;
    });
    hits += found ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(truth.slots.size());
}

}  // namespace topicdx::synth
