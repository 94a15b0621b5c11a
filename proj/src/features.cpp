#include "topicdx/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "topicdx/error.hpp"
#include "topicdx/parallel.hpp"
#include "topicdx/textio.hpp"

namespace topicdx::features {

std::string_view to_string(Stat stat) {
  switch (stat) {
    case Stat::Mean: return "mean";
    case Stat::Max: return "max";
    case Stat::Min: return "min";
  }
  return "mean";
}

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Gender: return "gender";
    case BlockKind::Presence: return "presence";
    case BlockKind::Key: return "key";
    case BlockKind::Liwc: return "liwc";
    case BlockKind::Covarep: return "covarep";
    case BlockKind::Formant: return "formant";
    case BlockKind::ActionUnit: return "au";
  }
  return "gender";
}

// ---- word categories -------------------------------------------------------

WordCategoryDictionary::WordCategoryDictionary(
    std::vector<std::string> category_names,
    std::vector<std::pair<std::string, std::vector<std::size_t>>> entries)
    : names_(std::move(category_names)) {
  if (names_.size() != kCategoryCount) {
    throw Error(ErrorCode::BadFormat, "word-category dictionary needs exactly " +
                                          std::to_string(kCategoryCount) + " categories, got " +
                                          std::to_string(names_.size()));
  }
  for (auto& [word, cats] : entries) {
    for (auto c : cats) {
      if (c >= names_.size()) {
        throw Error(ErrorCode::BadFormat, "category index out of range for '" + word + "'");
      }
    }
    std::sort(cats.begin(), cats.end());
    cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
    if (!word.empty() && word.back() == '*') {
      std::string stem = word.substr(0, word.size() - 1);
      longest_prefix_ = std::max(longest_prefix_, stem.size());
      prefix_[std::move(stem)] = std::move(cats);
    } else {
      exact_[word] = std::move(cats);
    }
  }
}

std::optional<std::size_t> WordCategoryDictionary::category_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

const std::vector<std::size_t>* WordCategoryDictionary::lookup(std::string_view token) const {
  if (const auto it = exact_.find(std::string(token)); it != exact_.end()) return &it->second;
  for (std::size_t len = std::min(token.size(), longest_prefix_); len > 0; --len) {
    if (const auto it = prefix_.find(std::string(token.substr(0, len))); it != prefix_.end()) {
      return &it->second;
    }
  }
  return nullptr;
}

WordCategoryDictionary parse_word_categories(std::string_view text) {
  enum class Section { None, Categories, Entries } section = Section::None;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::vector<std::size_t>>> entries;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t line_no = 0;
  for (const auto raw : textio::split_lines(text)) {
    ++line_no;
    const auto line = textio::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[categories]") {
      section = Section::Categories;
      continue;
    }
    if (line == "[entries]") {
      section = Section::Entries;
      continue;
    }
    const std::string where = "word-category dictionary line " + std::to_string(line_no);
    if (section == Section::Categories) {
      std::string name(line);
      if (!index.emplace(name, names.size()).second) {
        throw Error(ErrorCode::BadFormat, where + ": duplicate category '" + name + "'");
      }
      names.push_back(std::move(name));
    } else if (section == Section::Entries) {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) {
        throw Error(ErrorCode::BadFormat, where + ": expected 'word : cat,cat'");
      }
      std::string word(textio::trim(line.substr(0, colon)));
      for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      std::vector<std::size_t> cats;
      for (const auto& field : textio::split_fields(line.substr(colon + 1), ',')) {
        const std::string cat(textio::trim(field));
        if (cat.empty()) continue;
        const auto it = index.find(cat);
        if (it == index.end()) {
          throw Error(ErrorCode::BadFormat, where + ": unknown category '" + cat + "'");
        }
        cats.push_back(it->second);
      }
      if (word.empty() || word == "*") throw Error(ErrorCode::BadFormat, where + ": empty word");
      entries.emplace_back(std::move(word), std::move(cats));
    } else {
      throw Error(ErrorCode::BadFormat, where + ": content before [categories]");
    }
  }
  return WordCategoryDictionary(std::move(names), std::move(entries));
}

WordCategoryDictionary load_word_categories(const std::filesystem::path& path) {
  return parse_word_categories(textio::read_file(path));
}

std::vector<double> liwc_counts(const WordCategoryDictionary& dict, std::string_view text) {
  std::vector<double> counts(dict.category_names().size(), 0.0);
  std::size_t tokens = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    ++tokens;
    if (const auto* cats = dict.lookup(text.substr(pos, end - pos))) {
      for (auto c : *cats) counts[c] += 1.0;
    }
    pos = end;
  }
  if (tokens == 0) return counts;
  const double n = static_cast<double>(tokens);
  for (double& c : counts) c /= n;
  return counts;
}

// ---- key topics ------------------------------------------------------------

std::vector<KeyTopicRule> parse_key_topic_rules(std::string_view json_text) {
  std::vector<KeyTopicRule> rules;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& r : doc.at("rules")) {
      KeyTopicRule rule;
      rule.topic_index = r.at("topic").get<int>();
      for (const auto& c : r.at("categories")) {
        KeyTopicCategory cat;
        cat.name = c.at("name").get<std::string>();
        for (const auto& p : c.at("phrases")) {
          auto phrase = topic::normalize_sentence(p.get<std::string>());
          if (!phrase.empty()) cat.phrases.push_back(std::move(phrase));
        }
        rule.categories.push_back(std::move(cat));
      }
      rules.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadFormat, std::string("key-topic rules: ") + e.what());
  }
  for (const auto& rule : rules) {
    const std::string where = "key-topic rule for topic " + std::to_string(rule.topic_index);
    if (rule.categories.size() < 2 || rule.categories.size() > 3) {
      throw Error(ErrorCode::BadFormat, where + ": needs 2 or 3 categories");
    }
    for (std::size_t a = 0; a < rule.categories.size(); ++a) {
      for (std::size_t b = a + 1; b < rule.categories.size(); ++b) {
        for (const auto& p : rule.categories[a].phrases) {
          const auto& other = rule.categories[b].phrases;
          if (std::find(other.begin(), other.end(), p) != other.end()) {
            throw Error(ErrorCode::BadFormat, where + ": phrase '" + p + "' in two categories");
          }
        }
      }
    }
  }
  return rules;
}

std::vector<KeyTopicRule> load_key_topic_rules(const std::filesystem::path& path) {
  return parse_key_topic_rules(textio::read_file(path));
}

double classify_key_topic(const KeyTopicRule& rule, std::string_view text) {
  if (text.empty()) return kMissing;
  for (std::size_t code = 0; code < rule.categories.size(); ++code) {
    for (const auto& phrase : rule.categories[code].phrases) {
      if (text.find(phrase) != std::string_view::npos) return static_cast<double>(code);
    }
  }
  return kMissing;
}

// ---- functionals -----------------------------------------------------------

std::vector<double> apply_functionals(const Matrix& frames) {
  if (frames.rows() == 0) throw Error(ErrorCode::EmptySegment, "no frames in window");
  std::vector<double> out(frames.cols() * kStatCount, kMissing);
  for (std::size_t c = 0; c < frames.cols(); ++c) {
    // Mean accumulated as offsets from the first finite value, so a constant
    // channel reproduces its value exactly.
    bool seen = false;
    double anchor = 0.0, offset_sum = 0.0, hi = 0.0, lo = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < frames.rows(); ++r) {
      const double v = frames(r, c);
      if (!std::isfinite(v)) continue;
      if (!seen) {
        anchor = hi = lo = v;
        seen = true;
      }
      offset_sum += v - anchor;
      hi = std::max(hi, v);
      lo = std::min(lo, v);
      ++n;
    }
    if (!seen) continue;
    const double mean = std::clamp(anchor + offset_sum / static_cast<double>(n), lo, hi);
    out[c * kStatCount + 0] = mean;
    out[c * kStatCount + 1] = hi;
    out[c * kStatCount + 2] = lo;
  }
  return out;
}

namespace {

void functionals_into(const corpus::FrameSeries& series,
                      const std::vector<std::pair<double, double>>& windows, std::size_t channels,
                      std::vector<double>& out) {
  const Matrix frames = gather_windows(series, windows);
  if (frames.rows() == 0) {
    out.insert(out.end(), channels * kStatCount, kMissing);
    return;
  }
  if (frames.cols() != channels) {
    throw Error(ErrorCode::DimensionMismatch, "stream has " + std::to_string(frames.cols()) +
                                                  " channels, expected " + std::to_string(channels));
  }
  const auto stats = apply_functionals(frames);
  out.insert(out.end(), stats.begin(), stats.end());
}

}  // namespace

std::vector<double> audio_features(const corpus::FrameSeries& covarep,
                                   const corpus::FrameSeries& formant,
                                   const std::vector<std::pair<double, double>>& windows) {
  std::vector<double> out;
  out.reserve(kAudioSlots);
  functionals_into(covarep, windows, corpus::kCovarepChannels, out);
  functionals_into(formant, windows, corpus::kFormantChannels, out);
  return out;
}

std::vector<double> video_features(const corpus::FrameSeries& aus,
                                   const std::vector<std::pair<double, double>>& windows) {
  std::vector<double> out;
  out.reserve(kVideoSlots);
  functionals_into(aus, windows, corpus::kActionUnitChannels, out);
  return out;
}

std::vector<double> audio_features_for_segment(const corpus::FrameSeries& covarep,
                                               const corpus::FrameSeries& formant,
                                               const topic::TopicSegment& segment) {
  return audio_features(covarep, formant, {{segment.t_start, segment.t_end}});
}

std::vector<double> video_features_for_segment(const corpus::FrameSeries& aus,
                                               const topic::TopicSegment& segment) {
  return video_features(aus, {{segment.t_start, segment.t_end}});
}

// ---- layout ------------------------------------------------------------------

FeatureLayout::FeatureLayout(const topic::TopicDictionary& dict)
    : topics_(dict.size()), key_topics_(dict.key_topics()) {
  total_ = 1 + topics_ + key_topics_.size() + topics_ * kTopicBlock;
  topic_width_ = std::max<int>(2, static_cast<int>(std::to_string(topics_).size()));
  by_name_.reserve(total_);
  for (std::size_t i = 0; i < total_; ++i) by_name_.emplace(name(i), i);
}

std::size_t FeatureLayout::presence_index(int topic) const {
  return 1 + static_cast<std::size_t>(topic - 1);
}

std::optional<std::size_t> FeatureLayout::key_index(int topic) const {
  const auto it = std::find(key_topics_.begin(), key_topics_.end(), topic);
  if (it == key_topics_.end()) return std::nullopt;
  return 1 + topics_ + static_cast<std::size_t>(it - key_topics_.begin());
}

std::size_t FeatureLayout::topic_block_start(int topic) const {
  return 1 + topics_ + key_topics_.size() + static_cast<std::size_t>(topic - 1) * kTopicBlock;
}

std::size_t FeatureLayout::liwc_index(int topic, std::size_t category) const {
  return topic_block_start(topic) + category;
}

std::size_t FeatureLayout::covarep_index(int topic, std::size_t channel, Stat stat) const {
  return topic_block_start(topic) + kCategoryCount + channel * kStatCount +
         static_cast<std::size_t>(stat);
}

std::size_t FeatureLayout::formant_index(int topic, std::size_t channel, Stat stat) const {
  return topic_block_start(topic) + kCategoryCount + kCovarepSlots + channel * kStatCount +
         static_cast<std::size_t>(stat);
}

std::size_t FeatureLayout::au_index(int topic, std::size_t channel, Stat stat) const {
  return topic_block_start(topic) + kCategoryCount + kAudioSlots + channel * kStatCount +
         static_cast<std::size_t>(stat);
}

std::size_t FeatureLayout::index_of(const SlotDescriptor& slot) const {
  switch (slot.kind) {
    case BlockKind::Gender: return gender_index();
    case BlockKind::Presence: return presence_index(slot.topic);
    case BlockKind::Key: {
      const auto k = key_index(slot.topic);
      if (!k) throw Error(ErrorCode::InvalidSpec, "topic " + std::to_string(slot.topic) +
                                                      " is not a key topic");
      return *k;
    }
    case BlockKind::Liwc: return liwc_index(slot.topic, slot.channel);
    case BlockKind::Covarep: return covarep_index(slot.topic, slot.channel, slot.stat);
    case BlockKind::Formant: return formant_index(slot.topic, slot.channel, slot.stat);
    case BlockKind::ActionUnit: return au_index(slot.topic, slot.channel, slot.stat);
  }
  return 0;
}

SlotDescriptor FeatureLayout::describe(std::size_t index) const {
  if (index >= total_) {
    throw Error(ErrorCode::DimensionMismatch, "slot " + std::to_string(index) + " outside layout");
  }
  if (index == 0) return {};
  if (index <= topics_) return {BlockKind::Presence, static_cast<int>(index), 0, Stat::Mean};
  const std::size_t key_start = 1 + topics_;
  if (index < key_start + key_topics_.size()) {
    return {BlockKind::Key, key_topics_[index - key_start], 0, Stat::Mean};
  }
  const std::size_t rel = index - key_start - key_topics_.size();
  const int topic = static_cast<int>(rel / kTopicBlock) + 1;
  std::size_t off = rel % kTopicBlock;
  if (off < kCategoryCount) return {BlockKind::Liwc, topic, off, Stat::Mean};
  off -= kCategoryCount;
  if (off < kCovarepSlots) {
    return {BlockKind::Covarep, topic, off / kStatCount, static_cast<Stat>(off % kStatCount)};
  }
  off -= kCovarepSlots;
  if (off < kFormantSlots) {
    return {BlockKind::Formant, topic, off / kStatCount, static_cast<Stat>(off % kStatCount)};
  }
  off -= kFormantSlots;
  return {BlockKind::ActionUnit, topic, off / kStatCount, static_cast<Stat>(off % kStatCount)};
}

std::string FeatureLayout::name(std::size_t index) const {
  const auto d = describe(index);
  if (d.kind == BlockKind::Gender) return "gender";
  char topic_buf[16];
  std::snprintf(topic_buf, sizeof(topic_buf), "t%0*d", topic_width_, d.topic);
  std::string out(topic_buf);
  char buf[32];
  switch (d.kind) {
    case BlockKind::Presence: return out + ".presence";
    case BlockKind::Key: return out + ".key";
    case BlockKind::Liwc:
      std::snprintf(buf, sizeof(buf), ".liwc.cat%02zu", d.channel);
      return out + buf;
    default:
      std::snprintf(buf, sizeof(buf), ".%s.ch%02zu.%s", std::string(to_string(d.kind)).c_str(),
                    d.channel, std::string(to_string(d.stat)).c_str());
      return out + buf;
  }
}

std::optional<std::size_t> FeatureLayout::index_of_name(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t FeatureLayout::block_size(BlockKind kind) const {
  switch (kind) {
    case BlockKind::Gender: return 1;
    case BlockKind::Presence: return topics_;
    case BlockKind::Key: return key_topics_.size();
    case BlockKind::Liwc: return topics_ * kCategoryCount;
    case BlockKind::Covarep: return topics_ * kCovarepSlots;
    case BlockKind::Formant: return topics_ * kFormantSlots;
    case BlockKind::ActionUnit: return topics_ * kVideoSlots;
  }
  return 0;
}

// ---- assembly ----------------------------------------------------------------

FeatureVector assemble_vector(const corpus::Session& session,
                              const std::vector<topic::TopicSegment>& segments,
                              const FeatureLayout& layout, const FeatureInputs& inputs) {
  if (layout.topic_count() != inputs.topics.size() ||
      layout.key_topics() != inputs.topics.key_topics()) {
    throw Error(ErrorCode::LayoutMismatch,
                "layout built for " + std::to_string(layout.topic_count()) +
                    " topics, dictionary has " + std::to_string(inputs.topics.size()));
  }
  FeatureVector vec;
  vec.values.assign(layout.total_dim(), kMissing);
  vec.values[layout.gender_index()] = static_cast<double>(session.meta.gender);
  for (std::size_t t = 1; t <= layout.topic_count(); ++t) {
    vec.values[layout.presence_index(static_cast<int>(t))] = 0.0;
  }

  for (const auto& merged : topic::merge_segments(segments)) {
    const int t = merged.topic_index;
    if (t < 1 || static_cast<std::size_t>(t) > layout.topic_count()) {
      throw Error(ErrorCode::LayoutMismatch, "segment topic " + std::to_string(t) +
                                                 " outside dictionary");
    }
    vec.values[layout.presence_index(t)] = 1.0;

    const auto liwc = liwc_counts(inputs.categories, merged.participant_text);
    std::copy(liwc.begin(), liwc.end(), vec.values.begin() + static_cast<std::ptrdiff_t>(layout.liwc_index(t, 0)));
    const auto audio = audio_features(session.covarep, session.formant, merged.windows);
    std::copy(audio.begin(), audio.end(),
              vec.values.begin() + static_cast<std::ptrdiff_t>(layout.covarep_index(t, 0, Stat::Mean)));
    const auto video = video_features(session.aus, merged.windows);
    std::copy(video.begin(), video.end(),
              vec.values.begin() + static_cast<std::ptrdiff_t>(layout.au_index(t, 0, Stat::Mean)));

    if (const auto key = layout.key_index(t)) {
      for (const auto& rule : inputs.rules) {
        if (rule.topic_index == t) {
          vec.values[*key] = classify_key_topic(rule, merged.participant_text);
          break;
        }
      }
    }
  }
  return vec;
}

FeatureVector context_unaware_vector(const corpus::Session& session,
                                     const WordCategoryDictionary& categories) {
  FeatureVector vec;
  vec.values.reserve(kUnawareDim);
  vec.values.push_back(static_cast<double>(session.meta.gender));
  std::string text;
  for (const auto& u : session.transcript) {
    if (u.speaker != corpus::Speaker::Participant) continue;
    const auto norm = topic::normalize_sentence(u.text);
    if (norm.empty()) continue;
    if (!text.empty()) text.push_back(' ');
    text += norm;
  }
  const auto liwc = liwc_counts(categories, text);
  vec.values.insert(vec.values.end(), liwc.begin(), liwc.end());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::vector<std::pair<double, double>> whole = {{-kInf, kInf}};
  const auto audio = audio_features(session.covarep, session.formant, whole);
  vec.values.insert(vec.values.end(), audio.begin(), audio.end());
  const auto video = video_features(session.aus, whole);
  vec.values.insert(vec.values.end(), video.begin(), video.end());
  return vec;
}

std::vector<std::string> context_unaware_names() {
  std::vector<std::string> names = {"gender"};
  char buf[48];
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    std::snprintf(buf, sizeof(buf), "liwc.cat%02zu", c);
    names.emplace_back(buf);
  }
  auto stream = [&](const char* kind, std::size_t channels) {
    for (std::size_t ch = 0; ch < channels; ++ch) {
      for (std::size_t s = 0; s < kStatCount; ++s) {
        std::snprintf(buf, sizeof(buf), "%s.ch%02zu.%s", kind, ch,
                      std::string(to_string(static_cast<Stat>(s))).c_str());
        names.emplace_back(buf);
      }
    }
  };
  stream("covarep", corpus::kCovarepChannels);
  stream("formant", corpus::kFormantChannels);
  stream("au", corpus::kActionUnitChannels);
  return names;
}

namespace {

FeatureTable table_shell(const corpus::Dataset& dataset, std::size_t dim) {
  FeatureTable table;
  table.values = Matrix(dataset.sessions.size(), dim);
  for (const auto& s : dataset.sessions) {
    table.session_ids.push_back(s.meta.session_id);
    table.phq8.push_back(s.meta.phq8);
    table.gender.push_back(s.meta.gender);
    table.split.push_back(s.meta.split);
  }
  return table;
}

}  // namespace

FeatureTable featurize(const corpus::Dataset& dataset, const FeatureInputs& inputs) {
  const FeatureLayout layout(inputs.topics);
  FeatureTable table = table_shell(dataset, layout.total_dim());
  parallel_for(dataset.sessions.size(), [&](std::size_t i) {
    const auto& session = dataset.sessions[i];
    const auto segments = topic::segment_interview(inputs.topics, session.transcript);
    const auto vec = assemble_vector(session, segments, layout, inputs);
    std::copy(vec.values.begin(), vec.values.end(), table.values.row(i).begin());
  });
  table.names.reserve(layout.total_dim());
  for (std::size_t j = 0; j < layout.total_dim(); ++j) table.names.push_back(layout.name(j));
  return table;
}

FeatureTable featurize_context_unaware(const corpus::Dataset& dataset,
                                       const WordCategoryDictionary& categories) {
  FeatureTable table = table_shell(dataset, kUnawareDim);
  parallel_for(dataset.sessions.size(), [&](std::size_t i) {
    const auto vec = context_unaware_vector(dataset.sessions[i], categories);
    std::copy(vec.values.begin(), vec.values.end(), table.values.row(i).begin());
  });
  table.names = context_unaware_names();
  return table;
}

// ---- serialization -----------------------------------------------------------

std::string format_feature_table(const FeatureTable& table) {
  std::string out = "session_id,phq8,gender";
  for (const auto& n : table.names) {
    out.push_back(',');
    out += n;
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < table.size(); ++i) {
    out += table.session_ids[i];
    out.push_back(',');
    out += std::to_string(table.phq8[i]);
    out.push_back(',');
    out += std::to_string(table.gender[i]);
    for (double v : table.values.row(i)) {
      out.push_back(',');
      textio::append_double(out, v);
    }
    out.push_back('\n');
  }
  return out;
}

FeatureTable parse_feature_table(std::string_view text) {
  const auto lines = textio::split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::BadFormat, "feature table is empty");
  const auto header = textio::split_fields(lines[0], ',');
  if (header.size() < 3 || header[0] != "session_id" || header[1] != "phq8" ||
      header[2] != "gender") {
    throw Error(ErrorCode::MissingColumn, "feature table header must start with session_id,phq8,gender");
  }
  FeatureTable table;
  table.names.assign(header.begin() + 3, header.end());
  const std::size_t dim = table.names.size();
  table.values = Matrix(0, dim);
  std::vector<double> row(dim);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto line = lines[li];
    if (textio::trim(line).empty()) continue;
    std::size_t col = 0;
    std::size_t pos = 0;
    std::string id;
    while (true) {
      std::size_t end = line.find(',', pos);
      if (end == std::string_view::npos) end = line.size();
      const auto cell = line.substr(pos, end - pos);
      if (col == 0) {
        id = std::string(cell);
      } else {
        const auto v = textio::parse_double(cell);
        if (!v) {
          throw Error(ErrorCode::NonNumericCell,
                      "feature table row " + std::to_string(li + 1) + ", column " + std::to_string(col + 1));
        }
        if (col == 1) {
          table.phq8.push_back(static_cast<int>(*v));
        } else if (col == 2) {
          table.gender.push_back(static_cast<int>(*v));
        } else if (col - 3 < dim) {
          row[col - 3] = *v;
        }
      }
      ++col;
      if (end == line.size()) break;
      pos = end + 1;
    }
    if (col != dim + 3) {
      throw Error(ErrorCode::ColumnCountMismatch, "feature table row " + std::to_string(li + 1) +
                                                      " has " + std::to_string(col) + " columns");
    }
    table.session_ids.push_back(std::move(id));
    table.split.push_back(corpus::Split::Train);
    table.values.append_row(row);
  }
  return table;
}

std::string format_layout(const std::vector<std::string>& names) {
  std::string out = "index\tname\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += std::to_string(i);
    out.push_back('\t');
    out += names[i];
    out.push_back('\n');
  }
  return out;
}

std::vector<std::string> parse_layout(std::string_view text) {
  std::vector<std::string> names;
  const auto lines = textio::split_lines(text);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (textio::trim(lines[li]).empty()) continue;
    const auto fields = textio::split_fields(lines[li], '\t');
    if (fields.size() != 2 || fields[0] != std::to_string(names.size())) {
      throw Error(ErrorCode::BadFormat, "layout line " + std::to_string(li + 1));
    }
    names.push_back(fields[1]);
  }
  return names;
}

}  // namespace topicdx::features
