#include "topicdx/topic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "json.hpp"
#include "topicdx/error.hpp"
#include "topicdx/kernels.hpp"
#include "topicdx/textio.hpp"

namespace topicdx::topic {

std::string normalize_sentence(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (!(std::isalnum(c) || c == '_' || c == '\'')) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t bounded_edit_distance(std::string_view a, std::string_view b, std::size_t bound) {
  if (a.size() < b.size()) std::swap(a, b);
  if (a.size() - b.size() > bound) return bound + 1;
  const std::size_t over = bound + 1;
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = std::min(j, over);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    // Only the diagonal band |i - j| <= bound can stay within the bound.
    const std::size_t lo = i > bound ? i - bound : 1;
    const std::size_t hi = std::min(b.size(), i + bound);
    cur[0] = std::min(i, over);
    if (lo > 1) cur[lo - 1] = over;
    std::size_t row_min = cur[0];
    for (std::size_t j = lo; j <= hi; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const std::size_t v = std::min({prev[j] + 1, cur[j - 1] + 1, sub, over});
      cur[j] = v;
      row_min = std::min(row_min, v);
    }
    if (hi < b.size()) cur[hi + 1] = over;
    if (row_min >= over) return over;
    std::swap(prev, cur);
  }
  return std::min(prev[b.size()], over);
}

TopicDictionary::TopicDictionary(std::vector<TopicEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    if (e.index != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::BadFormat, "topic indices must be contiguous from 1; entry " +
                                            std::to_string(i + 1) + " has index " +
                                            std::to_string(e.index));
    }
    std::vector<std::string> normalized;
    for (const auto& t : e.trigger_sentences) {
      auto n = normalize_sentence(t);
      if (n.empty()) continue;
      if (std::find(normalized.begin(), normalized.end(), n) == normalized.end()) {
        normalized.push_back(std::move(n));
      }
    }
    if (normalized.empty()) {
      throw Error(ErrorCode::BadFormat, "topic " + std::to_string(e.index) + " has no trigger");
    }
    e.trigger_sentences = std::move(normalized);
    for (const auto& t : e.trigger_sentences) {
      const auto [it, inserted] = exact_.emplace(t, e.index);
      if (!inserted) {
        throw Error(ErrorCode::BadFormat, "trigger '" + t + "' appears in topics " +
                                              std::to_string(it->second) + " and " +
                                              std::to_string(e.index));
      }
      triggers_.emplace_back(t, e.index);
    }
  }
}

std::vector<int> TopicDictionary::key_topics() const {
  std::vector<int> out;
  for (const auto& e : entries_) {
    if (e.is_key_topic) out.push_back(e.index);
  }
  return out;
}

std::optional<int> TopicDictionary::exact_match(std::string_view normalized) const {
  const auto it = exact_.find(std::string(normalized));
  if (it == exact_.end()) return std::nullopt;
  return it->second;
}

TopicDictionary parse_dictionary(std::string_view json_text) {
  std::vector<TopicEntry> entries;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& t : doc.at("topics")) {
      TopicEntry e;
      e.index = t.at("index").get<int>();
      e.name = t.at("name").get<std::string>();
      e.is_key_topic = t.value("key_topic", false);
      e.trigger_sentences = t.at("triggers").get<std::vector<std::string>>();
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadFormat, std::string("topic dictionary: ") + e.what());
  }
  return TopicDictionary(std::move(entries));
}

std::string format_dictionary(const TopicDictionary& dict) {
  nlohmann::json topics = nlohmann::json::array();
  for (const auto& e : dict.entries()) {
    topics.push_back({{"index", e.index},
                      {"name", e.name},
                      {"key_topic", e.is_key_topic},
                      {"triggers", e.trigger_sentences}});
  }
  return nlohmann::json{{"topics", topics}}.dump(2) + "\n";
}

TopicDictionary load_dictionary(const std::filesystem::path& path) {
  return parse_dictionary(textio::read_file(path));
}

std::vector<SentenceCount> build_preliminary_dictionary(
    const std::vector<corpus::Transcript>& transcripts) {
  if (transcripts.empty()) throw Error(ErrorCode::EmptyDataset, "no sessions");
  std::vector<SentenceCount> counts;
  std::unordered_map<std::string, std::size_t> position;
  for (const auto& transcript : transcripts) {
    for (const auto& u : transcript) {
      if (u.speaker != corpus::Speaker::Interviewer) continue;
      auto s = normalize_sentence(u.text);
      if (s.empty()) continue;
      const auto [it, inserted] = position.emplace(s, counts.size());
      if (inserted) {
        counts.push_back({std::move(s), 1});
      } else {
        ++counts[it->second].frequency;
      }
    }
  }
  std::stable_sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
    return a.frequency > b.frequency;
  });
  return counts;
}

std::vector<SentenceCount> build_preliminary_dictionary(const corpus::Dataset& dataset) {
  std::vector<corpus::Transcript> transcripts;
  transcripts.reserve(dataset.sessions.size());
  for (const auto& s : dataset.sessions) transcripts.push_back(s.transcript);
  return build_preliminary_dictionary(transcripts);
}

std::vector<Cluster> cluster_sentences(const std::vector<std::string>& sentences,
                                       std::size_t max_dist) {
  std::set<std::string> unique;
  for (const auto& s : sentences) unique.insert(normalize_sentence(s));
  const std::vector<std::string> items(unique.begin(), unique.end());

  std::vector<std::size_t> parent(items.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [i, j] : kernels::near_pairs(items, max_dist)) {
    const auto a = find(i);
    const auto b = find(j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // items are sorted, so the root (smallest index) is the smallest member and
  // clusters come out ordered by it.
  std::vector<Cluster> clusters;
  std::vector<std::size_t> slot(items.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto root = find(i);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[root]].push_back(items[i]);
  }
  return clusters;
}

std::optional<int> match_topic(const TopicDictionary& dict, std::string_view sentence) {
  const std::string s = normalize_sentence(sentence);
  if (s.empty()) return std::nullopt;
  if (auto exact = dict.exact_match(s)) return exact;
  std::optional<int> best;
  std::size_t best_dist = kMatchDistance + 1;
  for (const auto& [trigger, index] : dict.triggers()) {
    if (best && best_dist == 1) break;
    const std::size_t bound = best ? best_dist - 1 : kMatchDistance;
    const std::size_t d = bounded_edit_distance(s, trigger, bound);
    if (d <= bound && d < best_dist) {
      best_dist = d;
      best = index;
    }
  }
  return best;
}

std::vector<TopicSegment> segment_interview(const TopicDictionary& dict,
                                            const corpus::Transcript& transcript) {
  std::vector<const corpus::Utterance*> ordered;
  ordered.reserve(transcript.size());
  double final_stop = 0.0;
  for (const auto& u : transcript) {
    ordered.push_back(&u);
    final_stop = std::max(final_stop, u.stop);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->start < b->start; });

  std::vector<TopicSegment> segments;
  for (const auto* u : ordered) {
    if (u->speaker != corpus::Speaker::Interviewer) continue;
    if (const auto topic = match_topic(dict, u->text)) {
      if (!segments.empty()) segments.back().t_end = u->start;
      segments.push_back({*topic, u->start, final_stop, {}});
    }
  }
  for (auto& seg : segments) {
    for (const auto* u : ordered) {
      if (u->speaker != corpus::Speaker::Participant) continue;
      if (u->start < seg.t_start || u->start >= seg.t_end) continue;
      const auto text = normalize_sentence(u->text);
      if (text.empty()) continue;
      if (!seg.participant_text.empty()) seg.participant_text.push_back(' ');
      seg.participant_text += text;
    }
  }
  return segments;
}

std::vector<TopicWindows> merge_segments(const std::vector<TopicSegment>& segments) {
  std::vector<TopicWindows> merged;
  for (const auto& seg : segments) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const auto& m) { return m.topic_index == seg.topic_index; });
    if (it == merged.end()) {
      merged.push_back({seg.topic_index, {}, {}});
      it = std::prev(merged.end());
    }
    it->windows.emplace_back(seg.t_start, seg.t_end);
    if (!seg.participant_text.empty()) {
      if (!it->participant_text.empty()) it->participant_text.push_back(' ');
      it->participant_text += seg.participant_text;
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.topic_index < b.topic_index; });
  return merged;
}

std::string format_segments(const std::vector<TopicSegment>& segments) {
  std::string out = "topic_index\tt_start\tt_end\ttext\n";
  for (const auto& s : segments) {
    out += std::to_string(s.topic_index);
    out.push_back('\t');
    textio::append_double(out, s.t_start);
    out.push_back('\t');
    textio::append_double(out, s.t_end);
    out.push_back('\t');
    out += s.participant_text;
    out.push_back('\n');
  }
  return out;
}

CoverageStats coverage_stats(const std::vector<std::vector<TopicSegment>>& segmented,
                             const TopicDictionary& dict) {
  if (segmented.empty()) throw Error(ErrorCode::EmptyDataset, "no interviews");
  CoverageStats stats;
  stats.interview_count = segmented.size();
  std::vector<std::size_t> present(dict.size(), 0);
  for (const auto& segments : segmented) {
    std::vector<char> seen(dict.size(), 0);
    for (const auto& s : segments) seen.at(static_cast<std::size_t>(s.topic_index - 1)) = 1;
    for (std::size_t t = 0; t < seen.size(); ++t) present[t] += seen[t];
  }
  for (std::size_t t = 0; t < dict.size(); ++t) {
    const double rate = static_cast<double>(present[t]) / static_cast<double>(segmented.size());
    stats.cover_rate.push_back(rate);
    const auto bin = std::min<std::size_t>(9, static_cast<std::size_t>(rate * 10.0));
    ++stats.histogram[bin];
  }
  return stats;
}

CoverageStats coverage_stats(const corpus::Dataset& dataset, const TopicDictionary& dict) {
  std::vector<std::vector<TopicSegment>> segmented;
  segmented.reserve(dataset.sessions.size());
  for (const auto& s : dataset.sessions) segmented.push_back(segment_interview(dict, s.transcript));
  return coverage_stats(segmented, dict);
}

}  // namespace topicdx::topic
