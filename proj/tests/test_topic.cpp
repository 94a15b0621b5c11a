#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "topicdx/error.hpp"
#include "topicdx/textio.hpp"
#include "topicdx/topic.hpp"

using namespace topicdx;
using topicdx::testing::interviewer;
using topicdx::testing::participant;

namespace {

// Memoized recursion over suffixes; shares no code with the library DP.
std::size_t reference_distance(const std::string& a, const std::string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    const auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    best = std::min(best, go(i + 1, j) + 1);
    best = std::min(best, go(i, j + 1) + 1);
    return memo[key] = best;
  };
  return go(0, 0);
}

std::string random_word(Rng& rng, std::size_t max_len, const std::string& alphabet) {
  std::string s(rng.index(max_len + 1), ' ');
  for (auto& c : s) c = alphabet[rng.index(alphabet.size())];
  return s;
}

topic::TopicDictionary small_dictionary() {
  return topic::TopicDictionary({
      {1, "origin", false, {"where are you from originally"}},
      {2, "sleep", false, {"how easy is it for you to get a good night's sleep"}},
      {3, "diagnosed", true, {"have you ever been diagnosed with depression"}},
  });
}

}  // namespace

TEST_CASE("normalize_sentence") {
  CHECK(topic::normalize_sentence("  Where ARE you   from, originally?! ") ==
        "where are you from originally");
  CHECK(topic::normalize_sentence("what's l_a like") == "what's l_a like");
  CHECK(topic::normalize_sentence("?!").empty());
}

TEST_CASE("edit_distance matches a recursive reference") {
  Rng rng(3);
  for (int i = 0; i < 400; ++i) {
    const auto a = random_word(rng, 9, "abc ");
    const auto b = random_word(rng, 9, "abc ");
    const auto d = topic::edit_distance(a, b);
    CHECK(d == reference_distance(a, b));
    CHECK(d == topic::edit_distance(b, a));
    for (std::size_t bound = 0; bound < 5; ++bound) {
      CHECK(topic::bounded_edit_distance(a, b, bound) == std::min(d, bound + 1));
    }
  }
  CHECK(topic::edit_distance("kitten", "sitting") == 3);
  CHECK(topic::edit_distance("", "abc") == 3);
}

TEST_CASE("edit_distance satisfies the triangle inequality") {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_word(rng, 8, "ab");
    const auto b = random_word(rng, 8, "ab");
    const auto c = random_word(rng, 8, "ab");
    CHECK(topic::edit_distance(a, c) <= topic::edit_distance(a, b) + topic::edit_distance(b, c));
  }
}

TEST_CASE("cluster_sentences is the single-linkage closure") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> words;
    for (int i = 0; i < 25; ++i) words.push_back(random_word(rng, 6, "ab"));
    const auto clusters = topic::cluster_sentences(words, 2);

    std::set<std::string> unique;
    for (const auto& w : words) unique.insert(topic::normalize_sentence(w));
    std::vector<std::string> items(unique.begin(), unique.end());
    // Reference: connected components by flood fill over all pairs.
    std::vector<int> comp(items.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < items.size(); ++s) {
      if (comp[s] >= 0) continue;
      std::vector<std::size_t> stack{s};
      comp[s] = next;
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < items.size(); ++v) {
          if (comp[v] < 0 && reference_distance(items[u], items[v]) <= 2) {
            comp[v] = next;
            stack.push_back(v);
          }
        }
      }
      ++next;
    }
    REQUIRE(clusters.size() == static_cast<std::size_t>(next));
    std::size_t members = 0;
    for (const auto& c : clusters) {
      CHECK(std::is_sorted(c.begin(), c.end()));
      const auto id = comp[std::find(items.begin(), items.end(), c.front()) - items.begin()];
      for (const auto& m : c) CHECK(comp[std::find(items.begin(), items.end(), m) - items.begin()] == id);
      members += c.size();
    }
    CHECK(members == items.size());
  }
}

TEST_CASE("preliminary dictionary counts interviewer sentences") {
  const corpus::Transcript a = {interviewer(0, 1, "How are you?"), participant(1, 2, "fine"),
                                interviewer(2, 3, "where are you from"),
                                interviewer(4, 5, "how are you")};
  const corpus::Transcript b = {interviewer(0, 1, "where are you from")};
  const auto counts = topic::build_preliminary_dictionary(std::vector<corpus::Transcript>{a, b});
  REQUIRE(counts.size() == 2);
  CHECK(counts[0] == topic::SentenceCount{"how are you", 2});
  CHECK(counts[1] == topic::SentenceCount{"where are you from", 2});
  CHECK_THROWS_AS(topic::build_preliminary_dictionary(std::vector<corpus::Transcript>{}), Error);
}

TEST_CASE("match_topic: exact, near, and too far") {
  const auto dict = small_dictionary();
  CHECK(topic::match_topic(dict, "Where are you from originally?") == 1);
  CHECK(topic::match_topic(dict, "where are you from original") == 1);
  CHECK(topic::match_topic(dict, "have you been diagnosed with depression") == std::nullopt);
  CHECK(topic::match_topic(dict, "") == std::nullopt);
}

TEST_CASE("dictionary validation") {
  using topic::TopicEntry;
  CHECK_THROWS_AS(topic::TopicDictionary({{2, "x", false, {"a"}}}), Error);
  CHECK_THROWS_AS(topic::TopicDictionary({{1, "x", false, {}}}), Error);
  CHECK_THROWS_AS(topic::TopicDictionary({{1, "x", false, {"same"}}, {2, "y", false, {"same"}}}), Error);
  const auto& example = topic::example_dictionary();
  CHECK(example.size() == 83);
  CHECK(example.key_topics() == std::vector<int>{76, 77, 78, 79, 80, 81, 82, 83});
  const auto again = topic::parse_dictionary(topic::format_dictionary(example));
  CHECK(topic::format_dictionary(again) == topic::format_dictionary(example));
}

TEST_CASE("segment_interview closes each topic at the next matched question") {
  const auto dict = small_dictionary();
  const corpus::Transcript t = {
      interviewer(0.0, 1.0, "hi how are you"),
      participant(1.0, 2.0, "good"),
      interviewer(2.0, 3.0, "where are you from originally"),
      participant(3.0, 5.0, "Chicago."),
      interviewer(6.0, 7.0, "how easy is it for you to get a good night's sleep"),
      participant(7.0, 9.0, "not easy"),
      interviewer(10.0, 11.0, "where are you from originally"),
      participant(11.0, 12.0, "i said chicago"),
  };
  const auto segs = topic::segment_interview(dict, t);
  REQUIRE(segs.size() == 3);
  CHECK(segs[0] == topic::TopicSegment{1, 2.0, 6.0, "chicago"});
  CHECK(segs[1] == topic::TopicSegment{2, 6.0, 10.0, "not easy"});
  CHECK(segs[2] == topic::TopicSegment{1, 10.0, 12.0, "i said chicago"});

  const auto merged = topic::merge_segments(segs);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].windows.size() == 2);
  CHECK(merged[0].participant_text == "chicago i said chicago");

  const auto cov = topic::coverage_stats(std::vector<std::vector<topic::TopicSegment>>{segs, {}}, dict);
  CHECK(cov.cover_rate == std::vector<double>{0.5, 0.5, 0.0});
  CHECK(cov.histogram[5] == 2);
  CHECK(cov.histogram[0] == 1);
}

TEST_CASE("segments partition the matched span") {
  const auto& dict = topic::example_dictionary();
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    corpus::Transcript t;
    double clock = 0.0;
    for (int q = 0; q < 12; ++q) {
      const auto& e = dict.entries()[rng.index(dict.size())];
      t.push_back(interviewer(clock, clock + 1.0, e.trigger_sentences.front()));
      t.push_back(participant(clock + 1.0, clock + 2.0, "answer"));
      clock += 2.0 + rng.uniform();
    }
    const auto segs = topic::segment_interview(dict, t);
    REQUIRE(segs.size() == 12);
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) CHECK(segs[i].t_end == segs[i + 1].t_start);
    CHECK(segs.back().t_end == t.back().stop);
  }
}
