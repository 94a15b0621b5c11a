#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "topicdx/error.hpp"
#include "topicdx/features.hpp"
#include "topicdx/textio.hpp"
#include "topicdx/topic.hpp"

using namespace topicdx;
using namespace topicdx::features;
using topicdx::testing::interviewer;
using topicdx::testing::participant;

namespace {

const std::string& trigger(int topic) {
  return topic::example_dictionary().entry(topic).trigger_sentences.front();
}

/// Topic 4 from 0 s to 10 s, key topic 77 from 10 s to 16 s. Audio covers
/// 0..20 s; video stops at 12 s.
corpus::Session two_topic_session() {
  corpus::Session s;
  s.meta = {"p001", 1, 7, corpus::Split::Train};
  s.transcript = {
      interviewer(0.0, 2.0, trigger(4)),
      participant(2.0, 6.0, "I am from a small town and I feel sad"),
      interviewer(10.0, 12.0, trigger(77)),
      participant(12.0, 16.0, "yes i have been diagnosed"),
  };
  s.covarep = testing::ramp_series(corpus::kCovarepChannels, 2000, 0.0);
  s.formant = testing::ramp_series(corpus::kFormantChannels, 2000, 0.0, 100.0);
  s.aus = testing::ramp_series(corpus::kActionUnitChannels, 1200, 0.0);
  return s;
}

FeatureInputs example_inputs() {
  return {topic::example_dictionary(), example_word_categories(), example_key_topic_rules()};
}

}  // namespace

TEST_CASE("layout of the example dictionary") {
  const FeatureLayout layout(topic::example_dictionary());
  CHECK(layout.total_dim() == 32462);
  CHECK(layout.block_size(BlockKind::Liwc) == 7719);
  CHECK(layout.block_size(BlockKind::Covarep) == 18426);
  CHECK(layout.block_size(BlockKind::Formant) == 1245);
  CHECK(layout.block_size(BlockKind::ActionUnit) == 4980);
  CHECK(layout.block_size(BlockKind::Presence) == 83);
  CHECK(layout.block_size(BlockKind::Key) == 8);
  CHECK(layout.name(0) == "gender");
  CHECK(layout.name(layout.covarep_index(30, 7, Stat::Max)) == "t30.covarep.ch07.max");
  CHECK(layout.name(layout.key_index(78).value()) == "t78.key");
  CHECK(layout.name(layout.liwc_index(9, 31)) == "t09.liwc.cat31");
  CHECK_FALSE(layout.key_index(4).has_value());
}

TEST_CASE("layout names and descriptors round-trip for every slot") {
  const FeatureLayout layout(topic::example_dictionary());
  std::size_t per_kind[7] = {};
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    const auto name = layout.name(i);
    REQUIRE(layout.index_of_name(name) == i);
    const auto d = layout.describe(i);
    REQUIRE(layout.index_of(d) == i);
    ++per_kind[static_cast<int>(d.kind)];
  }
  CHECK(per_kind[static_cast<int>(BlockKind::Covarep)] == 18426);
  CHECK(per_kind[static_cast<int>(BlockKind::ActionUnit)] == 4980);
}

TEST_CASE("apply_functionals on a hand-worked matrix") {
  Matrix m(3, 2);
  m(0, 0) = 1.0, m(1, 0) = 4.0, m(2, 0) = -2.0;
  m(0, 1) = std::nan(""), m(1, 1) = std::numeric_limits<double>::infinity(), m(2, 1) = std::nan("");
  const auto out = apply_functionals(m);
  CHECK(out == std::vector<double>{1.0, 4.0, -2.0, -1.0, -1.0, -1.0});
  CHECK_THROWS_AS(apply_functionals(Matrix(0, 3)), Error);
}

TEST_CASE("functionals keep min <= mean <= max and reproduce constants") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.index(30);
    Matrix m(rows, 4);
    const double constant = rng.normal() * 1e6;
    for (std::size_t r = 0; r < rows; ++r) {
      m(r, 0) = rng.normal() * 1e3;
      m(r, 1) = constant;
      m(r, 2) = rng.bernoulli(0.3) ? std::nan("") : rng.uniform();
      m(r, 3) = 1e12 + rng.uniform();
    }
    const auto out = apply_functionals(m);
    for (std::size_t c = 0; c < 4; ++c) {
      if (out[c * 3] == kMissing && out[c * 3 + 1] == kMissing) continue;
      CHECK(out[c * 3 + 2] <= out[c * 3]);
      CHECK(out[c * 3] <= out[c * 3 + 1]);
    }
    CHECK(out[3] == constant);
  }
}

TEST_CASE("liwc_counts are per-token proportions with prefix matching") {
  const auto& dict = example_word_categories();
  const auto happy = dict.category_index("posemo").value();
  const auto affect = dict.category_index("affect").value();
  const auto counts = liwc_counts(dict, "happiness is good and nice");
  CHECK(counts[happy] == doctest::Approx(3.0 / 5.0));
  CHECK(counts[affect] == doctest::Approx(3.0 / 5.0));
  const auto empty = liwc_counts(dict, "");
  CHECK(std::all_of(empty.begin(), empty.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("liwc proportions sum to at most one with single-category words") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < kCategoryCount; ++i) names.push_back("c" + std::to_string(i));
  WordCategoryDictionary dict(names, {{"a", {0}}, {"b", {1}}, {"c*", {2}}});
  Rng rng(8);
  const char* words[] = {"a", "b", "cat", "dog", "c"};
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    for (std::size_t i = 0, n = 1 + rng.index(12); i < n; ++i) {
      if (i) text += " ";
      text += words[rng.index(5)];
    }
    const auto counts = liwc_counts(dict, text);
    double sum = 0.0;
    for (double v : counts) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
    CHECK(sum <= 1.0 + 1e-12);
  }
}

TEST_CASE("word-category parsing errors") {
  CHECK_THROWS_AS(parse_word_categories("[categories]\na\n[entries]\nx : a\n"), Error);
  std::string text = "[categories]\n";
  for (std::size_t i = 0; i < kCategoryCount; ++i) text += "c" + std::to_string(i) + "\n";
  CHECK_NOTHROW(parse_word_categories(text + "[entries]\nword* : c1,c2\n"));
  CHECK_THROWS_AS(parse_word_categories(text + "[entries]\nword : nope\n"), Error);
}

TEST_CASE("key-topic classification uses the first matching category") {
  const auto& rules = example_key_topic_rules();
  REQUIRE(rules.size() == 8);
  const auto& diagnosed = *std::find_if(rules.begin(), rules.end(),
                                        [](const auto& r) { return r.topic_index == 77; });
  CHECK(classify_key_topic(diagnosed, "no i haven't ever") == 0.0);
  CHECK(classify_key_topic(diagnosed, "i was diagnosed last year") == 1.0);
  CHECK(classify_key_topic(diagnosed, "hmm") == kMissing);
  CHECK(classify_key_topic(diagnosed, "") == kMissing);
  CHECK_THROWS_AS(parse_key_topic_rules(R"({"rules": [{"topic": 1, "categories": [
      {"name": "a", "phrases": ["x"]}]}]})"),
                  Error);
  CHECK_THROWS_AS(parse_key_topic_rules(R"({"rules": [{"topic": 1, "categories": [
      {"name": "a", "phrases": ["x"]}, {"name": "b", "phrases": ["x"]}]}]})"),
                  Error);
}

TEST_CASE("assemble_vector fills present topics and marks absent ones") {
  const auto session = two_topic_session();
  const auto& dict = topic::example_dictionary();
  const FeatureLayout layout(dict);
  const auto segments = topic::segment_interview(dict, session.transcript);
  REQUIRE(segments.size() == 2);
  const auto vec = assemble_vector(session, segments, layout, example_inputs()).values;
  REQUIRE(vec.size() == 32462);
  CHECK(vec[0] == 1.0);
  CHECK(vec[layout.presence_index(4)] == 1.0);
  CHECK(vec[layout.presence_index(77)] == 1.0);
  CHECK(vec[layout.presence_index(5)] == 0.0);
  CHECK(vec[layout.key_index(77).value()] == 1.0);
  CHECK(vec[layout.key_index(78).value()] == kMissing);

  for (int t = 1; t <= 83; ++t) {
    const auto start = layout.topic_block_start(t);
    const auto audio_start = start + kCategoryCount;
    const auto video_start = audio_start + kAudioSlots;
    const auto populated = [&](std::size_t a, std::size_t n) {
      return std::count_if(vec.begin() + static_cast<std::ptrdiff_t>(a),
                           vec.begin() + static_cast<std::ptrdiff_t>(a + n),
                           [](double v) { return v != kMissing; });
    };
    if (t == 4 || t == 77) {
      CHECK(populated(audio_start, kAudioSlots) == 237);
      CHECK(populated(video_start, kVideoSlots) == 60);
    } else {
      CHECK(populated(start, kTopicBlock) == 0);
    }
  }
  // Topic 4 spans [0, 10): covarep channel 3 mean over 1000 frames.
  CHECK(vec[layout.covarep_index(4, 3, Stat::Mean)] == doctest::Approx(3.0 + 0.001 * 499.5));
  CHECK(vec[layout.formant_index(4, 0, Stat::Min)] == 100.0);
  // Video ends at 12 s, inside topic 77, which still gets frames 10..12 s.
  CHECK(vec[layout.au_index(77, 0, Stat::Min)] == doctest::Approx(1.0));
}

TEST_CASE("an empty stream window yields a missing block while the topic stays present") {
  auto session = two_topic_session();
  session.aus = testing::ramp_series(corpus::kActionUnitChannels, 500, 0.0);  // ends at 5 s
  const auto& dict = topic::example_dictionary();
  const FeatureLayout layout(dict);
  const auto vec = assemble_vector(session, topic::segment_interview(dict, session.transcript), layout,
                                   example_inputs())
                       .values;
  CHECK(vec[layout.presence_index(77)] == 1.0);
  for (std::size_t c = 0; c < corpus::kActionUnitChannels; ++c) {
    CHECK(vec[layout.au_index(77, c, Stat::Mean)] == kMissing);
  }
  CHECK(vec[layout.covarep_index(77, 0, Stat::Mean)] != kMissing);
}

TEST_CASE("assemble_vector rejects a mismatched layout and is deterministic") {
  const auto session = two_topic_session();
  const auto& dict = topic::example_dictionary();
  const topic::TopicDictionary small({{1, "x", false, {"hello there"}}});
  const FeatureLayout wrong(small);
  CHECK_THROWS_AS(assemble_vector(session, {}, wrong, example_inputs()), Error);
  const FeatureLayout layout(dict);
  const auto segs = topic::segment_interview(dict, session.transcript);
  CHECK(assemble_vector(session, segs, layout, example_inputs()).values ==
        assemble_vector(session, segs, layout, example_inputs()).values);
}

TEST_CASE("context-unaware vectors cover the whole interview") {
  const auto session = two_topic_session();
  const auto vec = context_unaware_vector(session, example_word_categories()).values;
  REQUIRE(vec.size() == kUnawareDim);
  CHECK(context_unaware_names().size() == kUnawareDim);
  CHECK(vec[0] == 1.0);
  // covarep channel 0 max over all 2000 frames
  CHECK(vec[1 + kCategoryCount + 1] == doctest::Approx(0.001 * 1999));
}

TEST_CASE("feature tables and layouts round-trip through text") {
  corpus::Dataset ds;
  ds.sessions.push_back(two_topic_session());
  auto second = two_topic_session();
  second.meta = {"p002", 0, 15, corpus::Split::Dev};
  ds.sessions.push_back(second);
  const auto table = featurize(ds, example_inputs());
  const auto back = parse_feature_table(format_feature_table(table));
  CHECK(back.session_ids == table.session_ids);
  CHECK(back.phq8 == std::vector<int>{7, 15});
  CHECK(back.gender == std::vector<int>{1, 0});
  CHECK(back.values == table.values);
  CHECK(back.names == table.names);
  CHECK(parse_layout(format_layout(table.names)) == table.names);
}

TEST_CASE("shipped data files match the built-in examples") {
  const std::filesystem::path dir = TOPICDX_DATA_DIR;
  CHECK(topic::format_dictionary(topic::load_dictionary(dir / "topics83.json")) ==
        topic::format_dictionary(topic::example_dictionary()));
  const auto cats = load_word_categories(dir / "word_categories.dic");
  CHECK(cats.category_names() == example_word_categories().category_names());
  for (const char* w : {"sad", "happiness", "work", "mother", "i"}) {
    const auto* a = cats.lookup(w);
    const auto* b = example_word_categories().lookup(w);
    CHECK((a == nullptr) == (b == nullptr));
    if (a && b) CHECK(*a == *b);
  }
  const auto rules = load_key_topic_rules(dir / "key_topic_rules.json");
  REQUIRE(rules.size() == example_key_topic_rules().size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    CHECK(rules[i].topic_index == example_key_topic_rules()[i].topic_index);
    CHECK(rules[i].categories.size() == example_key_topic_rules()[i].categories.size());
  }
}
