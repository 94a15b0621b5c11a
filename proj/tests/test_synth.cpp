#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "topicdx/corpus.hpp"
#include "topicdx/error.hpp"
#include "topicdx/features.hpp"
#include "topicdx/synth.hpp"
#include "topicdx/textio.hpp"
#include "topicdx/topic.hpp"

using namespace topicdx;
using topicdx::testing::TempDir;

namespace {

synth::SynthSpec small_spec(std::size_t n = 24) {
  synth::SynthSpec spec;
  spec.session_count = n;
  spec.seed = 99;
  return spec;
}

features::FeatureInputs example_inputs() {
  return {topic::example_dictionary(), features::example_word_categories(),
          features::example_key_topic_rules()};
}

}  // namespace

TEST_CASE("generated corpora are deterministic and loadable") {
  TempDir a("synth_a"), b("synth_b");
  const auto truth_a = synth::generate_corpus(small_spec(), a.path());
  const auto truth_b = synth::generate_corpus(small_spec(), b.path());
  CHECK(textio::read_file(a.path() / "manifest.json") == textio::read_file(b.path() / "manifest.json"));
  CHECK(textio::read_file(a.path() / "planted_truth.json") ==
        textio::read_file(b.path() / "planted_truth.json"));
  const auto id = truth_a.session_ids.front();
  for (const char* f : {"transcript.tsv", "covarep.csv", "formant.csv", "au.csv"}) {
    CHECK(textio::read_file(a.path() / "sessions" / id / f) == textio::read_file(b.path() / "sessions" / id / f));
  }

  const auto ds = corpus::load_dataset(a.path() / "manifest.json");
  REQUIRE(ds.sessions.size() == 24);
  for (std::size_t i = 0; i < ds.sessions.size(); ++i) {
    CHECK(ds.sessions[i].meta.phq8 == truth_a.labels[i]);
    CHECK(ds.sessions[i].meta.phq8 >= 0);
    CHECK(ds.sessions[i].meta.phq8 <= 24);
  }
  const auto again = synth::parse_truth(synth::format_truth(truth_a));
  CHECK(again.labels == truth_a.labels);
  CHECK(again.slots.size() == truth_a.slots.size());
  CHECK(again.values == truth_b.values);
}

TEST_CASE("featurized planted slots equal the generator's values") {
  TempDir dir("synth_values");
  const auto truth = synth::generate_corpus(small_spec(30), dir.path());
  const auto ds = corpus::load_dataset(dir.path() / "manifest.json");
  const auto table = features::featurize(ds, example_inputs());
  REQUIRE(truth.slots.size() == 8);
  for (std::size_t s = 0; s < truth.slots.size(); ++s) {
    CAPTURE(truth.slots[s].name);
    CHECK(table.names[truth.slots[s].index] == truth.slots[s].name);
    for (std::size_t i = 0; i < table.size(); ++i) {
      CHECK(table.values(i, truth.slots[s].index) == doctest::Approx(truth.values[i][s]).epsilon(1e-9));
    }
  }
  // Planted topics are always asked.
  const features::FeatureLayout layout(topic::example_dictionary());
  for (const auto& p : synth::default_planted()) {
    for (std::size_t i = 0; i < table.size(); ++i) CHECK(table.values(i, layout.presence_index(p.topic)) == 1.0);
  }
}

TEST_CASE("labels follow the planted linear rule up to noise and clipping") {
  TempDir dir("synth_labels");
  auto spec = small_spec(60);
  spec.noise_stdev = 0.0;
  const auto truth = synth::generate_corpus(spec, dir.path());
  for (std::size_t i = 0; i < truth.labels.size(); ++i) {
    double v = truth.intercept;
    for (std::size_t s = 0; s < truth.slots.size(); ++s) {
      v += truth.slots[s].weight * (truth.values[i][s] - truth.slots[s].center);
    }
    CHECK(truth.labels[i] == static_cast<int>(std::clamp(std::round(v), 0.0, 24.0)));
  }
}

TEST_CASE("spec validation and round-trip") {
  const auto& dict = topic::example_dictionary();
  synth::SynthSpec spec;
  CHECK_NOTHROW(spec.validate(dict));
  const auto back = synth::parse_spec(synth::format_spec(spec));
  CHECK(synth::format_spec(back) == synth::format_spec(spec));

  auto bad = spec;
  bad.session_count = 0;
  CHECK_THROWS_AS(bad.validate(dict), Error);
  bad = spec;
  bad.planted = {{5, features::BlockKind::Key, 0, 1.0}};
  CHECK_THROWS_AS(bad.validate(dict), Error);
  bad = spec;
  bad.planted = {{4, features::BlockKind::Covarep, 74, 1.0}};
  CHECK_THROWS_AS(bad.validate(dict), Error);
  bad = spec;
  bad.trigger_edits = 4;
  CHECK_THROWS_AS(bad.validate(dict), Error);
}

TEST_CASE("recovery counts planted indices and identical twins") {
  synth::PlantedTruth truth;
  truth.slots = {{1, "a", 1.0, 0.0}, {3, "b", 1.0, 0.0}};
  CHECK(synth::verify_recovery(truth, std::vector<std::size_t>{1, 2}) == 0.5);
  CHECK(synth::verify_recovery(truth, std::vector<std::size_t>{3, 1}) == 1.0);
  Matrix x(3, 4);
  for (std::size_t r = 0; r < 3; ++r) {
    x(r, 0) = static_cast<double>(r);
    x(r, 1) = static_cast<double>(r);
    x(r, 2) = 1.0;
    x(r, 3) = static_cast<double>(r * r);
  }
  CHECK(synth::verify_recovery(truth, std::vector<std::size_t>{0}, x) == 0.5);
  CHECK(synth::verify_recovery(truth, std::vector<std::size_t>{2}, x) == 0.0);
}
