#include "topicdx/cli.hpp"

#include <filesystem>
#include <iostream>
#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "topicdx/corpus.hpp"
#include "topicdx/error.hpp"
#include "topicdx/eval.hpp"
#include "topicdx/features.hpp"
#include "topicdx/model.hpp"
#include "topicdx/parallel.hpp"
#include "topicdx/select.hpp"
#include "topicdx/synth.hpp"
#include "topicdx/textio.hpp"
#include "topicdx/topic.hpp"

namespace topicdx::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  int jobs = 0;
  std::uint64_t seed = 0;
  std::string out;
  // inputs
  std::string manifest;
  std::string dictionary;
  std::string categories;
  std::string rules;
  std::string features;
  std::string train_features;
  std::string test_features;
  std::vector<std::string> splits;
  bool context_unaware = false;
  // build-dict
  std::size_t cluster_distance = topic::kMatchDistance;
  // selection
  std::string mode = "two_step";
  std::size_t patience = select::kDefaultPatience;
  std::size_t max_k = select::kDefaultMaxK;
  // models
  std::vector<std::string> models;
  std::vector<std::size_t> trees;
  std::vector<std::string> hyper;
  std::size_t k = 0;
  std::size_t folds = 10;
  bool clamp = false;
  bool baselines = false;
  std::string protocol = "dev";
  // synth
  std::size_t sessions = 0;
  std::string spec;
};

struct Resources {
  topic::TopicDictionary topics;
  features::WordCategoryDictionary categories;
  std::vector<features::KeyTopicRule> rules;
};

Resources load_resources(const Options& o) {
  Resources r;
  r.topics = o.dictionary.empty() ? topic::example_dictionary() : topic::load_dictionary(o.dictionary);
  r.categories = o.categories.empty() ? features::example_word_categories()
                                      : features::load_word_categories(o.categories);
  r.rules = o.rules.empty() ? features::example_key_topic_rules() : features::load_key_topic_rules(o.rules);
  return r;
}

features::FeatureTable keep_rows(const features::FeatureTable& table,
                                 const std::vector<corpus::Split>& splits) {
  features::FeatureTable out;
  out.names = table.names;
  out.values = Matrix(0, table.values.cols());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (std::find(splits.begin(), splits.end(), table.split[i]) == splits.end()) continue;
    out.session_ids.push_back(table.session_ids[i]);
    out.phq8.push_back(table.phq8[i]);
    out.gender.push_back(table.gender[i]);
    out.split.push_back(table.split[i]);
    out.values.append_row(table.values.row(i));
  }
  return out;
}

std::vector<corpus::Split> parse_splits(const std::vector<std::string>& names) {
  std::vector<corpus::Split> out;
  for (const auto& n : names) out.push_back(corpus::parse_split(n));
  return out;
}

features::FeatureTable featurize_manifest(const Options& o, const corpus::Dataset& dataset) {
  const auto res = load_resources(o);
  if (o.context_unaware) return features::featurize_context_unaware(dataset, res.categories);
  return features::featurize(dataset, {res.topics, res.categories, res.rules});
}

/// The feature table named by --features, or built from --manifest.
features::FeatureTable input_table(const Options& o) {
  if (!o.features.empty()) return features::parse_feature_table(textio::read_file(o.features));
  if (o.manifest.empty()) throw CLI::ValidationError("--features or --manifest is required");
  auto table = featurize_manifest(o, corpus::load_dataset(o.manifest));
  if (!o.splits.empty()) table = keep_rows(table, parse_splits(o.splits));
  return table;
}

std::vector<model::RegressorSpec> build_grid(const Options& o) {
  std::vector<model::RegressorSpec> grid;
  const std::vector<std::string> kinds = o.models.empty() ? std::vector<std::string>{"sgd_squared"} : o.models;
  for (const auto& name : kinds) {
    model::RegressorSpec spec;
    spec.kind = model::parse_kind(name);
    if (spec.kind == model::Kind::RandomForest) {
      const auto sizes = o.trees.empty() ? model::default_forest_sizes() : o.trees;
      for (auto n : sizes) {
        spec.tree_count = n;
        grid.push_back(spec);
      }
    } else {
      grid.push_back(spec);
    }
  }
  for (const auto& kv : o.hyper) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidSpec, "--hyper expects key=value, got '" + kv + "'");
    for (auto& spec : grid) spec.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return grid;
}

eval::EvalConfig eval_config(const Options& o) {
  eval::EvalConfig c;
  c.grid = build_grid(o);
  if (o.k > 0) c.k_range = {o.k};
  c.selection.mode = select::parse_mode(o.mode);
  c.selection.patience = o.patience;
  c.selection.max_k = o.max_k;
  c.folds = o.folds;
  c.seed = o.seed;
  c.clamp = o.clamp;
  return c;
}

void write_echo(const fs::path& out_dir, const CLI::App& sub) {
  nlohmann::ordered_json doc;
  doc["tool"] = "topicdx";
  doc["version"] = kVersion;
  doc["subcommand"] = sub.get_name();
  doc["jobs"] = jobs();
  auto& opts = doc["options"] = nlohmann::ordered_json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help") continue;
    const auto& results = opt->results();
    if (results.empty()) {
      opts[name] = opt->get_default_str();
    } else if (results.size() == 1) {
      opts[name] = results.front();
    } else {
      opts[name] = results;
    }
  }
  textio::write_file(out_dir / "config_echo.json", doc.dump(2) + "\n");
}

// ---- subcommands ---------------------------------------------------------------

void cmd_build_dict(const Options& o) {
  const auto dataset = corpus::load_dataset(o.manifest);
  const auto prelim = topic::build_preliminary_dictionary(dataset);
  std::string table = "sentence\tfrequency\n";
  std::vector<std::string> sentences;
  for (const auto& s : prelim) {
    table += s.sentence + "\t" + std::to_string(s.frequency) + "\n";
    sentences.push_back(s.sentence);
  }
  textio::write_file(fs::path(o.out) / "preliminary_dictionary.tsv", table);
  const auto clusters = topic::cluster_sentences(sentences, o.cluster_distance);
  std::string out = "cluster\tsentence\n";
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (const auto& s : clusters[c]) out += std::to_string(c) + "\t" + s + "\n";
  }
  textio::write_file(fs::path(o.out) / "clusters.tsv", out);
  std::cout << prelim.size() << " distinct sentences, " << clusters.size() << " clusters\n";
}

void cmd_segment(const Options& o) {
  const auto res = load_resources(o);
  const auto dataset = corpus::load_dataset(o.manifest);
  std::vector<std::vector<topic::TopicSegment>> all(dataset.sessions.size());
  parallel_for(dataset.sessions.size(), [&](std::size_t i) {
    all[i] = topic::segment_interview(res.topics, dataset.sessions[i].transcript);
  });
  for (std::size_t i = 0; i < all.size(); ++i) {
    textio::write_file(fs::path(o.out) / "segments" / (dataset.sessions[i].meta.session_id + ".tsv"),
                       topic::format_segments(all[i]));
  }
  const auto cov = topic::coverage_stats(all, res.topics);
  nlohmann::ordered_json doc;
  doc["interview_count"] = cov.interview_count;
  auto& rates = doc["cover_rate"] = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < cov.cover_rate.size(); ++t) {
    rates.push_back({{"topic", t + 1}, {"name", res.topics.entry(static_cast<int>(t + 1)).name},
                     {"rate", cov.cover_rate[t]}});
  }
  doc["histogram"] = cov.histogram;
  textio::write_file(fs::path(o.out) / "coverage.json", doc.dump(2) + "\n");
}

void cmd_featurize(const Options& o) {
  auto table = featurize_manifest(o, corpus::load_dataset(o.manifest));
  if (!o.splits.empty()) table = keep_rows(table, parse_splits(o.splits));
  textio::write_file(fs::path(o.out) / "features.csv", features::format_feature_table(table));
  textio::write_file(fs::path(o.out) / "layout.tsv", features::format_layout(table.names));
  std::cout << table.size() << " sessions x " << table.values.cols() << " features\n";
}

void cmd_select(const Options& o) {
  const auto table = input_table(o);
  std::vector<double> y(table.phq8.begin(), table.phq8.end());
  select::SelectOptions opts;
  opts.mode = select::parse_mode(o.mode);
  opts.patience = o.patience;
  opts.max_k = o.max_k;
  const auto report = select::select_features(table.values, y, opts);
  textio::write_file(fs::path(o.out) / "selection.json", select::format_report(report, table.names));
  std::cout << "selected " << report.chosen_k << " of " << report.cfs_subset.size() << " features\n";
}

void cmd_train(const Options& o) {
  const auto table = input_table(o);
  auto config = eval_config(o);
  const auto fitted = eval::fit_pipeline(table, config);
  textio::write_file(fs::path(o.out) / "model.json", model::save_model(fitted.model));
  std::cout << "trained " << fitted.spec.label() << " on " << fitted.model.feature_indices.size() << " features\n";
}

void write_eval(const Options& o, const std::vector<eval::EvalReport>& reports) {
  const fs::path out(o.out);
  textio::write_file(out / "report.json", eval::format_report(reports.front()));
  for (std::size_t i = 1; i < reports.size(); ++i) {
    textio::write_file(out / ("baseline_" + std::to_string(i) + ".json"), eval::format_report(reports[i]));
  }
  if (!reports.front().grid_table.empty()) textio::write_file(out / "grid.csv", reports.front().grid_table);
  const auto table = eval::format_results_table(reports);
  textio::write_file(out / "table.txt", table);
  std::cout << table;
}

void cmd_cv(const Options& o) {
  const auto config = eval_config(o);
  std::optional<corpus::Dataset> dataset;
  features::FeatureTable table;
  if (o.features.empty() && !o.manifest.empty()) {
    dataset = corpus::load_dataset(o.manifest);
    table = featurize_manifest(o, *dataset);
  } else {
    table = input_table(o);
  }
  std::vector<eval::EvalReport> reports;
  reports.push_back(eval::run_cv(table, config));
  reports.back().method = o.context_unaware ? "Context-unaware" : "Topic-wise";
  if (o.baselines) {
    reports.push_back(eval::baseline_mean_cv(table, config));
    reports.back().method = "Mean baseline";
    if (dataset && !o.context_unaware) {
      reports.push_back(eval::baseline_context_unaware(*dataset, load_resources(o).categories, config));
      reports.back().method = "Context-unaware";
    }
  }
  write_eval(o, reports);
}

void cmd_grid(const Options& o) {
  Options wide = o;
  if (wide.models.empty()) wide.models = {"sgd_squared", "svr_linear", "random_forest"};
  const auto config = eval_config(wide);
  const auto table = input_table(wide);
  auto report = eval::run_cv(table, config);
  report.method = "Best cell";
  textio::write_file(fs::path(o.out) / "grid.csv", report.grid_table);
  textio::write_file(fs::path(o.out) / "report.json", eval::format_report(report));
  std::cout << "best: " << report.spec.label() << " k=" << report.k << " rmse=" << report.metrics.rmse << "\n";
}

void cmd_holdout(const Options& o) {
  const auto config = eval_config(o);
  const auto protocol = eval::parse_protocol(o.protocol);
  features::FeatureTable train, test;
  if (!o.train_features.empty() || !o.test_features.empty()) {
    if (o.train_features.empty() || o.test_features.empty()) {
      throw CLI::ValidationError("--train-features and --test-features go together");
    }
    train = features::parse_feature_table(textio::read_file(o.train_features));
    test = features::parse_feature_table(textio::read_file(o.test_features));
  } else {
    if (o.manifest.empty()) throw CLI::ValidationError("--manifest or --train-features/--test-features required");
    const auto all = featurize_manifest(o, corpus::load_dataset(o.manifest));
    if (protocol == eval::Protocol::Dev) {
      train = keep_rows(all, {corpus::Split::Train});
      test = keep_rows(all, {corpus::Split::Dev});
    } else {
      train = keep_rows(all, {corpus::Split::Train, corpus::Split::Dev});
      test = keep_rows(all, {corpus::Split::Test});
    }
  }
  std::vector<eval::EvalReport> reports;
  reports.push_back(eval::run_holdout(train, test, config, protocol));
  reports.back().method = o.context_unaware ? "Context-unaware" : "Topic-wise";
  if (o.baselines) {
    reports.push_back(eval::baseline_mean_holdout(train, test, protocol));
    reports.back().method = "Mean baseline";
  }
  write_eval(o, reports);
}

void cmd_synth(const Options& o) {
  synth::SynthSpec spec = o.spec.empty() ? synth::SynthSpec{} : synth::parse_spec(textio::read_file(o.spec));
  if (o.sessions > 0) spec.session_count = o.sessions;
  spec.seed = o.seed;
  const auto res = load_resources(o);
  const auto truth = synth::generate_corpus(spec, o.out, res.topics, res.categories, res.rules);
  std::cout << spec.session_count << " sessions, " << truth.slots.size() << " planted slots\n";
}

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Input: return kInput;
    case ErrorCategory::Pipeline: return kPipeline;
    case ErrorCategory::Io: return kIo;
  }
  return kPipeline;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Topic-wise multi-modal depression regression pipeline", "topicdx"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
    sub->add_option("--out", o.out, "Output directory")->required();
    if (seeded) sub->add_option("--seed", o.seed, "Global seed")->required();
  };
  auto add_resources = [&](CLI::App* sub) {
    sub->add_option("--dictionary", o.dictionary, "Topic dictionary JSON (default: built-in example)");
    sub->add_option("--categories", o.categories, "Word-category dictionary (default: built-in example)");
    sub->add_option("--rules", o.rules, "Key-topic rules JSON (default: built-in example)");
  };
  auto add_table_input = [&](CLI::App* sub) {
    sub->add_option("--features", o.features, "Feature table from `featurize`");
    sub->add_option("--manifest", o.manifest, "Session manifest (featurized on the fly)");
    sub->add_option("--splits", o.splits, "Keep only these splits (train, dev, test)")->delimiter(',');
    sub->add_flag("--context-unaware", o.context_unaware, "Whole-interview features instead of topic-wise");
    add_resources(sub);
  };
  auto add_selection = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "two_step or step2_only")->capture_default_str();
    sub->add_option("--patience", o.patience, "CFS patience")->capture_default_str();
    sub->add_option("--max-k", o.max_k, "Largest feature count")->capture_default_str();
  };
  auto add_models = [&](CLI::App* sub) {
    sub->add_option("--models", o.models, "sgd_squared, svr_linear, random_forest, mean")->delimiter(',');
    sub->add_option("--trees", o.trees, "Forest sizes")->delimiter(',');
    sub->add_option("--hyper", o.hyper, "Hyperparameter override key=value");
    sub->add_option("--k", o.k, "Fixed feature count (default: search 1..max-k)");
    sub->add_option("--folds", o.folds, "Cross-validation folds")->capture_default_str();
    sub->add_flag("--clamp", o.clamp, "Clip predictions to [0, 24] before scoring");
  };

  auto* build_dict = app.add_subcommand("build-dict", "Distinct interviewer sentences and their clusters");
  add_common(build_dict, false);
  build_dict->add_option("--manifest", o.manifest, "Session manifest")->required();
  build_dict->add_option("--cluster-distance", o.cluster_distance, "Edit distance for clustering")
      ->capture_default_str();

  auto* segment = app.add_subcommand("segment", "Topic segments per session and cover rates");
  add_common(segment, false);
  segment->add_option("--manifest", o.manifest, "Session manifest")->required();
  add_resources(segment);

  auto* featurize = app.add_subcommand("featurize", "Feature table for every session");
  add_common(featurize, false);
  featurize->add_option("--manifest", o.manifest, "Session manifest")->required();
  featurize->add_option("--splits", o.splits, "Keep only these splits")->delimiter(',');
  featurize->add_flag("--context-unaware", o.context_unaware, "Whole-interview features");
  add_resources(featurize);

  auto* select_cmd = app.add_subcommand("select", "Two-step feature selection");
  add_common(select_cmd, false);
  add_table_input(select_cmd);
  add_selection(select_cmd);

  auto* train = app.add_subcommand("train", "Fit one model and save it");
  add_common(train, true);
  add_table_input(train);
  add_selection(train);
  add_models(train);

  auto* grid = app.add_subcommand("grid", "Cross-validated (model, k) grid");
  add_common(grid, true);
  add_table_input(grid);
  add_selection(grid);
  add_models(grid);

  auto* cv = app.add_subcommand("cv", "Stratified cross-validation");
  add_common(cv, true);
  add_table_input(cv);
  add_selection(cv);
  add_models(cv);
  cv->add_flag("--baselines", o.baselines, "Also report mean and context-unaware baselines");

  auto* holdout = app.add_subcommand("holdout", "Train on one split, score another");
  add_common(holdout, true);
  add_table_input(holdout);
  add_selection(holdout);
  add_models(holdout);
  holdout->add_option("--train-features", o.train_features, "Training feature table");
  holdout->add_option("--test-features", o.test_features, "Holdout feature table");
  holdout->add_option("--protocol", o.protocol, "dev (train -> dev) or test (train+dev -> test)")
      ->capture_default_str();
  holdout->add_flag("--baselines", o.baselines, "Also report the mean baseline");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with planted signal");
  add_common(synth_cmd, true);
  synth_cmd->add_option("--sessions", o.sessions, "Session count (overrides the generator spec file)");
  synth_cmd->add_option("--spec", o.spec, "Generator spec JSON");
  add_resources(synth_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    set_jobs(o.jobs);
    const std::string name = sub->get_name();
    if (name == "build-dict") cmd_build_dict(o);
    else if (name == "segment") cmd_segment(o);
    else if (name == "featurize") cmd_featurize(o);
    else if (name == "select") cmd_select(o);
    else if (name == "train") cmd_train(o);
    else if (name == "grid") cmd_grid(o);
    else if (name == "cv") cmd_cv(o);
    else if (name == "holdout") cmd_holdout(o);
    else if (name == "synth") cmd_synth(o);
    write_echo(o.out, *sub);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "topicdx " << sub->get_name() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "topicdx " << sub->get_name() << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "topicdx " << sub->get_name() << ": " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "topicdx " << sub->get_name() << ": " << e.what() << "\n";
    return kPipeline;
  }
  return kOk;
}

}  // namespace topicdx::cli
