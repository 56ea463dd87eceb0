#include <doctest.h>

#include "gridsumm/topic.hpp"
#include "test_support.hpp"

using namespace gridsumm;

TEST_CASE("the football bundle loads fully cross-validated") {
  const LoadedTopic& topic = testsup::football();
  CHECK(topic.name == "football");
  CHECK(topic.registry.size() == 26);
  CHECK(topic.ontology.find_scale("perf_scale") != nullptr);
  REQUIRE(topic.rules.schema_rules.count("performance") == 1);
  CHECK(topic.rules.schema_rules.at("performance").scale == "perf_scale");
  CHECK(topic.rules.profiles.count("default") == 1);
  CHECK(topic.rules.profiles.count("strict") == 1);
}

TEST_CASE("a dangling rule reference is a cross-reference error") {
  try {
    load_bundle(testsup::repo_dir() / "tests" / "fixtures" / "broken_topic");
    FAIL("expected CrossRefError");
  } catch (const CrossRefError& e) {
    std::string what = e.what();
    CHECK(what.find("rules.json") != std::string::npos);
    CHECK(what.find("passing") != std::string::npos);
  }
}

TEST_CASE("a missing bundle file is reported with its path") {
  try {
    load_bundle(testsup::repo_dir() / "tests" / "fixtures");  // no configs here
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("ontology.json") != std::string::npos);
  }
}

TEST_CASE("rule cross-checks") {
  const auto& topic = testsup::football();
  auto load = [&](const std::string& text) {
    return load_rules(text, topic.registry, topic.ontology);
  };
  // key_args must equal the schema's KEY set
  CHECK_THROWS_AS(load(R"({"schemas": [{"schema": "performance",
      "key_args": ["entity"], "compared_arg": "value", "scale": "perf_scale"}]})"),
                  CrossRefError);
  // compared_arg must carry the compared role
  CHECK_THROWS_AS(load(R"({"schemas": [{"schema": "performance",
      "key_args": ["entity", "in_what"], "compared_arg": "in_what"}]})"),
                  CrossRefError);
  // ordinal compared argument needs its scale spelled out
  CHECK_THROWS_AS(load(R"({"schemas": [{"schema": "performance",
      "key_args": ["entity", "in_what"], "compared_arg": "value"}]})"),
                  CrossRefError);
  // the scale must match the argument's declaration
  CHECK_THROWS_AS(load(R"({"schemas": [{"schema": "performance",
      "key_args": ["entity", "in_what"], "compared_arg": "value",
      "scale": "satisfaction_scale"}]})"),
                  CrossRefError);
  // a bounded profile threshold must clear the scale's close_threshold
  CHECK_THROWS_AS(load(R"({"profiles": {"default": {"antithesis_threshold": 1}},
      "schemas": [{"schema": "performance", "key_args": ["entity", "in_what"],
      "compared_arg": "value", "scale": "perf_scale"}]})"),
                  CrossRefError);
}

TEST_CASE("a minimal synthetic topic runs end to end") {
  auto dir = testsup::repo_dir() / "tests" / "fixtures" / "minimal_topic";
  LoadedTopic topic = load_bundle(dir);
  CHECK(topic.registry.size() == 1);

  GridCorpus corpus = ingest_file((dir / "corpus.jsonl").string(), topic.registry,
                                  topic.ontology);
  CHECK(corpus.sources().size() == 2);
  CHECK(corpus.rounds() == 2);

  ResolvedRules rules = resolve_rules(topic.rules, "default", topic.ontology);
  InferenceResult relations = infer_all(corpus, topic.ontology, rules);
  CHECK(relations.synchronic.size() == 2);  // IDENTITY per round
  CHECK(relations.diachronic.size() == 2);  // one drop per source

  Query query = parse_query("status(entity=widget, rounds=1..2)", topic.registry);
  QueryResult result = resolve(query, corpus, relations);
  CHECK(result.messages.size() == 4);
  std::string summary =
      summarize(result, topic.registry, topic.ontology, topic.lexicon, 0);
  CHECK(summary == "the widget ran high in round 1. In round 2 it ran low.");
}
