#include <doctest.h>

#include <set>

#include "gridsumm/ontology.hpp"
#include "test_support.hpp"

using namespace gridsumm;

namespace {

Ontology scale_only(const std::string& scale_json) {
  return load_ontology(R"({"scales": [)" + scale_json + "]}");
}

}  // namespace

TEST_CASE("football ontology loads with the four root categories") {
  const Ontology& ont = testsup::football().ontology;
  std::set<std::string> roots;
  for (const auto& r : ont.roots()) roots.insert(r);
  CHECK(roots == std::set<std::string>{"TIME", "EVENTS", "PERSON", "TEAM"});

  const Entity* georgeas = ont.find_entity("georgeas");
  REQUIRE(georgeas != nullptr);
  CHECK(georgeas->type == "player");
  CHECK(ont.type_is_a("player", "PERSON"));
  CHECK(ont.type_is_a("coach", "PERSON"));
  CHECK_FALSE(ont.type_is_a("player", "TEAM"));
}

TEST_CASE("value scales: rank, delta and alias normalization") {
  const Ontology& ont = testsup::football().ontology;
  const ValueScale* scale = ont.find_scale("perf_scale");
  REQUIRE(scale != nullptr);

  CHECK(scale->rank("excellent") == 3);
  CHECK(scale->rank("bad") == 0);
  CHECK(scale->rank("mediocre") == 1);  // alias of moderate
  CHECK_THROWS_AS(scale->rank("stellar"), UnknownValueError);

  CHECK(scale->normalize("mediocre") == "moderate");
  CHECK(scale->normalize(scale->normalize("mediocre")) == "moderate");

  CHECK(scale->delta("excellent", "mediocre") == -2);
  CHECK(scale->delta("excellent", "excellent") == 0);
  CHECK(scale->delta("bad", "excellent") == 3);

  // antisymmetry and the rank bijection over every resolvable token
  std::vector<std::string> tokens = scale->positions();
  for (const auto& [alias, target] : scale->aliases()) tokens.push_back(alias);
  for (const auto& a : tokens) {
    CHECK(scale->delta(a, a) == 0);
    for (const auto& b : tokens)
      CHECK(scale->delta(a, b) == -scale->delta(b, a));
  }
  std::set<int> ranks;
  for (const auto& p : scale->positions()) ranks.insert(scale->rank(p));
  CHECK(ranks.size() == scale->positions().size());
  CHECK(*ranks.begin() == 0);
  CHECK(*ranks.rbegin() == static_cast<int>(scale->positions().size()) - 1);
}

TEST_CASE("scale validation") {
  CHECK_THROWS_AS(scale_only(R"({"name": "s", "positions": []})"), ValidationError);
  CHECK_THROWS_AS(
      scale_only(R"({"name": "s", "positions": ["a", "a"], "close_threshold": 1})"),
      ValidationError);
  CHECK_THROWS_AS(
      scale_only(R"({"name": "s", "positions": ["a", "b"], "close_threshold": 0})"),
      ValidationError);
  // antithesis must exceed close
  CHECK_THROWS_AS(scale_only(R"({"name": "s", "positions": ["a", "b", "c"],
                                 "close_threshold": 2, "antithesis_threshold": 2})"),
                  ValidationError);
  CHECK_NOTHROW(scale_only(R"({"name": "s", "positions": ["a", "b", "c"],
                               "close_threshold": 1, "antithesis_threshold": 2})"));
  // aliases must target a declared value and must not shadow one
  CHECK_THROWS_AS(scale_only(R"({"name": "s", "positions": ["a"],
                                 "aliases": {"x": "zzz"}})"),
                  ValidationError);
  CHECK_THROWS_AS(scale_only(R"({"name": "s", "positions": ["a", "b"],
                                 "aliases": {"a": "b"}})"),
                  ValidationError);
}

TEST_CASE("entity type graph must be a forest") {
  CHECK_THROWS_AS(load_ontology(R"({"entity_types": [
      {"name": "a", "parent": "b"}, {"name": "b", "parent": "a"}]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_ontology(R"({"entity_types": [
      {"name": "a", "parent": "nowhere"}]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_ontology(R"({"entity_types": [
      {"name": "a"}, {"name": "a"}]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_ontology(R"({"entity_types": [{"name": "T"}],
      "entities": [{"id": "e", "type": "missing"}]})"),
                  ValidationError);
}

TEST_CASE("time span specificity") {
  const Ontology& ont = testsup::football().ontology;
  CHECK(ont.is_more_specific("first_half", "full_match"));
  CHECK_FALSE(ont.is_more_specific("full_match", "full_match"));
  CHECK_FALSE(ont.is_more_specific("first_half", "second_half"));
  CHECK_FALSE(ont.is_more_specific("full_match", "first_half"));
  CHECK_THROWS_AS(ont.is_more_specific("nowhere", "full_match"),
                  UnknownTimeSpanError);

  CHECK(ont.span_is_round_anchored("round_2"));
  CHECK_FALSE(ont.span_is_round_anchored("first_half"));

  CHECK_THROWS_AS(load_ontology(R"({"time_spans": [
      {"id": "a", "parent": "b"}, {"id": "b", "parent": "a"}]})"),
                  ValidationError);
}

TEST_CASE("parse errors carry a line number") {
  try {
    load_ontology("{\n  \"scales\": [,]\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
