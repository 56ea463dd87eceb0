// Acceptance suite: runs every shipped criterion end to end and prints one
// pass/fail line each. Exits non-zero when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gridgen.hpp"
#include "gridsumm/corpus.hpp"
#include "gridsumm/query.hpp"
#include "gridsumm/relations.hpp"
#include "gridsumm/summarizer.hpp"
#include "gridsumm/topic.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace gridsumm;
using Clock = std::chrono::steady_clock;

namespace {

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << "    failed: " << what << "\n";
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::set<oracle::Edge> engine_edges(const std::vector<Relation>& rels) {
  std::set<oracle::Edge> out;
  for (const auto& r : rels) out.insert({to_string(r.label), r.left, r.right});
  return out;
}

ResolvedRules rules_with(std::optional<int> antithesis) {
  const auto& topic = testsup::football();
  RulesConfig config = topic.rules;
  RuleProfile profile;
  if (antithesis) profile.antithesis_threshold = AntithesisThreshold{antithesis};
  config.profiles["custom"] = profile;
  return resolve_rules(config, "custom", topic.ontology);
}

GridCorpus ingest_grid(const gridgen::RandomGrid& grid) {
  const auto& topic = testsup::football();
  return ingest_text(grid.to_jsonl(), topic.registry, topic.ontology);
}

// --- criterion 1: worked-example goldens, zero tolerance, < 1 s ------------

void criterion_worked_example(Checker& c) {
  auto start = Clock::now();
  const auto& topic = testsup::football();
  GridCorpus corpus = testsup::georgeas_corpus();
  InferenceResult result =
      infer_all(corpus, topic.ontology, testsup::football_rules());

  std::set<oracle::Edge> synchronic{
      {"IDENTITY", "s1.1", "s2.1"},      {"IDENTITY", "s1.1", "s3.1"},
      {"IDENTITY", "s2.1", "s3.1"},      {"IDENTITY", "s1.2", "s3.2"},
      {"CONTRADICTION", "s1.2", "s2.2"}, {"CONTRADICTION", "s2.2", "s3.2"},
      {"CONTRADICTION", "s1.3", "s2.3"}, {"IDENTITY", "s2.3", "s3.3"},
      {"CONTRADICTION", "s1.3", "s3.3"}};
  std::set<oracle::Edge> diachronic{
      {"STABILITY", "s1.1", "s1.2"},           {"STABILITY", "s3.1", "s3.2"},
      {"NEGATIVE_GRADUATION", "s1.2", "s1.3"}, {"NEGATIVE_GRADUATION", "s2.1", "s2.2"},
      {"NEGATIVE_GRADUATION", "s2.2", "s2.3"}, {"NEGATIVE_GRADUATION", "s3.2", "s3.3"}};

  c.require(engine_edges(result.synchronic) == synchronic,
            "synchronic relations equal the 9 listed pairs");
  c.require(engine_edges(result.diachronic) == diachronic,
            "diachronic relations equal the 6 listed pairs");
  double elapsed = seconds_since(start);
  c.require(elapsed < 1.0,
            "runtime " + std::to_string(elapsed) + "s is under 1s");
}

// --- criterion 2: profile divergence ---------------------------------------

void criterion_profiles(Checker& c) {
  const auto& topic = testsup::football();
  std::string text =
      R"({"doc_id": "da", "source": "source1", "round": 17, "messages": [{"id": "m17", "schema": "performance", "args": {"entity": "georgeas", "in_what": "general", "time_span": "round_17", "value": "excellent"}}]})"
      "\n"
      R"({"doc_id": "db", "source": "source1", "round": 18, "messages": [{"id": "m18", "schema": "performance", "args": {"entity": "georgeas", "in_what": "general", "time_span": "round_18", "value": "bad"}}]})"
      "\n"
      R"({"doc_id": "dc", "source": "source2", "round": 17, "messages": [{"id": "n17", "schema": "performance", "args": {"entity": "georgeas", "in_what": "general", "time_span": "round_17", "value": "excellent"}}]})"
      "\n"
      R"({"doc_id": "dd", "source": "source2", "round": 18, "messages": [{"id": "n18", "schema": "performance", "args": {"entity": "georgeas", "in_what": "general", "time_span": "round_18", "value": "mediocre"}}]})";
  GridCorpus corpus = ingest_text(text, topic.registry, topic.ontology);

  auto strict = engine_edges(
      infer_diachronic(corpus, topic.ontology, testsup::football_rules("strict"))
          .relations);
  c.require(strict.count({"ANTITHESIS", "m17", "m18"}) == 1,
            "strict: excellent->bad is ANTITHESIS");
  c.require(strict.count({"NEGATIVE_GRADUATION", "n17", "n18"}) == 1,
            "strict: excellent->mediocre is NEGATIVE_GRADUATION");

  auto relaxed = engine_edges(
      infer_diachronic(corpus, topic.ontology, testsup::football_rules("default"))
          .relations);
  c.require(relaxed.count({"NEGATIVE_GRADUATION", "m17", "m18"}) == 1,
            "default: excellent->bad is NEGATIVE_GRADUATION");
  c.require(relaxed.count({"NEGATIVE_GRADUATION", "n17", "n18"}) == 1,
            "default: excellent->mediocre is NEGATIVE_GRADUATION");
}

// --- criterion 3: oracle equivalence over 200 random grids, < 30 s ---------

void criterion_oracle(Checker& c) {
  auto start = Clock::now();
  const auto& topic = testsup::football();
  int mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gridgen::RandomGrid grid = gridgen::random_grid(seed);
    GridCorpus corpus = ingest_grid(grid);
    std::optional<int> antithesis =
        seed % 3 == 0 ? std::optional<int>(2) : std::nullopt;
    oracle::Params params{1, antithesis};
    InferenceResult result = infer_all(corpus, topic.ontology, rules_with(antithesis));
    bool same =
        engine_edges(result.synchronic) == oracle::synchronic(grid) &&
        engine_edges(result.diachronic) == oracle::diachronic(grid, params);
    std::set<oracle::AnalogyRow> got;
    for (const auto& a : result.analogies)
      got.insert({a.source, a.round_from, a.round_to, a.delta, a.left_entity,
                  a.right_entity, a.left_pair.first, a.left_pair.second,
                  a.right_pair.first, a.right_pair.second});
    same = same && got == oracle::analogies(grid, params);
    if (!same) ++mismatches;
  }
  c.require(mismatches == 0, "all 200 grids match the brute-force enumerator");
  double elapsed = seconds_since(start);
  c.require(elapsed < 30.0,
            "suite runtime " + std::to_string(elapsed) + "s is under 30s");
}

// --- criterion 4: relation algebra properties -------------------------------

void criterion_algebra(Checker& c) {
  const auto& topic = testsup::football();
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gridgen::RandomGrid grid = gridgen::random_grid(seed);
    GridCorpus corpus = ingest_grid(grid);
    oracle::Params params{1, std::nullopt};
    InferenceResult result =
        infer_all(corpus, topic.ontology, rules_with(std::nullopt));

    // partition
    std::map<std::pair<std::string, std::string>, int> hits;
    for (const auto& r : result.synchronic) hits[{r.left, r.right}]++;
    for (const auto& r : result.diachronic) hits[{r.left, r.right}]++;
    for (std::size_t i = 0; i < grid.messages.size() && c.ok; ++i) {
      for (std::size_t j = i + 1; j < grid.messages.size(); ++j) {
        const auto& a = grid.messages[i];
        const auto& b = grid.messages[j];
        int count = (hits.count({a.id, b.id}) ? hits[{a.id, b.id}] : 0) +
                    (hits.count({b.id, a.id}) ? hits[{b.id, a.id}] : 0);
        int expected = oracle::eligible(a, b, params) ? 1 : 0;
        if (count != expected) {
          c.require(false, "partition violated on seed " + std::to_string(seed));
          break;
        }
      }
    }

    // symmetry / direction
    for (const auto& r : result.synchronic) {
      const auto* l = corpus.message(r.left);
      const auto* rgt = corpus.message(r.right);
      bool geometry = l && rgt && l->provenance.round == rgt->provenance.round &&
                      l->provenance.source != rgt->provenance.source;
      bool order = corpus.source_index(l->provenance.source) <
                   corpus.source_index(rgt->provenance.source);
      if (!geometry || !order) {
        c.require(false, "synchronic geometry broken on seed " + std::to_string(seed));
        break;
      }
    }
    for (const auto& r : result.diachronic) {
      const auto* l = corpus.message(r.left);
      const auto* rgt = corpus.message(r.right);
      if (!(l && rgt && l->provenance.source == rgt->provenance.source &&
            l->provenance.round < rgt->provenance.round)) {
        c.require(false, "diachronic direction broken on seed " + std::to_string(seed));
        break;
      }
    }

    // threshold monotonicity: deltas and stability edges never move
    std::map<std::pair<std::string, std::string>, int> base_deltas;
    std::set<std::pair<std::string, std::string>> base_stability;
    bool first = true;
    for (std::optional<int> threshold :
         {std::optional<int>(2), std::optional<int>(3), std::optional<int>()}) {
      auto dia = infer_diachronic(corpus, topic.ontology, rules_with(threshold));
      std::map<std::pair<std::string, std::string>, int> deltas;
      std::set<std::pair<std::string, std::string>> stability;
      bool labels_ok = true;
      for (const auto& r : dia.relations) {
        int delta = *r.evidence.delta;
        deltas[{r.left, r.right}] = delta;
        if (r.label == RelationLabel::Stability) stability.insert({r.left, r.right});
        RelationLabel expected =
            delta == 0 ? RelationLabel::Stability
            : (threshold && std::abs(delta) >= *threshold)
                ? RelationLabel::Antithesis
                : (delta > 0 ? RelationLabel::PositiveGraduation
                             : RelationLabel::NegativeGraduation);
        labels_ok = labels_ok && r.label == expected;
      }
      if (!labels_ok)
        c.require(false, "threshold labelling broken on seed " + std::to_string(seed));
      if (first) {
        base_deltas = deltas;
        base_stability = stability;
        first = false;
      } else {
        if (deltas != base_deltas || stability != base_stability)
          c.require(false, "threshold moved an edge on seed " + std::to_string(seed));
      }
    }
    if (!c.ok) return;
  }

  // token renaming leaves the relation multiset unchanged
  const std::map<std::string, std::string> rename = {{"bad", "grim"},
                                                     {"moderate", "plain"},
                                                     {"mediocre", "plainish"},
                                                     {"good", "fine"},
                                                     {"excellent", "stellar"}};
  Ontology ont2 = load_ontology(R"({
    "entity_types": [{"name": "PERSON"}, {"name": "player", "parent": "PERSON"}],
    "entities": [
      {"id": "georgeas", "type": "player"},
      {"id": "anastasiou", "type": "player"},
      {"id": "petrou", "type": "player"}
    ],
    "scales": [{
      "name": "perf_scale",
      "positions": ["grim", "plain", "fine", "stellar"],
      "aliases": {"plainish": "plain"},
      "close_threshold": 1,
      "antithesis_threshold": "unbounded"
    }],
    "time_spans": [
      {"id": "round_1", "round": 1}, {"id": "round_2", "round": 2},
      {"id": "round_3", "round": 3}, {"id": "round_4", "round": 4},
      {"id": "round_5", "round": 5}, {"id": "round_6", "round": 6}
    ]
  })");
  SchemaRegistry reg2 = load_schemas(R"({"schemas": [{
    "name": "performance",
    "args": [
      {"name": "entity", "kind": "entity", "ref": ["PERSON"], "role": "key"},
      {"name": "in_what", "kind": "nominal", "ref": ["offense", "defense", "general"], "role": "key"},
      {"name": "time_span", "kind": "timespan", "role": "detail"},
      {"name": "value", "kind": "scale", "ref": "perf_scale", "role": "compared"}
    ]}]})",
                                     ont2);
  ResolvedRules resolved2 = resolve_rules(
      load_rules(R"({"schemas": [{"schema": "performance",
                     "key_args": ["entity", "in_what"],
                     "compared_arg": "value", "scale": "perf_scale"}]})",
                 reg2, ont2),
      "default", ont2);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gridgen::RandomGrid grid = gridgen::random_grid(seed);
    InferenceResult base =
        infer_all(ingest_grid(grid), topic.ontology, rules_with(std::nullopt));
    GridCorpus renamed = ingest_text(grid.to_jsonl(rename), reg2, ont2);
    InferenceResult renamed_result = infer_all(renamed, ont2, resolved2);
    if (engine_edges(base.synchronic) != engine_edges(renamed_result.synchronic) ||
        engine_edges(base.diachronic) != engine_edges(renamed_result.diachronic)) {
      c.require(false, "renaming changed relations on seed " + std::to_string(seed));
      return;
    }
  }
}

// --- criterion 5: the (N-1)*2 grid invariant --------------------------------

void criterion_grid_invariant(Checker& c) {
  const auto& topic = testsup::football();
  std::string ok_text = R"({"n_teams": 16})" "\n";
  for (int round = 1; round <= 30; ++round)
    ok_text += R"({"doc_id": "d)" + std::to_string(round) +
               R"(", "source": "s1", "round": )" + std::to_string(round) +
               ", \"messages\": []}\n";
  try {
    GridCorpus corpus = ingest_text(ok_text, topic.registry, topic.ontology);
    c.require(corpus.rounds() == 30, "a 16-team season spans 30 rounds");
    c.require(corpus.documents().size() == 30, "rounds 1..30 are accepted");
  } catch (const Error& e) {
    c.require(false, std::string("rounds 1..30 rejected: ") + e.what());
  }
  std::string bad_text =
      R"({"n_teams": 16})" "\n"
      R"({"doc_id": "d31", "source": "s1", "round": 31, "messages": []})";
  bool rejected = false;
  try {
    ingest_text(bad_text, topic.registry, topic.ontology);
  } catch (const ValidationError&) {
    rejected = true;
  }
  c.require(rejected, "round 31 is rejected in a 16-team season");
}

// --- criterion 6: query closure and counts ----------------------------------

void criterion_query(Checker& c) {
  const auto& topic = testsup::football();
  GridCorpus corpus = testsup::georgeas_corpus();
  InferenceResult relations =
      infer_all(corpus, topic.ontology, testsup::football_rules());

  QueryResult full = resolve(
      parse_query("performance(entity=georgeas, rounds=1..3)", topic.registry),
      corpus, relations);
  c.require(full.messages.size() == 9, "full query returns 9 messages");
  c.require(full.synchronic.size() == 9, "full query returns 9 synchronic");
  c.require(full.diachronic.size() == 6, "full query returns 6 diachronic");

  QueryResult one = resolve(
      parse_query("performance(entity=georgeas, rounds=1..3, sources=[source1])",
                  topic.registry),
      corpus, relations);
  c.require(one.messages.size() == 3, "single-source query returns 3 messages");
  c.require(one.synchronic.empty(), "single-source query has no synchronic");
  c.require(one.diachronic.size() == 2, "single-source query returns 2 diachronic");

  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gridgen::RandomGrid grid = gridgen::random_grid(seed);
    GridCorpus random_corpus = ingest_grid(grid);
    InferenceResult rels =
        infer_all(random_corpus, topic.ontology, rules_with(std::nullopt));
    for (const char* entity : {"georgeas", "anastasiou", "petrou"}) {
      QueryResult r = resolve(parse_query(std::string("performance(entity=") +
                                              entity + ")",
                                          topic.registry),
                              random_corpus, rels);
      std::set<std::string> ids;
      for (const auto* m : r.messages) ids.insert(m->id);
      for (const auto& rel : r.synchronic)
        if (!ids.count(rel.left) || !ids.count(rel.right)) {
          c.require(false, "closure violated on seed " + std::to_string(seed));
          return;
        }
      for (const auto& rel : r.diachronic)
        if (!ids.count(rel.left) || !ids.count(rel.right)) {
          c.require(false, "closure violated on seed " + std::to_string(seed));
          return;
        }
    }
  }
}

// --- criterion 7: summarizer goldens and faithfulness ------------------------

void criterion_summaries(Checker& c) {
  const auto& topic = testsup::football();
  GridCorpus corpus = testsup::georgeas_corpus();
  InferenceResult relations =
      infer_all(corpus, topic.ontology, testsup::football_rules());
  QueryResult result = resolve(
      parse_query("performance(entity=georgeas, rounds=1..3)", topic.registry),
      corpus, relations);

  auto text = [&](int level) {
    return summarize(result, topic.registry, topic.ontology, topic.lexicon, level);
  };
  c.require(text(0) ==
                "Georgeas's performance was excellent in round 1. In round 2 his "
                "performance was excellent, according to most sources. In round 3 "
                "his performance was bad, according to most sources.",
            "level 0 golden");
  c.require(text(1) ==
                "Georgeas's performance was excellent from round 1 to round 2, "
                "according to most sources. In round 3 his performance was bad, "
                "according to most sources.",
            "level 1 golden");
  std::string level2 = text(2);
  c.require(level2 ==
                "With the exception of round 3, Georgeas's performance was "
                "excellent.",
            "level 2 golden");
  c.require(level2.find("With the exception of round 3") != std::string::npos,
            "level 2 carries the exception clause for round 3");

  const ValueScale* scale = topic.ontology.find_scale("perf_scale");
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gridgen::RandomGrid grid = gridgen::random_grid(seed);
    GridCorpus random_corpus = ingest_grid(grid);
    InferenceResult rels =
        infer_all(random_corpus, topic.ontology, rules_with(std::nullopt));
    for (const char* entity : {"georgeas", "anastasiou", "petrou"}) {
      for (const char* facet : {"general", "offense"}) {
        QueryResult r =
            resolve(parse_query(std::string("performance(entity=") + entity +
                                    ", in_what=" + facet + ")",
                                topic.registry),
                    random_corpus, rels);
        if (r.messages.empty()) continue;
        std::set<std::string> selected;
        for (const auto* m : r.messages) selected.insert(m->args.at("value"));
        for (int level : {0, 1, 2}) {
          std::string out =
              summarize(r, topic.registry, topic.ontology, topic.lexicon, level);
          for (const auto& value : scale->positions()) {
            std::string word = topic.lexicon.word_for("perf_scale", value);
            if (out.find(word) != std::string::npos && !selected.count(value)) {
              c.require(false, "hallucinated value on seed " + std::to_string(seed));
              return;
            }
          }
        }
      }
    }
  }
}

// --- criterion 8: determinism across job counts ------------------------------

void criterion_determinism(Checker& c) {
  const auto& topic = testsup::football();
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gridgen::RandomGrid grid = gridgen::random_grid(seed);
    GridCorpus corpus = ingest_grid(grid);
    ResolvedRules rules = rules_with(std::nullopt);
    std::string one = render_records(infer_all(corpus, topic.ontology, rules, 1));
    std::string eight = render_records(infer_all(corpus, topic.ontology, rules, 8));
    if (one != eight) {
      c.require(false, "jobs 1 vs 8 diverged on seed " + std::to_string(seed));
      return;
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<void(Checker&)> fn;
  };
  std::vector<Criterion> criteria = {
      {"1 worked-example goldens", criterion_worked_example},
      {"2 profile divergence", criterion_profiles},
      {"3 oracle equivalence on 200 random grids", criterion_oracle},
      {"4 relation algebra properties", criterion_algebra},
      {"5 grid round invariant (N-1)*2", criterion_grid_invariant},
      {"6 query closure and counts", criterion_query},
      {"7 summarizer goldens and faithfulness", criterion_summaries},
      {"8 determinism across job counts", criterion_determinism},
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    Checker checker;
    try {
      criterion.fn(checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("unexpected exception: ") + e.what());
    }
    std::cout << (checker.ok ? "PASS" : "FAIL") << " criterion " << criterion.name
              << "\n"
              << checker.detail.str();
    failures += checker.ok ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << "\n";
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
