#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gridsumm/corpus.hpp"
#include "gridsumm/ontology.hpp"
#include "gridsumm/schema.hpp"

namespace gridsumm {

enum class Axis { Synchronic, Diachronic };

enum class RelationLabel {
  // synchronic (same round, different sources)
  Identity,
  Equivalence,
  Elaboration,
  Contradiction,
  Preciseness,
  // diachronic (same source, forward in time); Identity is shared
  Stability,
  Antithesis,
  PositiveGraduation,
  NegativeGraduation,
  Variation,
};

std::string to_string(Axis axis);
std::string to_string(RelationLabel label);
RelationLabel relation_label_from_string(const std::string& name, Axis axis);

struct Evidence {
  std::optional<std::string> compared_arg;
  std::optional<std::string> left_value;   // surface token
  std::optional<std::string> right_value;  // surface token
  std::optional<int> delta;                // canonical rank difference
};

struct Relation {
  RelationLabel label;
  Axis axis;
  std::string left;   // message id
  std::string right;  // message id
  Evidence evidence;
};

// Pattern parallelism: two diachronic pairs of different entities, same
// source and round pair, with the same signed delta.
struct Analogy {
  std::string schema;
  std::string source;
  int round_from = 0;
  int round_to = 0;
  std::pair<std::string, std::string> left_pair;   // (earlier id, later id)
  std::pair<std::string, std::string> right_pair;  // (earlier id, later id)
  std::string left_entity;
  std::string right_entity;
  int delta = 0;
};

// nullopt bound means UNBOUNDED: no rank distance is ever contrasting.
struct AntithesisThreshold {
  std::optional<int> bound;
};

struct SchemaRule {
  std::string schema;
  std::vector<std::string> key_args;
  std::string compared_arg;  // empty: the schema only yields structural labels
  std::string scale;         // empty with compared_arg set: nominal comparison
  std::optional<AntithesisThreshold> antithesis_override;
};

struct RuleProfile {
  std::optional<AntithesisThreshold> antithesis_threshold;
};

struct RulesConfig {
  int diachronic_lag = 1;
  std::string default_profile = "default";
  std::map<std::string, RuleProfile> profiles;
  std::map<std::string, SchemaRule> schema_rules;
};

// Parses rules and cross-checks every reference against the registry and
// ontology. Throws ParseError or CrossRefError.
RulesConfig load_rules(const std::string& config_text,
                       const SchemaRegistry& registry, const Ontology& ontology);

struct ResolvedSchemaRule {
  std::string schema;
  std::vector<std::string> key_args;
  std::string compared_arg;
  const ValueScale* scale = nullptr;  // null: nominal comparison
  std::optional<int> antithesis;      // nullopt: unbounded
};

// Rules with one profile folded in. Holds pointers into the ontology the
// rules were resolved against.
struct ResolvedRules {
  int lag = 1;
  std::string profile;
  std::map<std::string, ResolvedSchemaRule> schemas;
};

// Throws ValidationError when the profile is not declared.
ResolvedRules resolve_rules(const RulesConfig& config, const std::string& profile,
                            const Ontology& ontology);

struct DiachronicResult {
  std::vector<Relation> relations;
  std::vector<Analogy> analogies;
};

struct InferenceResult {
  std::vector<Relation> synchronic;
  std::vector<Relation> diachronic;
  std::vector<Analogy> analogies;
};

// Pure functions of the frozen corpus; `jobs` only splits the work, the
// output order is canonical regardless of schedule.
std::vector<Relation> infer_synchronic(const GridCorpus& corpus,
                                       const Ontology& ontology,
                                       const ResolvedRules& rules, int jobs = 1);
DiachronicResult infer_diachronic(const GridCorpus& corpus,
                                  const Ontology& ontology,
                                  const ResolvedRules& rules, int jobs = 1);
InferenceResult infer_all(const GridCorpus& corpus, const Ontology& ontology,
                          const ResolvedRules& rules, int jobs = 1);

struct RelationReport {
  // (label name -> count) per axis, in label declaration order.
  std::vector<std::pair<std::string, int>> synchronic_counts;
  std::vector<std::pair<std::string, int>> diachronic_counts;
  std::size_t synchronic_total = 0;
  std::size_t diachronic_total = 0;
  std::size_t analogy_count = 0;
  std::vector<Relation> synchronic;
  std::vector<Relation> diachronic;

  std::string to_text() const;
};

RelationReport relation_report(const InferenceResult& result);

// Newline-delimited record forms (stable key order, byte-stable output).
nlohmann::ordered_json relation_record(const Relation& relation);
nlohmann::ordered_json analogy_record(const Analogy& analogy);
std::string render_records(const InferenceResult& result);
Relation relation_from_record(const nlohmann::ordered_json& record);
Analogy analogy_from_record(const nlohmann::ordered_json& record);
// Parses a record stream produced by render_records.
InferenceResult parse_records(const std::string& text);

}  // namespace gridsumm
