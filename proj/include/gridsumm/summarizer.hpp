#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gridsumm/ontology.hpp"
#include "gridsumm/query.hpp"
#include "gridsumm/schema.hpp"

namespace gridsumm {

enum class ConsensusStatus { Unanimous, Majority, Split };
std::string to_string(ConsensusStatus status);

// Per-round aggregation of what the sources claim.
struct ConsensusPoint {
  int round = 0;
  std::string value;  // canonical winning token
  int support = 0;    // sources agreeing with the winner
  std::vector<std::pair<std::string, std::string>> dissent;  // (source, value)
  ConsensusStatus status = ConsensusStatus::Unanimous;
};

struct SummarySpan {
  int round_from = 0;
  int round_to = 0;
  std::string value;  // canonical token
  ConsensusStatus profile = ConsensusStatus::Unanimous;
  // Diachronic edges (by label) whose endpoints both fall inside the span.
  std::map<std::string, int> diachronic_evidence;
};

struct SummaryPlan {
  std::string schema;
  std::string subject_entity;
  std::string scale;  // empty for nominal compared values
  int compression = 0;
  std::vector<SummarySpan> spans;
  std::vector<ConsensusPoint> exceptions;  // compression level 2 only
};

// Surface word choices: canonical value -> adjective per scale, plus
// per-entity function words used by the templates.
class Lexicon {
 public:
  std::string word_for(const std::string& scale, const std::string& value) const;
  std::string possessive_for(const std::string& entity_id) const;

  friend Lexicon load_lexicon(const std::string& config_text,
                              const Ontology& ontology);

 private:
  std::map<std::string, std::map<std::string, std::string>> scale_words_;
  std::map<std::string, std::string> possessives_;
};

// Throws ParseError or CrossRefError (unknown scale / value / entity).
Lexicon load_lexicon(const std::string& config_text, const Ontology& ontology);

// One point per round with data; plurality wins, ties break toward the
// higher rank. Throws MixedSchemaError when messages span schemas, or
// ValidationError when the schema has no compared argument.
std::vector<ConsensusPoint> build_consensus(const QueryResult& result,
                                            const SchemaRegistry& registry,
                                            const Ontology& ontology);

// Content selection at a compression level:
//   0 - one span per round
//   1 - maximal runs of consecutive rounds with close consensus ranks
//   2 - dominant value plus explicit exceptions (rank deviation >= 2)
SummaryPlan make_plan(const QueryResult& result,
                      const std::vector<ConsensusPoint>& points,
                      const SchemaRegistry& registry, const Ontology& ontology,
                      int compression);

// Deterministic template realization; byte-identical for identical plans.
// Throws MissingTemplateError.
std::string realize(const SummaryPlan& plan, const SchemaRegistry& registry,
                    const Ontology& ontology, const Lexicon& lexicon);

// build_consensus + make_plan + realize.
std::string summarize(const QueryResult& result, const SchemaRegistry& registry,
                      const Ontology& ontology, const Lexicon& lexicon,
                      int compression);

nlohmann::ordered_json plan_record(const SummaryPlan& plan);

}  // namespace gridsumm
