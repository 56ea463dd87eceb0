#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridsumm/corpus.hpp"
#include "gridsumm/relations.hpp"

namespace gridsumm {

// Structured query: schema, argument constraints, optional round range and
// source restriction. Grammar:
//   schema '(' key '=' value (',' key '=' value)* ')'
// with reserved keys rounds=a..b and sources=[s1,s2].
struct Query {
  std::string schema;
  std::map<std::string, std::string> constraints;
  std::optional<std::pair<int, int>> rounds;
  std::optional<std::vector<std::string>> sources;

  bool operator==(const Query& other) const = default;
};

// Throws QuerySyntaxError (with character position), UnknownSchemaError or
// UnknownArgError.
Query parse_query(const std::string& text, const SchemaRegistry& registry);

// Canonical string form; parse_query(render_query(q)) == q.
std::string render_query(const Query& query, const SchemaRegistry& registry);

struct QueryResult {
  Query query;
  std::vector<const ValidatedMessage*> messages;
  std::vector<Relation> synchronic;
  std::vector<Relation> diachronic;
  std::vector<Analogy> analogies;
};

// Selects the query-specific messages and keeps only relations whose both
// endpoints are selected.
QueryResult resolve(const Query& query, const GridCorpus& corpus,
                    const InferenceResult& relations);

}  // namespace gridsumm
