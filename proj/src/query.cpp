#include "gridsumm/query.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace gridsumm {

namespace {

// Minimal recursive-descent reader for the query mini-language.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw QuerySyntaxError(std::string("expected '") + c + "'", pos);
    ++pos;
  }
  static bool token_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.';
  }
  std::string token(const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && token_char(text[pos])) ++pos;
    if (pos == start)
      throw QuerySyntaxError(std::string("expected ") + what, start);
    return text.substr(start, pos - start);
  }
};

int parse_round_number(const std::string& token, std::size_t at) {
  if (token.empty() ||
      !std::all_of(token.begin(), token.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw QuerySyntaxError("expected a round number", at);
  return std::stoi(token);
}

}  // namespace

Query parse_query(const std::string& text, const SchemaRegistry& registry) {
  Cursor cur{text};
  Query query;
  query.schema = cur.token("a schema name");
  cur.expect('(');
  std::set<std::string> seen;
  if (cur.peek() != ')') {
    while (true) {
      cur.skip_ws();
      std::size_t key_at = cur.pos;
      std::string key = cur.token("an argument name");
      if (!seen.insert(key).second)
        throw QuerySyntaxError("duplicate key '" + key + "'", key_at);
      cur.expect('=');
      if (key == "rounds") {
        cur.skip_ws();
        std::size_t value_at = cur.pos;
        std::string value = cur.token("a round range");
        auto dots = value.find("..");
        int lo, hi;
        if (dots == std::string::npos) {
          lo = hi = parse_round_number(value, value_at);
        } else {
          lo = parse_round_number(value.substr(0, dots), value_at);
          hi = parse_round_number(value.substr(dots + 2), value_at);
        }
        if (lo < 1) throw QuerySyntaxError("rounds must be >= 1", value_at);
        if (hi < lo) throw QuerySyntaxError("empty round range", value_at);
        query.rounds = {lo, hi};
      } else if (key == "sources") {
        std::vector<std::string> sources;
        if (cur.peek() == '[') {
          cur.expect('[');
          while (true) {
            sources.push_back(cur.token("a source id"));
            if (cur.peek() == ']') break;
            cur.expect(',');
          }
          cur.expect(']');
        } else {
          sources.push_back(cur.token("a source id"));
        }
        query.sources = std::move(sources);
      } else {
        query.constraints[key] = cur.token("a value");
      }
      if (cur.peek() == ')') break;
      cur.expect(',');
    }
  }
  cur.expect(')');
  if (!cur.at_end())
    throw QuerySyntaxError("unexpected trailing input", cur.pos);

  const MessageSchema* schema = registry.find(query.schema);
  if (!schema)
    throw UnknownSchemaError("unknown schema '" + query.schema + "'");
  for (const auto& [name, value] : query.constraints)
    if (!schema->find_arg(name))
      throw UnknownArgError("schema '" + query.schema + "' has no argument '" +
                            name + "'");
  return query;
}

std::string render_query(const Query& query, const SchemaRegistry& registry) {
  const MessageSchema* schema = registry.find(query.schema);
  if (!schema)
    throw UnknownSchemaError("unknown schema '" + query.schema + "'");
  std::ostringstream out;
  out << query.schema << "(";
  bool first = true;
  auto emit = [&](const std::string& part) {
    if (!first) out << ", ";
    out << part;
    first = false;
  };
  // constraints in schema argument order
  for (const ArgSpec& spec : schema->args) {
    auto it = query.constraints.find(spec.name);
    if (it != query.constraints.end()) emit(spec.name + "=" + it->second);
  }
  if (query.rounds)
    emit("rounds=" + std::to_string(query.rounds->first) + ".." +
         std::to_string(query.rounds->second));
  if (query.sources) {
    std::string list = "sources=[";
    for (std::size_t i = 0; i < query.sources->size(); ++i) {
      if (i) list += ", ";
      list += (*query.sources)[i];
    }
    emit(list + "]");
  }
  out << ")";
  return out.str();
}

QueryResult resolve(const Query& query, const GridCorpus& corpus,
                    const InferenceResult& relations) {
  QueryResult result;
  result.query = query;

  MessageFilter filter;
  filter.schema = query.schema;
  filter.args = query.constraints;
  filter.rounds = query.rounds;
  filter.sources = query.sources;
  result.messages = corpus.select(filter);

  std::set<std::string> ids;
  for (const ValidatedMessage* m : result.messages) ids.insert(m->id);
  auto inside = [&](const std::string& id) { return ids.count(id) > 0; };

  for (const Relation& r : relations.synchronic)
    if (inside(r.left) && inside(r.right)) result.synchronic.push_back(r);
  for (const Relation& r : relations.diachronic)
    if (inside(r.left) && inside(r.right)) result.diachronic.push_back(r);
  for (const Analogy& a : relations.analogies)
    if (inside(a.left_pair.first) && inside(a.left_pair.second) &&
        inside(a.right_pair.first) && inside(a.right_pair.second))
      result.analogies.push_back(a);
  return result;
}

}  // namespace gridsumm
