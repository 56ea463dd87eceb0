#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridsumm/errors.hpp"

namespace gridsumm {

struct EntityType {
  std::string name;
  std::optional<std::string> parent;
};

struct Entity {
  std::string id;
  std::string type;
  std::string display_name;
};

struct TimeSpan {
  std::string id;
  std::optional<std::string> parent;  // part-of edge
  std::optional<int> round;           // set when the span is a championship round
};

// Totally ordered list of canonical value tokens plus an alias lexicon.
// Rank distance against the two thresholds is what makes values "close"
// or "contrasting".
class ValueScale {
 public:
  ValueScale() = default;
  ValueScale(std::string name, std::vector<std::string> positions,
             std::map<std::string, std::string> aliases, int close_threshold,
             std::optional<int> antithesis_threshold);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& positions() const { return positions_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }
  int close_threshold() const { return close_threshold_; }
  // nullopt means unbounded: no distance ever counts as contrasting.
  std::optional<int> antithesis_threshold() const { return antithesis_threshold_; }

  bool resolvable(const std::string& token) const;
  // Resolves aliases to the canonical token. Throws UnknownValueError.
  std::string normalize(const std::string& token) const;
  // 0-based rank of the (possibly aliased) token. Throws UnknownValueError.
  int rank(const std::string& token) const;
  // rank(to) - rank(from); the sign is the direction of change.
  int delta(const std::string& from, const std::string& to) const;

 private:
  std::string name_;
  std::vector<std::string> positions_;
  std::map<std::string, std::string> aliases_;
  std::map<std::string, int> rank_of_;
  int close_threshold_ = 1;
  std::optional<int> antithesis_threshold_;
};

// Immutable topic type system: entity types, entities, value scales and
// time spans. Safe to share across threads once loaded.
class Ontology {
 public:
  const std::vector<EntityType>& entity_types() const { return entity_types_; }
  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<TimeSpan>& time_spans() const { return time_spans_; }

  const EntityType* find_entity_type(const std::string& name) const;
  const Entity* find_entity(const std::string& id) const;
  const ValueScale* find_scale(const std::string& name) const;
  const TimeSpan* find_time_span(const std::string& id) const;

  // Entity types without a parent, in declaration order.
  std::vector<std::string> roots() const;

  // True iff `type` equals `ancestor` or sits below it in the type forest.
  bool type_is_a(const std::string& type, const std::string& ancestor) const;

  // True iff span `a` is a strict part-of descendant of span `b`.
  // Throws UnknownTimeSpanError when either id is undeclared.
  bool is_more_specific(const std::string& a, const std::string& b) const;

  // True iff the span or one of its ancestors carries a round index.
  bool span_is_round_anchored(const std::string& id) const;

  friend Ontology load_ontology(const std::string& config_text);

 private:
  std::vector<EntityType> entity_types_;
  std::vector<Entity> entities_;
  std::vector<TimeSpan> time_spans_;
  std::map<std::string, ValueScale> scales_;
  std::map<std::string, int> type_index_;
  std::map<std::string, int> entity_index_;
  std::map<std::string, int> span_index_;
};

// Parses and validates the JSON ontology config.
// Throws ParseError (with line number) or ValidationError.
Ontology load_ontology(const std::string& config_text);

}  // namespace gridsumm
