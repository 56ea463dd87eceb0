#include "gridsumm/ontology.hpp"

#include <set>

#include "json_util.hpp"

namespace gridsumm {

using detail::Json;

ValueScale::ValueScale(std::string name, std::vector<std::string> positions,
                       std::map<std::string, std::string> aliases,
                       int close_threshold, std::optional<int> antithesis_threshold)
    : name_(std::move(name)),
      positions_(std::move(positions)),
      aliases_(std::move(aliases)),
      close_threshold_(close_threshold),
      antithesis_threshold_(antithesis_threshold) {
  if (positions_.empty())
    throw ValidationError("scale '" + name_ + "': positions must be non-empty");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!rank_of_.emplace(positions_[i], static_cast<int>(i)).second)
      throw ValidationError("scale '" + name_ + "': duplicate position '" +
                            positions_[i] + "'");
  }
  for (const auto& [surface, canonical] : aliases_) {
    if (!rank_of_.count(canonical))
      throw ValidationError("scale '" + name_ + "': alias '" + surface +
                            "' targets unknown value '" + canonical + "'");
    if (rank_of_.count(surface))
      throw ValidationError("scale '" + name_ + "': alias '" + surface +
                            "' shadows a canonical value");
  }
  if (close_threshold_ < 1)
    throw ValidationError("scale '" + name_ + "': close_threshold must be >= 1");
  if (antithesis_threshold_ && *antithesis_threshold_ <= close_threshold_)
    throw ValidationError("scale '" + name_ +
                          "': antithesis_threshold must exceed close_threshold");
}

bool ValueScale::resolvable(const std::string& token) const {
  return rank_of_.count(token) > 0 || aliases_.count(token) > 0;
}

std::string ValueScale::normalize(const std::string& token) const {
  auto alias = aliases_.find(token);
  if (alias != aliases_.end()) return alias->second;
  if (rank_of_.count(token)) return token;
  throw UnknownValueError("value '" + token + "' not on scale '" + name_ + "'");
}

int ValueScale::rank(const std::string& token) const {
  return rank_of_.at(normalize(token));
}

int ValueScale::delta(const std::string& from, const std::string& to) const {
  return rank(to) - rank(from);
}

const EntityType* Ontology::find_entity_type(const std::string& name) const {
  auto it = type_index_.find(name);
  return it == type_index_.end() ? nullptr : &entity_types_[it->second];
}

const Entity* Ontology::find_entity(const std::string& id) const {
  auto it = entity_index_.find(id);
  return it == entity_index_.end() ? nullptr : &entities_[it->second];
}

const ValueScale* Ontology::find_scale(const std::string& name) const {
  auto it = scales_.find(name);
  return it == scales_.end() ? nullptr : &it->second;
}

const TimeSpan* Ontology::find_time_span(const std::string& id) const {
  auto it = span_index_.find(id);
  return it == span_index_.end() ? nullptr : &time_spans_[it->second];
}

std::vector<std::string> Ontology::roots() const {
  std::vector<std::string> out;
  for (const auto& t : entity_types_)
    if (!t.parent) out.push_back(t.name);
  return out;
}

bool Ontology::type_is_a(const std::string& type, const std::string& ancestor) const {
  const EntityType* t = find_entity_type(type);
  while (t != nullptr) {
    if (t->name == ancestor) return true;
    t = t->parent ? find_entity_type(*t->parent) : nullptr;
  }
  return false;
}

bool Ontology::is_more_specific(const std::string& a, const std::string& b) const {
  const TimeSpan* span = find_time_span(a);
  if (!span) throw UnknownTimeSpanError("unknown time span '" + a + "'");
  if (!find_time_span(b)) throw UnknownTimeSpanError("unknown time span '" + b + "'");
  if (a == b) return false;
  while (span->parent) {
    if (*span->parent == b) return true;
    span = find_time_span(*span->parent);
  }
  return false;
}

bool Ontology::span_is_round_anchored(const std::string& id) const {
  const TimeSpan* span = find_time_span(id);
  if (!span) throw UnknownTimeSpanError("unknown time span '" + id + "'");
  while (span) {
    if (span->round) return true;
    span = span->parent ? find_time_span(*span->parent) : nullptr;
  }
  return false;
}

Ontology load_ontology(const std::string& config_text) {
  Json doc = detail::parse_json(config_text);
  Ontology ont;
  try {
    for (const Json& jt : doc.value("entity_types", Json::array())) {
      EntityType t;
      t.name = jt.at("name").get<std::string>();
      if (jt.contains("parent")) t.parent = jt.at("parent").get<std::string>();
      if (!ont.type_index_.emplace(t.name, ont.entity_types_.size()).second)
        throw ValidationError("duplicate entity type '" + t.name + "'");
      ont.entity_types_.push_back(std::move(t));
    }
    for (const Json& je : doc.value("entities", Json::array())) {
      Entity e;
      e.id = je.at("id").get<std::string>();
      e.type = je.at("type").get<std::string>();
      e.display_name = je.value("display_name", e.id);
      if (!ont.type_index_.count(e.type))
        throw ValidationError("entity '" + e.id + "': unknown type '" + e.type + "'");
      if (!ont.entity_index_.emplace(e.id, ont.entities_.size()).second)
        throw ValidationError("duplicate entity '" + e.id + "'");
      ont.entities_.push_back(std::move(e));
    }
    for (const Json& js : doc.value("scales", Json::array())) {
      std::string name = js.at("name").get<std::string>();
      std::vector<std::string> positions =
          js.at("positions").get<std::vector<std::string>>();
      std::map<std::string, std::string> aliases;
      if (js.contains("aliases"))
        aliases = js.at("aliases").get<std::map<std::string, std::string>>();
      int close = js.value("close_threshold", 1);
      std::optional<int> antithesis;
      if (js.contains("antithesis_threshold")) {
        const Json& ja = js.at("antithesis_threshold");
        if (ja.is_string()) {
          if (ja.get<std::string>() != "unbounded")
            throw ValidationError("scale '" + name +
                                  "': antithesis_threshold must be an integer or "
                                  "\"unbounded\"");
        } else {
          antithesis = ja.get<int>();
        }
      }
      ValueScale scale(name, std::move(positions), std::move(aliases), close,
                       antithesis);
      if (!ont.scales_.emplace(name, std::move(scale)).second)
        throw ValidationError("duplicate scale '" + name + "'");
    }
    for (const Json& js : doc.value("time_spans", Json::array())) {
      TimeSpan s;
      s.id = js.at("id").get<std::string>();
      if (js.contains("parent")) s.parent = js.at("parent").get<std::string>();
      if (js.contains("round")) {
        s.round = js.at("round").get<int>();
        if (*s.round < 1)
          throw ValidationError("time span '" + s.id + "': round must be >= 1");
      }
      if (!ont.span_index_.emplace(s.id, ont.time_spans_.size()).second)
        throw ValidationError("duplicate time span '" + s.id + "'");
      ont.time_spans_.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ontology config: ") + e.what());
  }

  // forest checks (both graphs: subtype edges and part-of edges)
  for (const auto& t : ont.entity_types_) {
    std::set<std::string> seen{t.name};
    const EntityType* cur = &t;
    while (cur->parent) {
      const EntityType* up = ont.find_entity_type(*cur->parent);
      if (!up)
        throw ValidationError("entity type '" + cur->name + "': unknown parent '" +
                              *cur->parent + "'");
      if (!seen.insert(up->name).second)
        throw ValidationError("entity type cycle through '" + up->name + "'");
      cur = up;
    }
  }
  for (const auto& s : ont.time_spans_) {
    std::set<std::string> seen{s.id};
    const TimeSpan* cur = &s;
    while (cur->parent) {
      const TimeSpan* up = ont.find_time_span(*cur->parent);
      if (!up)
        throw ValidationError("time span '" + cur->id + "': unknown parent '" +
                              *cur->parent + "'");
      if (!seen.insert(up->id).second)
        throw ValidationError("time span cycle through '" + up->id + "'");
      cur = up;
    }
  }
  return ont;
}

}  // namespace gridsumm
