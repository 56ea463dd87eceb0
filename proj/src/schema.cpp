#include "gridsumm/schema.hpp"

#include <set>

#include "json_util.hpp"

namespace gridsumm {

using detail::Json;

std::string to_string(ArgKind kind) {
  switch (kind) {
    case ArgKind::Entity: return "entity";
    case ArgKind::Scale: return "scale";
    case ArgKind::TimeSpan: return "timespan";
    case ArgKind::Nominal: return "nominal";
  }
  return "?";
}

std::string to_string(ArgRole role) {
  switch (role) {
    case ArgRole::Key: return "key";
    case ArgRole::Compared: return "compared";
    case ArgRole::Detail: return "detail";
  }
  return "?";
}

const ArgSpec* MessageSchema::find_arg(const std::string& arg_name) const {
  for (const auto& a : args)
    if (a.name == arg_name) return &a;
  return nullptr;
}

const ArgSpec* MessageSchema::compared_arg() const {
  for (const auto& a : args)
    if (a.role == ArgRole::Compared) return &a;
  return nullptr;
}

const ArgSpec* MessageSchema::timespan_arg() const {
  for (const auto& a : args)
    if (a.kind == ArgKind::TimeSpan) return &a;
  return nullptr;
}

const ArgSpec* MessageSchema::entity_key_arg() const {
  for (const auto& a : args)
    if (a.role == ArgRole::Key && a.kind == ArgKind::Entity) return &a;
  return nullptr;
}

const MessageSchema* SchemaRegistry::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &schemas_[it->second];
}

namespace {

ArgKind parse_kind(const std::string& kind, const std::string& ctx) {
  if (kind == "entity") return ArgKind::Entity;
  if (kind == "scale") return ArgKind::Scale;
  if (kind == "timespan") return ArgKind::TimeSpan;
  if (kind == "nominal") return ArgKind::Nominal;
  throw ValidationError(ctx + ": unknown argument kind '" + kind + "'");
}

ArgRole parse_role(const std::string& role, const std::string& ctx) {
  if (role == "key") return ArgRole::Key;
  if (role == "compared") return ArgRole::Compared;
  if (role == "detail") return ArgRole::Detail;
  throw ValidationError(ctx + ": unknown argument role '" + role + "'");
}

ArgSpec parse_arg(const Json& ja, const Ontology& ontology, const std::string& ctx) {
  ArgSpec spec;
  spec.name = ja.at("name").get<std::string>();
  spec.kind = parse_kind(ja.value("kind", "nominal"), ctx);
  spec.optional = ja.value("optional", false);
  spec.role = parse_role(ja.value("role", "detail"), ctx);
  const std::string arg_ctx = ctx + ", argument '" + spec.name + "'";
  switch (spec.kind) {
    case ArgKind::Entity: {
      spec.entity_types = ja.at("ref").get<std::vector<std::string>>();
      if (spec.entity_types.empty())
        throw ValidationError(arg_ctx + ": entity argument needs allowed types");
      for (const auto& t : spec.entity_types)
        if (!ontology.find_entity_type(t))
          throw ValidationError(arg_ctx + ": unknown entity type '" + t + "'");
      break;
    }
    case ArgKind::Scale: {
      spec.scale = ja.at("ref").get<std::string>();
      if (!ontology.find_scale(spec.scale))
        throw ValidationError(arg_ctx + ": unknown scale '" + spec.scale + "'");
      break;
    }
    case ArgKind::TimeSpan:
      break;
    case ArgKind::Nominal: {
      if (ja.contains("ref"))
        spec.tokens = ja.at("ref").get<std::vector<std::string>>();
      std::set<std::string> uniq(spec.tokens.begin(), spec.tokens.end());
      if (uniq.size() != spec.tokens.size())
        throw ValidationError(arg_ctx + ": duplicate nominal token");
      break;
    }
  }
  return spec;
}

}  // namespace

SchemaRegistry load_schemas(const std::string& config_text,
                            const Ontology& ontology) {
  Json doc = detail::parse_json(config_text);
  SchemaRegistry registry;
  try {
    for (const Json& js : doc.value("schemas", Json::array())) {
      MessageSchema schema;
      schema.name = js.at("name").get<std::string>();
      schema.reconstructed = js.value("reconstructed", false);
      const std::string ctx = "schema '" + schema.name + "'";

      std::set<std::string> arg_names;
      int compared = 0;
      int timespans = 0;
      for (const Json& ja : js.value("args", Json::array())) {
        ArgSpec spec = parse_arg(ja, ontology, ctx);
        if (!arg_names.insert(spec.name).second)
          throw ValidationError(ctx + ": duplicate argument '" + spec.name + "'");
        if (spec.role == ArgRole::Key && spec.optional)
          throw ValidationError(ctx + ": key argument '" + spec.name +
                                "' cannot be optional");
        if (spec.role == ArgRole::Compared) {
          if (++compared > 1)
            throw ValidationError(ctx + ": more than one compared argument");
          if (spec.kind == ArgKind::TimeSpan)
            throw ValidationError(ctx + ": a time span cannot be compared");
          if (spec.optional)
            throw ValidationError(ctx + ": compared argument '" + spec.name +
                                  "' cannot be optional");
        }
        if (spec.kind == ArgKind::TimeSpan && ++timespans > 1)
          throw ValidationError(ctx + ": more than one time span argument");
        schema.args.push_back(std::move(spec));
      }

      if (js.contains("template")) {
        const Json& jt = js.at("template");
        if (jt.is_string()) {
          schema.templates["lead"] = jt.get<std::string>();
        } else {
          for (const auto& [form, text] : jt.items())
            schema.templates[form] = text.get<std::string>();
        }
      }

      if (!registry.index_.emplace(schema.name, registry.schemas_.size()).second)
        throw ValidationError("duplicate schema '" + schema.name + "'");
      registry.schemas_.push_back(std::move(schema));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schema config: ") + e.what());
  }
  return registry;
}

ValidatedMessage validate_message(const SchemaRegistry& registry,
                                  const Ontology& ontology,
                                  const MessageInstance& m) {
  const MessageSchema* schema = registry.find(m.schema);
  if (!schema) throw UnknownSchemaError("unknown schema '" + m.schema + "'");

  ValidatedMessage out;
  out.id = m.id;
  out.schema = m.schema;
  out.surface = m.args;
  out.provenance = m.provenance;

  for (const auto& [name, value] : m.args)
    if (!schema->find_arg(name))
      throw BadArgValueError(name, "not declared by schema '" + m.schema + "'");

  for (const ArgSpec& spec : schema->args) {
    auto it = m.args.find(spec.name);
    if (it == m.args.end()) {
      if (spec.optional) continue;
      throw MissingArgError(spec.name);
    }
    const std::string& token = it->second;
    std::string canonical = token;
    switch (spec.kind) {
      case ArgKind::Entity: {
        const Entity* entity = ontology.find_entity(token);
        if (!entity)
          throw BadArgValueError(spec.name, "unknown entity '" + token + "'");
        bool allowed = false;
        for (const auto& t : spec.entity_types)
          allowed = allowed || ontology.type_is_a(entity->type, t);
        if (!allowed)
          throw BadArgValueError(spec.name, "entity '" + token + "' has type '" +
                                                entity->type +
                                                "', not allowed here");
        break;
      }
      case ArgKind::Scale: {
        const ValueScale* scale = ontology.find_scale(spec.scale);
        if (!scale->resolvable(token))
          throw BadArgValueError(spec.name, "value '" + token +
                                                "' not on scale '" + spec.scale +
                                                "'");
        canonical = scale->normalize(token);
        break;
      }
      case ArgKind::TimeSpan: {
        const TimeSpan* span = ontology.find_time_span(token);
        if (!span)
          throw BadArgValueError(spec.name, "unknown time span '" + token + "'");
        // A round-anchored span must sit in the round the document covers.
        if (span->round && *span->round != m.provenance.round)
          throw BadArgValueError(
              spec.name, "time span '" + token + "' belongs to round " +
                             std::to_string(*span->round) + ", document covers round " +
                             std::to_string(m.provenance.round));
        break;
      }
      case ArgKind::Nominal: {
        if (!spec.tokens.empty()) {
          bool found = false;
          for (const auto& t : spec.tokens) found = found || t == token;
          if (!found)
            throw BadArgValueError(spec.name,
                                   "token '" + token + "' not in the enumeration");
        }
        break;
      }
    }
    out.args[spec.name] = canonical;
  }
  return out;
}

}  // namespace gridsumm
