#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridsumm/errors.hpp"
#include "gridsumm/ontology.hpp"

namespace gridsumm {

enum class ArgKind { Entity, Scale, TimeSpan, Nominal };
enum class ArgRole { Key, Compared, Detail };

std::string to_string(ArgKind kind);
std::string to_string(ArgRole role);

struct ArgSpec {
  std::string name;
  ArgKind kind = ArgKind::Nominal;
  std::vector<std::string> entity_types;  // Entity kind: allowed types
  std::string scale;                      // Scale kind: scale name
  std::vector<std::string> tokens;        // Nominal kind: empty = open vocabulary
  bool optional = false;
  ArgRole role = ArgRole::Detail;
};

struct MessageSchema {
  std::string name;
  bool reconstructed = false;
  std::vector<ArgSpec> args;
  // Realization forms keyed by "lead" / "follow" / "plain" / "exception".
  std::map<std::string, std::string> templates;

  const ArgSpec* find_arg(const std::string& arg_name) const;
  const ArgSpec* compared_arg() const;
  const ArgSpec* timespan_arg() const;
  // First KEY argument of Entity kind, if any; the subject for analogies
  // and summaries.
  const ArgSpec* entity_key_arg() const;
};

class SchemaRegistry {
 public:
  const MessageSchema* find(const std::string& name) const;
  const std::vector<MessageSchema>& schemas() const { return schemas_; }
  std::size_t size() const { return schemas_.size(); }

  friend SchemaRegistry load_schemas(const std::string& config_text,
                                     const Ontology& ontology);

 private:
  std::vector<MessageSchema> schemas_;
  std::map<std::string, int> index_;
};

struct Provenance {
  std::string source;
  int round = 0;
  std::string doc_id;
  std::optional<std::pair<int, int>> span;  // character offsets in raw_text
};

struct MessageInstance {
  std::string id;
  std::string schema;
  std::map<std::string, std::string> args;
  Provenance provenance;
};

// A schema-checked message. `args` holds canonical tokens (aliases
// resolved); `surface` holds the tokens as they appeared in the record.
struct ValidatedMessage {
  std::string id;
  std::string schema;
  std::map<std::string, std::string> args;
  std::map<std::string, std::string> surface;
  Provenance provenance;
};

// Parses the schema config and cross-checks scale / entity-type references
// against the ontology. Throws ParseError or ValidationError.
SchemaRegistry load_schemas(const std::string& config_text,
                            const Ontology& ontology);

// Checks every slot of `m` against its schema and returns the message with
// scale tokens normalized. Throws UnknownSchemaError, MissingArgError or
// BadArgValueError.
ValidatedMessage validate_message(const SchemaRegistry& registry,
                                  const Ontology& ontology,
                                  const MessageInstance& m);

}  // namespace gridsumm
