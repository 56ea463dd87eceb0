#pragma once

#include <filesystem>
#include <string>

#include "gridsumm/ontology.hpp"
#include "gridsumm/relations.hpp"
#include "gridsumm/schema.hpp"
#include "gridsumm/summarizer.hpp"

namespace gridsumm {

// A fully cross-validated topic: everything the pipeline needs, loaded from
// ontology.json / schemas.json / rules.json / lexicon.json in one directory.
struct LoadedTopic {
  std::string name;
  Ontology ontology;
  SchemaRegistry registry;
  RulesConfig rules;
  Lexicon lexicon;
};

// Throws ParseError (file unreadable or malformed, message prefixed with the
// file path) or CrossRefError (any dangling reference between the files).
LoadedTopic load_bundle(const std::filesystem::path& topic_dir);

}  // namespace gridsumm
