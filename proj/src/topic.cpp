#include "gridsumm/topic.hpp"

#include <fstream>
#include <sstream>

namespace gridsumm {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Keeps ParseError as-is and folds every other failure into CrossRefError,
// both prefixed with the file the loader was reading.
template <typename Fn>
auto load_part(const std::filesystem::path& path, Fn fn) {
  std::string text = read_file(path);
  try {
    return fn(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw CrossRefError(path.string() + ": " + e.what());
  }
}

}  // namespace

LoadedTopic load_bundle(const std::filesystem::path& topic_dir) {
  LoadedTopic topic;
  topic.name = topic_dir.filename().string();
  topic.ontology = load_part(topic_dir / "ontology.json", [](const std::string& t) {
    return load_ontology(t);
  });
  topic.registry = load_part(topic_dir / "schemas.json", [&](const std::string& t) {
    return load_schemas(t, topic.ontology);
  });
  topic.rules = load_part(topic_dir / "rules.json", [&](const std::string& t) {
    return load_rules(t, topic.registry, topic.ontology);
  });
  topic.lexicon = load_part(topic_dir / "lexicon.json", [&](const std::string& t) {
    return load_lexicon(t, topic.ontology);
  });
  return topic;
}

}  // namespace gridsumm
