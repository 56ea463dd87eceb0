#include "gridsumm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace gridsumm {

using detail::Json;

int GridCorpus::rounds() const {
  if (n_teams_) return (*n_teams_ - 1) * 2;
  return max_round_;
}

int GridCorpus::source_index(const std::string& source) const {
  auto it = source_index_.find(source);
  return it == source_index_.end() ? -1 : it->second;
}

const DocumentRecord* GridCorpus::document(const std::string& source,
                                           int round) const {
  auto it = cell_.find({source, round});
  return it == cell_.end() ? nullptr : &docs_[it->second];
}

const ValidatedMessage* GridCorpus::message(const std::string& id) const {
  auto it = message_index_.find(id);
  if (it == message_index_.end()) return nullptr;
  return &docs_[it->second.first].messages[it->second.second];
}

namespace {

bool entity_arg_matches(const ValidatedMessage& m, const MessageSchema* schema,
                        const std::string& entity) {
  if (!schema) return false;
  for (const ArgSpec& spec : schema->args) {
    if (spec.kind != ArgKind::Entity) continue;
    auto it = m.args.find(spec.name);
    if (it != m.args.end() && it->second == entity) return true;
  }
  return false;
}

}  // namespace

std::vector<const ValidatedMessage*> GridCorpus::select(
    const MessageFilter& filter) const {
  std::vector<const ValidatedMessage*> out;
  for (const auto& doc : docs_) {
    if (filter.rounds &&
        (doc.round < filter.rounds->first || doc.round > filter.rounds->second))
      continue;
    if (filter.sources) {
      bool listed = false;
      for (const auto& s : *filter.sources) listed = listed || s == doc.source;
      if (!listed) continue;
    }
    for (const auto& m : doc.messages) {
      if (filter.schema && m.schema != *filter.schema) continue;
      const MessageSchema* schema = registry_ ? registry_->find(m.schema) : nullptr;
      if (filter.entity && !entity_arg_matches(m, schema, *filter.entity)) continue;
      bool args_ok = true;
      for (const auto& [name, want] : filter.args) {
        auto it = m.args.find(name);
        if (it == m.args.end()) {
          args_ok = false;
          break;
        }
        // scale-valued constraints compare canonically; unresolvable
        // constraint tokens simply match nothing
        std::string want_canonical = want;
        if (schema && ontology_) {
          const ArgSpec* spec = schema->find_arg(name);
          if (spec && spec->kind == ArgKind::Scale) {
            const ValueScale* scale = ontology_->find_scale(spec->scale);
            if (scale && scale->resolvable(want))
              want_canonical = scale->normalize(want);
          }
        }
        if (it->second != want_canonical) {
          args_ok = false;
          break;
        }
      }
      if (args_ok) out.push_back(&m);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [this](const ValidatedMessage* a, const ValidatedMessage* b) {
                     if (a->provenance.round != b->provenance.round)
                       return a->provenance.round < b->provenance.round;
                     int sa = source_index(a->provenance.source);
                     int sb = source_index(b->provenance.source);
                     if (sa != sb) return sa < sb;
                     return a->id < b->id;
                   });
  return out;
}

std::vector<const ValidatedMessage*> GridCorpus::all_messages() const {
  return select(MessageFilter{});
}

std::vector<const ValidatedMessage*> GridCorpus::messages_in_round(int round) const {
  MessageFilter f;
  f.rounds = {round, round};
  return select(f);
}

std::vector<const ValidatedMessage*> GridCorpus::messages_of_source(
    const std::string& source) const {
  MessageFilter f;
  f.sources = std::vector<std::string>{source};
  return select(f);
}

namespace {

bool is_blank(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

GridCorpus ingest(std::istream& records, const SchemaRegistry& registry,
                  const Ontology& ontology) {
  GridCorpus grid;
  grid.registry_ = &registry;
  grid.ontology_ = &ontology;

  std::string line;
  int lineno = 0;
  bool saw_doc = false;
  bool saw_header = false;
  bool sources_declared = false;

  auto intern_source = [&](const std::string& source, int at_line) {
    if (grid.source_index_.count(source)) return;
    if (sources_declared)
      throw ValidationError("line " + std::to_string(at_line) + ": source '" +
                            source + "' not in the declared source list");
    grid.source_index_[source] = static_cast<int>(grid.sources_.size());
    grid.sources_.push_back(source);
  };

  while (std::getline(records, line)) {
    ++lineno;
    if (is_blank(line)) continue;

    Json rec = detail::parse_json_line(line, lineno);
    if (!rec.is_object())
      throw ParseError("record must be a JSON object", lineno);

    try {
      if (!rec.contains("doc_id")) {
        // grid header: {team?, n_teams?, sources?}
        if (saw_doc)
          throw ValidationError("line " + std::to_string(lineno) +
                                ": grid header must precede all documents");
        if (saw_header)
          throw ValidationError("line " + std::to_string(lineno) +
                                ": duplicate grid header");
        saw_header = true;
        if (rec.contains("team")) {
          grid.team_ = rec.at("team").get<std::string>();
          if (!ontology.entities().empty() && !ontology.find_entity(*grid.team_))
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": header team '" + *grid.team_ +
                                  "' is not a declared entity");
        }
        if (rec.contains("n_teams")) {
          int n = rec.at("n_teams").get<int>();
          if (n < 2)
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": n_teams must be >= 2");
          grid.n_teams_ = n;
        }
        if (rec.contains("sources")) {
          for (const auto& s : rec.at("sources").get<std::vector<std::string>>())
            intern_source(s, lineno);
          sources_declared = true;
        }
        continue;
      }

      saw_doc = true;
      DocumentRecord doc;
      doc.doc_id = rec.at("doc_id").get<std::string>();
      doc.source = rec.at("source").get<std::string>();
      doc.round = rec.at("round").get<int>();
      if (rec.contains("raw_text"))
        doc.raw_text = rec.at("raw_text").get<std::string>();

      if (doc.round < 1)
        throw ValidationError("line " + std::to_string(lineno) +
                              ": round must be >= 1");
      if (grid.n_teams_ && doc.round > grid.rounds())
        throw ValidationError(
            "line " + std::to_string(lineno) + ": round " +
            std::to_string(doc.round) + " out of range 1.." +
            std::to_string(grid.rounds()) + " for a " +
            std::to_string(*grid.n_teams_) + "-team season");
      intern_source(doc.source, lineno);

      if (grid.cell_.count({doc.source, doc.round}))
        throw ValidationError("line " + std::to_string(lineno) +
                              ": duplicate cell (" + doc.source + ", round " +
                              std::to_string(doc.round) + ")");

      for (const Json& jm : rec.value("messages", Json::array())) {
        MessageInstance inst;
        inst.id = jm.at("id").get<std::string>();
        inst.schema = jm.at("schema").get<std::string>();
        inst.args = jm.at("args").get<std::map<std::string, std::string>>();
        inst.provenance.source = doc.source;
        inst.provenance.round = doc.round;
        inst.provenance.doc_id = doc.doc_id;
        if (jm.contains("span")) {
          auto span = jm.at("span").get<std::vector<int>>();
          if (span.size() != 2 || span[0] < 0 || span[1] < span[0])
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": message '" + inst.id + "': bad span offsets");
          inst.provenance.span = {span[0], span[1]};
        }
        // explicit provenance keys, when present, must agree with the record
        if ((jm.contains("source") &&
             jm.at("source").get<std::string>() != doc.source) ||
            (jm.contains("round") && jm.at("round").get<int>() != doc.round) ||
            (jm.contains("doc_id") &&
             jm.at("doc_id").get<std::string>() != doc.doc_id))
          throw ValidationError("line " + std::to_string(lineno) + ": message '" +
                                inst.id + "': provenance mismatch");
        if (grid.message_index_.count(inst.id))
          throw ValidationError("line " + std::to_string(lineno) +
                                ": duplicate message id '" + inst.id + "'");

        ValidatedMessage checked;
        try {
          checked = validate_message(registry, ontology, inst);
        } catch (const Error& e) {
          throw ValidationError("line " + std::to_string(lineno) + ": message '" +
                                inst.id + "': " + e.what());
        }
        grid.message_index_[checked.id] = {static_cast<int>(grid.docs_.size()),
                                           static_cast<int>(doc.messages.size())};
        doc.messages.push_back(std::move(checked));
      }

      grid.max_round_ = std::max(grid.max_round_, doc.round);
      grid.cell_[{doc.source, doc.round}] = static_cast<int>(grid.docs_.size());
      grid.docs_.push_back(std::move(doc));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return grid;
}

GridCorpus ingest_text(const std::string& records, const SchemaRegistry& registry,
                       const Ontology& ontology) {
  std::istringstream in(records);
  return ingest(in, registry, ontology);
}

GridCorpus ingest_file(const std::string& path, const SchemaRegistry& registry,
                       const Ontology& ontology) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file '" + path + "'");
  return ingest(in, registry, ontology);
}

}  // namespace gridsumm
