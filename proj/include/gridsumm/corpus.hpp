#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridsumm/schema.hpp"

namespace gridsumm {

struct DocumentRecord {
  std::string doc_id;
  std::string source;
  int round = 0;
  std::optional<std::string> raw_text;
  std::vector<ValidatedMessage> messages;
};

// All keys optional; omitted keys match everything.
struct MessageFilter {
  std::optional<std::string> schema;
  std::optional<std::string> entity;  // matches any Entity-kind argument
  std::map<std::string, std::string> args;
  std::optional<std::pair<int, int>> rounds;  // inclusive
  std::optional<std::vector<std::string>> sources;
};

// Source-by-round grid of documents for one team. Frozen after ingestion;
// concurrent readers are safe.
class GridCorpus {
 public:
  const std::vector<std::string>& sources() const { return sources_; }
  std::optional<std::string> team() const { return team_; }
  std::optional<int> n_teams() const { return n_teams_; }
  // (n_teams - 1) * 2 when a season is declared, otherwise the highest
  // ingested round.
  int rounds() const;

  int source_index(const std::string& source) const;  // -1 when unknown
  const std::vector<DocumentRecord>& documents() const { return docs_; }
  // The registry the corpus was validated against.
  const SchemaRegistry* registry() const { return registry_; }
  const DocumentRecord* document(const std::string& source, int round) const;

  const ValidatedMessage* message(const std::string& id) const;
  std::size_t message_count() const { return message_index_.size(); }

  // Messages matching the filter, ordered by (round, source order, id).
  std::vector<const ValidatedMessage*> select(const MessageFilter& filter) const;
  std::vector<const ValidatedMessage*> all_messages() const;
  std::vector<const ValidatedMessage*> messages_in_round(int round) const;
  std::vector<const ValidatedMessage*> messages_of_source(
      const std::string& source) const;

  friend GridCorpus ingest(std::istream& records, const SchemaRegistry& registry,
                           const Ontology& ontology);

 private:
  const SchemaRegistry* registry_ = nullptr;
  const Ontology* ontology_ = nullptr;
  std::optional<std::string> team_;
  std::optional<int> n_teams_;
  int max_round_ = 0;
  std::vector<std::string> sources_;
  std::map<std::string, int> source_index_;
  std::vector<DocumentRecord> docs_;
  std::map<std::pair<std::string, int>, int> cell_;
  std::map<std::string, std::pair<int, int>> message_index_;  // id -> (doc, msg)
};

// Reads newline-delimited JSON document records (optionally preceded by one
// grid header line) and validates every message. Throws ParseError with the
// offending line number, or ValidationError.
GridCorpus ingest(std::istream& records, const SchemaRegistry& registry,
                  const Ontology& ontology);
GridCorpus ingest_text(const std::string& records, const SchemaRegistry& registry,
                       const Ontology& ontology);
GridCorpus ingest_file(const std::string& path, const SchemaRegistry& registry,
                       const Ontology& ontology);

}  // namespace gridsumm
