// gridsumm command line: validate a topic, check a corpus, compute
// cross-source relations and generate evolving summaries.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gridsumm/corpus.hpp"
#include "gridsumm/query.hpp"
#include "gridsumm/relations.hpp"
#include "gridsumm/summarizer.hpp"
#include "gridsumm/topic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string topic;
  std::string corpus;
  std::string profile;
  std::string format = "records";
  std::string query;
  std::string relations_file;
  int jobs = 1;
  int compression = 1;
  bool emit_plan = false;
  bool check = false;
};

int require_dir(const std::string& path) {
  if (path.empty() || !std::filesystem::is_directory(path)) {
    std::cerr << "error: topic directory '" << path << "' does not exist\n";
    return kExitUsage;
  }
  return kExitOk;
}

int require_file(const std::string& path) {
  if (path.empty() || !std::filesystem::is_regular_file(path)) {
    std::cerr << "error: file '" << path << "' does not exist\n";
    return kExitUsage;
  }
  return kExitOk;
}

std::string effective_profile(const gridsumm::LoadedTopic& topic,
                              const Options& opt) {
  return opt.profile.empty() ? topic.rules.default_profile : opt.profile;
}

int cmd_validate(const Options& opt) {
  if (int rc = require_dir(opt.topic)) return rc;
  gridsumm::LoadedTopic topic = gridsumm::load_bundle(opt.topic);
  std::cout << "topic '" << topic.name << "': " << topic.registry.size()
            << " schemas, " << topic.ontology.entities().size() << " entities, "
            << topic.ontology.time_spans().size() << " time spans\n";
  return kExitOk;
}

int cmd_ingest(const Options& opt) {
  if (int rc = require_dir(opt.topic)) return rc;
  if (int rc = require_file(opt.corpus)) return rc;
  gridsumm::LoadedTopic topic = gridsumm::load_bundle(opt.topic);
  gridsumm::GridCorpus corpus =
      gridsumm::ingest_file(opt.corpus, topic.registry, topic.ontology);
  std::cout << "sources=" << corpus.sources().size()
            << " rounds=" << corpus.rounds()
            << " documents=" << corpus.documents().size()
            << " messages=" << corpus.message_count() << "\n";
  return kExitOk;
}

gridsumm::InferenceResult run_inference(const gridsumm::LoadedTopic& topic,
                                        const gridsumm::GridCorpus& corpus,
                                        const Options& opt) {
  gridsumm::ResolvedRules rules = gridsumm::resolve_rules(
      topic.rules, effective_profile(topic, opt), topic.ontology);
  return gridsumm::infer_all(corpus, topic.ontology, rules, opt.jobs);
}

int cmd_relations(const Options& opt) {
  if (int rc = require_dir(opt.topic)) return rc;
  if (int rc = require_file(opt.corpus)) return rc;
  gridsumm::LoadedTopic topic = gridsumm::load_bundle(opt.topic);
  gridsumm::GridCorpus corpus =
      gridsumm::ingest_file(opt.corpus, topic.registry, topic.ontology);
  gridsumm::InferenceResult result = run_inference(topic, corpus, opt);
  if (opt.format == "text")
    std::cout << gridsumm::relation_report(result).to_text();
  else
    std::cout << gridsumm::render_records(result);
  return kExitOk;
}

void print_query_diagnostic(const std::string& query,
                            const gridsumm::QuerySyntaxError& e) {
  std::cerr << "error: " << e.what() << "\n  " << query << "\n  "
            << std::string(e.position(), ' ') << "^\n";
}

int cmd_query(const Options& opt) {
  if (int rc = require_dir(opt.topic)) return rc;
  if (int rc = require_file(opt.corpus)) return rc;
  gridsumm::LoadedTopic topic = gridsumm::load_bundle(opt.topic);
  gridsumm::GridCorpus corpus =
      gridsumm::ingest_file(opt.corpus, topic.registry, topic.ontology);
  gridsumm::Query query;
  try {
    query = gridsumm::parse_query(opt.query, topic.registry);
  } catch (const gridsumm::QuerySyntaxError& e) {
    print_query_diagnostic(opt.query, e);
    return kExitUsage;
  }
  gridsumm::InferenceResult relations = run_inference(topic, corpus, opt);
  gridsumm::QueryResult result = gridsumm::resolve(query, corpus, relations);

  if (opt.format == "text") {
    std::cout << "messages (" << result.messages.size() << ")\n";
    for (const auto* m : result.messages) {
      std::cout << "  " << m->id << " " << m->schema << "(";
      bool first = true;
      for (const auto& [k, v] : m->args) {
        if (!first) std::cout << ", ";
        std::cout << k << "=" << v;
        first = false;
      }
      std::cout << ")\n";
    }
    gridsumm::InferenceResult rels;
    rels.synchronic = result.synchronic;
    rels.diachronic = result.diachronic;
    rels.analogies = result.analogies;
    std::cout << gridsumm::relation_report(rels).to_text();
  } else {
    for (const auto* m : result.messages) {
      nlohmann::ordered_json rec;
      rec["id"] = m->id;
      rec["schema"] = m->schema;
      rec["args"] = m->args;
      rec["source"] = m->provenance.source;
      rec["round"] = m->provenance.round;
      rec["doc_id"] = m->provenance.doc_id;
      std::cout << rec.dump() << "\n";
    }
    for (const auto& r : result.synchronic)
      std::cout << gridsumm::relation_record(r).dump() << "\n";
    for (const auto& r : result.diachronic)
      std::cout << gridsumm::relation_record(r).dump() << "\n";
    for (const auto& a : result.analogies)
      std::cout << gridsumm::analogy_record(a).dump() << "\n";
  }
  return kExitOk;
}

int cmd_summarize(const Options& opt) {
  if (int rc = require_dir(opt.topic)) return rc;
  if (int rc = require_file(opt.corpus)) return rc;
  gridsumm::LoadedTopic topic = gridsumm::load_bundle(opt.topic);
  gridsumm::GridCorpus corpus =
      gridsumm::ingest_file(opt.corpus, topic.registry, topic.ontology);
  gridsumm::Query query;
  try {
    query = gridsumm::parse_query(opt.query, topic.registry);
  } catch (const gridsumm::QuerySyntaxError& e) {
    print_query_diagnostic(opt.query, e);
    return kExitUsage;
  }

  gridsumm::InferenceResult relations;
  if (!opt.relations_file.empty()) {
    if (int rc = require_file(opt.relations_file)) return rc;
    std::ifstream in(opt.relations_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    relations = gridsumm::parse_records(buf.str());
  } else {
    relations = run_inference(topic, corpus, opt);
  }

  gridsumm::QueryResult result = gridsumm::resolve(query, corpus, relations);
  if (result.messages.empty()) {
    std::cout << "no messages matched\n";
    return kExitOk;
  }

  std::vector<gridsumm::ConsensusPoint> points =
      gridsumm::build_consensus(result, topic.registry, topic.ontology);
  gridsumm::SummaryPlan plan = gridsumm::make_plan(
      result, points, topic.registry, topic.ontology, opt.compression);
  if (opt.emit_plan) {
    std::cout << gridsumm::plan_record(plan).dump() << "\n";
  } else {
    std::cout << gridsumm::realize(plan, topic.registry, topic.ontology,
                                   topic.lexicon)
              << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fuse a source-by-round grid of typed messages into cross-source "
      "relations and evolving summaries"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_corpus) {
    cmd->add_option("--topic", opt.topic, "topic bundle directory")->required();
    if (needs_corpus)
      cmd->add_option("--corpus", opt.corpus, "newline-delimited corpus file")
          ->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "load and cross-check a topic");
  add_common(validate, false);

  CLI::App* ingest = app.add_subcommand("ingest", "parse and validate a corpus");
  add_common(ingest, true);
  ingest->add_flag("--check", opt.check, "validate only (default behaviour)");

  CLI::App* relations =
      app.add_subcommand("relations", "infer synchronic and diachronic relations");
  add_common(relations, true);
  relations->add_option("--profile", opt.profile, "rule profile");
  relations->add_option("--jobs", opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  relations->add_option("--format", opt.format, "records | text")
      ->check(CLI::IsMember({"records", "text"}));

  CLI::App* query = app.add_subcommand("query", "resolve a query to messages "
                                                "and relations");
  add_common(query, true);
  query->add_option("query", opt.query, "query string")->required();
  query->add_option("--profile", opt.profile, "rule profile");
  query->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  query->add_option("--format", opt.format, "records | text")
      ->check(CLI::IsMember({"records", "text"}));

  CLI::App* summarize =
      app.add_subcommand("summarize", "generate an evolving summary for a query");
  add_common(summarize, true);
  summarize->add_option("query", opt.query, "query string")->required();
  summarize->add_option("--compression", opt.compression, "0, 1 or 2")
      ->check(CLI::Range(0, 2));
  summarize->add_option("--profile", opt.profile, "rule profile");
  summarize->add_option("--jobs", opt.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  summarize->add_flag("--emit-plan", opt.emit_plan,
                      "print the summary plan as JSON instead of text");
  summarize->add_option("--relations", opt.relations_file,
                        "reuse a cached relation record file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (ingest->parsed()) return cmd_ingest(opt);
    if (relations->parsed()) return cmd_relations(opt);
    if (query->parsed()) return cmd_query(opt);
    if (summarize->parsed()) return cmd_summarize(opt);
  } catch (const gridsumm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}
