#include "gridsumm/relations.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json_util.hpp"

namespace gridsumm {

using detail::Json;

std::string to_string(Axis axis) {
  return axis == Axis::Synchronic ? "synchronic" : "diachronic";
}

std::string to_string(RelationLabel label) {
  switch (label) {
    case RelationLabel::Identity: return "IDENTITY";
    case RelationLabel::Equivalence: return "EQUIVALENCE";
    case RelationLabel::Elaboration: return "ELABORATION";
    case RelationLabel::Contradiction: return "CONTRADICTION";
    case RelationLabel::Preciseness: return "PRECISENESS";
    case RelationLabel::Stability: return "STABILITY";
    case RelationLabel::Antithesis: return "ANTITHESIS";
    case RelationLabel::PositiveGraduation: return "POSITIVE_GRADUATION";
    case RelationLabel::NegativeGraduation: return "NEGATIVE_GRADUATION";
    case RelationLabel::Variation: return "VARIATION";
  }
  return "?";
}

RelationLabel relation_label_from_string(const std::string& name, Axis axis) {
  if (name == "IDENTITY") return RelationLabel::Identity;
  if (axis == Axis::Synchronic) {
    if (name == "EQUIVALENCE") return RelationLabel::Equivalence;
    if (name == "ELABORATION") return RelationLabel::Elaboration;
    if (name == "CONTRADICTION") return RelationLabel::Contradiction;
    if (name == "PRECISENESS") return RelationLabel::Preciseness;
  } else {
    if (name == "STABILITY") return RelationLabel::Stability;
    if (name == "ANTITHESIS") return RelationLabel::Antithesis;
    if (name == "POSITIVE_GRADUATION") return RelationLabel::PositiveGraduation;
    if (name == "NEGATIVE_GRADUATION") return RelationLabel::NegativeGraduation;
    if (name == "VARIATION") return RelationLabel::Variation;
  }
  throw ParseError("unknown " + to_string(axis) + " relation label '" + name + "'");
}

// ---------------------------------------------------------------------------
// rules config

namespace {

std::optional<AntithesisThreshold> parse_threshold(const Json& value,
                                                   const std::string& ctx) {
  AntithesisThreshold t;
  if (value.is_string()) {
    if (value.get<std::string>() != "unbounded")
      throw CrossRefError(ctx + ": antithesis_threshold must be an integer or "
                                "\"unbounded\"");
  } else {
    t.bound = value.get<int>();
  }
  return t;
}

}  // namespace

RulesConfig load_rules(const std::string& config_text,
                       const SchemaRegistry& registry, const Ontology& ontology) {
  Json doc = detail::parse_json(config_text);
  RulesConfig config;
  try {
    if (doc.contains("defaults")) {
      const Json& jd = doc.at("defaults");
      config.diachronic_lag = jd.value("diachronic_lag", 1);
      config.default_profile = jd.value("profile", std::string("default"));
      if (config.diachronic_lag < 1)
        throw CrossRefError("rules: diachronic_lag must be >= 1");
    }
    if (doc.contains("profiles")) {
      for (const auto& [name, jp] : doc.at("profiles").items()) {
        RuleProfile profile;
        if (jp.contains("antithesis_threshold"))
          profile.antithesis_threshold = parse_threshold(
              jp.at("antithesis_threshold"), "profile '" + name + "'");
        config.profiles[name] = profile;
      }
    }
    if (config.profiles.empty()) config.profiles["default"] = RuleProfile{};
    if (!config.profiles.count(config.default_profile))
      throw CrossRefError("rules: default profile '" + config.default_profile +
                          "' is not declared");

    for (const Json& js : doc.value("schemas", Json::array())) {
      SchemaRule rule;
      rule.schema = js.at("schema").get<std::string>();
      const std::string ctx = "rules for schema '" + rule.schema + "'";
      const MessageSchema* schema = registry.find(rule.schema);
      if (!schema)
        throw CrossRefError(ctx + ": schema is not declared");

      rule.key_args = js.value("key_args", std::vector<std::string>{});
      std::set<std::string> declared_keys;
      for (const ArgSpec& a : schema->args)
        if (a.role == ArgRole::Key) declared_keys.insert(a.name);
      std::set<std::string> listed_keys(rule.key_args.begin(), rule.key_args.end());
      if (listed_keys != declared_keys)
        throw CrossRefError(ctx + ": key_args must list exactly the schema's "
                                  "KEY arguments");

      if (js.contains("compared_arg")) {
        rule.compared_arg = js.at("compared_arg").get<std::string>();
        const ArgSpec* spec = schema->find_arg(rule.compared_arg);
        if (!spec)
          throw CrossRefError(ctx + ": compared argument '" + rule.compared_arg +
                              "' is not declared");
        if (spec->role != ArgRole::Compared)
          throw CrossRefError(ctx + ": argument '" + rule.compared_arg +
                              "' does not have the compared role");
        if (spec->optional)
          throw CrossRefError(ctx + ": compared argument '" + rule.compared_arg +
                              "' must not be optional");
        if (js.contains("scale")) {
          rule.scale = js.at("scale").get<std::string>();
          if (!ontology.find_scale(rule.scale))
            throw CrossRefError(ctx + ": unknown scale '" + rule.scale + "'");
          if (spec->kind != ArgKind::Scale || spec->scale != rule.scale)
            throw CrossRefError(ctx + ": argument '" + rule.compared_arg +
                                "' is not measured on scale '" + rule.scale + "'");
        } else if (spec->kind == ArgKind::Scale) {
          throw CrossRefError(ctx + ": ordinal compared argument needs a scale");
        }
      } else if (js.contains("scale")) {
        throw CrossRefError(ctx + ": scale given without a compared argument");
      }

      if (js.contains("antithesis_threshold"))
        rule.antithesis_override =
            parse_threshold(js.at("antithesis_threshold"), ctx);

      if (config.schema_rules.count(rule.schema))
        throw CrossRefError(ctx + ": duplicate rule");
      config.schema_rules[rule.schema] = std::move(rule);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("rules config: ") + e.what());
  }

  // every profile must leave bounded thresholds above each scale's closeness
  for (const auto& [pname, profile] : config.profiles) {
    for (const auto& [sname, rule] : config.schema_rules) {
      if (rule.scale.empty()) continue;
      const ValueScale* scale = ontology.find_scale(rule.scale);
      std::optional<int> effective = scale->antithesis_threshold();
      if (profile.antithesis_threshold) effective = profile.antithesis_threshold->bound;
      if (rule.antithesis_override) effective = rule.antithesis_override->bound;
      if (effective && *effective <= scale->close_threshold())
        throw CrossRefError("profile '" + pname + "', schema '" + sname +
                            "': antithesis threshold " + std::to_string(*effective) +
                            " does not exceed close_threshold of scale '" +
                            rule.scale + "'");
    }
  }
  return config;
}

ResolvedRules resolve_rules(const RulesConfig& config, const std::string& profile,
                            const Ontology& ontology) {
  auto it = config.profiles.find(profile);
  if (it == config.profiles.end())
    throw ValidationError("unknown profile '" + profile + "'");
  const RuleProfile& chosen = it->second;

  ResolvedRules resolved;
  resolved.lag = config.diachronic_lag;
  resolved.profile = profile;
  for (const auto& [name, rule] : config.schema_rules) {
    ResolvedSchemaRule r;
    r.schema = rule.schema;
    r.key_args = rule.key_args;
    r.compared_arg = rule.compared_arg;
    if (!rule.scale.empty()) {
      r.scale = ontology.find_scale(rule.scale);
      r.antithesis = r.scale->antithesis_threshold();
      if (chosen.antithesis_threshold) r.antithesis = chosen.antithesis_threshold->bound;
      if (rule.antithesis_override) r.antithesis = rule.antithesis_override->bound;
    }
    resolved.schemas[name] = std::move(r);
  }
  return resolved;
}

// ---------------------------------------------------------------------------
// inference

namespace {

bool is_key_arg(const ResolvedSchemaRule& rule, const std::string& name) {
  for (const auto& k : rule.key_args)
    if (k == name) return true;
  return false;
}

// Strictly-finer check between two span tokens of messages in `round`.
// Spans without a round anchor implicitly nest inside the round they were
// reported for.
bool span_finer(const Ontology& ont, const std::string& fine,
                const std::string& coarse, int round) {
  if (fine == coarse) return false;
  if (ont.is_more_specific(fine, coarse)) return true;
  if (ont.span_is_round_anchored(fine)) return false;
  const TimeSpan* c = ont.find_time_span(coarse);
  return c && c->round && *c->round == round;
}

// Union of argument names present in either message.
std::vector<std::string> arg_union(const ValidatedMessage& a,
                                   const ValidatedMessage& b) {
  std::set<std::string> names;
  for (const auto& [k, v] : a.args) names.insert(k);
  for (const auto& [k, v] : b.args) names.insert(k);
  return {names.begin(), names.end()};
}

Evidence make_evidence(const ValidatedMessage& left, const ValidatedMessage& right,
                       const ResolvedSchemaRule& rule) {
  Evidence ev;
  if (rule.compared_arg.empty()) return ev;
  ev.compared_arg = rule.compared_arg;
  ev.left_value = left.surface.at(rule.compared_arg);
  ev.right_value = right.surface.at(rule.compared_arg);
  if (rule.scale)
    ev.delta = rule.scale->delta(left.args.at(rule.compared_arg),
                                 right.args.at(rule.compared_arg));
  return ev;
}

// Synchronic decision list. `a` precedes `b` in canonical (source, id) order.
// Pairs whose time spans are disjoint (first vs second half) describe
// different facets of the match and get no relation; every other pair of the
// same key receives exactly one label. An optional span stated on one side
// only counts as an elaborating detail, not as a facet change.
std::optional<Relation> classify_synchronic(const ValidatedMessage& a,
                                            const ValidatedMessage& b,
                                            const MessageSchema& schema,
                                            const ResolvedSchemaRule& rule,
                                            const Ontology& ont) {
  const ArgSpec* tspec = schema.timespan_arg();
  std::string ta, tb;
  if (tspec) {
    auto ia = a.args.find(tspec->name);
    auto ib = b.args.find(tspec->name);
    if (ia != a.args.end()) ta = ia->second;
    if (ib != b.args.end()) tb = ib->second;
  }
  bool span_equal = ta == tb;
  int span_dir = 0;  // +1: b is finer, -1: a is finer
  if (!span_equal && !ta.empty() && !tb.empty()) {
    if (span_finer(ont, tb, ta, a.provenance.round)) span_dir = 1;
    else if (span_finer(ont, ta, tb, a.provenance.round)) span_dir = -1;
    else return std::nullopt;  // disjoint spans
  }

  bool has_compared = !rule.compared_arg.empty();
  bool rank_equal = true;
  bool surface_equal = true;
  if (has_compared) {
    const std::string& ca = a.args.at(rule.compared_arg);
    const std::string& cb = b.args.at(rule.compared_arg);
    rank_equal = rule.scale ? rule.scale->rank(ca) == rule.scale->rank(cb)
                            : ca == cb;
    surface_equal = a.surface.at(rule.compared_arg) == b.surface.at(rule.compared_arg);
  }

  // presence sets and per-argument agreement over non-key arguments
  bool presence_equal = true;
  bool a_superset = true;  // a instantiates at least b's args
  bool b_superset = true;
  bool shared_surface_equal = true;    // excluding compared and time span
  bool shared_canonical_equal = true;  // ditto
  for (const std::string& name : arg_union(a, b)) {
    if (is_key_arg(rule, name)) continue;
    bool in_a = a.args.count(name) > 0;
    bool in_b = b.args.count(name) > 0;
    if (in_a != in_b) {
      presence_equal = false;
      if (!in_a) a_superset = false;
      if (!in_b) b_superset = false;
      continue;
    }
    if (name == rule.compared_arg || (tspec && name == tspec->name)) continue;
    if (a.surface.at(name) != b.surface.at(name)) shared_surface_equal = false;
    if (a.args.at(name) != b.args.at(name)) shared_canonical_equal = false;
  }

  Relation rel;
  rel.axis = Axis::Synchronic;
  rel.left = a.id;
  rel.right = b.id;
  rel.evidence = make_evidence(a, b, rule);

  // 1. IDENTITY: the same message, token for token
  if (span_equal && presence_equal && shared_surface_equal && surface_equal) {
    rel.label = RelationLabel::Identity;
    return rel;
  }
  // 2. EQUIVALENCE: alias variants of the same value
  if (has_compared && rank_equal && !surface_equal && span_equal &&
      presence_equal && shared_surface_equal) {
    rel.label = RelationLabel::Equivalence;
    return rel;
  }
  // 3. PRECISENESS: same content, one span strictly finer (coarse -> fine)
  if (span_dir != 0 && (!has_compared || rank_equal) && presence_equal &&
      shared_canonical_equal) {
    rel.label = RelationLabel::Preciseness;
    if (span_dir < 0) {
      std::swap(rel.left, rel.right);
      std::swap(rel.evidence.left_value, rel.evidence.right_value);
      if (rel.evidence.delta) rel.evidence.delta = -*rel.evidence.delta;
    }
    return rel;
  }
  // 4. ELABORATION: strict superset of optional details (less -> more);
  //    a one-sided optional span belongs to the detail set
  if (span_dir == 0 && !presence_equal && (a_superset != b_superset) &&
      shared_canonical_equal && (!has_compared || rank_equal)) {
    rel.label = RelationLabel::Elaboration;
    if (a_superset) {
      std::swap(rel.left, rel.right);
      std::swap(rel.evidence.left_value, rel.evidence.right_value);
      if (rel.evidence.delta) rel.evidence.delta = -*rel.evidence.delta;
    }
    return rel;
  }
  // 5. CONTRADICTION: the sources disagree on the compared value
  if (has_compared && !rank_equal) {
    rel.label = RelationLabel::Contradiction;
    return rel;
  }
  return std::nullopt;
}

std::optional<Relation> classify_diachronic(const ValidatedMessage& early,
                                            const ValidatedMessage& late,
                                            const ResolvedSchemaRule& rule) {
  if (rule.compared_arg.empty()) return std::nullopt;
  Relation rel;
  rel.axis = Axis::Diachronic;
  rel.left = early.id;
  rel.right = late.id;
  rel.evidence = make_evidence(early, late, rule);

  if (rule.scale) {
    int delta = *rel.evidence.delta;
    if (delta == 0) rel.label = RelationLabel::Stability;
    else if (rule.antithesis && std::abs(delta) >= *rule.antithesis)
      rel.label = RelationLabel::Antithesis;
    else if (delta > 0) rel.label = RelationLabel::PositiveGraduation;
    else rel.label = RelationLabel::NegativeGraduation;
  } else {
    rel.label = early.args.at(rule.compared_arg) == late.args.at(rule.compared_arg)
                    ? RelationLabel::Identity
                    : RelationLabel::Variation;
  }
  return rel;
}

// run fn(i) for i in [0, units) across up to `jobs` threads, collecting the
// produced vectors in unit order
template <typename T, typename Fn>
std::vector<T> run_partitioned(int units, int jobs, Fn fn) {
  std::vector<std::vector<T>> partial(units);
  if (jobs <= 1 || units <= 1) {
    for (int i = 0; i < units; ++i) partial[i] = fn(i);
  } else {
    int workers = std::min(jobs, units);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (int i = w; i < units; i += workers) partial[i] = fn(i);
      });
    }
    for (auto& t : threads) t.join();
  }
  std::vector<T> out;
  for (auto& p : partial)
    out.insert(out.end(), std::make_move_iterator(p.begin()),
               std::make_move_iterator(p.end()));
  return out;
}

std::string key_fingerprint(const ValidatedMessage& m,
                            const ResolvedSchemaRule& rule) {
  std::string out = m.schema;
  for (const auto& k : rule.key_args) {
    out += '\x1f';
    auto it = m.args.find(k);
    if (it != m.args.end()) out += it->second;
  }
  return out;
}

// canonical sort keys need provenance of both endpoints
struct EndpointKey {
  int src = 0;
  int round = 0;
  std::string id;
};

EndpointKey endpoint_key(const GridCorpus& corpus, const std::string& id) {
  const ValidatedMessage* m = corpus.message(id);
  if (!m) return {0, 0, id};
  return {corpus.source_index(m->provenance.source), m->provenance.round, m->id};
}

void sort_synchronic(std::vector<Relation>& rels, const GridCorpus& corpus) {
  std::sort(rels.begin(), rels.end(), [&](const Relation& x, const Relation& y) {
    EndpointKey xl = endpoint_key(corpus, x.left), xr = endpoint_key(corpus, x.right);
    EndpointKey yl = endpoint_key(corpus, y.left), yr = endpoint_key(corpus, y.right);
    return std::tie(xl.round, xl.src, xl.id, xr.src, xr.id) <
           std::tie(yl.round, yl.src, yl.id, yr.src, yr.id);
  });
}

void sort_diachronic(std::vector<Relation>& rels, const GridCorpus& corpus) {
  std::sort(rels.begin(), rels.end(), [&](const Relation& x, const Relation& y) {
    EndpointKey xl = endpoint_key(corpus, x.left), xr = endpoint_key(corpus, x.right);
    EndpointKey yl = endpoint_key(corpus, y.left), yr = endpoint_key(corpus, y.right);
    return std::tie(xl.src, xl.round, xl.id, xr.round, xr.id) <
           std::tie(yl.src, yl.round, yl.id, yr.round, yr.id);
  });
}

}  // namespace

std::vector<Relation> infer_synchronic(const GridCorpus& corpus,
                                       const Ontology& ontology,
                                       const ResolvedRules& rules, int jobs) {
  const SchemaRegistry* registry = corpus.registry();
  int n_rounds = corpus.rounds();
  auto per_round = [&](int idx) {
    int round = idx + 1;
    std::vector<Relation> local;
    std::map<std::string, std::vector<const ValidatedMessage*>> buckets;
    for (const ValidatedMessage* m : corpus.messages_in_round(round)) {
      if (!rules.schemas.count(m->schema)) continue;
      buckets[key_fingerprint(*m, rules.schemas.at(m->schema))].push_back(m);
    }
    for (auto& [key, msgs] : buckets) {
      const ResolvedSchemaRule& rule = rules.schemas.at(msgs.front()->schema);
      const MessageSchema* schema = registry->find(msgs.front()->schema);
      // messages_in_round is already in (source order, id) order
      for (std::size_t i = 0; i < msgs.size(); ++i) {
        for (std::size_t j = i + 1; j < msgs.size(); ++j) {
          if (msgs[i]->provenance.source == msgs[j]->provenance.source) continue;
          auto rel = classify_synchronic(*msgs[i], *msgs[j], *schema, rule, ontology);
          if (rel) local.push_back(std::move(*rel));
        }
      }
    }
    return local;
  };
  std::vector<Relation> out = run_partitioned<Relation>(n_rounds, jobs, per_round);
  sort_synchronic(out, corpus);
  return out;
}

DiachronicResult infer_diachronic(const GridCorpus& corpus,
                                  const Ontology& ontology,
                                  const ResolvedRules& rules, int jobs) {
  (void)ontology;
  const SchemaRegistry* registry = corpus.registry();
  const auto& sources = corpus.sources();

  struct Unit {
    std::vector<Relation> relations;
    std::vector<Analogy> analogies;
  };

  auto per_source = [&](int idx) {
    const std::string& source = sources[idx];
    std::vector<Unit> wrapper(1);
    Unit& unit = wrapper.front();
    std::map<std::string, std::vector<const ValidatedMessage*>> buckets;
    for (const ValidatedMessage* m : corpus.messages_of_source(source)) {
      if (!rules.schemas.count(m->schema)) continue;
      buckets[key_fingerprint(*m, rules.schemas.at(m->schema))].push_back(m);
    }
    // ordinal pairs that produced a relation, grouped for analogy detection:
    // (schema, round pair, delta) -> [(entity, earlier id, later id)]
    std::map<std::tuple<std::string, int, int, int>,
             std::vector<std::tuple<std::string, std::string, std::string>>>
        patterns;
    for (auto& [key, msgs] : buckets) {
      const ResolvedSchemaRule& rule = rules.schemas.at(msgs.front()->schema);
      const MessageSchema* schema = registry->find(msgs.front()->schema);
      const ArgSpec* entity_arg = schema->entity_key_arg();
      for (std::size_t i = 0; i < msgs.size(); ++i) {
        for (std::size_t j = 0; j < msgs.size(); ++j) {
          const ValidatedMessage* early = msgs[i];
          const ValidatedMessage* late = msgs[j];
          int gap = late->provenance.round - early->provenance.round;
          if (gap < 1 || gap > rules.lag) continue;
          auto rel = classify_diachronic(*early, *late, rule);
          if (!rel) continue;
          if (rule.scale && entity_arg && rel->evidence.delta) {
            patterns[{rule.schema, early->provenance.round,
                      late->provenance.round, *rel->evidence.delta}]
                .push_back({early->args.at(entity_arg->name), early->id, late->id});
          }
          unit.relations.push_back(std::move(*rel));
        }
      }
    }
    for (auto& [pkey, entries] : patterns) {
      if (entries.size() < 2) continue;
      std::sort(entries.begin(), entries.end());
      for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
          const auto& [ea, la, ra] = entries[i];
          const auto& [eb, lb, rb] = entries[j];
          if (ea == eb) continue;  // same entity, e.g. two facets
          Analogy an;
          an.schema = std::get<0>(pkey);
          an.source = source;
          an.round_from = std::get<1>(pkey);
          an.round_to = std::get<2>(pkey);
          an.delta = std::get<3>(pkey);
          an.left_pair = {la, ra};
          an.right_pair = {lb, rb};
          an.left_entity = ea;
          an.right_entity = eb;
          unit.analogies.push_back(std::move(an));
        }
      }
    }
    return wrapper;
  };

  std::vector<Unit> units = run_partitioned<Unit>(
      static_cast<int>(sources.size()), jobs, per_source);

  DiachronicResult result;
  for (auto& u : units) {
    result.relations.insert(result.relations.end(),
                            std::make_move_iterator(u.relations.begin()),
                            std::make_move_iterator(u.relations.end()));
    result.analogies.insert(result.analogies.end(),
                            std::make_move_iterator(u.analogies.begin()),
                            std::make_move_iterator(u.analogies.end()));
  }
  sort_diachronic(result.relations, corpus);
  std::sort(result.analogies.begin(), result.analogies.end(),
            [&](const Analogy& a, const Analogy& b) {
              int sa = corpus.source_index(a.source);
              int sb = corpus.source_index(b.source);
              return std::tie(a.schema, sa, a.round_from, a.round_to, a.delta,
                              a.left_entity, a.right_entity, a.left_pair) <
                     std::tie(b.schema, sb, b.round_from, b.round_to, b.delta,
                              b.left_entity, b.right_entity, b.left_pair);
            });
  return result;
}

InferenceResult infer_all(const GridCorpus& corpus, const Ontology& ontology,
                          const ResolvedRules& rules, int jobs) {
  InferenceResult result;
  result.synchronic = infer_synchronic(corpus, ontology, rules, jobs);
  DiachronicResult dia = infer_diachronic(corpus, ontology, rules, jobs);
  result.diachronic = std::move(dia.relations);
  result.analogies = std::move(dia.analogies);
  return result;
}

// ---------------------------------------------------------------------------
// reporting and records

namespace {

const RelationLabel kSynchronicOrder[] = {
    RelationLabel::Identity, RelationLabel::Equivalence, RelationLabel::Elaboration,
    RelationLabel::Contradiction, RelationLabel::Preciseness};
const RelationLabel kDiachronicOrder[] = {
    RelationLabel::Stability, RelationLabel::Antithesis,
    RelationLabel::PositiveGraduation, RelationLabel::NegativeGraduation,
    RelationLabel::Identity, RelationLabel::Variation};

template <typename Labels>
std::vector<std::pair<std::string, int>> count_labels(
    const std::vector<Relation>& rels, const Labels& order) {
  std::vector<std::pair<std::string, int>> counts;
  for (RelationLabel label : order) {
    int n = 0;
    for (const auto& r : rels) n += r.label == label ? 1 : 0;
    if (n > 0) counts.emplace_back(to_string(label), n);
  }
  return counts;
}

}  // namespace

RelationReport relation_report(const InferenceResult& result) {
  RelationReport report;
  report.synchronic = result.synchronic;
  report.diachronic = result.diachronic;
  report.synchronic_total = result.synchronic.size();
  report.diachronic_total = result.diachronic.size();
  report.analogy_count = result.analogies.size();
  report.synchronic_counts = count_labels(result.synchronic, kSynchronicOrder);
  report.diachronic_counts = count_labels(result.diachronic, kDiachronicOrder);
  return report;
}

std::string RelationReport::to_text() const {
  std::ostringstream out;
  out << "synchronic (" << synchronic_total << ")\n";
  for (const auto& [label, n] : synchronic_counts) {
    out << "  " << label << ": " << n << "\n";
    for (const auto& r : synchronic)
      if (to_string(r.label) == label)
        out << "    " << label << "(" << r.left << ", " << r.right << ")\n";
  }
  out << "diachronic (" << diachronic_total << ")\n";
  for (const auto& [label, n] : diachronic_counts) {
    out << "  " << label << ": " << n << "\n";
    for (const auto& r : diachronic)
      if (to_string(r.label) == label)
        out << "    " << label << "(" << r.left << ", " << r.right << ")\n";
  }
  out << "analogies (" << analogy_count << ")\n";
  return out.str();
}

nlohmann::ordered_json relation_record(const Relation& relation) {
  Json ev;
  ev["compared_arg"] =
      relation.evidence.compared_arg ? Json(*relation.evidence.compared_arg) : Json();
  ev["left_value"] =
      relation.evidence.left_value ? Json(*relation.evidence.left_value) : Json();
  ev["right_value"] =
      relation.evidence.right_value ? Json(*relation.evidence.right_value) : Json();
  ev["delta"] = relation.evidence.delta ? Json(*relation.evidence.delta) : Json();
  Json rec;
  rec["label"] = to_string(relation.label);
  rec["axis"] = to_string(relation.axis);
  rec["left"] = relation.left;
  rec["right"] = relation.right;
  rec["evidence"] = ev;
  return rec;
}

nlohmann::ordered_json analogy_record(const Analogy& analogy) {
  Json rec;
  rec["label"] = "ANALOGY";
  rec["axis"] = "diachronic";
  rec["left"] = Json::array({analogy.left_pair.first, analogy.left_pair.second});
  rec["right"] = Json::array({analogy.right_pair.first, analogy.right_pair.second});
  Json ev;
  ev["schema"] = analogy.schema;
  ev["source"] = analogy.source;
  ev["rounds"] = Json::array({analogy.round_from, analogy.round_to});
  ev["delta"] = analogy.delta;
  ev["left_entity"] = analogy.left_entity;
  ev["right_entity"] = analogy.right_entity;
  rec["evidence"] = ev;
  return rec;
}

std::string render_records(const InferenceResult& result) {
  std::ostringstream out;
  for (const auto& r : result.synchronic) out << relation_record(r).dump() << "\n";
  for (const auto& r : result.diachronic) out << relation_record(r).dump() << "\n";
  for (const auto& a : result.analogies) out << analogy_record(a).dump() << "\n";
  return out.str();
}

Relation relation_from_record(const nlohmann::ordered_json& record) {
  Relation rel;
  std::string axis = record.at("axis").get<std::string>();
  rel.axis = axis == "synchronic" ? Axis::Synchronic : Axis::Diachronic;
  rel.label = relation_label_from_string(record.at("label").get<std::string>(),
                                         rel.axis);
  rel.left = record.at("left").get<std::string>();
  rel.right = record.at("right").get<std::string>();
  const Json& ev = record.at("evidence");
  if (!ev.at("compared_arg").is_null())
    rel.evidence.compared_arg = ev.at("compared_arg").get<std::string>();
  if (!ev.at("left_value").is_null())
    rel.evidence.left_value = ev.at("left_value").get<std::string>();
  if (!ev.at("right_value").is_null())
    rel.evidence.right_value = ev.at("right_value").get<std::string>();
  if (!ev.at("delta").is_null()) rel.evidence.delta = ev.at("delta").get<int>();
  return rel;
}

Analogy analogy_from_record(const nlohmann::ordered_json& record) {
  Analogy an;
  const Json& ev = record.at("evidence");
  an.schema = ev.at("schema").get<std::string>();
  an.source = ev.at("source").get<std::string>();
  an.round_from = ev.at("rounds").at(0).get<int>();
  an.round_to = ev.at("rounds").at(1).get<int>();
  an.delta = ev.at("delta").get<int>();
  an.left_entity = ev.at("left_entity").get<std::string>();
  an.right_entity = ev.at("right_entity").get<std::string>();
  an.left_pair = {record.at("left").at(0).get<std::string>(),
                  record.at("left").at(1).get<std::string>()};
  an.right_pair = {record.at("right").at(0).get<std::string>(),
                   record.at("right").at(1).get<std::string>()};
  return an;
}

InferenceResult parse_records(const std::string& text) {
  InferenceResult result;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json rec = detail::parse_json_line(line, lineno);
    if (rec.at("label").get<std::string>() == "ANALOGY") {
      result.analogies.push_back(analogy_from_record(rec));
    } else {
      Relation rel = relation_from_record(rec);
      if (rel.axis == Axis::Synchronic) result.synchronic.push_back(std::move(rel));
      else result.diachronic.push_back(std::move(rel));
    }
  }
  return result;
}

}  // namespace gridsumm
