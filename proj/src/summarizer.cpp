#include "gridsumm/summarizer.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "json_util.hpp"

namespace gridsumm {

using detail::Json;

std::string to_string(ConsensusStatus status) {
  switch (status) {
    case ConsensusStatus::Unanimous: return "unanimous";
    case ConsensusStatus::Majority: return "majority";
    case ConsensusStatus::Split: return "split";
  }
  return "?";
}

std::string Lexicon::word_for(const std::string& scale,
                              const std::string& value) const {
  auto s = scale_words_.find(scale);
  if (s != scale_words_.end()) {
    auto w = s->second.find(value);
    if (w != s->second.end()) return w->second;
  }
  return value;
}

std::string Lexicon::possessive_for(const std::string& entity_id) const {
  auto it = possessives_.find(entity_id);
  return it == possessives_.end() ? "their" : it->second;
}

Lexicon load_lexicon(const std::string& config_text, const Ontology& ontology) {
  Json doc = detail::parse_json(config_text);
  Lexicon lex;
  try {
    if (doc.contains("scales")) {
      for (const auto& [scale_name, words] : doc.at("scales").items()) {
        const ValueScale* scale = ontology.find_scale(scale_name);
        if (!scale)
          throw CrossRefError("lexicon: unknown scale '" + scale_name + "'");
        for (const auto& [value, word] : words.items()) {
          if (!scale->resolvable(value))
            throw CrossRefError("lexicon: scale '" + scale_name +
                                "' has no value '" + value + "'");
          lex.scale_words_[scale_name][scale->normalize(value)] =
              word.get<std::string>();
        }
      }
    }
    if (doc.contains("entities")) {
      for (const auto& [entity_id, words] : doc.at("entities").items()) {
        if (!ontology.find_entity(entity_id))
          throw CrossRefError("lexicon: unknown entity '" + entity_id + "'");
        if (words.contains("possessive"))
          lex.possessives_[entity_id] = words.at("possessive").get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("lexicon config: ") + e.what());
  }
  return lex;
}

// ---------------------------------------------------------------------------
// consensus

namespace {

// winner comparison: more supporting sources first, then the higher rank;
// nominal values fall back to lexicographic order
bool better_candidate(int count_a, const std::string& a, int count_b,
                      const std::string& b, const ValueScale* scale) {
  if (count_a != count_b) return count_a > count_b;
  if (scale) return scale->rank(a) > scale->rank(b);
  return a > b;
}

}  // namespace

std::vector<ConsensusPoint> build_consensus(const QueryResult& result,
                                            const SchemaRegistry& registry,
                                            const Ontology& ontology) {
  std::vector<ConsensusPoint> points;
  if (result.messages.empty()) return points;

  const std::string& schema_name = result.messages.front()->schema;
  for (const ValidatedMessage* m : result.messages)
    if (m->schema != schema_name)
      throw MixedSchemaError("consensus needs a single schema, found '" +
                             schema_name + "' and '" + m->schema + "'");
  const MessageSchema* schema = registry.find(schema_name);
  const ArgSpec* compared = schema->compared_arg();
  if (!compared)
    throw ValidationError("schema '" + schema_name +
                          "' has no compared argument to aggregate");
  const ValueScale* scale = compared->kind == ArgKind::Scale
                                ? ontology.find_scale(compared->scale)
                                : nullptr;

  std::map<int, std::vector<const ValidatedMessage*>> by_round;
  for (const ValidatedMessage* m : result.messages)
    by_round[m->provenance.round].push_back(m);

  for (auto& [round, msgs] : by_round) {
    // sources voting for each canonical value
    std::map<std::string, std::set<std::string>> votes;
    for (const ValidatedMessage* m : msgs)
      votes[m->args.at(compared->name)].insert(m->provenance.source);

    std::string winner;
    int support = -1;
    for (const auto& [value, srcs] : votes) {
      int count = static_cast<int>(srcs.size());
      if (support < 0 || better_candidate(count, value, support, winner, scale)) {
        winner = value;
        support = count;
      }
    }

    ConsensusPoint point;
    point.round = round;
    point.value = winner;
    point.support = support;
    bool tied = false;
    for (const auto& [value, srcs] : votes) {
      if (value == winner) continue;
      if (static_cast<int>(srcs.size()) >= support) tied = true;
    }
    for (const ValidatedMessage* m : msgs) {
      const std::string& value = m->args.at(compared->name);
      if (value != winner) point.dissent.emplace_back(m->provenance.source, value);
    }
    point.status = point.dissent.empty() ? ConsensusStatus::Unanimous
                   : tied                ? ConsensusStatus::Split
                                         : ConsensusStatus::Majority;
    points.push_back(std::move(point));
  }
  return points;
}

// ---------------------------------------------------------------------------
// planning

namespace {

ConsensusStatus worse(ConsensusStatus a, ConsensusStatus b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

std::string modal_value(const std::vector<const ConsensusPoint*>& points,
                        const ValueScale* scale) {
  std::map<std::string, int> counts;
  for (const ConsensusPoint* p : points) counts[p->value]++;
  std::string winner;
  int best = -1;
  for (const auto& [value, count] : counts) {
    if (best < 0 || better_candidate(count, value, best, winner, scale)) {
      winner = value;
      best = count;
    }
  }
  return winner;
}

SummarySpan make_span(const std::vector<const ConsensusPoint*>& run,
                      const std::string& value) {
  SummarySpan span;
  span.round_from = run.front()->round;
  span.round_to = run.back()->round;
  span.value = value;
  span.profile = ConsensusStatus::Unanimous;
  for (const ConsensusPoint* p : run) span.profile = worse(span.profile, p->status);
  return span;
}

}  // namespace

SummaryPlan make_plan(const QueryResult& result,
                      const std::vector<ConsensusPoint>& points,
                      const SchemaRegistry& registry, const Ontology& ontology,
                      int compression) {
  if (compression < 0 || compression > 2)
    throw ValidationError("compression level must be 0, 1 or 2");

  SummaryPlan plan;
  plan.compression = compression;
  if (points.empty()) return plan;

  plan.schema = result.messages.front()->schema;
  const MessageSchema* schema = registry.find(plan.schema);
  const ArgSpec* compared = schema->compared_arg();
  const ValueScale* scale = compared && compared->kind == ArgKind::Scale
                                ? ontology.find_scale(compared->scale)
                                : nullptr;
  if (scale) plan.scale = scale->name();

  // the subject is the unique entity the selected messages talk about
  const ArgSpec* entity_arg = schema->entity_key_arg();
  if (entity_arg) {
    std::set<std::string> subjects;
    for (const ValidatedMessage* m : result.messages)
      subjects.insert(m->args.at(entity_arg->name));
    if (subjects.size() > 1)
      throw ValidationError(
          "summary needs a unique subject entity; constrain the query");
    plan.subject_entity = *subjects.begin();
  }

  std::vector<const ConsensusPoint*> ordered;
  for (const auto& p : points) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const ConsensusPoint* a, const ConsensusPoint* b) {
              return a->round < b->round;
            });

  auto rank_of = [&](const std::string& value) {
    return scale ? scale->rank(value) : 0;
  };
  auto values_close = [&](const std::string& a, const std::string& b) {
    if (scale) return std::abs(rank_of(a) - rank_of(b)) <= scale->close_threshold();
    return a == b;
  };

  if (compression == 0) {
    for (const ConsensusPoint* p : ordered)
      plan.spans.push_back(make_span({p}, p->value));
  } else if (compression == 1) {
    std::vector<const ConsensusPoint*> run;
    auto flush = [&] {
      if (!run.empty()) plan.spans.push_back(make_span(run, modal_value(run, scale)));
      run.clear();
    };
    for (const ConsensusPoint* p : ordered) {
      if (!run.empty() && (p->round != run.back()->round + 1 ||
                           !values_close(run.back()->value, p->value)))
        flush();
      run.push_back(p);
    }
    flush();
  } else {
    const std::string dominant = modal_value(ordered, scale);
    auto is_exception = [&](const ConsensusPoint* p) {
      if (scale) return std::abs(rank_of(p->value) - rank_of(dominant)) >= 2;
      return p->value != dominant;
    };
    std::vector<const ConsensusPoint*> run;
    auto flush = [&] {
      if (!run.empty()) plan.spans.push_back(make_span(run, dominant));
      run.clear();
    };
    for (const ConsensusPoint* p : ordered) {
      if (is_exception(p)) {
        flush();
        plan.exceptions.push_back(*p);
        continue;
      }
      if (!run.empty() && p->round != run.back()->round + 1) flush();
      run.push_back(p);
    }
    flush();
  }

  // diachronic edges whose both endpoints fall inside a span support it
  for (SummarySpan& span : plan.spans) {
    for (const Relation& r : result.diachronic) {
      const ValidatedMessage* left = nullptr;
      const ValidatedMessage* right = nullptr;
      for (const ValidatedMessage* m : result.messages) {
        if (m->id == r.left) left = m;
        if (m->id == r.right) right = m;
      }
      if (!left || !right) continue;
      if (left->provenance.round >= span.round_from &&
          right->provenance.round <= span.round_to)
        span.diachronic_evidence[to_string(r.label)]++;
    }
  }
  return plan;
}

// ---------------------------------------------------------------------------
// realization

namespace {

std::string round_phrase(int from, int to, bool capitalize) {
  std::string text;
  if (from == to) {
    text = (capitalize ? "In round " : "in round ") + std::to_string(from);
  } else {
    text = (capitalize ? "From round " : "from round ") + std::to_string(from) +
           " to round " + std::to_string(to);
  }
  return text;
}

std::string exception_rounds_phrase(const std::vector<ConsensusPoint>& exceptions) {
  std::vector<int> rounds;
  for (const auto& p : exceptions) rounds.push_back(p.round);
  std::sort(rounds.begin(), rounds.end());
  std::string text = rounds.size() == 1 ? "round " : "rounds ";
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    if (i > 0) text += (i + 1 == rounds.size()) ? " and " : ", ";
    text += std::to_string(rounds[i]);
  }
  return text;
}

std::string hedge_phrase(ConsensusStatus status) {
  switch (status) {
    case ConsensusStatus::Unanimous: return "";
    case ConsensusStatus::Majority: return ", according to most sources";
    case ConsensusStatus::Split: return "";  // rendered as a sentence prefix
  }
  return "";
}

std::string fill_template(const std::string& tpl,
                          const std::map<std::string, std::string>& slots,
                          const std::string& schema_name) {
  std::string out;
  out.reserve(tpl.size());
  for (std::size_t i = 0; i < tpl.size();) {
    if (tpl[i] == '{') {
      auto close = tpl.find('}', i);
      if (close == std::string::npos)
        throw MissingTemplateError("schema '" + schema_name +
                                   "': unterminated slot in template");
      std::string slot = tpl.substr(i + 1, close - i - 1);
      auto it = slots.find(slot);
      if (it == slots.end())
        throw MissingTemplateError("schema '" + schema_name +
                                   "': unknown template slot '{" + slot + "}'");
      out += it->second;
      i = close + 1;
    } else {
      out += tpl[i++];
    }
  }
  return out;
}

const std::string& require_form(const MessageSchema& schema,
                                const std::string& form) {
  auto it = schema.templates.find(form);
  if (it == schema.templates.end())
    throw MissingTemplateError("schema '" + schema.name +
                               "' has no '" + form + "' template");
  return it->second;
}

}  // namespace

std::string realize(const SummaryPlan& plan, const SchemaRegistry& registry,
                    const Ontology& ontology, const Lexicon& lexicon) {
  if (plan.spans.empty() && plan.exceptions.empty()) return "";

  const MessageSchema* schema = registry.find(plan.schema);
  if (!schema)
    throw MissingTemplateError("unknown schema '" + plan.schema + "'");

  const Entity* subject = ontology.find_entity(plan.subject_entity);
  const std::string entity_name =
      subject ? subject->display_name : plan.subject_entity;
  const std::string possessive = lexicon.possessive_for(plan.subject_entity);
  auto word = [&](const std::string& value) {
    return lexicon.word_for(plan.scale, value);
  };

  std::vector<std::string> sentences;
  if (plan.compression == 2) {
    // one dominant statement; exceptions are folded into its opening clause
    const std::string dominant =
        plan.spans.empty() ? plan.exceptions.front().value : plan.spans.front().value;
    std::map<std::string, std::string> slots{
        {"entity", entity_name}, {"poss", possessive}, {"value", word(dominant)}};
    if (plan.exceptions.empty()) {
      sentences.push_back(fill_template(require_form(*schema, "plain"), slots,
                                        schema->name));
    } else {
      slots["exceptions"] = exception_rounds_phrase(plan.exceptions);
      sentences.push_back(fill_template(require_form(*schema, "exception"), slots,
                                        schema->name));
    }
  } else {
    for (std::size_t i = 0; i < plan.spans.size(); ++i) {
      const SummarySpan& span = plan.spans[i];
      bool lead = i == 0;
      bool split = span.profile == ConsensusStatus::Split;
      std::map<std::string, std::string> slots{
          {"entity", entity_name},
          {"poss", possessive},
          {"value", word(span.value)},
          {"hedge", hedge_phrase(span.profile)},
          // a split sentence is prefixed, so its round phrase stays lowercase
          {"when", round_phrase(span.round_from, span.round_to, false)},
          {"When", round_phrase(span.round_from, span.round_to, !split)},
      };
      std::string body = fill_template(
          require_form(*schema, lead ? "lead" : "follow"), slots, schema->name);
      if (split) body = "Sources disagree; " + body;
      sentences.push_back(std::move(body));
    }
  }

  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out += " ";
    out += sentences[i];
  }
  return out;
}

std::string summarize(const QueryResult& result, const SchemaRegistry& registry,
                      const Ontology& ontology, const Lexicon& lexicon,
                      int compression) {
  std::vector<ConsensusPoint> points = build_consensus(result, registry, ontology);
  SummaryPlan plan = make_plan(result, points, registry, ontology, compression);
  return realize(plan, registry, ontology, lexicon);
}

nlohmann::ordered_json plan_record(const SummaryPlan& plan) {
  Json rec;
  rec["schema"] = plan.schema;
  rec["subject"] = plan.subject_entity;
  rec["scale"] = plan.scale;
  rec["compression"] = plan.compression;
  Json spans = Json::array();
  for (const auto& span : plan.spans) {
    Json js;
    js["rounds"] = Json::array({span.round_from, span.round_to});
    js["value"] = span.value;
    js["status"] = to_string(span.profile);
    Json ev = Json::object();
    for (const auto& [label, count] : span.diachronic_evidence) ev[label] = count;
    js["diachronic_evidence"] = ev;
    spans.push_back(std::move(js));
  }
  rec["spans"] = spans;
  Json exceptions = Json::array();
  for (const auto& p : plan.exceptions) {
    Json jp;
    jp["round"] = p.round;
    jp["value"] = p.value;
    jp["support"] = p.support;
    Json dissent = Json::array();
    for (const auto& [source, value] : p.dissent)
      dissent.push_back(Json::array({source, value}));
    jp["dissent"] = dissent;
    jp["status"] = to_string(p.status);
    exceptions.push_back(std::move(jp));
  }
  rec["exceptions"] = exceptions;
  return rec;
}

}  // namespace gridsumm
