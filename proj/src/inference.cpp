#include "relnars/inference.hpp"

#include <algorithm>
#include <set>

namespace relnars {

// ---------------------------------------------------------------------------
// Term shapes

std::optional<Percept> as_percept(const Term& t) {
  if (t.kind() != TermKind::Inheritance) return std::nullopt;
  const Term& s = t[0];
  const Term& p = t[1];
  if (s.kind() != TermKind::Product || p.kind() != TermKind::Product) return std::nullopt;
  if (!p[0].is_atom() || !p[1].is_atom() || p[0] == p[1]) return std::nullopt;
  if (!s[0].is_atom() || !s[1].is_atom()) return std::nullopt;
  return Percept{s[0], s[1], p[1]};
}

std::optional<RelationView> as_relation(const Term& t) {
  if (t.kind() != TermKind::Inheritance || as_percept(t)) return std::nullopt;
  const Term& s = t[0];
  const Term& p = t[1];
  if (s.kind() != TermKind::Product || p.kind() != TermKind::Product) return std::nullopt;
  if (s[1].kind() == TermKind::Product && p[1].kind() == TermKind::Product) {
    return RelationView{s[0], s[1][0], s[1][1], p};
  }
  return RelationView{std::nullopt, s[0], s[1], p};
}

Term make_relation(const std::optional<Term>& frame, const Term& first, const Term& second,
                   const Term& predicate) {
  Term pair = Term::product(first, second);
  return Term::inheritance(frame ? Term::product(*frame, pair) : pair, predicate);
}

namespace {

bool all_same_atom(const Term& t, const Term& atom) {
  if (t.is_atom()) return t == atom;
  if (t.kind() != TermKind::Product) return false;
  return all_same_atom(t[0], atom) && all_same_atom(t[1], atom);
}

}  // namespace

bool is_scene_structure(const Term& t) {
  auto rel = as_relation(t);
  if (!rel) return false;
  const Term& pred = rel->predicate;
  return all_same_atom(pred, Term::atom("loc"));
}

bool is_sensory(const Term& t) {
  if (t.kind() == TermKind::Sequence) {
    return std::all_of(t.children().begin(), t.children().end(),
                       [](const Term& c) { return as_percept(c).has_value(); });
  }
  return as_percept(t).has_value();
}

std::vector<Term> sequence_items(const Term& t) {
  if (t.kind() == TermKind::Sequence) return {t.children().begin(), t.children().end()};
  return {t};
}

// ---------------------------------------------------------------------------
// Contingencies

Term Contingency::term() const {
  std::vector<Term> items = preconditions;
  items.push_back(operation);
  return Term::predictive(Term::sequence(std::move(items)), outcome);
}

std::optional<Contingency> Contingency::from_term(const Term& t, TruthValue truth) {
  if (t.kind() != TermKind::PredictiveImplication) return std::nullopt;
  auto items = sequence_items(t[0]);
  if (items.size() < 2 || items.back().kind() != TermKind::Operation) return std::nullopt;
  Contingency c;
  c.operation = items.back();
  items.pop_back();
  c.preconditions = std::move(items);
  c.outcome = t[1];
  c.truth = truth;
  return c;
}

namespace {

void collect_atoms(const Term& t, std::set<std::string>& out) {
  if (t.is_atom()) out.insert(t.name());
  for (const auto& c : t.children()) collect_atoms(c, out);
}

bool is_boundary_event(const EventRecord& e) {
  return e.task.is_judgment() &&
         (e.task.term.kind() == TermKind::Operation || e.task.term.is_atom());
}

}  // namespace

std::vector<Term> credited_preconditions(std::span<const EventRecord> history,
                                         const EventRecord& op, const InductionParams& params) {
  std::vector<const EventRecord*> before;
  for (const auto& e : history) {
    if (e.id == op.id) break;
    if (is_boundary_event(e)) {
      before.clear();
      continue;
    }
    if (!e.task.is_judgment()) continue;
    if (e.cycle < op.cycle - params.precondition_horizon) continue;
    if (as_percept(e.task.term)) before.push_back(&e);
  }

  std::set<std::string> arg_atoms;
  if (op.task.term.kind() == TermKind::Operation) collect_atoms(op.task.term[1], arg_atoms);
  const bool located = std::any_of(before.begin(), before.end(), [&](const EventRecord* e) {
    return arg_atoms.count(as_percept(e->task.term)->location.name()) > 0;
  });

  std::vector<Term> out;
  for (const EventRecord* e : before) {
    const auto p = as_percept(e->task.term);
    const bool keep = !located || arg_atoms.count(p->location.name()) > 0 ||
                      p->location.name() == params.cue_location;
    if (keep && std::find(out.begin(), out.end(), e->task.term) == out.end())
      out.push_back(e->task.term);
  }
  return out;
}

std::optional<Contingency> temporal_induction(std::span<const EventRecord> history,
                                              const EventRecord& op, const Term& outcome,
                                              Cycle outcome_cycle, const InductionParams& params) {
  if (op.task.term.kind() != TermKind::Operation) return std::nullopt;
  const Cycle delay = outcome_cycle - op.cycle;
  if (delay < 0 || delay > params.outcome_horizon) return std::nullopt;
  auto pre = credited_preconditions(history, op, params);
  if (pre.empty()) return std::nullopt;
  return Contingency{std::move(pre), op.task.term, outcome,
                     truth::induce_single(1, params.evidence)};
}

// ---------------------------------------------------------------------------
// Abstraction

namespace {

void collect_fixed(const Term& t, std::set<std::string>& fixed, Abstraction mode) {
  switch (t.kind()) {
    case TermKind::Inheritance:
      collect_atoms(t[1], fixed);
      if (mode == Abstraction::KeepFrames) {
        if (auto rel = as_relation(t); rel && rel->frame && rel->frame->is_atom())
          fixed.insert(rel->frame->name());
      }
      collect_fixed(t[0], fixed, mode);
      return;
    case TermKind::Operation:
      collect_atoms(t[0], fixed);
      collect_fixed(t[1], fixed, mode);
      return;
    case TermKind::Implication:
    case TermKind::Equivalence:
    case TermKind::PredictiveImplication:
    case TermKind::Sequence:
    case TermKind::Conjunction:
      for (const auto& c : t.children()) {
        if (c.is_atom()) fixed.insert(c.name());
        collect_fixed(c, fixed, mode);
      }
      return;
    default:
      for (const auto& c : t.children()) collect_fixed(c, fixed, mode);
  }
}

Term abstract_atoms(const Term& t, const std::set<std::string>& fixed, TermKind var_kind,
                    std::map<std::string, Term>& vars, int& next) {
  if (t.is_atom()) {
    if (fixed.count(t.name())) return t;
    auto it = vars.find(t.name());
    if (it == vars.end()) it = vars.emplace(t.name(), Term::variable(var_kind, ++next)).first;
    return it->second;
  }
  if (t.children().empty()) return t;
  std::vector<Term> kids;
  kids.reserve(t.size());
  for (const auto& c : t.children()) kids.push_back(abstract_atoms(c, fixed, var_kind, vars, next));
  return Term::make(t.kind(), std::move(kids), t.name(), t.index());
}

}  // namespace

Term introduce_variables(const Term& t, Abstraction mode) {
  std::set<std::string> fixed;
  if (t.is_atom()) return t;
  collect_fixed(t, fixed, mode);
  const TermKind var_kind = t.kind() == TermKind::PredictiveImplication
                                ? TermKind::DependentVar
                                : TermKind::IndependentVar;
  // New variables are numbered past any already present.
  int next = 0;
  for (const auto& v : variables_of(t))
    if (v.kind() == var_kind) next = std::max(next, v.index());
  std::map<std::string, Term> vars;
  Term out = abstract_atoms(t, fixed, var_kind, vars, next);
  return normalize_variables(out);
}

bool has_repeated_value(const Contingency& c) {
  std::set<std::string> seen;
  for (const auto& pre : c.preconditions) {
    auto p = as_percept(pre);
    if (!p) continue;
    if (!seen.insert(p->value.str()).second) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Functional equivalence and acquired relations

namespace {

struct StimulusSplit {
  std::vector<Percept> cues;
  std::vector<Percept> stimuli;
  bool all_percepts = true;
};

StimulusSplit split(const std::vector<Term>& items, const std::string& cue_location) {
  StimulusSplit out;
  for (const auto& it : items) {
    auto p = as_percept(it);
    if (!p) {
      out.all_percepts = false;
      continue;
    }
    (p->location.name() == cue_location ? out.cues : out.stimuli).push_back(*p);
  }
  return out;
}

Term loc_channel(const Term& percept_term) { return percept_term[1][0]; }

}  // namespace

std::optional<FunctionalEquivalence> derive_functional_equivalence(
    const Contingency& a, const Contingency& b, const std::string& cue_location,
    const EvidenceParams& evidence) {
  if (a.operation != b.operation || a.outcome != b.outcome) return std::nullopt;
  if (a.preconditions == b.preconditions) return std::nullopt;
  auto sa = split(a.preconditions, cue_location);
  auto sb = split(b.preconditions, cue_location);
  if (!sa.all_percepts || !sb.all_percepts) return std::nullopt;
  if (sa.stimuli.size() != 1 || sb.stimuli.size() != 1) return std::nullopt;
  if (sa.stimuli[0].channel != sb.stimuli[0].channel) return std::nullopt;
  if (sa.stimuli[0].value == sb.stimuli[0].value) return std::nullopt;

  const Contingency* first = &a;
  const Contingency* second = &b;
  if (sa.cues.empty() && !sb.cues.empty()) std::swap(first, second);

  Term p1 = Term::sequence(first->preconditions);
  Term p2 = Term::sequence(second->preconditions);
  return FunctionalEquivalence{Term::equivalence(p1, p2), Term::implication(p1, p2),
                               Term::implication(p2, p1),
                               truth::compare(first->truth, second->truth, evidence)};
}

std::vector<AcquiredRelation> derive_acquired_relations(const Term& source, TruthValue truth,
                                                        const std::string& cue_location) {
  std::vector<Term> first_side;
  std::vector<Term> second_side;
  std::vector<Term> pairing_pool;
  bool from_equivalence = false;

  if (auto c = Contingency::from_term(source)) {
    pairing_pool = c->preconditions;
  } else if (source.kind() == TermKind::Equivalence || source.kind() == TermKind::Implication) {
    if (!is_sensory(source[0]) || !is_sensory(source[1])) return {};
    first_side = sequence_items(source[0]);
    second_side = sequence_items(source[1]);
    from_equivalence = true;
  } else {
    return {};
  }

  std::optional<Percept> cue;
  std::optional<std::pair<Term, Term>> pair;  // percept terms, in order

  auto find_cue = [&](const std::vector<Term>& items) {
    for (const auto& it : items) {
      auto p = as_percept(it);
      if (p && p->location.name() == cue_location && !cue) cue = p;
    }
  };

  if (from_equivalence) {
    find_cue(first_side);
    find_cue(second_side);
    auto first_stimulus = [&](const std::vector<Term>& items) -> std::optional<Term> {
      for (const auto& it : items) {
        auto p = as_percept(it);
        if (p && p->location.name() != cue_location) return it;
      }
      return std::nullopt;
    };
    auto s1 = first_stimulus(first_side);
    auto s2 = first_stimulus(second_side);
    if (s1 && s2 && as_percept(*s1)->channel == as_percept(*s2)->channel) pair.emplace(*s1, *s2);
  } else {
    find_cue(pairing_pool);
    std::vector<Term> stimuli;
    for (const auto& it : pairing_pool) {
      auto p = as_percept(it);
      if (p && p->location.name() != cue_location) stimuli.push_back(it);
    }
    for (std::size_t i = 0; i < stimuli.size() && !pair; ++i)
      for (std::size_t j = i + 1; j < stimuli.size() && !pair; ++j)
        if (as_percept(stimuli[i])->channel == as_percept(stimuli[j])->channel)
          pair.emplace(stimuli[i], stimuli[j]);
  }
  if (!pair) return {};

  const Percept p1 = *as_percept(pair->first);
  const Percept p2 = *as_percept(pair->second);
  const Term loc = loc_channel(pair->first);

  Term relation_subject = Term::product(p1.value, p2.value);
  Term relation_pred = Term::product(p1.channel, p2.channel);
  Term companion_subject = Term::product(p1.location, p2.location);
  Term companion_pred = Term::product(loc, loc);
  if (cue) {
    relation_subject = Term::product(cue->value, relation_subject);
    relation_pred = Term::product(cue->channel, relation_pred);
    companion_subject = Term::product(cue->location, companion_subject);
    companion_pred = Term::product(loc, companion_pred);
  }

  AcquiredRelation out;
  out.relation = Term::inheritance(relation_subject, relation_pred);
  out.companion = Term::inheritance(companion_subject, companion_pred);
  out.grounding = Term::implication(Term::conjunction({out.relation, out.companion}), source);
  out.abstract_grounding = introduce_variables(out.grounding, Abstraction::Full);
  out.truth = truth;
  return {out};
}

// ---------------------------------------------------------------------------
// Rule application

std::vector<Term> rule_premises(const Term& rule, bool reversed) {
  const Term& side = rule[reversed ? 1 : 0];
  if (rule.kind() == TermKind::Implication && side.kind() == TermKind::Conjunction)
    return {side.children().begin(), side.children().end()};
  return {side};
}

Term rule_conclusion(const Term& rule, bool reversed) { return rule[reversed ? 0 : 1]; }

std::vector<RuleApplication> apply_implication(const Term& rule,
                                               const std::vector<Term>& available) {
  std::vector<RuleApplication> out;
  if (rule.kind() != TermKind::Implication && rule.kind() != TermKind::Equivalence) return out;
  const int directions = rule.kind() == TermKind::Equivalence ? 2 : 1;
  for (int dir = 0; dir < directions; ++dir) {
    const bool reversed = dir == 1;
    const auto premises = rule_premises(rule, reversed);
    const Term conclusion = rule_conclusion(rule, reversed);
    for (const auto& s : match_all(premises, available)) {
      Term concl = s.apply(conclusion);
      if (!concl.is_ground()) continue;
      RuleApplication app{concl, {}, s};
      for (const auto& p : premises) app.premises.push_back(s.apply(p));
      const bool seen = std::any_of(out.begin(), out.end(), [&](const RuleApplication& o) {
        return o.conclusion == app.conclusion && o.premises == app.premises;
      });
      if (!seen) out.push_back(std::move(app));
    }
  }
  return out;
}

TruthValue conclusion_truth(std::span<const TruthValue> premises, const TruthValue& rule,
                            const EvidenceParams& evidence) {
  TruthValue joint{1.0, 1.0};
  bool first = true;
  for (const auto& t : premises) {
    joint = first ? t : truth::intersect(joint, t);
    first = false;
  }
  return truth::deduce(joint, rule, evidence);
}

// ---------------------------------------------------------------------------
// Relational rule induction

namespace {

bool same_family(const RelationView& a, const RelationView& b) {
  return a.predicate == b.predicate && a.frame.has_value() == b.frame.has_value();
}

}  // namespace

std::vector<InducedRule> induce_relational_rules(
    const Term& fresh, const std::vector<std::pair<Term, TruthValue>>& acquired,
    const EvidenceParams& evidence) {
  std::vector<InducedRule> out;
  auto fv = as_relation(fresh);
  if (!fv || fv->reflexive() || is_scene_structure(fresh)) return out;

  const TruthValue* fresh_truth = nullptr;
  std::vector<std::pair<RelationView, const std::pair<Term, TruthValue>*>> pool;
  for (const auto& entry : acquired) {
    if (entry.first == fresh) {
      fresh_truth = &entry.second;
      continue;
    }
    auto v = as_relation(entry.first);
    if (!v || v->reflexive() || is_scene_structure(entry.first) || !same_family(*v, *fv)) continue;
    pool.emplace_back(*v, &entry);
  }
  const TruthValue ft = fresh_truth ? *fresh_truth : TruthValue{};

  auto add = [&](Term concrete, std::vector<Term> premises, TruthValue t) {
    for (const auto& r : out)
      if (r.concrete == concrete) return;
    Term abstract = introduce_variables(concrete, Abstraction::KeepFrames);
    out.push_back({std::move(concrete), std::move(abstract), std::move(premises), t});
  };

  // Mutual pairs.
  for (const auto& [v, entry] : pool) {
    if (v.first == fv->second && v.second == fv->first && v.frame == fv->frame) {
      add(Term::equivalence(entry->first, fresh), {entry->first, fresh},
          truth::compare(entry->second, ft, evidence));
    }
  }

  // Triangles r1(a,b), r2(b,c), r3(a,c) with the fresh relation in any role.
  struct Rel {
    RelationView v;
    Term term;
    TruthValue truth;
  };
  std::vector<Rel> all{{*fv, fresh, ft}};
  for (const auto& [v, entry] : pool) all.push_back({v, entry->first, entry->second});

  auto triangle = [&](const Rel& r1, const Rel& r2, const Rel& r3) {
    if (r1.v.second != r2.v.first) return;
    if (r3.v.first != r1.v.first || r3.v.second != r2.v.second) return;
    const Term& a = r1.v.first;
    const Term& b = r1.v.second;
    const Term& c = r2.v.second;
    if (a == b || b == c || a == c) return;
    Term concrete = Term::implication(Term::conjunction({r1.term, r2.term}), r3.term);
    const double w = r1.truth.frequency * r2.truth.frequency * r1.truth.confidence *
                     r2.truth.confidence * r3.truth.confidence;
    add(std::move(concrete), {r1.term, r2.term, r3.term},
        {r3.truth.frequency, truth::to_confidence(w, evidence)});
  };

  for (std::size_t i = 1; i < all.size(); ++i) {
    for (std::size_t j = 1; j < all.size(); ++j) {
      if (i == j) continue;
      triangle(all[0], all[i], all[j]);
      triangle(all[i], all[0], all[j]);
      triangle(all[i], all[j], all[0]);
    }
  }
  return out;
}

}  // namespace relnars
