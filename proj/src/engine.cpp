#include "relnars/engine.hpp"

#include <algorithm>
#include <iterator>

namespace relnars {

namespace {

using Base = std::vector<std::uint64_t>;

bool overlap(const Base& a, const Base& b) {
  for (auto x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return true;
  return false;
}

Base unite(const Base& a, const Base& b) {
  Base out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

constexpr std::size_t kMaxBase = 64;

}  // namespace

std::string TraceEntry::str() const {
  if (kind == "exec") return "EXEC " + operation_label(term) + " @" + std::to_string(cycle);
  std::string out = kind + "(";
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(premises[i]);
  }
  out += ") ⊢ " + term.str() + " " + to_string(truth);
  return out;
}

Engine::Engine(EngineConfig config, std::uint64_t seed)
    : config_(std::move(config)), memory_(config_.memory, config_.evidence), rng_(seed) {}

void Engine::emit(TraceEntry e) {
  trace_.push_back(std::move(e));
  if (sink_) sink_(trace_.back());
}

std::uint64_t Engine::store(const Term& term, const TruthValue& truth, Origin origin, int depth,
                            const std::string& kind, std::vector<std::uint64_t> premises) {
  Task t;
  t.term = term;
  t.truth = truth;
  t.priority = config_.input_priority;
  std::uint64_t id = 0;
  TruthValue result = truth;
  for (const auto& o : memory_.ingest(t, now_, origin, depth)) {
    if (o.kind == IngestOutcome::Kind::Added || o.kind == IngestOutcome::Kind::Revised) {
      id = o.id;
      result = o.truth;
    }
  }
  emit({now_, kind, std::move(premises), term, result, id, false});
  return id;
}

void Engine::advance() {
  ++now_;
  memory_.decay(now_);
  check_negative_evidence();
}

void Engine::step(Cycle n) {
  for (Cycle i = 0; i < n; ++i) advance();
}

void Engine::input_line(std::string_view line) {
  input(parse_task(line, config_.input_confidence));
}

void Engine::input(Task task) {
  advance();
  if (task.is_judgment() && !task.truth) task.truth = TruthValue{1.0, config_.input_confidence};
  switch (task.punctuation) {
    case Punctuation::Judgment:
      if (task.is_event())
        handle_event(task);
      else
        handle_judgment(task);
      break;
    case Punctuation::Goal:
      if (task.is_event()) {
        handle_event(task);
        handle_goal(task);
      }
      break;
    case Punctuation::Question:
      handle_question(task);
      break;
  }
}

void Engine::handle_event(const Task& task) {
  std::uint64_t id = 0;
  for (const auto& o : memory_.ingest(task, now_))
    if (o.kind == IngestOutcome::Kind::Buffered) id = o.id;
  emit({now_, "input", {}, task.term, task.truth.value_or(TruthValue{}), id, false});
  if (!task.is_judgment()) return;
  if (task.term.kind() == TermKind::Operation) {
    pending_ops_.push_back({memory_.events().back(), std::nullopt});
  } else if (task.term.kind() == TermKind::Atom) {
    reinforce(task.term);
    if (active_goal_ && *active_goal_ == task.term) active_goal_.reset();
  }
}

void Engine::handle_judgment(const Task& task) {
  store(task.term, *task.truth, Origin::Input, 0, "input", {});
  const Term& t = task.term;
  if (as_relation(t) || t.kind() == TermKind::Implication || t.kind() == TermKind::Equivalence)
    saturate();
}

DecisionContext Engine::context_for(const Term& goal) const {
  DecisionContext ctx;
  ctx.goal = goal;
  for (const auto& e : memory_.events())
    if (e.cycle >= now_ - config_.precondition_horizon) ctx.window.push_back(e);
  ctx.beliefs = memory_.beliefs();
  ctx.permitted = permitted_;
  ctx.threshold = config_.threshold;
  ctx.babble_probability = config_.babble_probability;
  ctx.evidence = config_.evidence;
  ctx.cue_location = config_.cue_location;
  return ctx;
}

std::vector<Candidate> Engine::evaluate(const Term& goal) const {
  return evaluate_candidates(context_for(goal));
}

void Engine::handle_goal(const Task& task) {
  active_goal_ = task.term;
  const Decision d = process_goal(context_for(task.term), rng_);
  if (d.chosen) execute(*d.chosen, d.babbled, d.expectation);
}

void Engine::execute(const Term& op, bool babbled, double expectation) {
  Task t;
  t.term = op;
  t.tense = Tense::Present;
  t.truth = TruthValue{1.0, config_.input_confidence};
  memory_.ingest(t, now_);
  pending_ops_.push_back({memory_.events().back(), active_goal_});
  executions_.push_back({op, now_, babbled, expectation});
  emit({now_, "exec", {}, op, *t.truth, memory_.events().back().id, babbled});
}

void Engine::handle_question(const Task& task) {
  const Belief* best = memory_.find(task.term);
  if (!best) {
    for (const Belief* b : memory_.beliefs()) {
      if (!unify(task.term, b->term)) continue;
      if (!best || truth::expectation(b->truth) > truth::expectation(best->truth)) best = b;
    }
  }
  if (!best) {
    answers_.push_back("none");
    return;
  }
  answers_.push_back(best->term.str() + " " + to_string(best->truth));
  emit({now_, "answer", {best->id}, best->term, best->truth, best->id, false});
}

static InductionParams induction_params(const EngineConfig& c) {
  return {c.precondition_horizon, c.outcome_horizon, c.cue_location, c.evidence};
}

void Engine::reinforce(const Term& outcome) {
  auto it = std::find_if(pending_ops_.rbegin(), pending_ops_.rend(), [&](const PendingOp& p) {
    return p.op.cycle >= now_ - config_.outcome_horizon;
  });
  if (it == pending_ops_.rend()) return;
  const EventRecord op = it->op;
  pending_ops_.erase(std::next(it).base());

  const std::vector<EventRecord> history(memory_.events().begin(), memory_.events().end());
  auto c = temporal_induction(history, op, outcome, now_, induction_params(config_));
  if (c) learn_from(*c, op.id);
}

void Engine::learn_from(const Contingency& c, std::uint64_t source_id) {
  const Term term = c.term();
  const std::uint64_t id = store(term, c.truth, Origin::Induced, 0, "induce", {source_id});
  const TruthValue truth = memory_.find(term)->truth;
  if (has_repeated_value(c))
    store(introduce_variables(term), c.truth, Origin::Induced, 0, "induce", {id});

  acquire(term, truth, id);

  std::vector<std::pair<Contingency, std::uint64_t>> others;
  for (const Belief* b : memory_.beliefs()) {
    if (b->term == term || !b->term.is_ground()) continue;
    if (auto other = Contingency::from_term(b->term, b->truth)) others.emplace_back(*other, b->id);
  }
  for (const auto& [other, other_id] : others) {
    auto fe = derive_functional_equivalence(other, Contingency{c.preconditions, c.operation,
                                                                c.outcome, truth},
                                            config_.cue_location, config_.evidence);
    if (!fe) continue;
    const std::vector<std::uint64_t> from{other_id, id};
    const std::uint64_t eq = store(fe->equivalence, fe->truth, Origin::Induced, 0, "equivalence", from);
    store(fe->forward, fe->truth, Origin::Induced, 0, "equivalence", from);
    store(fe->backward, fe->truth, Origin::Induced, 0, "equivalence", from);
    acquire(fe->equivalence, fe->truth, eq);
  }
  saturate();
}

void Engine::acquire(const Term& source, const TruthValue& truth, std::uint64_t source_id) {
  for (const auto& ar : derive_acquired_relations(source, truth, config_.cue_location)) {
    const std::uint64_t rid = store(ar.relation, ar.truth, Origin::Acquired, 0, "acquire", {source_id});
    store(ar.companion, ar.truth, Origin::Acquired, 0, "acquire", {source_id});
    store(ar.grounding, ar.truth, Origin::Acquired, 0, "acquire", {source_id});
    store(ar.abstract_grounding, ar.truth, Origin::Acquired, 0, "acquire", {source_id});
    induce_rules(ar.relation, rid);
  }
}

void Engine::induce_rules(const Term& relation, std::uint64_t relation_id) {
  std::vector<std::pair<Term, TruthValue>> acquired;
  for (const Belief* b : memory_.beliefs())
    if (b->origin == Origin::Acquired && as_relation(b->term) && !is_scene_structure(b->term))
      acquired.emplace_back(b->term, b->truth);

  for (const auto& rule : induce_relational_rules(relation, acquired, config_.evidence)) {
    std::vector<std::uint64_t> premises;
    for (const auto& p : rule.premises)
      if (const Belief* b = memory_.find(p)) premises.push_back(b->id);
    if (premises.empty()) premises.push_back(relation_id);
    const std::uint64_t cid = store(rule.concrete, rule.truth, Origin::Induced, 0, "rule", premises);
    store(rule.abstract, rule.truth, Origin::Induced, 0, "rule", {cid});
  }
}

namespace {

bool is_relational_rule(const Term& t) {
  if (t.is_ground()) return false;
  if (t.kind() != TermKind::Implication && t.kind() != TermKind::Equivalence) return false;
  if (!as_relation(rule_conclusion(t))) return false;
  for (const auto& p : rule_premises(t))
    if (!as_relation(p)) return false;
  return true;
}

}  // namespace

std::vector<std::uint64_t> Engine::base_of(const Belief& b) const {
  Base out;
  if (auto it = bases_.find(b.term.str()); it != bases_.end()) out = it->second;
  if (b.origin != Origin::Derived) out = unite(out, {b.id});
  return out;
}

void Engine::merge_base(const Term& term, const std::vector<std::uint64_t>& base) {
  Base& slot = bases_[term.str()];
  slot = unite(slot, base);
  if (slot.size() > kMaxBase) slot.erase(slot.begin(), slot.end() - kMaxBase);
}

// Forward chaining to a fixed point. A conclusion is only revised with
// evidence it does not already contain; a rule counts as its own evidence.
void Engine::saturate() {
  for (int round = 0; round < config_.depth_limit; ++round) {
    std::vector<const Belief*> rules;
    std::vector<Term> facts;
    for (const Belief* b : memory_.beliefs()) {
      if (is_relational_rule(b->term))
        rules.push_back(b);
      else if (b->term.is_ground() && as_relation(b->term) && !is_scene_structure(b->term))
        facts.push_back(b->term);
    }
    struct Pending {
      Term conclusion;
      TruthValue truth;
      int depth;
      std::vector<std::uint64_t> premises;
      Base base;
    };
    std::vector<Pending> fresh;
    for (const Belief* rule : rules) {
      for (const auto& app : apply_implication(rule->term, facts)) {
        if (as_relation(app.conclusion)->reflexive()) continue;
        std::string key = rule->term.str();
        for (const auto& p : app.premises) key += '|' + p.str();
        if (!fired_.insert(key).second) continue;
        std::vector<TruthValue> truths;
        std::vector<std::uint64_t> ids{rule->id};
        Base base = base_of(*rule);
        bool independent = true;
        int depth = 0;
        for (const auto& p : app.premises) {
          const Belief* b = memory_.find(p);
          const Base pb = base_of(*b);
          independent = independent && !overlap(base, pb);
          base = unite(base, pb);
          truths.push_back(b->truth);
          ids.push_back(b->id);
          depth = std::max(depth, b->depth);
        }
        if (!independent || depth + 1 > config_.depth_limit) continue;
        fresh.push_back({app.conclusion, conclusion_truth(truths, rule->truth, config_.evidence),
                         depth + 1, std::move(ids), std::move(base)});
      }
    }
    bool changed = false;
    for (auto& f : fresh) {
      if (const Belief* existing = memory_.find(f.conclusion);
          existing && overlap(base_of(*existing), f.base))
        continue;
      store(f.conclusion, f.truth, Origin::Derived, f.depth, "derive", std::move(f.premises));
      merge_base(f.conclusion, f.base);
      changed = true;
    }
    if (!changed) return;
  }
}

void Engine::check_negative_evidence() {
  for (auto it = pending_ops_.begin(); it != pending_ops_.end();) {
    if (now_ - it->op.cycle <= config_.outcome_horizon) {
      ++it;
      continue;
    }
    if (config_.negative_evidence && it->goal) {
      const std::vector<EventRecord> history(memory_.events().begin(), memory_.events().end());
      auto pre = credited_preconditions(history, it->op, induction_params(config_));
      if (!pre.empty()) {
        Contingency c{pre, it->op.task.term, *it->goal, {}};
        const Term term = c.term();
        if (memory_.find(term)) {
          TruthValue t = truth::induce_single(1, config_.evidence);
          t.frequency = 0.0;
          store(term, t, Origin::Induced, 0, "negative", {it->op.id});
        }
      }
    }
    it = pending_ops_.erase(it);
  }
}

void Engine::load(std::string_view text) { memory_.load(text); }

void Engine::reset() {
  memory_.clear();
  now_ = 0;
  active_goal_.reset();
  pending_ops_.clear();
  fired_.clear();
  bases_.clear();
  executions_.clear();
  trace_.clear();
  answers_.clear();
}

}  // namespace relnars
