#include "relnars/decision.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace relnars {

std::string operation_label(const Term& op) {
  if (op.kind() != TermKind::Operation) return op.str();
  std::string args = op[1].str();
  if (op[1].kind() == TermKind::Product) args = args.substr(1, args.size() - 2);
  return op.name() + "(" + args + ")";
}

Term motor_babble(std::span<const Term> permitted, std::mt19937_64& rng) {
  if (permitted.empty()) throw std::invalid_argument("motor babbling needs a permitted operation");
  std::uniform_int_distribution<std::size_t> pick(0, permitted.size() - 1);
  return permitted[pick(rng)];
}

namespace {

struct Item {
  std::vector<Term> terms;
  Cycle cycle = 0;
  std::optional<Term> via;
  TruthValue via_truth;
  std::vector<std::size_t> covers;  // real items this one stands for
};

struct Grounded {
  Term term;
  TruthValue truth;
  std::optional<Term> rule;
};

// Conclusions are checked once instantiated.
bool is_grounding_rule(const Term& t) {
  if (t.kind() != TermKind::Implication) return false;
  const TermKind k = t[1].kind();
  return k == TermKind::PredictiveImplication || k == TermKind::Equivalence ||
         k == TermKind::Implication;
}

bool is_sensory_link(const Term& t) {
  return (t.kind() == TermKind::Equivalence || t.kind() == TermKind::Implication) &&
         is_sensory(t[0]) && is_sensory(t[1]);
}

// Matches `pattern` items in order against real items (nondecreasing
// cycle). Reports every consistent binding with the last matched cycle.
struct Run {
  Substitution bindings;
  Cycle last = 0;
  std::vector<std::size_t> covers;
};

void match_run(const std::vector<Term>& pattern, std::size_t at, const std::vector<Item>& items,
               Cycle min_cycle, const Substitution& s, Run& cur, std::vector<Run>& out) {
  if (at == pattern.size()) {
    out.push_back({s, cur.last, cur.covers});
    return;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& it = items[i];
    if (it.cycle < min_cycle) continue;
    if (std::find(cur.covers.begin(), cur.covers.end(), i) != cur.covers.end()) continue;
    auto next = unify(pattern[at], it.terms[0], s);
    if (!next) continue;
    const Cycle last = cur.last;
    cur.covers.push_back(i);
    cur.last = it.cycle;
    match_run(pattern, at + 1, items, it.cycle, *next, cur, out);
    cur.covers.pop_back();
    cur.last = last;
  }
}

struct Match {
  Substitution bindings;
  std::vector<const Item*> used;
};

bool overlaps(const Item& it, const std::vector<const Item*>& used) {
  for (const Item* u : used)
    for (std::size_t c : it.covers)
      if (std::find(u->covers.begin(), u->covers.end(), c) != u->covers.end()) return true;
  return false;
}

// A real stimulus is used at most once per match, whether directly or
// through an equivalence.
void match_preconditions(const std::vector<Term>& pre, std::size_t at,
                         const std::vector<Item>& items, Cycle min_cycle, const Substitution& s,
                         std::vector<const Item*>& used, std::vector<Match>& out) {
  if (at == pre.size()) {
    out.push_back({s, used});
    return;
  }
  for (const auto& it : items) {
    if (it.cycle < min_cycle || at + it.terms.size() > pre.size()) continue;
    if (overlaps(it, used)) continue;
    std::optional<Substitution> cur = s;
    for (std::size_t k = 0; k < it.terms.size() && cur; ++k)
      cur = unify(pre[at + k], it.terms[k], *cur);
    if (!cur) continue;
    used.push_back(&it);
    match_preconditions(pre, at + it.terms.size(), items, it.cycle, *cur, used, out);
    used.pop_back();
  }
}

}  // namespace

std::vector<Candidate> evaluate_candidates(const DecisionContext& ctx) {
  std::map<std::string, TruthValue> truth_of;
  std::vector<Term> available;
  std::vector<Item> items;

  for (const auto& e : ctx.window) {
    if (!e.task.is_judgment()) continue;
    const Term& t = e.task.term;
    if (t.kind() == TermKind::Operation || t.is_atom()) continue;
    items.push_back({{t}, e.cycle, std::nullopt, {}, {items.size()}});
    available.push_back(t);
    truth_of[t.str()] = e.task.truth.value_or(TruthValue{});
  }
  for (const Belief* b : ctx.beliefs) {
    if (b->term.is_ground() && as_relation(b->term)) {
      available.push_back(b->term);
      truth_of.emplace(b->term.str(), b->truth);
    }
  }

  std::vector<Grounded> contingencies;
  std::vector<Grounded> links;
  auto add_grounded = [&](const Term& t, const TruthValue& tv, const std::optional<Term>& rule) {
    if (auto c = Contingency::from_term(t)) {
      if (unify(c->outcome, ctx.goal)) contingencies.push_back({t, tv, rule});
    } else if (is_sensory_link(t)) {
      links.push_back({t, tv, rule});
    }
  };

  for (const Belief* b : ctx.beliefs) {
    add_grounded(b->term, b->truth, std::nullopt);
    if (!is_grounding_rule(b->term)) continue;
    for (const auto& app : apply_implication(b->term, available)) {
      std::vector<TruthValue> premise_truths;
      for (const auto& p : app.premises) {
        auto it = truth_of.find(p.str());
        premise_truths.push_back(it == truth_of.end() ? TruthValue{} : it->second);
      }
      add_grounded(app.conclusion, conclusion_truth(premise_truths, b->truth, ctx.evidence),
                   b->term);
    }
  }

  // Stimuli that stand in for present ones through an equivalence.
  const std::vector<Item> real = items;
  for (const auto& link : links) {
    const int directions = link.term.kind() == TermKind::Equivalence ? 2 : 1;
    for (int dir = 0; dir < directions; ++dir) {
      const Term& from = link.term[dir];
      const Term& to = link.term[1 - dir];
      std::vector<Run> runs;
      Run cur;
      match_run(sequence_items(from), 0, real, 0, {}, cur, runs);
      for (const auto& run : runs) {
        Term target = run.bindings.apply(to);
        if (!target.is_ground()) continue;
        const auto parts = sequence_items(target);
        const bool introduces_cue = std::any_of(parts.begin(), parts.end(), [&](const Term& t) {
          auto p = as_percept(t);
          return p && p->location.name() == ctx.cue_location;
        });
        if (introduces_cue) continue;
        items.push_back({parts, run.last, link.term, link.truth, run.covers});
      }
    }
  }

  std::vector<Candidate> out;
  for (const auto& g : contingencies) {
    auto c = Contingency::from_term(g.term, g.truth);
    std::vector<Match> matches;
    std::vector<const Item*> used;
    auto seed = unify(c->outcome, ctx.goal);
    match_preconditions(c->preconditions, 0, items, 0, *seed, used, matches);
    for (const auto& m : matches) {
      Term op = m.bindings.apply(c->operation);
      if (!op.is_ground()) continue;
      if (!ctx.permitted.empty() &&
          std::find(ctx.permitted.begin(), ctx.permitted.end(), op) == ctx.permitted.end())
        continue;
      Candidate cand{op, m.bindings.apply(g.term), g.truth, 0.5, {}, g.rule};
      for (const Item* it : m.used) {
        if (!it->via) continue;
        cand.truth = truth::deduce(it->via_truth, cand.truth, ctx.evidence);
        cand.substitutions.push_back(*it->via);
      }
      cand.expectation = truth::expectation(cand.truth);
      out.push_back(std::move(cand));
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.expectation != b.expectation) return a.expectation > b.expectation;
    return a.operation.str() < b.operation.str();
  });
  return out;
}

Decision process_goal(const DecisionContext& ctx, std::mt19937_64& rng) {
  Decision d;
  auto candidates = evaluate_candidates(ctx);
  if (!candidates.empty() && candidates.front().expectation >= ctx.threshold) {
    const auto& best = candidates.front();
    d.chosen = best.operation;
    d.expectation = best.expectation;
    d.source = best.contingency;
    return d;
  }
  if (ctx.permitted.empty() || ctx.babble_probability <= 0.0) return d;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < ctx.babble_probability) {
    d.chosen = motor_babble(ctx.permitted, rng);
    d.babbled = true;
  }
  return d;
}

}  // namespace relnars
