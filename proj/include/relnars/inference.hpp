#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relnars/memory.hpp"
#include "relnars/narsese.hpp"
#include "relnars/truth.hpp"
#include "relnars/unify.hpp"

namespace relnars {

// ---------------------------------------------------------------------------
// Term shapes

/// `<(location * value) --> (loc * channel)>` with channel other than `loc`.
struct Percept {
  Term location;
  Term value;
  Term channel;
};
std::optional<Percept> as_percept(const Term& t);

/// Relational product statement, either `<(a * b) --> (p * q)>` or the
/// framed form `<(F * (a * b)) --> (c * (p * q))>`.
struct RelationView {
  std::optional<Term> frame;
  Term first;
  Term second;
  Term predicate;

  bool reflexive() const { return first == second; }
};
std::optional<RelationView> as_relation(const Term& t);
Term make_relation(const std::optional<Term>& frame, const Term& first, const Term& second,
                   const Term& predicate);

/// Location-pairing statements such as `<(sample * left) --> (loc * loc)>`.
bool is_scene_structure(const Term& t);

/// A percept, or a sequence made only of percepts.
bool is_sensory(const Term& t);

/// Items of a sequence, or the term itself.
std::vector<Term> sequence_items(const Term& t);

// ---------------------------------------------------------------------------
// Contingencies

/// `(pre_1 &/ ... &/ pre_n &/ op) =/> outcome`.
struct Contingency {
  std::vector<Term> preconditions;
  Term operation;
  Term outcome;
  TruthValue truth;

  Term term() const;
  static std::optional<Contingency> from_term(const Term& t, TruthValue truth = {});
};

struct InductionParams {
  Cycle precondition_horizon = 16;
  Cycle outcome_horizon = 8;
  std::string cue_location = "rel";
  EvidenceParams evidence;
};

/// Builds the contingency crediting `op` for `outcome` from the events that
/// preceded the operation. `history` is the event buffer in time order.
/// When the operation's arguments name percept locations, only percepts at
/// those locations (plus the cue location) become preconditions.
std::optional<Contingency> temporal_induction(std::span<const EventRecord> history,
                                              const EventRecord& op, const Term& outcome,
                                              Cycle outcome_cycle, const InductionParams& params);

/// Precondition set that would be credited to `op`, without an outcome.
std::vector<Term> credited_preconditions(std::span<const EventRecord> history,
                                         const EventRecord& op, const InductionParams& params);

// ---------------------------------------------------------------------------
// Abstraction

enum class Abstraction {
  /// Every non-structural atom becomes a variable (relation-to-sensorimotor
  /// grounding rules, identity hypotheses).
  Full,
  /// As `Full`, but frame atoms (SAME, OPPOSITE, ...) stay fixed, so the
  /// rule keeps its frame-specific conclusion.
  KeepFrames,
};

/// Replaces abstractable atoms by variables; repeated atoms share a
/// variable. Channel names, `{SELF}`, operator names, and bare-atom
/// statements (such as `G`) are never abstracted. Predictive implications
/// get dependent (`#`) variables, everything else independent (`$`).
Term introduce_variables(const Term& t, Abstraction mode = Abstraction::Full);

/// True when some value atom repeats across the preconditions (identity).
bool has_repeated_value(const Contingency& c);

// ---------------------------------------------------------------------------
// Functional equivalence and acquired relations

struct FunctionalEquivalence {
  Term equivalence;  // <P1 <=> P2>
  Term forward;      // <P1 ==> P2>
  Term backward;     // <P2 ==> P1>
  TruthValue truth;
};

/// Two contingencies with the same operation and outcome whose
/// preconditions each hold a single discriminative stimulus (plus an
/// optional cue) yield an equivalence between their preconditions.
std::optional<FunctionalEquivalence> derive_functional_equivalence(
    const Contingency& a, const Contingency& b, const std::string& cue_location,
    const EvidenceParams& evidence);

struct AcquiredRelation {
  Term relation;            // <(a * b) --> (ch * ch)> or the framed form
  Term companion;           // <(l1 * l2) --> (loc * loc)> or the framed form
  Term grounding;           // <(relation && companion) ==> source>
  Term abstract_grounding;  // grounding with variables introduced
  TruthValue truth;

  std::vector<Term> terms() const { return {relation, companion, grounding, abstract_grounding}; }
};

/// Distills relations from an executed contingency or a derived
/// equivalence. Returns nothing when fewer than two same-channel stimuli
/// (ignoring the cue) take part.
std::vector<AcquiredRelation> derive_acquired_relations(const Term& source, TruthValue truth,
                                                        const std::string& cue_location);

// ---------------------------------------------------------------------------
// Rule application

struct RuleApplication {
  Term conclusion;
  std::vector<Term> premises;  // the matched premise terms, antecedent order
  Substitution bindings;
};

/// Premise patterns a rule needs: the conjuncts of an implication's
/// antecedent, or one side of an equivalence (`reversed` picks the right
/// side).
std::vector<Term> rule_premises(const Term& rule, bool reversed = false);
Term rule_conclusion(const Term& rule, bool reversed = false);

/// Applies an implication (or an equivalence, in both directions) to the
/// available ground terms. Conclusions left with free variables are
/// dropped.
std::vector<RuleApplication> apply_implication(const Term& rule, const std::vector<Term>& available);

/// Truth of a conclusion: premises intersected, then deduced through the rule.
TruthValue conclusion_truth(std::span<const TruthValue> premises, const TruthValue& rule,
                            const EvidenceParams& evidence);

// ---------------------------------------------------------------------------
// Relational rule induction

struct InducedRule {
  Term concrete;
  Term abstract;
  std::vector<Term> premises;
  TruthValue truth;
};

/// Given a newly acquired relation and all relations acquired so far (with
/// truths), finds mutual pairs r(a,b)/r(b,a) and triangles r(a,b), r(b,c),
/// r(a,c) that involve the new relation, and returns the entailment rules
/// they exemplify.
std::vector<InducedRule> induce_relational_rules(
    const Term& fresh, const std::vector<std::pair<Term, TruthValue>>& acquired,
    const EvidenceParams& evidence);

}  // namespace relnars
