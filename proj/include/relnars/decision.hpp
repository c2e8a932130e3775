#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "relnars/inference.hpp"
#include "relnars/memory.hpp"

namespace relnars {

/// One way the current situation could satisfy the goal: a contingency
/// (learned, or instantiated from a grounding rule) whose preconditions are
/// all present, directly or through an equivalence.
struct Candidate {
  Term operation;
  Term contingency;
  TruthValue truth;
  double expectation = 0.5;
  /// Equivalences used to stand one stimulus in for another.
  std::vector<Term> substitutions;
  /// Grounding rule the contingency was instantiated from, if any.
  std::optional<Term> rule;
};

struct Decision {
  std::optional<Term> chosen;  // none: no action
  bool babbled = false;
  double expectation = 0.5;
  std::optional<Term> source;  // contingency behind a knowledge-driven choice
};

struct DecisionContext {
  Term goal;
  /// Recent events, oldest first.
  std::vector<EventRecord> window;
  /// Eternal beliefs available for matching.
  std::vector<const Belief*> beliefs;
  /// Operations the agent may perform; empty means unrestricted.
  std::vector<Term> permitted;
  double threshold = 0.501;
  double babble_probability = 0.0;
  EvidenceParams evidence;
  /// Cue percepts can be consumed by an equivalence but never supplied by one.
  std::string cue_location = "rel";
};

/// Every applicable candidate, best first (expectation, then operation text).
std::vector<Candidate> evaluate_candidates(const DecisionContext& ctx);

/// Executes the best candidate if it clears the threshold; otherwise
/// babbles with the configured probability.
Decision process_goal(const DecisionContext& ctx, std::mt19937_64& rng);

/// Uniform pick among the permitted operations. Throws on an empty set.
Term motor_babble(std::span<const Term> permitted, std::mt19937_64& rng);

/// Shorthand used in traces and scripts: `^select(right)`,
/// `^match(sample * left)`.
std::string operation_label(const Term& op);

}  // namespace relnars
