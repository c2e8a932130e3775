#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relnars/engine.hpp"
#include "relnars/environment.hpp"

namespace relnars {

struct ExperimentOptions {
  EngineConfig config;
  std::uint64_t seed = 1;
  /// Pretraining exemplar families (X/Y/Z stimulus sets).
  int families = 3;
  /// Reinforced responses required per training trial type.
  int repetitions = 1;
  /// Presentations allowed before a training trial type counts as failed.
  int max_attempts = 50;
  /// Babbling probability during training; testing always uses 0.
  double training_babble = 1.0;
  Cycle delay = 100;
  std::function<void(const TraceEntry&)> trace_sink;
};

struct Expectation {
  std::string phase;
  std::string kind;  // executed-op, derived-belief, absent-belief
  std::string subject;
  double min_confidence = 0.0;
  bool passed = false;
  std::string observed;
};

struct ExecutedRecord {
  std::string phase;
  std::string trial;
  std::string operation;  // "none" when nothing was executed
  bool correct = false;
  bool babbled = false;
  bool reinforced = false;
  Cycle cycle = 0;
};

struct NetworkItem {
  std::string label;  // A1:(5), (9), ...
  Term term;
  bool trained = false;
  bool present = false;
  TruthValue truth{0.0, 0.0};
};

struct PhaseSummary {
  std::string name;
  bool passed = false;
  int trials = 0;
};

struct Report {
  std::string task;
  std::uint64_t seed = 0;
  std::string config_hash;
  int families = 0;
  std::vector<PhaseSummary> phases;
  std::vector<Expectation> expectations;
  std::vector<ExecutedRecord> executed;
  std::vector<NetworkItem> network;
  /// Relations among network stimuli that no listed item accounts for.
  std::vector<std::string> extraneous;
  /// First unmet expectation when a phase gate stopped the run.
  std::optional<std::string> aborted;

  bool passed() const;
  std::string text() const;
  nlohmann::json json() const;
};

struct NetworkSpec {
  std::string label;
  Term term;
  bool trained = false;
};

/// Listed relations of the equivalence networks (A1-B1-C1 and A2-B2-C2).
std::vector<NetworkSpec> task1_network();
/// Listed SAME/OPPOSITE relations, trained and derived, plus the
/// frame-consistent OPPOSITE relations the listing leaves out.
std::vector<NetworkSpec> task2_network();

struct NetworkCheck {
  Term term;
  double min_confidence = 0.0;
  bool present = false;
  double confidence = 0.0;
};

/// Each expected relation must be present with confidence above
/// `min_confidence`; the result is in input order.
std::vector<NetworkCheck> verify_network(const std::vector<std::pair<Term, double>>& expected,
                                         const Memory& memory);

/// Relations in memory between any two of `stimuli` (reflexive ones
/// excluded), in memory order.
std::vector<const Belief*> network_relations(const Memory& memory,
                                             const std::vector<std::string>& stimuli);

Report run_task1(const ExperimentOptions& options);
Report run_task2(const ExperimentOptions& options);

}  // namespace relnars
