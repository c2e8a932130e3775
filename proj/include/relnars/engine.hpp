#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relnars/decision.hpp"
#include "relnars/inference.hpp"
#include "relnars/memory.hpp"

namespace relnars {

struct EngineConfig {
  EvidenceParams evidence{1.0, 0.9};
  double input_confidence = 0.9;
  MemoryConfig memory;
  Cycle precondition_horizon = 16;
  Cycle outcome_horizon = 8;
  double threshold = 0.501;
  double babble_probability = 0.0;
  int depth_limit = 8;
  /// Executed operations that are not followed by their goal within the
  /// outcome horizon count as negative evidence for the matching contingency.
  bool negative_evidence = true;
  std::string cue_location = "rel";
  double input_priority = 0.9;
};

/// One line of the derivation trace. Kinds: input, induce, acquire,
/// equivalence, rule, derive, negative, exec, answer.
struct TraceEntry {
  Cycle cycle = 0;
  std::string kind;
  std::vector<std::uint64_t> premises;
  Term term;
  TruthValue truth;
  std::uint64_t id = 0;
  bool babbled = false;

  /// `kind(3,7) ⊢ term {f c}`; executions print as `EXEC ^op(args) @cycle`.
  std::string str() const;
};

struct Execution {
  Term operation;
  Cycle cycle = 0;
  bool babbled = false;
  double expectation = 0.5;
};

class Engine {
 public:
  explicit Engine(EngineConfig config = {}, std::uint64_t seed = 0);

  /// Processes one task; each call takes one cycle.
  void input(Task task);
  /// Parses a Narsese line and inputs it. Throws ParseError.
  void input_line(std::string_view line);
  /// Lets `n` cycles pass without input.
  void step(Cycle n = 1);

  Cycle now() const { return now_; }

  void set_permitted_operations(std::vector<Term> ops) { permitted_ = std::move(ops); }
  const std::vector<Term>& permitted_operations() const { return permitted_; }
  void set_babble_probability(double p) { config_.babble_probability = p; }
  void set_threshold(double t) { config_.threshold = t; }
  void set_negative_evidence(bool on) { config_.negative_evidence = on; }

  const EngineConfig& config() const { return config_; }
  const Memory& memory() const { return memory_; }

  const std::vector<Execution>& executions() const { return executions_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  void set_trace_sink(std::function<void(const TraceEntry&)> sink) { sink_ = std::move(sink); }
  /// Answers to questions, in order asked: `term {f c}` or `none`.
  const std::vector<std::string>& answers() const { return answers_; }

  /// Current candidates for a goal, without acting on them.
  std::vector<Candidate> evaluate(const Term& goal) const;

  std::string dump() const { return memory_.dump(); }
  void load(std::string_view text);
  /// Clears memory, trace, executions, and the clock.
  void reset();
  void reseed(std::uint64_t seed) { rng_.seed(seed); }

 private:
  struct PendingOp {
    EventRecord op;
    std::optional<Term> goal;
  };

  void advance();
  void handle_event(const Task& task);
  void handle_judgment(const Task& task);
  void handle_goal(const Task& task);
  void handle_question(const Task& task);
  void reinforce(const Term& outcome);
  void learn_from(const Contingency& c, std::uint64_t source_id);
  void acquire(const Term& source, const TruthValue& truth, std::uint64_t source_id);
  void induce_rules(const Term& relation, std::uint64_t relation_id);
  void saturate();
  void check_negative_evidence();
  void execute(const Term& op, bool babbled, double expectation);

  std::uint64_t store(const Term& term, const TruthValue& truth, Origin origin, int depth,
                      const std::string& kind, std::vector<std::uint64_t> premises);
  void emit(TraceEntry e);
  DecisionContext context_for(const Term& goal) const;
  std::vector<std::uint64_t> base_of(const Belief& b) const;
  void merge_base(const Term& term, const std::vector<std::uint64_t>& base);

  EngineConfig config_;
  Memory memory_;
  std::mt19937_64 rng_;
  Cycle now_ = 0;
  std::vector<Term> permitted_;
  std::optional<Term> active_goal_;
  std::vector<PendingOp> pending_ops_;
  std::set<std::string> fired_;
  /// Evidential base of each derived or induced belief, by term text.
  std::map<std::string, std::vector<std::uint64_t>> bases_;
  std::vector<Execution> executions_;
  std::vector<TraceEntry> trace_;
  std::vector<std::string> answers_;
  std::function<void(const TraceEntry&)> sink_;
};

}  // namespace relnars
