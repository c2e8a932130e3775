#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relnars/narsese.hpp"
#include "relnars/truth.hpp"

namespace relnars {

/// How a belief entered memory. Acquired relations are tracked separately
/// from derived ones because relational rules are only induced from
/// relations learned through reinforced action.
enum class Origin { Input, Induced, Acquired, Derived };

std::string_view to_string(Origin o);

struct Belief {
  Term term;
  TruthValue truth;
  double priority = 0.9;
  Cycle stamp = 0;  // cycle at which `priority` was last set
  std::uint64_t id = 0;
  int depth = 0;  // derivation depth; inputs and learned beliefs are 0
  Origin origin = Origin::Input;
};

struct EventRecord {
  Task task;
  Cycle cycle = 0;
  std::uint64_t id = 0;
};

struct MemoryConfig {
  std::size_t concept_capacity = 1024;
  std::size_t beliefs_per_concept = 64;
  std::size_t buffer_capacity = 64;
  double decay = 0.99;          // per-cycle priority factor
  double priority_floor = 0.0;  // concepts below it are dropped on decay; 0 disables
};

struct IngestOutcome {
  enum class Kind { Added, Revised, Buffered, Evicted };
  Kind kind;
  Term term;
  TruthValue truth;
  std::uint64_t id = 0;
};

/// Concept key of a statement: its first component (subject, antecedent,
/// first sequence element), or the term itself for atoms.
Term concept_key(const Term& statement);

class Concept {
 public:
  explicit Concept(Term key) : key_(std::move(key)) {}

  const Term& key() const { return key_; }
  const std::map<std::string, Belief>& beliefs() const { return beliefs_; }
  std::map<std::string, Belief>& beliefs() { return beliefs_; }
  double priority_at(Cycle now, double decay) const;
  void touch(double priority, Cycle now, double decay);
  int use_count() const { return use_count_; }

 private:
  Term key_;
  std::map<std::string, Belief> beliefs_;
  double priority_ = 0.0;
  Cycle stamp_ = 0;
  int use_count_ = 0;
};

/// Bounded belief store plus the recent-event buffer and the pending task
/// queue. Owned by a single engine; not thread-safe.
class Memory {
 public:
  explicit Memory(MemoryConfig config = {}, EvidenceParams evidence = {});

  /// Present-tense tasks go to the event buffer; eternal judgments are
  /// revised into their concept. Goals and questions that are not events
  /// leave memory unchanged.
  std::vector<IngestOutcome> ingest(const Task& task, Cycle now, Origin origin = Origin::Input,
                                    int depth = 0);

  void enqueue(Task task);
  /// Highest-priority pending task; earlier-enqueued wins ties.
  std::optional<Task> select_for_processing(Cycle now);
  std::size_t pending() const { return pending_.size(); }

  /// Advances the priority clock to `now`; returns concepts dropped under
  /// the priority floor.
  std::vector<IngestOutcome> decay(Cycle now);

  const Belief* find(const Term& statement) const;
  double priority_of(const Belief& b) const;
  /// All eternal beliefs ordered by term text.
  std::vector<const Belief*> beliefs() const;
  const std::deque<EventRecord>& events() const { return events_; }
  std::size_t concept_count() const { return concepts_.size(); }
  const Concept* concept_for(const Term& key) const;

  /// One belief per line: `term {f c} @priority`, ordered by term text.
  std::string dump() const;
  /// Reads the dump format back, replacing all beliefs.
  void load(std::string_view text);
  void clear();

  std::uint64_t next_id() { return ++last_id_; }
  const MemoryConfig& config() const { return config_; }
  void set_config(const MemoryConfig& c) { config_ = c; }
  void set_evidence(const EvidenceParams& e) { evidence_ = e; }

 private:
  struct Pending {
    double priority;
    std::uint64_t seq;
    Task task;
  };

  std::vector<IngestOutcome> enforce_concept_capacity(Cycle now, const std::string& keep);

  MemoryConfig config_;
  EvidenceParams evidence_;
  std::map<std::string, Concept> concepts_;
  std::deque<EventRecord> events_;
  std::vector<Pending> pending_;
  std::uint64_t pending_seq_ = 0;
  std::uint64_t last_id_ = 0;
  Cycle now_ = 0;
};

}  // namespace relnars
