#include "relnars/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "relnars/config.hpp"

namespace relnars {

namespace {

Term ocr_pair() { return Term::product(Term::atom("ocr"), Term::atom("ocr")); }

Term relation(const std::string& a, const std::string& b) {
  return make_relation(std::nullopt, Term::atom(a), Term::atom(b), ocr_pair());
}

Term framed(const std::string& frame, const std::string& a, const std::string& b) {
  return make_relation(Term::atom(frame), Term::atom(a), Term::atom(b),
                       Term::product(Term::atom("ocr"), ocr_pair()));
}

std::string name(char letter, int n) { return std::string(1, letter) + std::to_string(n); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

Trial mts(const std::string& label, const std::string& sample, const std::string& correct,
          const std::string& distractor, bool correct_left, std::optional<std::string> cue = {}) {
  Trial t;
  t.label = label;
  t.scene.entries = {{"sample", "ocr", sample},
                     {"left", "ocr", correct_left ? correct : distractor},
                     {"right", "ocr", correct_left ? distractor : correct}};
  t.scene.cue = std::move(cue);
  t.permitted = {match_operation("left"), match_operation("right")};
  t.correct = match_operation(correct_left ? "left" : "right");
  return t;
}

Trial single(const std::string& label, const std::string& sample, const std::string& action,
             std::optional<std::string> cue = {}) {
  Trial t;
  t.label = label;
  t.scene.entries = {{"sample", "ocr", sample}};
  t.scene.cue = std::move(cue);
  t.permitted = {simple_operation("action", "clap"), simple_operation("action", "wave")};
  t.correct = simple_operation("action", action);
  return t;
}

Trial shown(const std::string& label, const std::string& sample, const std::string& response,
            std::optional<std::string> cue = {}) {
  Trial t;
  t.label = label;
  t.scene.entries = {{"sample", "ocr", sample}};
  t.scene.cue = std::move(cue);
  t.correct = simple_operation("press", response);
  t.shown = true;
  t.goal_emitted = false;
  return t;
}

class Runner {
 public:
  Runner(const ExperimentOptions& options, Report& report)
      : options_(options), report_(report), engine_(options.config, options.seed) {
    if (options.trace_sink) engine_.set_trace_sink(options.trace_sink);
  }

  Engine& engine() { return engine_; }

  void begin(const std::string& phase) {
    report_.phases.push_back({phase, true, 0});
    phase_ = phase;
  }

  // Presents a training trial until it has been answered correctly the
  // configured number of times.
  bool train(const Trial& trial) {
    engine_.set_babble_probability(options_.training_babble);
    for (int rep = 0; rep < options_.repetitions; ++rep) {
      bool done = false;
      for (int attempt = 0; attempt < options_.max_attempts && !done; ++attempt)
        done = run(trial).correct;
      if (!done) {
        expect_fail("executed-op", trial.label + " learned within " +
                                       std::to_string(options_.max_attempts) + " presentations");
        return false;
      }
    }
    return true;
  }

  void test(const Trial& trial) {
    engine_.set_babble_probability(0.0);
    Trial t = trial;
    t.feedback = Feedback::None;
    const TrialResult r = run(t);
    Expectation e{phase_, "executed-op", trial.label + " -> " + operation_label(trial.correct), 0.0, false, {}};
    e.passed = r.correct;
    e.observed = r.executed ? operation_label(*r.executed) : "none";
    add(std::move(e));
  }

  void expect_present(const Term& term, double min_confidence = 0.0) {
    Expectation e{phase_, "derived-belief", term.str(), min_confidence, false, {}};
    if (const Belief* b = engine_.memory().find(term)) {
      e.passed = b->truth.confidence > min_confidence;
      e.observed = to_string(b->truth);
    } else {
      e.observed = "missing";
    }
    add(std::move(e));
  }

  void expect_absent(const Term& term) {
    Expectation e{phase_, "absent-belief", term.str(), 0.0, false, {}};
    const Belief* b = engine_.memory().find(term);
    e.passed = b == nullptr;
    e.observed = b ? to_string(b->truth) : "absent";
    add(std::move(e));
  }

  // Phase gate: true when every expectation of the current phase holds.
  bool gate() {
    for (const auto& e : report_.expectations) {
      if (e.phase == phase_ && !e.passed) {
        report_.phases.back().passed = false;
        if (!report_.aborted) report_.aborted = phase_ + ": " + e.subject;
        return false;
      }
    }
    return true;
  }

 private:
  TrialResult run(const Trial& trial) {
    const TrialResult r = run_trial(trial, engine_, options_.delay);
    ++report_.phases.back().trials;
    report_.executed.push_back({phase_, trial.label,
                                r.executed ? operation_label(*r.executed) : "none", r.correct,
                                r.babbled, r.reinforced, r.cycle});
    return r;
  }

  void expect_fail(const std::string& kind, const std::string& subject) {
    add({phase_, kind, subject, 0.0, false, "not learned"});
  }

  void add(Expectation e) { report_.expectations.push_back(std::move(e)); }

  const ExperimentOptions& options_;
  Report& report_;
  Engine engine_;
  std::string phase_;
};

Report start(const std::string& task, const ExperimentOptions& options) {
  Report r;
  r.task = task;
  r.seed = options.seed;
  r.config_hash = config_hash_hex(options.config);
  r.families = options.families;
  return r;
}

void check_network(Runner& runner, Report& report, const std::vector<NetworkSpec>& spec,
                   const std::vector<std::string>& stimuli) {
  const Memory& memory = runner.engine().memory();
  std::set<std::string> listed;
  for (const auto& item : spec) {
    listed.insert(item.term.str());
    NetworkItem n{item.label, item.term, item.trained, false, {0.0, 0.0}};
    if (const Belief* b = memory.find(item.term)) {
      n.present = true;
      n.truth = b->truth;
    }
    report.network.push_back(n);
    runner.expect_present(item.term);
  }
  for (const Belief* b : network_relations(memory, stimuli)) {
    if (listed.count(b->term.str())) continue;
    report.extraneous.push_back(b->term.str());
    runner.expect_absent(b->term);
  }
}

}  // namespace

std::vector<NetworkSpec> task1_network() {
  std::vector<NetworkSpec> out;
  for (int k : {1, 2}) {
    const std::string a = name('A', k), b = name('B', k), c = name('C', k);
    const std::string p = a + ":";
    out.push_back({p + "(1)", relation(a, b), true});
    out.push_back({p + "(2)", relation(a, c), true});
    out.push_back({p + "(3)", relation(b, a), false});
    out.push_back({p + "(4)", relation(c, a), false});
    out.push_back({p + "(5)", relation(b, c), false});
    out.push_back({p + "(6)", relation(c, b), false});
  }
  return out;
}

std::vector<NetworkSpec> task2_network() {
  return {
      {"(1)", framed("SAME", "A1", "B1"), true},
      {"(2)", framed("SAME", "A1", "C1"), true},
      {"(3)", framed("OPPOSITE", "A1", "B2"), true},
      {"(4)", framed("OPPOSITE", "A1", "C2"), true},
      {"(5)", framed("SAME", "B1", "A1"), false},
      {"(6)", framed("SAME", "C1", "A1"), false},
      {"(7)", framed("SAME", "B1", "C1"), false},
      {"(8)", framed("SAME", "C1", "B1"), false},
      {"(9)", framed("OPPOSITE", "C1", "B2"), false},
      {"(10)", framed("OPPOSITE", "B2", "A1"), false},
      {"(11)", framed("OPPOSITE", "C2", "A1"), false},
      {"(12)", framed("OPPOSITE", "C2", "B1"), false},
      {"(13)", framed("SAME", "B2", "C2"), false},
      {"(14)", framed("SAME", "C2", "B2"), false},
      {"(e1)", framed("OPPOSITE", "B2", "C1"), false},
      {"(e2)", framed("OPPOSITE", "B1", "C2"), false},
      {"(e3)", framed("OPPOSITE", "B1", "B2"), false},
      {"(e4)", framed("OPPOSITE", "B2", "B1"), false},
      {"(e5)", framed("OPPOSITE", "C1", "C2"), false},
      {"(e6)", framed("OPPOSITE", "C2", "C1"), false},
  };
}

std::vector<NetworkCheck> verify_network(const std::vector<std::pair<Term, double>>& expected,
                                         const Memory& memory) {
  std::vector<NetworkCheck> out;
  for (const auto& [term, min_c] : expected) {
    NetworkCheck c{term, min_c, false, 0.0};
    if (const Belief* b = memory.find(term)) {
      c.confidence = b->truth.confidence;
      c.present = c.confidence > min_c;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<const Belief*> network_relations(const Memory& memory,
                                             const std::vector<std::string>& stimuli) {
  auto in_set = [&](const Term& t) {
    return t.is_atom() && std::find(stimuli.begin(), stimuli.end(), t.name()) != stimuli.end();
  };
  std::vector<const Belief*> out;
  for (const Belief* b : memory.beliefs()) {
    auto rel = as_relation(b->term);
    if (!rel || is_scene_structure(b->term) || rel->reflexive()) continue;
    if (in_set(rel->first) && in_set(rel->second)) out.push_back(b);
  }
  return out;
}

Report run_task1(const ExperimentOptions& options) {
  Report report = start("task1", options);
  Runner run(options, report);

  run.begin("pretraining");
  int side = 0;
  for (int i = 1; i <= options.families; ++i) {
    const int a = 2 * i - 1, b = 2 * i;
    const std::pair<char, char> pairs[] = {{'X', 'Y'}, {'Y', 'X'}, {'Y', 'Z'}, {'X', 'Z'}};
    for (auto [s, t] : pairs) {
      const std::string label = name(s, a) + "->" + name(t, a);
      if (!run.train(mts(label, name(s, a), name(t, a), name(t, b), side++ % 2 == 0))) return report;
    }
    const std::string response = "R" + std::to_string(i);
    run.train(shown(name('X', a) + " press " + response, name('X', a), response));
    run.train(shown(name('Y', a) + " press " + response, name('Y', a), response));
    run.expect_present(relation(name('Z', a), name('Y', a)));
  }
  if (!run.gate()) return report;

  run.begin("network");
  const std::vector<std::tuple<std::string, std::string, std::string>> network = {
      {"A1", "B1", "B2"}, {"A1", "C1", "C2"}, {"A2", "B2", "B1"}, {"A2", "C2", "C1"}};
  for (const auto& [s, t, d] : network)
    if (!run.train(mts(s + "->" + t, s, t, d, side++ % 2 == 0))) return report;
  check_network(run, report, task1_network(), {"A1", "B1", "C1", "A2", "B2", "C2"});
  if (!run.gate()) return report;

  run.begin("function");
  if (!run.train(single("B1 clap", "B1", "clap"))) return report;
  if (!run.train(single("B2 wave", "B2", "wave"))) return report;
  if (!run.gate()) return report;

  run.begin("test");
  run.test(mts("C1 vs B1/B2", "C1", "B1", "B2", true));
  run.test(single("C1", "C1", "clap"));
  run.test(single("C2", "C2", "wave"));
  run.gate();
  return report;
}

Report run_task2(const ExperimentOptions& options) {
  Report report = start("task2", options);
  Runner run(options, report);
  const std::string S = "SAME", O = "OPPOSITE";

  run.begin("pretraining");
  int side = 0;
  for (int i = 1; i <= options.families; ++i) {
    const int a = 2 * i - 1, b = 2 * i;
    const std::string X1 = name('X', a), X2 = name('X', b), Y1 = name('Y', a), Y2 = name('Y', b),
                      Z1 = name('Z', a), Z2 = name('Z', b);
    // frame, sample, correct option, other option
    const std::vector<std::tuple<std::string, std::string, std::string, std::string>> trials = {
        {S, X1, Y1, Y2}, {S, Y1, X1, X2}, {O, X1, Y2, Y1}, {O, Y2, X1, X2}, {S, Y1, Z1, Z2},
        {S, X1, Z1, Z2}, {O, Y1, Z2, Z1}, {O, X1, Z2, Z1}, {S, Y2, Z2, Z1}, {O, Y2, Z1, Z2}};
    for (const auto& [frame, s, t, d] : trials) {
      const std::string label = frame + " " + s + "->" + t;
      if (!run.train(mts(label, s, t, d, side++ % 2 == 0, frame))) return report;
    }
    const std::string same_r = "R" + std::to_string(2 * i - 1);
    const std::string opp_r = "R" + std::to_string(2 * i);
    run.train(shown(S + " " + X1 + " press " + same_r, X1, same_r, S));
    run.train(shown(Y1 + " press " + same_r, Y1, same_r));
    run.train(shown(O + " " + X1 + " press " + opp_r, X1, opp_r, O));
    run.train(shown(Y2 + " press " + opp_r, Y2, opp_r));
    run.expect_present(framed(S, Z1, Y1));
  }
  if (!run.gate()) return report;

  run.begin("network");
  const std::vector<std::tuple<std::string, std::string, std::string, std::string>> network = {
      {S, "A1", "B1", "B2"}, {S, "A1", "C1", "C2"}, {O, "A1", "B2", "B1"}, {O, "A1", "C2", "C1"}};
  for (const auto& [frame, s, t, d] : network)
    if (!run.train(mts(frame + " " + s + "->" + t, s, t, d, side++ % 2 == 0, frame))) return report;
  check_network(run, report, task2_network(), {"A1", "B1", "C1", "A2", "B2", "C2"});
  if (!run.gate()) return report;

  run.begin("function");
  if (!run.train(single("B1 clap", "B1", "clap"))) return report;
  if (!run.train(single("B2 wave", "B2", "wave"))) return report;
  if (!run.gate()) return report;

  run.begin("test");
  run.test(single(S + " C1", "C1", "clap", S));
  run.test(single(O + " C1", "C1", "wave", O));
  run.test(single(S + " C2", "C2", "wave", S));
  run.test(single(O + " C2", "C2", "clap", O));
  run.gate();
  return report;
}

bool Report::passed() const {
  if (aborted) return false;
  return std::all_of(expectations.begin(), expectations.end(),
                     [](const Expectation& e) { return e.passed; });
}

std::string Report::text() const {
  std::ostringstream out;
  out << "task " << task << "\nseed " << seed << "\nconfig " << config_hash << "\nfamilies "
      << families << '\n';
  for (const auto& p : phases)
    out << "phase " << p.name << ' ' << (p.passed ? "pass" : "FAIL") << " trials=" << p.trials
        << '\n';
  for (const auto& e : expectations)
    out << (e.passed ? "  ok   " : "  FAIL ") << e.phase << ' ' << e.kind << ' ' << e.subject
        << " [" << e.observed << "]\n";
  out << "network\n";
  for (const auto& n : network) {
    out << "  " << n.label << ' ' << n.term.str() << ' ';
    if (n.present)
      out << "{" << fmt(n.truth.frequency) << ' ' << fmt(n.truth.confidence) << "}";
    else
      out << "missing";
    out << (n.trained ? " trained" : " derived") << '\n';
  }
  for (const auto& x : extraneous) out << "  extraneous " << x << '\n';
  out << "executed\n";
  for (const auto& x : executed)
    out << "  " << x.phase << " @" << x.cycle << ' ' << x.trial << ": " << x.operation
        << (x.correct ? " correct" : " wrong") << (x.babbled ? " babbled" : "")
        << (x.reinforced ? " reinforced" : "") << '\n';
  if (aborted) out << "aborted " << *aborted << '\n';
  out << "result " << (passed() ? "pass" : "FAIL") << '\n';
  return out.str();
}

nlohmann::json Report::json() const {
  nlohmann::json j;
  j["task"] = task;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["families"] = families;
  j["passed"] = passed();
  j["phase"] = nlohmann::json::array();
  for (const auto& p : phases)
    j["phase"].push_back({{"name", p.name}, {"passed", p.passed}, {"trials", p.trials}});
  j["expectations"] = nlohmann::json::array();
  for (const auto& e : expectations)
    j["expectations"].push_back({{"phase", e.phase},
                                 {"kind", e.kind},
                                 {"subject", e.subject},
                                 {"min_confidence", e.min_confidence},
                                 {"passed", e.passed},
                                 {"observed", e.observed}});
  j["executed"] = nlohmann::json::array();
  for (const auto& x : executed)
    j["executed"].push_back({{"phase", x.phase},
                             {"trial", x.trial},
                             {"operation", x.operation},
                             {"correct", x.correct},
                             {"babbled", x.babbled},
                             {"reinforced", x.reinforced},
                             {"cycle", x.cycle}});
  j["network"] = nlohmann::json::array();
  for (const auto& n : network) {
    nlohmann::json item{{"label", n.label}, {"term", n.term.str()}, {"trained", n.trained},
                        {"present", n.present}};
    if (n.present) item["truth"] = {n.truth.frequency, n.truth.confidence};
    j["network"].push_back(std::move(item));
  }
  j["extraneous"] = extraneous;
  if (aborted) j["aborted"] = *aborted;
  return j;
}

}  // namespace relnars
