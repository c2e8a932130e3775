#include "relnars/environment.hpp"

#include <stdexcept>

namespace relnars {

Term goal_term() { return Term::atom("G"); }

Term percept(const std::string& location, const std::string& channel, const std::string& value) {
  return Term::inheritance(Term::product(Term::atom(location), Term::atom(value)),
                           Term::product(Term::atom("loc"), Term::atom(channel)));
}

Term match_operation(const std::string& option_location) {
  return Term::operation(Term::atom("{SELF}"),
                         Term::product(Term::atom("sample"), Term::atom(option_location)), "match");
}

Term simple_operation(const std::string& name, const std::string& argument) {
  return Term::operation(Term::atom("{SELF}"), Term::atom(argument), name);
}

namespace {

Task event(Term t) {
  Task task;
  task.term = std::move(t);
  task.tense = Tense::Present;
  return task;
}

Term pairing(const Scene& s, const std::string& a, const std::string& b) {
  Term subject = Term::product(Term::atom(a), Term::atom(b));
  Term predicate = Term::product(Term::atom("loc"), Term::atom("loc"));
  if (s.cue) {
    subject = Term::product(Term::atom(s.cue_location), subject);
    predicate = Term::product(Term::atom("loc"), predicate);
  }
  return Term::inheritance(subject, predicate);
}

}  // namespace

std::vector<Task> scene_events(const Scene& scene) {
  if (scene.entries.empty()) throw std::invalid_argument("empty scene");
  std::vector<Task> out;
  if (scene.cue) out.push_back(event(percept(scene.cue_location, scene.cue_channel, *scene.cue)));
  for (const auto& e : scene.entries) out.push_back(event(percept(e.location, e.channel, e.value)));
  const std::string& first = scene.entries.front().location;
  if (scene.entries.size() == 1) {
    out.push_back(event(pairing(scene, first, first)));
  } else {
    for (std::size_t i = 1; i < scene.entries.size(); ++i)
      out.push_back(event(pairing(scene, first, scene.entries[i].location)));
  }
  return out;
}

void present(const Trial& trial, Engine& engine) {
  auto events = scene_events(trial.scene);
  engine.set_permitted_operations(trial.permitted);
  for (auto& t : events) engine.input(std::move(t));
  if (trial.shown) {
    engine.input(event(trial.correct));
  } else if (trial.goal_emitted) {
    Task g = event(goal_term());
    g.punctuation = Punctuation::Goal;
    engine.input(std::move(g));
  }
}

TrialResult score(const Trial& trial, const std::optional<Term>& executed, Engine& engine,
                  Cycle delay) {
  TrialResult r;
  r.executed = executed;
  r.correct = executed && *executed == trial.correct;
  r.cycle = engine.now();
  if (trial.feedback == Feedback::Reinforce && r.correct) {
    engine.input(event(goal_term()));
    r.reinforced = true;
  }
  engine.step(delay);
  return r;
}

TrialResult run_trial(const Trial& trial, Engine& engine, Cycle delay) {
  const std::size_t before = engine.executions().size();
  present(trial, engine);
  std::optional<Term> executed;
  bool babbled = false;
  if (trial.shown) {
    executed = trial.correct;
  } else if (engine.executions().size() > before) {
    executed = engine.executions().back().operation;
    babbled = engine.executions().back().babbled;
  }
  TrialResult r = score(trial, executed, engine, delay);
  r.babbled = babbled;
  return r;
}

void step(Engine& engine, Cycle n) { engine.step(n); }

}  // namespace relnars
