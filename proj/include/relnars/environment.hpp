#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relnars/engine.hpp"

namespace relnars {

struct SceneEntry {
  std::string location;  // sample, left, right
  std::string channel;   // color or ocr
  std::string value;
};

struct Scene {
  std::vector<SceneEntry> entries;  // sample first, then options
  std::optional<std::string> cue;   // relational cue value (SAME, OPPOSITE)
  std::string cue_channel = "ocr";
  std::string cue_location = "rel";
};

enum class Feedback { Reinforce, None };

struct Trial {
  std::string label;
  Scene scene;
  std::vector<Term> permitted;
  Term correct;
  Feedback feedback = Feedback::Reinforce;
  bool goal_emitted = true;
  /// The environment performs `correct` itself instead of posting a goal.
  bool shown = false;
};

struct TrialResult {
  std::optional<Term> executed;
  bool correct = false;
  bool babbled = false;
  bool reinforced = false;
  Cycle cycle = 0;
};

/// The goal every trial works toward.
Term goal_term();
/// `<(location * value) --> (loc * channel)>`
Term percept(const std::string& location, const std::string& channel, const std::string& value);
/// `<({SELF} * (sample * location)) --> ^match>`
Term match_operation(const std::string& option_location);
/// `<({SELF} * argument) --> ^name>`
Term simple_operation(const std::string& name, const std::string& argument);

/// Events a scene produces, in presentation order: cue, sample, options,
/// then the location pairings (sample with each option, or with itself
/// when there is no option).
std::vector<Task> scene_events(const Scene& scene);

/// Inputs the scene events and, unless the trial is shown, the goal.
/// Sets the engine's permitted operations. Throws on an empty scene.
void present(const Trial& trial, Engine& engine);

/// Feedback for `executed`: `G. :|:` when reinforcing a correct response,
/// then the inter-trial delay. Test trials only record the outcome.
TrialResult score(const Trial& trial, const std::optional<Term>& executed, Engine& engine,
                  Cycle delay = 100);

/// present + response + score.
TrialResult run_trial(const Trial& trial, Engine& engine, Cycle delay = 100);

void step(Engine& engine, Cycle n);

}  // namespace relnars
