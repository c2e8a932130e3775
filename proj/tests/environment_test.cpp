#include <doctest.h>

#include "relnars/environment.hpp"

using namespace relnars;

namespace {

Trial mts_trial(Feedback fb = Feedback::Reinforce) {
  Trial t;
  t.label = "X1->Y1";
  t.scene.entries = {{"sample", "ocr", "X1"}, {"left", "ocr", "Y1"}, {"right", "ocr", "Y2"}};
  t.permitted = {match_operation("left"), match_operation("right")};
  t.correct = match_operation("left");
  t.feedback = fb;
  return t;
}

int goal_events(const Engine& e) {
  int n = 0;
  for (const auto& r : e.memory().events())
    if (r.task.is_judgment() && r.task.term.is_atom("G")) ++n;
  return n;
}

}  // namespace

TEST_SUITE("environment") {

TEST_CASE("color scene in listing order") {
  Scene s;
  s.entries = {{"sample", "color", "red"}, {"left", "color", "green"}, {"right", "color", "blue"}};
  auto ev = scene_events(s);
  REQUIRE(ev.size() >= 3);
  CHECK(format_task(ev[0]) == "<(sample * red) --> (loc * color)>. :|:");
  CHECK(format_task(ev[1]) == "<(left * green) --> (loc * color)>. :|:");
  CHECK(format_task(ev[2]) == "<(right * blue) --> (loc * color)>. :|:");
  for (std::size_t i = 3; i < ev.size(); ++i) CHECK(ev[i].term[1].str() == "(loc * loc)");
}

TEST_CASE("cued scene starts with the cue") {
  Scene s;
  s.entries = {{"sample", "ocr", "X1"}, {"left", "ocr", "Y1"}, {"right", "ocr", "Y2"}};
  s.cue = "SAME";
  auto ev = scene_events(s);
  REQUIRE(ev.size() >= 4);
  CHECK(format_task(ev[0]) == "<(rel * SAME) --> (loc * ocr)>. :|:");
  CHECK(format_task(ev[1]) == "<(sample * X1) --> (loc * ocr)>. :|:");
  CHECK(format_task(ev[3]) == "<(right * Y2) --> (loc * ocr)>. :|:");
  CHECK(format_task(ev[4]) == "<(rel * (sample * left)) --> (loc * (loc * loc))>. :|:");
}

TEST_CASE("single stimulus pairs with itself") {
  Scene s;
  s.entries = {{"sample", "ocr", "C1"}};
  auto ev = scene_events(s);
  REQUIRE(ev.size() == 2);
  CHECK(ev[1].term.str() == "<(sample * sample) --> (loc * loc)>");
}

TEST_CASE("empty scene is an error") {
  CHECK_THROWS(scene_events(Scene{}));
  Engine e;
  Trial t;
  CHECK_THROWS(present(t, e));
}

TEST_CASE("correct training response is reinforced") {
  Engine e({}, 1);
  Trial t = mts_trial();
  present(t, e);
  const Cycle before = e.now();
  auto r = score(t, match_operation("left"), e);
  CHECK(r.correct);
  CHECK(r.reinforced);
  CHECK(goal_events(e) == 1);
  CHECK(e.now() == before + 1 + 100);
}

TEST_CASE("wrong training response gets no G") {
  Engine e({}, 1);
  Trial t = mts_trial();
  present(t, e);
  auto r = score(t, match_operation("right"), e);
  CHECK_FALSE(r.correct);
  CHECK_FALSE(r.reinforced);
  CHECK(goal_events(e) == 0);
}

TEST_CASE("test trials never give feedback") {
  Engine e({}, 1);
  Trial t = mts_trial(Feedback::None);
  present(t, e);
  auto r = score(t, match_operation("left"), e);
  CHECK(r.correct);
  CHECK_FALSE(r.reinforced);
  CHECK(goal_events(e) == 0);
}

TEST_CASE("run_trial babbles under full babbling") {
  Engine e({}, 5);
  e.set_babble_probability(1.0);
  auto r = run_trial(mts_trial(), e);
  REQUIRE(r.executed);
  CHECK(r.babbled);
}

TEST_CASE("step") {
  Engine a({}, 1), b({}, 1);
  for (Engine* e : {&a, &b}) present(mts_trial(), *e);
  step(a, 50);
  step(a, 50);
  step(b, 100);
  CHECK(a.now() == b.now());
  CHECK(a.dump() == b.dump());
  const std::string before = a.dump();
  const Cycle now = a.now();
  step(a, 0);
  CHECK(a.now() == now);
  CHECK(a.dump() == before);
}

TEST_CASE("shown trials perform the response without a goal") {
  Engine e({}, 1);
  Trial t;
  t.scene.entries = {{"sample", "ocr", "X1"}};
  t.correct = simple_operation("press", "R1");
  t.shown = true;
  t.goal_emitted = false;
  auto r = run_trial(t, e);
  CHECK(r.correct);
  CHECK(e.executions().empty());
  CHECK(e.memory().find(parse_term("<(<(sample * X1) --> (loc * ocr)> &/ <({SELF} * R1) --> ^press>) =/> G>")));
}

}
