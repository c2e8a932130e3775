#include <doctest.h>

#include "relnars/engine.hpp"
#include "relnars/environment.hpp"

using namespace relnars;

namespace {

Term T(const std::string& s) { return parse_term(s); }

const char* kContingency =
    "<(<(right * green) --> (loc * color)> &/ <({SELF} * right) --> ^select>) =/> G>";

void episode(Engine& e) {
  e.set_permitted_operations({T("<({SELF} * right) --> ^select>")});
  e.set_babble_probability(1.0);
  e.input_line("<(left * blue) --> (loc * color)>. :|:");
  e.input_line("<(right * green) --> (loc * color)>. :|:");
  e.input_line("G! :|:");
}

int count_kind(const Engine& e, const std::string& kind) {
  int n = 0;
  for (const auto& t : e.trace()) n += t.kind == kind;
  return n;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("babbled response followed by G yields a contingency") {
  Engine e({}, 1);
  episode(e);
  REQUIRE(e.executions().size() == 1);
  CHECK(e.executions()[0].babbled);
  e.input_line("G. :|:");
  const Belief* b = e.memory().find(T(kContingency));
  REQUIRE(b);
  CHECK(b->truth.frequency == 1.0);
  CHECK(b->truth.confidence > 0.0);
  CHECK(b->truth.confidence < 0.5);
}

TEST_CASE("G without a recent operation credits nothing") {
  Engine e({}, 1);
  e.input_line("<(right * green) --> (loc * color)>. :|:");
  e.input_line("G. :|:");
  CHECK(count_kind(e, "induce") == 0);
  CHECK(e.memory().beliefs().empty());
}

TEST_CASE("missing outcome is negative evidence for a known contingency") {
  Engine e({}, 1);
  episode(e);
  e.input_line("G. :|:");
  const double before = e.memory().find(T(kContingency))->truth.frequency;
  e.step(100);
  episode(e);
  e.step(100);
  CHECK(before == 1.0);
  CHECK(e.memory().find(T(kContingency))->truth.frequency < 1.0);
  CHECK(count_kind(e, "negative") >= 1);
}

TEST_CASE("negative evidence can be switched off") {
  EngineConfig cfg;
  cfg.negative_evidence = false;
  Engine e(cfg, 1);
  episode(e);
  e.input_line("G. :|:");
  e.step(100);
  episode(e);
  e.step(100);
  CHECK(e.memory().find(T(kContingency))->truth.frequency == 1.0);
}

TEST_CASE("questions are answered from memory") {
  Engine e({}, 1);
  e.input_line("<(A1 * B1) --> (ocr * ocr)>.");
  e.input_line("<(A1 * B1) --> (ocr * ocr)>?");
  e.input_line("<(Q * R) --> (ocr * ocr)>?");
  REQUIRE(e.answers().size() == 2);
  CHECK(e.answers()[0].find("<(A1 * B1) --> (ocr * ocr)>") == 0);
  CHECK(e.answers()[1] == "none");
}

TEST_CASE("symmetry rule fires forward") {
  Engine e({}, 1);
  e.input_line("<<($1 * $2) --> (ocr * ocr)> <=> <($2 * $1) --> (ocr * ocr)>>.");
  e.input_line("<(A1 * B1) --> (ocr * ocr)>.");
  const Belief* b = e.memory().find(T("<(B1 * A1) --> (ocr * ocr)>"));
  REQUIRE(b);
  CHECK(b->truth.confidence < 0.9);
  CHECK_FALSE(e.memory().find(T("<(A1 * A1) --> (ocr * ocr)>")));
}

TEST_CASE("circular derivations do not inflate confidence") {
  Engine e({}, 1);
  e.input_line("<<($1 * $2) --> (ocr * ocr)> <=> <($2 * $1) --> (ocr * ocr)>>.");
  e.input_line("<(A1 * B1) --> (ocr * ocr)>.");
  const double c = e.memory().find(T("<(A1 * B1) --> (ocr * ocr)>"))->truth.confidence;
  e.step(20);
  CHECK(e.memory().find(T("<(A1 * B1) --> (ocr * ocr)>"))->truth.confidence == doctest::Approx(c));
}

TEST_CASE("clock and reset") {
  Engine e({}, 1);
  e.input_line("<a --> b>.");
  e.step(10);
  CHECK(e.now() == 11);
  e.reset();
  CHECK(e.now() == 0);
  CHECK(e.memory().beliefs().empty());
  CHECK(e.trace().empty());
}

TEST_CASE("trace sink sees every entry") {
  Engine e({}, 1);
  int seen = 0;
  e.set_trace_sink([&](const TraceEntry&) { ++seen; });
  episode(e);
  e.input_line("G. :|:");
  CHECK(seen == static_cast<int>(e.trace().size()));
  bool exec = false;
  for (const auto& t : e.trace())
    if (t.kind == "exec") exec = t.str().starts_with("EXEC ^select(right) @");
  CHECK(exec);
}

TEST_CASE("dump and load") {
  Engine a({}, 1);
  episode(a);
  a.input_line("G. :|:");
  Engine b({}, 1);
  b.load(a.dump());
  CHECK(b.dump() == a.dump());
}

TEST_CASE("same seed, same trace") {
  auto run = [](std::uint64_t seed) {
    Engine e({}, seed);
    e.set_permitted_operations({match_operation("left"), match_operation("right")});
    e.set_babble_probability(1.0);
    std::string out;
    for (int i = 0; i < 5; ++i) {
      e.input_line("<(sample * X1) --> (loc * ocr)>. :|:");
      e.input_line("<(left * Y1) --> (loc * ocr)>. :|:");
      e.input_line("<(right * Y2) --> (loc * ocr)>. :|:");
      e.input_line("G! :|:");
      e.step(50);
    }
    for (const auto& t : e.trace()) out += t.str() + "\n";
    return out;
  };
  CHECK(run(9) == run(9));
}

}
