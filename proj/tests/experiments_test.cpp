#include <doctest.h>

#include <regex>

#include "closure_oracle.hpp"
#include "relnars/experiments.hpp"

using namespace relnars;

namespace {

ExperimentOptions opts(std::uint64_t seed) {
  ExperimentOptions o;
  o.seed = seed;
  return o;
}

std::string rename12(std::string s) {
  s = std::regex_replace(s, std::regex("([ABC])1\\b"), "$1#");
  s = std::regex_replace(s, std::regex("([ABC])2\\b"), "$11");
  return std::regex_replace(s, std::regex("#"), "2");
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("task 1 transfers without training") {
  Report r = run_task1(opts(1));
  CHECK(r.passed());
  CHECK_FALSE(r.aborted);
  REQUIRE(r.phases.size() == 4);
  CHECK(r.phases[0].name == "pretraining");
  CHECK(r.phases[3].name == "test");
  int tests = 0;
  for (const auto& x : r.executed) {
    if (x.phase != "test") continue;
    ++tests;
    CHECK(x.correct);
    CHECK_FALSE(x.babbled);
    CHECK_FALSE(x.reinforced);
  }
  CHECK(tests == 3);
}

TEST_CASE("task 1 closure matches the oracle") {
  Report r = run_task1(opts(2));
  auto expected = oracle::closure(oracle::task1_trained(1));
  auto second = oracle::closure(oracle::task1_trained(2));
  expected.insert(second.begin(), second.end());
  CHECK(expected.size() == 8);
  CHECK(oracle::derived_in(r) == expected);
  CHECK(r.extraneous.empty());
}

TEST_CASE("task 1 networks mirror each other") {
  Report r = run_task1(opts(3));
  std::map<std::string, const NetworkItem*> by_label;
  for (const auto& n : r.network) by_label[n.label] = &n;
  int pairs = 0;
  for (const auto& n : r.network) {
    if (!n.label.starts_with("A1:")) continue;
    const NetworkItem* m = by_label.at("A2:" + n.label.substr(3));
    CHECK(rename12(n.term.str()) == m->term.str());
    CHECK(n.present == m->present);
    CHECK(n.truth.frequency == doctest::Approx(m->truth.frequency));
    CHECK(n.truth.confidence == doctest::Approx(m->truth.confidence));
    ++pairs;
  }
  CHECK(pairs == 6);
}

TEST_CASE("task 2 frames transform function") {
  Report r = run_task2(opts(1));
  CHECK(r.passed());
  int tests = 0;
  for (const auto& x : r.executed)
    if (x.phase == "test") {
      ++tests;
      CHECK(x.correct);
    }
  CHECK(tests == 4);
}

TEST_CASE("task 2 closure matches the oracle") {
  Report r = run_task2(opts(4));
  CHECK(oracle::derived_in(r) == oracle::closure(oracle::task2_trained()));
  for (const auto& n : r.network) {
    if (n.label.starts_with("(e")) continue;
    INFO(n.label);
    CHECK(n.present);
    CHECK(n.truth.confidence > 0.0);
  }
}

TEST_CASE("the oracle gets OPPOSITE of OPPOSITE right") {
  auto d = oracle::closure(oracle::task2_trained());
  CHECK(d.count({"SAME", "B2", "C2"}));
  CHECK(d.count({"OPPOSITE", "C1", "B2"}));
  CHECK_FALSE(d.count({"OPPOSITE", "B2", "C2"}));
  CHECK(d.size() == 16);
}

TEST_CASE("determinism") {
  CHECK(run_task1(opts(11)).json() == run_task1(opts(11)).json());
  CHECK(run_task2(opts(11)).json() == run_task2(opts(11)).json());
}

TEST_CASE("report fields") {
  Report r = run_task1(opts(1));
  auto j = r.json();
  for (const char* k : {"task", "phase", "expectations", "executed", "network", "seed", "config_hash"})
    CHECK(j.contains(k));
  CHECK(j["seed"] == 1);
  CHECK(r.text().find("result pass") != std::string::npos);
}

TEST_CASE("family count is recorded") {
  ExperimentOptions o = opts(1);
  o.families = 1;
  Report r = run_task1(o);
  CHECK(r.families == 1);
}

TEST_CASE("verify_network") {
  Memory m;
  Task t = parse_task("<(A1 * B1) --> (ocr * ocr)>.");
  t.truth = TruthValue{1.0, 0.3};
  m.ingest(t, 0);
  auto res = verify_network({{parse_term("<(A1 * B1) --> (ocr * ocr)>"), 0.1},
                             {parse_term("<(B1 * A1) --> (ocr * ocr)>"), 0.0},
                             {parse_term("<(A1 * B1) --> (ocr * ocr)>"), 0.5}},
                            m);
  REQUIRE(res.size() == 3);
  CHECK(res[0].present);
  CHECK_FALSE(res[1].present);
  CHECK_FALSE(res[2].present);
  CHECK(res[0].confidence == doctest::Approx(0.3));
}

TEST_CASE("network listings") {
  int trained = 0;
  for (const auto& n : task1_network()) trained += n.trained;
  CHECK(task1_network().size() == 12);
  CHECK(trained == 4);
  trained = 0;
  for (const auto& n : task2_network()) trained += n.trained;
  CHECK(trained == 4);
  CHECK(task2_network().size() == 20);
}

}
