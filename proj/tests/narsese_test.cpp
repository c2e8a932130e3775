#include <doctest.h>

#include <fstream>
#include <string>

#include "relnars/narsese.hpp"

using namespace relnars;

TEST_SUITE("narsese") {

TEST_CASE("present-tense percept judgment") {
  Task t = parse_task("<(left * green) --> (loc * color)>. :|:");
  CHECK(t.punctuation == Punctuation::Judgment);
  CHECK(t.tense == Tense::Present);
  REQUIRE(t.term.kind() == TermKind::Inheritance);
  CHECK(t.term[0] == Term::product(Term::atom("left"), Term::atom("green")));
  CHECK(t.term[1] == Term::product(Term::atom("loc"), Term::atom("color")));
  REQUIRE(t.truth);
  CHECK(t.truth->frequency == 1.0);
  CHECK(t.truth->confidence == doctest::Approx(0.9));
}

TEST_CASE("goal event") {
  Task t = parse_task("G! :|:");
  CHECK(t.punctuation == Punctuation::Goal);
  CHECK(t.tense == Tense::Present);
  CHECK(t.term.is_atom("G"));
  CHECK_FALSE(t.truth);
}

TEST_CASE("eternal equivalence with variables") {
  Task t = parse_task("<<($1 * $2) --> (ocr * ocr)> <=> <($2 * $1) --> (ocr * ocr)>>.");
  CHECK(t.tense == Tense::Eternal);
  REQUIRE(t.term.kind() == TermKind::Equivalence);
  CHECK(t.term[0].kind() == TermKind::Inheritance);
  CHECK_FALSE(t.term.is_ground());
}

TEST_CASE("question") {
  Task t = parse_task("<(C1 * B1) --> (ocr * ocr)>?");
  CHECK(t.punctuation == Punctuation::Question);
}

TEST_CASE("input confidence is configurable") {
  Task t = parse_task("<a --> b>.", 0.5);
  CHECK(t.truth->confidence == 0.5);
}

TEST_CASE("operation syntax") {
  Term t = parse_term("<({SELF} * (sample * left)) --> ^match>");
  REQUIRE(t.kind() == TermKind::Operation);
  CHECK(t.name() == "^match");
  CHECK(t[0].is_atom("{SELF}"));
  CHECK(t[1] == Term::product(Term::atom("sample"), Term::atom("left")));
  CHECK(t == Term::operation(Term::atom("{SELF}"), t[1], "match"));
}

TEST_CASE("format") {
  CHECK(format_term(Term::inheritance(Term::atom("G"), Term::atom("G"))) == "<G --> G>");
  Term rel = Term::inheritance(Term::product(Term::atom("red"), Term::atom("blue")),
                               Term::product(Term::atom("color"), Term::atom("color")));
  CHECK(rel.str() == "<(red * blue) --> (color * color)>");
  Task t = parse_task("<(sample * red) --> (loc * color)>. :|:");
  CHECK(format_task(t) == "<(sample * red) --> (loc * color)>. :|:");
  CHECK(format_task(parse_task("G! :|:")) == "G! :|:");
}

TEST_CASE("sequences flatten") {
  Term a = Term::atom("a"), b = Term::atom("b"), c = Term::atom("c");
  Term nested = Term::sequence({Term::sequence({a, b}), c});
  CHECK(nested.size() == 3);
  CHECK(nested == Term::sequence({a, b, c}));
  CHECK(Term::sequence({a}) == a);
  CHECK(parse_term("((a &/ b) &/ c)") == nested);
}

TEST_CASE("conjunction order is canonical") {
  CHECK(parse_term("(<a --> b> && <c --> d>)") == parse_term("(<c --> d> && <a --> b>)"));
}

TEST_CASE("normalize_variables") {
  CHECK(normalize_variables(parse_term("<($7 * $3) --> (ocr * ocr)>")).str() ==
        "<($1 * $2) --> (ocr * ocr)>");
  Term ground = parse_term("<(X1 * Y1) --> (ocr * ocr)>");
  CHECK(normalize_variables(ground) == ground);
  Term a = parse_term(
      "<(<($1 * $2) --> (color * color)> && <($3 * $4) --> (loc * loc)>) ==> "
      "<(<($3 * $1) --> (loc * color)> &/ <($4 * $2) --> (loc * color)> &/ "
      "<({SELF} * ($3 * $4)) --> ^match>) =/> G>>");
  Term b = parse_term(
      "<(<($9 * $5) --> (color * color)> && <($2 * $8) --> (loc * loc)>) ==> "
      "<(<($2 * $9) --> (loc * color)> &/ <($8 * $5) --> (loc * color)> &/ "
      "<({SELF} * ($2 * $8)) --> ^match>) =/> G>>");
  CHECK(normalize_variables(a) == normalize_variables(b));
}

TEST_CASE("comments and delays are not terms") {
  CHECK(strip_comment("100 // Wait 100 time steps") == "100 ");
  CHECK_THROWS_AS(parse_task("100"), ParseError);
}

TEST_CASE("parse errors carry an offset") {
  try {
    parse_task("<(a * b) --> c");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() > 0);
  }
  CHECK_THROWS_AS(parse_term("<a <-> b>"), ParseError);
  CHECK_THROWS_AS(parse_term("(a * b * c)"), ParseError);
  CHECK_THROWS_AS(parse_task("<a --> b>. extra"), ParseError);
}

TEST_CASE("listing corpus round-trips") {
  std::ifstream in(RELNARS_SOURCE_DIR "/tests/data/listings.nal");
  REQUIRE(in);
  std::string line;
  int parsed = 0;
  while (std::getline(in, line)) {
    std::string s(strip_comment(line));
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) continue;
    INFO(s);
    const bool task = s.back() == '.' || s.back() == '!' || s.back() == '?' || s.ends_with(":|:");
    if (task) {
      Task t = parse_task(s);
      CHECK(parse_task(format_task(t)).term == t.term);
    } else {
      Term t = parse_term(s);
      CHECK(parse_term(t.str()) == t);
    }
    ++parsed;
  }
  CHECK(parsed > 80);
}

}
