#include <cctype>

#include "relnars/narsese.hpp"

namespace relnars {

namespace {

std::string describe(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

bool atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term term() {
    skip_ws();
    if (at_end()) fail({"term"});
    const char c = text_[pos_];
    if (c == '<') return statement();
    if (c == '(') return compound();
    if (c == '$' || c == '#') return variable();
    return atom();
  }

  Term statement() {
    expect("<");
    Term left = term();
    skip_ws();
    static const char* copulas[] = {"-->", "==>", "<=>", "=/>"};
    std::string_view copula;
    for (const char* cop : copulas) {
      if (text_.substr(pos_).starts_with(cop)) {
        copula = cop;
        break;
      }
    }
    if (copula.empty()) fail({"'-->'", "'==>'", "'<=>'", "'=/>'"});
    pos_ += copula.size();
    Term right = term();
    expect(">");
    if (copula == "-->") {
      if (right.is_atom() && right.name().starts_with('^') && left.kind() == TermKind::Product &&
          left[0].is_atom("{SELF}")) {
        return Term::operation(left[0], left[1], right.name());
      }
      return Term::inheritance(std::move(left), std::move(right));
    }
    if (copula == "==>") return Term::implication(std::move(left), std::move(right));
    if (copula == "<=>") return Term::equivalence(std::move(left), std::move(right));
    return Term::predictive(std::move(left), std::move(right));
  }

  Term compound() {
    expect("(");
    std::vector<Term> items{term()};
    skip_ws();
    std::string_view op;
    if (consume("*")) {
      op = "*";
    } else if (consume("&/")) {
      op = "&/";
    } else if (consume("&&")) {
      op = "&&";
    } else {
      fail({"'*'", "'&/'", "'&&'"});
    }
    items.push_back(term());
    skip_ws();
    if (op != "*") {
      while (consume(op)) {
        items.push_back(term());
        skip_ws();
      }
    }
    expect(")");
    if (op == "*") return Term::product(std::move(items[0]), std::move(items[1]));
    if (op == "&/") return Term::sequence(std::move(items));
    return Term::conjunction(std::move(items));
  }

  Term variable() {
    const char sigil = text_[pos_++];
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail({"digit"});
    const int index = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (index <= 0) fail({"positive variable index"}, start);
    return Term::variable(sigil == '$' ? TermKind::IndependentVar : TermKind::DependentVar, index);
  }

  Term atom() {
    if (consume("{SELF}")) return Term::atom("{SELF}");
    const std::size_t start = pos_;
    if (text_[pos_] == '^') ++pos_;
    const std::size_t name_start = pos_;
    while (!at_end() && atom_char(text_[pos_])) ++pos_;
    if (pos_ == name_start) fail({"term"}, start);
    return Term::atom(std::string(text_.substr(start, pos_ - start)));
  }

  Task task(double default_confidence) {
    skip_ws();
    if (at_end()) fail({"statement"});
    Task out;
    if (text_[pos_] == '<') {
      out.term = statement();
    } else if (text_[pos_] == '(' || text_[pos_] == '$' || text_[pos_] == '#') {
      fail({"'<'", "atom"});
    } else {
      out.term = atom();
    }
    skip_ws();
    if (consume(".")) {
      out.punctuation = Punctuation::Judgment;
      out.truth = TruthValue{1.0, default_confidence};
    } else if (consume("!")) {
      out.punctuation = Punctuation::Goal;
    } else if (consume("?")) {
      out.punctuation = Punctuation::Question;
    } else {
      fail({"'.'", "'!'", "'?'"});
    }
    skip_ws();
    if (consume(":|:")) out.tense = Tense::Present;
    skip_ws();
    if (!at_end()) fail({"':|:'", "end of line"});
    return out;
  }

  void finish() {
    skip_ws();
    if (!at_end()) fail({"end of input"});
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_).starts_with(tok)) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!consume(tok)) fail({"'" + std::string(tok) + "'"});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) { fail(std::move(expected), pos_); }

  [[noreturn]] void fail(std::vector<std::string> expected, std::size_t at) {
    std::string found = at < text_.size() ? "'" + std::string(1, text_[at]) + "'" : "end of input";
    throw ParseError(at, expected,
                     "at offset " + std::to_string(at) + ": expected " + describe(expected) +
                         ", found " + found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& what)
    : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

std::string_view strip_comment(std::string_view line) {
  if (auto at = line.find("//"); at != std::string_view::npos) line = line.substr(0, at);
  return line;
}

Task parse_task(std::string_view line, double default_confidence) {
  Parser p(strip_comment(line));
  return p.task(default_confidence);
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

std::string format_task(const Task& task) {
  std::string out = task.term.str();
  switch (task.punctuation) {
    case Punctuation::Judgment: out += "."; break;
    case Punctuation::Goal: out += "!"; break;
    case Punctuation::Question: out += "?"; break;
  }
  if (task.tense == Tense::Present) out += " :|:";
  return out;
}

}  // namespace relnars
