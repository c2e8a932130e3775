#include "relnars/script.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "relnars/decision.hpp"
#include "relnars/narsese.hpp"

namespace relnars {

ScriptError::ScriptError(int line, std::size_t offset, const std::string& what)
    : std::runtime_error(what), line_(line), offset_(offset) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

template <typename T>
std::optional<T> number(std::string_view s) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// `^name(args)` written as a label, else a full term.
Term parse_operation(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '^') {
    const auto open = text.find('(');
    if (open == std::string_view::npos) throw ParseError(text.size(), {"("}, "operation needs arguments");
    if (text.back() != ')') throw ParseError(text.size(), {")"}, "unterminated operation arguments");
    const std::string name(text.substr(1, open - 1));
    const std::string_view args = text.substr(open + 1, text.size() - open - 2);
    Term arg = args.find(' ') == std::string_view::npos ? parse_term(args)
                                                        : parse_term("(" + std::string(args) + ")");
    return Term::operation(Term::atom("{SELF}"), arg, name);
  }
  Term t = parse_term(text);
  if (t.kind() != TermKind::Operation) throw ParseError(0, {"operation"}, "not an operation");
  return t;
}

const char* const kDirectives[] = {"reset", "seed", "babble", "threshold", "ops", "expect-executed",
                                   "expect-derived", "expect-absent", "dump", "load"};

}  // namespace

std::optional<ScriptItem> parse_script_line(std::string_view raw, int line, double input_confidence) {
  std::string_view s = trim(strip_comment(raw));
  if (s.empty()) return std::nullopt;
  const std::size_t lead = static_cast<std::size_t>(s.data() - raw.data());

  ScriptItem item;
  item.line = line;
  item.text = std::string(s);

  if (all_digits(s)) {
    auto n = number<Cycle>(s);
    if (!n) throw ScriptError(line, lead, "delay out of range");
    item.kind = ScriptItem::Kind::Delay;
    item.delay = *n;
    return item;
  }

  if (s.front() != '*') {
    try {
      item.task = parse_task(s, input_confidence);
    } catch (const ParseError& e) {
      throw ScriptError(line, lead + e.offset(), e.what());
    }
    item.kind = ScriptItem::Kind::Narsese;
    return item;
  }

  item.kind = ScriptItem::Kind::Directive;
  const auto space = s.find(' ');
  item.name = std::string(s.substr(1, space == std::string_view::npos ? s.npos : space - 1));
  std::string_view arg = space == std::string_view::npos ? std::string_view{} : trim(s.substr(space));
  const std::size_t arg_at = space == std::string_view::npos ? lead + s.size()
                                                             : lead + static_cast<std::size_t>(arg.data() - s.data());
  item.argument = std::string(arg);

  bool known = false;
  for (const char* d : kDirectives) known = known || item.name == d;
  if (!known) throw ScriptError(line, lead, "unknown directive *" + item.name);

  auto need_arg = [&] {
    if (arg.empty()) throw ScriptError(line, arg_at, "*" + item.name + " needs an argument");
  };
  auto unit_number = [&] {
    need_arg();
    auto v = number<double>(arg);
    if (!v || *v < 0.0 || *v > 1.0) throw ScriptError(line, arg_at, "expected a number in [0, 1]");
    item.number = *v;
  };

  try {
    if (item.name == "reset") {
      if (!arg.empty()) throw ScriptError(line, arg_at, "*reset takes no argument");
    } else if (item.name == "seed") {
      need_arg();
      auto v = number<std::uint64_t>(arg);
      if (!v) throw ScriptError(line, arg_at, "expected a non-negative integer seed");
      item.number = static_cast<double>(*v);
      item.argument = std::to_string(*v);
    } else if (item.name == "babble" || item.name == "threshold") {
      unit_number();
    } else if (item.name == "ops") {
      need_arg();
      std::size_t from = 0;
      while (from <= arg.size()) {
        auto comma = arg.find(',', from);
        if (comma == std::string_view::npos) comma = arg.size();
        item.ops.push_back(parse_operation(arg.substr(from, comma - from)));
        from = comma + 1;
      }
    } else if (item.name == "expect-executed") {
      need_arg();
      if (arg.front() != '^' && arg.front() != '<') throw ScriptError(line, arg_at, "expected an operation");
      if (arg.find('(') != std::string_view::npos || arg.front() == '<') item.term = parse_operation(arg);
    } else if (item.name == "expect-derived" || item.name == "expect-absent") {
      need_arg();
      std::string_view stmt = arg;
      const auto minc = arg.rfind(" minc=");
      if (minc != std::string_view::npos) {
        if (item.name == "expect-absent") throw ScriptError(line, arg_at + minc, "minc applies to *expect-derived");
        auto v = number<double>(arg.substr(minc + 6));
        if (!v || *v < 0.0 || *v > 1.0) throw ScriptError(line, arg_at + minc + 6, "expected a confidence in [0, 1]");
        item.min_confidence = *v;
        stmt = trim(arg.substr(0, minc));
      }
      item.term = normalize_variables(parse_term(stmt));
    } else {
      need_arg();
    }
  } catch (const ParseError& e) {
    throw ScriptError(line, arg_at + e.offset(), e.what());
  }
  return item;
}

std::vector<ScriptItem> parse_script(std::string_view text, double input_confidence) {
  std::vector<ScriptItem> items;
  int line = 0;
  std::size_t from = 0;
  while (from <= text.size()) {
    auto nl = text.find('\n', from);
    if (nl == std::string_view::npos) nl = text.size();
    ++line;
    if (auto item = parse_script_line(text.substr(from, nl - from), line, input_confidence))
      items.push_back(std::move(*item));
    from = nl + 1;
  }
  return items;
}

bool operation_matches(const Term& op, std::string_view spec) {
  spec = trim(spec);
  if (op.str() == spec || operation_label(op) == spec) return true;
  if (op.kind() != TermKind::Operation || spec.find('(') != std::string_view::npos) return false;
  if (op.name() == spec) return true;
  return spec.size() > 1 && spec.front() == '^' && op[1].is_atom() && op[1].name() == spec.substr(1);
}

Session::Session(EngineConfig config, std::uint64_t seed)
    : config_(config), seed_(seed), engine_(std::move(config), seed) {}

bool Session::passed() const {
  for (const auto& r : results_)
    if (!r.passed) return false;
  return true;
}

std::vector<std::string> Session::execute(const ScriptItem& item) {
  std::vector<std::string> out;
  auto expect = [&](bool ok, std::string observed) {
    results_.push_back({item.line, item.text, ok, observed});
    if (!ok) out.push_back("FAIL line " + std::to_string(item.line) + ": " + item.text + " (" + observed + ")");
  };

  switch (item.kind) {
    case ScriptItem::Kind::Narsese:
      engine_.input(item.task);
      break;
    case ScriptItem::Kind::Delay:
      engine_.step(item.delay);
      break;
    case ScriptItem::Kind::Directive:
      if (item.name == "reset") {
        engine_.reset();
        engine_.reseed(seed_);
        engine_.set_babble_probability(config_.babble_probability);
        engine_.set_threshold(config_.threshold);
        engine_.set_permitted_operations({});
        checked_executions_ = 0;
        seen_answers_ = 0;
      } else if (item.name == "seed") {
        seed_ = std::stoull(item.argument);
        engine_.reseed(seed_);
      } else if (item.name == "babble") {
        engine_.set_babble_probability(item.number);
      } else if (item.name == "threshold") {
        engine_.set_threshold(item.number);
      } else if (item.name == "ops") {
        engine_.set_permitted_operations(item.ops);
      } else if (item.name == "expect-executed") {
        const auto& ex = engine_.executions();
        bool ok = false;
        std::string seen;
        for (std::size_t i = checked_executions_; i < ex.size(); ++i) {
          const bool hit = item.term ? ex[i].operation == *item.term
                                     : operation_matches(ex[i].operation, item.argument);
          ok = ok || hit;
          if (!seen.empty()) seen += ", ";
          seen += operation_label(ex[i].operation);
        }
        checked_executions_ = ex.size();
        expect(ok, seen.empty() ? "nothing executed" : "executed " + seen);
      } else if (item.name == "expect-derived") {
        const Belief* b = engine_.memory().find(*item.term);
        if (!b) {
          expect(false, "absent");
        } else {
          std::ostringstream os;
          os << "c=" << b->truth.confidence;
          expect(b->truth.confidence >= item.min_confidence && b->truth.confidence > 0.0, os.str());
        }
      } else if (item.name == "expect-absent") {
        const Belief* b = engine_.memory().find(*item.term);
        expect(b == nullptr, b ? "present" : "absent");
      } else if (item.name == "dump") {
        std::ofstream f(item.argument);
        if (!f) throw std::runtime_error("cannot write " + item.argument);
        f << engine_.dump();
        out.push_back("dumped " + item.argument);
      } else if (item.name == "load") {
        std::ifstream f(item.argument);
        if (!f) throw std::runtime_error("cannot read " + item.argument);
        std::stringstream ss;
        ss << f.rdbuf();
        engine_.load(ss.str());
        out.push_back("loaded " + item.argument);
      }
      break;
  }

  const auto& answers = engine_.answers();
  for (; seen_answers_ < answers.size(); ++seen_answers_) out.push_back("Answer: " + answers[seen_answers_]);
  return out;
}

std::vector<std::string> Session::execute_line(std::string_view line) {
  ++repl_line_;
  try {
    auto item = parse_script_line(line, repl_line_, config_.input_confidence);
    if (!item) return {};
    return execute(*item);
  } catch (const ScriptError& e) {
    return {"error at " + std::to_string(e.offset()) + ": " + e.what()};
  } catch (const std::exception& e) {
    return {std::string("error: ") + e.what()};
  }
}

}  // namespace relnars
