#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relnars/engine.hpp"

namespace relnars {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(int line, std::size_t offset, const std::string& what);
  int line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  int line_;
  std::size_t offset_;
};

struct ScriptItem {
  enum class Kind { Narsese, Delay, Directive };
  Kind kind = Kind::Narsese;
  int line = 0;
  std::string text;

  Task task;       // Narsese
  Cycle delay = 0; // Delay

  // Directive
  std::string name;
  std::string argument;
  std::optional<Term> term;
  std::vector<Term> ops;
  double number = 0.0;
  double min_confidence = 0.0;
};

/// Blank and comment-only lines yield nothing. Throws ScriptError.
std::optional<ScriptItem> parse_script_line(std::string_view line, int number = 1,
                                            double input_confidence = 0.9);
std::vector<ScriptItem> parse_script(std::string_view text, double input_confidence = 0.9);

/// True when `op` is what an `*expect-executed` argument names: the full
/// term, `^name(args)`, or the shorthand `^x` (name `^x` or sole argument x).
bool operation_matches(const Term& op, std::string_view spec);

struct ExpectResult {
  int line = 0;
  std::string directive;
  bool passed = false;
  std::string observed;
};

/// Engine plus directive state, shared by script runs and the REPL.
class Session {
 public:
  Session(EngineConfig config, std::uint64_t seed);

  /// Output lines produced by the item (answers, dump notices, failures).
  std::vector<std::string> execute(const ScriptItem& item);
  /// Parses and executes one REPL line. Errors come back as messages.
  std::vector<std::string> execute_line(std::string_view line);

  Engine& engine() { return engine_; }
  const Engine& engine() const { return engine_; }
  const std::vector<ExpectResult>& results() const { return results_; }
  bool passed() const;

 private:
  EngineConfig config_;
  std::uint64_t seed_;
  Engine engine_;
  std::size_t checked_executions_ = 0;
  std::size_t seen_answers_ = 0;
  int repl_line_ = 0;
  std::vector<ExpectResult> results_;
};

}  // namespace relnars
