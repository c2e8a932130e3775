#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relnars/term.hpp"
#include "relnars/truth.hpp"

namespace relnars {

using Cycle = std::int64_t;

enum class Punctuation { Judgment, Goal, Question };
enum class Tense { Eternal, Present };

struct Task {
  Term term;
  Punctuation punctuation = Punctuation::Judgment;
  Tense tense = Tense::Eternal;
  /// Set for judgments only.
  std::optional<TruthValue> truth;
  /// Set for present-tense tasks once they enter the engine.
  std::optional<Cycle> occurrence;
  double priority = 0.9;

  bool is_event() const { return tense == Tense::Present; }
  bool is_judgment() const { return punctuation == Punctuation::Judgment; }
};

/// Canonical task text: `term. :|:`, `G!`, and so on (no truth).
std::string format_task(const Task& task);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Parses one task line. `default_confidence` is the confidence given to
/// judgments, which never carry truth annotations in this grammar.
Task parse_task(std::string_view line, double default_confidence = 0.9);

/// Parses a single term (statement or compound) with nothing trailing.
Term parse_term(std::string_view text);

/// Removes a trailing `//` comment.
std::string_view strip_comment(std::string_view line);

}  // namespace relnars
