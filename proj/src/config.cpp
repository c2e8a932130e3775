#include "relnars/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace relnars {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T number(std::string_view key, std::string_view value, std::size_t line) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("line " + std::to_string(line) + ": bad value for " + std::string(key) +
                      ": '" + std::string(value) + "'");
  return out;
}

bool boolean(std::string_view key, std::string_view value, std::size_t line) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError("line " + std::to_string(line) + ": bad value for " + std::string(key));
}

}  // namespace

EngineConfig parse_config(std::string_view text, EngineConfig c) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key == "k") c.evidence.horizon = number<double>(key, value, line_no);
    else if (key == "gamma") c.evidence.derivation_discount = number<double>(key, value, line_no);
    else if (key == "c1") c.input_confidence = number<double>(key, value, line_no);
    else if (key == "lambda") c.memory.decay = number<double>(key, value, line_no);
    else if (key == "concept_capacity") c.memory.concept_capacity = number<std::size_t>(key, value, line_no);
    else if (key == "beliefs_per_concept") c.memory.beliefs_per_concept = number<std::size_t>(key, value, line_no);
    else if (key == "buffer_capacity") c.memory.buffer_capacity = number<std::size_t>(key, value, line_no);
    else if (key == "precondition_horizon") c.precondition_horizon = number<Cycle>(key, value, line_no);
    else if (key == "outcome_horizon") c.outcome_horizon = number<Cycle>(key, value, line_no);
    else if (key == "threshold") c.threshold = number<double>(key, value, line_no);
    else if (key == "p_babble") c.babble_probability = number<double>(key, value, line_no);
    else if (key == "depth_limit") c.depth_limit = number<int>(key, value, line_no);
    else if (key == "negative_evidence") c.negative_evidence = boolean(key, value, line_no);
    else if (key == "cue_location") c.cue_location = std::string(value);
    else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
  }
  if (!c.evidence.valid()) throw ConfigError("k must be positive and gamma in (0, 1]");
  if (c.input_confidence <= 0.0 || c.input_confidence >= 1.0) throw ConfigError("c1 must be in (0, 1)");
  if (c.memory.buffer_capacity == 0 || c.memory.concept_capacity == 0 || c.memory.beliefs_per_concept == 0)
    throw ConfigError("capacities must be positive");
  return c;
}

EngineConfig load_config(const std::string& path, EngineConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string config_text(const EngineConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "k=" << c.evidence.horizon << '\n'
      << "gamma=" << c.evidence.derivation_discount << '\n'
      << "c1=" << c.input_confidence << '\n'
      << "lambda=" << c.memory.decay << '\n'
      << "concept_capacity=" << c.memory.concept_capacity << '\n'
      << "beliefs_per_concept=" << c.memory.beliefs_per_concept << '\n'
      << "buffer_capacity=" << c.memory.buffer_capacity << '\n'
      << "precondition_horizon=" << c.precondition_horizon << '\n'
      << "outcome_horizon=" << c.outcome_horizon << '\n'
      << "threshold=" << c.threshold << '\n'
      << "p_babble=" << c.babble_probability << '\n'
      << "depth_limit=" << c.depth_limit << '\n'
      << "negative_evidence=" << (c.negative_evidence ? "true" : "false") << '\n'
      << "cue_location=" << c.cue_location << '\n';
  return out.str();
}

std::uint64_t config_hash(const EngineConfig& c) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : config_text(c)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const EngineConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(c)));
  return buf;
}

EngineConfig calibrated_config() {
  EngineConfig c;
  c.evidence = {1.0, 0.34};
  return c;
}

}  // namespace relnars
