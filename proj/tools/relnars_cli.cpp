#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "relnars/config.hpp"
#include "relnars/decision.hpp"
#include "relnars/experiments.hpp"
#include "relnars/script.hpp"

using namespace relnars;

namespace {

enum class Level { Error, Info, Debug };

struct Flags {
  std::uint64_t seed = 1;
  std::string config;
  std::string trace;
  std::string report;
  std::string log_level = "info";
  bool strict = false;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Collects trace lines for --trace and echoes them at debug level.
class TraceOut {
 public:
  TraceOut(const std::string& path, Level level) : level_(level) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write trace file " + path);
    }
  }
  void operator()(const TraceEntry& e) {
    const std::string line = e.str();
    if (file_) *file_ << line << '\n';
    if (level_ == Level::Debug) std::cerr << line << '\n';
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  Level level_;
};

void write_report(const std::string& path, const std::string& text, const nlohmann::json& json) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write report " + path);
  if (ends_with(path, ".json"))
    f << json.dump(2) << '\n';
  else
    f << text;
}

nlohmann::json script_report(const std::string& script, const Session& s, std::uint64_t seed,
                             const std::string& hash) {
  nlohmann::json j;
  j["task"] = "script";
  j["script"] = script;
  j["seed"] = seed;
  j["config_hash"] = hash;
  j["passed"] = s.passed();
  j["expectations"] = nlohmann::json::array();
  for (const auto& r : s.results())
    j["expectations"].push_back(
        {{"line", r.line}, {"directive", r.directive}, {"passed", r.passed}, {"observed", r.observed}});
  j["executed"] = nlohmann::json::array();
  for (const auto& e : s.engine().executions())
    j["executed"].push_back({{"operation", operation_label(e.operation)},
                             {"cycle", e.cycle},
                             {"babbled", e.babbled},
                             {"expectation", e.expectation}});
  return j;
}

std::string script_text(const nlohmann::json& j) {
  std::ostringstream os;
  os << "script " << j["script"].get<std::string>() << " seed " << j["seed"] << " config "
     << j["config_hash"].get<std::string>() << '\n';
  for (const auto& e : j["expectations"])
    os << (e["passed"].get<bool>() ? "PASS " : "FAIL ") << "line " << e["line"] << ' '
       << e["directive"].get<std::string>() << " (" << e["observed"].get<std::string>() << ")\n";
  for (const auto& e : j["executed"])
    os << "EXEC " << e["operation"].get<std::string>() << " @" << e["cycle"]
       << (e["babbled"].get<bool>() ? " babbled" : "") << '\n';
  return os.str();
}

int run_script(const std::string& path, const EngineConfig& config, const Flags& flags, Level level) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot read " << path << '\n';
    return 2;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  std::vector<ScriptItem> items;
  try {
    items = parse_script(ss.str(), config.input_confidence);
  } catch (const ScriptError& e) {
    std::cerr << path << ":" << e.line() << ": " << e.what() << '\n';
    return 2;
  }

  Session session(config, flags.seed);
  TraceOut trace(flags.trace, level);
  session.engine().set_trace_sink([&](const TraceEntry& e) { trace(e); });
  for (const auto& item : items) {
    for (const auto& line : session.execute(item)) {
      if (line.starts_with("FAIL"))
        std::cerr << path << ':' << line << '\n';
      else if (level != Level::Error)
        std::cout << line << '\n';
    }
  }

  const auto j = script_report(path, session, flags.seed, config_hash_hex(config));
  write_report(flags.report, script_text(j), j);
  if (level != Level::Error)
    std::cout << (session.passed() ? "PASS" : "FAIL") << ' ' << session.results().size() << " expectations\n";
  return session.passed() ? 0 : 1;
}

int run_repl(const EngineConfig& config, const Flags& flags, Level level) {
  Session session(config, flags.seed);
  TraceOut trace(flags.trace, level);
  session.engine().set_trace_sink([&](const TraceEntry& e) {
    trace(e);
    if (e.kind != "input") std::cout << e.str() << '\n';
  });
  std::string line;
  while (true) {
    std::cout << "> " << std::flush;
    if (!std::getline(std::cin, line) || line == ":q") break;
    for (const auto& out : session.execute_line(line)) std::cout << out << '\n';
  }
  return 0;
}

int run_task(int task, EngineConfig config, const Flags& flags, Level level, int families) {
  ExperimentOptions opt;
  opt.config = std::move(config);
  opt.seed = flags.seed;
  opt.families = families;
  TraceOut trace(flags.trace, level);
  opt.trace_sink = [&](const TraceEntry& e) { trace(e); };
  const Report r = task == 1 ? run_task1(opt) : run_task2(opt);
  write_report(flags.report, r.text(), r.json());
  if (level != Level::Error) std::cout << r.text();
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-axiomatic reasoner with acquired relations"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--seed", flags.seed, "Random seed")->capture_default_str();
  app.add_option("--config", flags.config, "Config file (key = value)");
  app.add_option("--trace", flags.trace, "Write the derivation trace here");
  app.add_option("--report", flags.report, "Write the report here (.json for JSON)");
  app.add_option("--log-level", flags.log_level, "error, info or debug")
      ->check(CLI::IsMember({"error", "info", "debug"}))
      ->capture_default_str();
  app.add_flag("--strict", flags.strict, "Disable negative evidence");

  std::string script;
  auto* run = app.add_subcommand("run", "Execute a script");
  run->add_option("script", script, "Script path")->required();
  run->fallthrough();
  auto* repl = app.add_subcommand("repl", "Interactive session; :q exits");
  repl->fallthrough();
  int families = 3;
  auto* t1 = app.add_subcommand("task1", "Functional equivalence and transfer");
  t1->add_option("--families", families, "Pretraining families")->check(CLI::Range(1, 20));
  t1->fallthrough();
  auto* t2 = app.add_subcommand("task2", "Relational frames SAME and OPPOSITE");
  t2->add_option("--families", families, "Pretraining families")->check(CLI::Range(1, 20));
  t2->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const Level level = flags.log_level == "error" ? Level::Error
                      : flags.log_level == "debug" ? Level::Debug
                                                   : Level::Info;
  EngineConfig config;
  try {
    if (!flags.config.empty()) config = load_config(flags.config);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  if (flags.strict) config.negative_evidence = false;

  try {
    if (*run) return run_script(script, config, flags, level);
    if (*repl) return run_repl(config, flags, level);
    if (*t1) return run_task(1, config, flags, level, families);
    return run_task(2, config, flags, level, families);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
}
