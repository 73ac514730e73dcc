// Copyright 2026 The umtslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// umts-lab: runs simulations, attacks, games and the symbolic checker and
// writes JSON reports.
//
// Exit codes: 0 success / equivalent up to bound, 1 counterexample,
// 2 configuration or input error, 3 bound exhausted, 4 internal error.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "umtslab/umtslab.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBound = 3;
constexpr int kExitInternal = 4;

struct CliError {
  int code;
  std::string message;
};

struct Common {
  std::optional<std::uint64_t> seed;
  std::string report;
  bool json = false;
  bool timing = false;
  bool log = false;
  unsigned jobs = 1;
};

int exit_code(umts_status s) {
  switch (s) {
    case UMTS_OK: return kExitOk;
    case UMTS_E_STEP_BOUND: return kExitBound;
    case UMTS_E_INTERNAL: return kExitInternal;
    default: return kExitConfig;
  }
}

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { umts_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

void check(umts_status s) {
  if (s != UMTS_OK) {
    throw CliError{exit_code(s), std::string(umts_status_name(s)) + ": " + umts_last_error()};
  }
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("UMTS_LAB_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(env, &used, 10);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw CliError{kExitConfig, std::string("UMTS_LAB_SEED is not an integer: '") + env + "'"};
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitConfig, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

umts_bounds parse_bounds(const std::string& text) {
  umts_bounds b = umts_default_bounds();
  if (text.empty()) return b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CliError{kExitConfig, "bad bound '" + item + "'"};
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(val, &used, 10);
      if (used != val.size() || val[0] == '-') throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw CliError{kExitConfig, "bound '" + key + "' needs a non-negative integer"};
    }
    if (key == "repl") {
      b.repl = static_cast<std::uint32_t>(v);
    } else if (key == "depth") {
      b.depth = static_cast<std::uint32_t>(v);
    } else if (key == "steps") {
      b.steps = v;
    } else {
      throw CliError{kExitConfig, "unknown bound '" + key + "' (expected repl, depth, steps)"};
    }
  }
  return b;
}

class Command {
 public:
  Command(std::string name, std::vector<std::string> argv)
      : name_(std::move(name)), argv_(std::move(argv)),
        start_(std::chrono::steady_clock::now()) {}

  json report(const json& config, const json& results, bool timing) const {
    json wall = nullptr;
    if (timing) {
      std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
      wall = d.count();
    }
    return json{{"command", json{{"name", name_}, {"argv", argv_}}},
                {"config", config},
                {"results", results},
                {"tool_version", umts_version()},
                {"wall_clock_seconds", wall}};
  }

 private:
  std::string name_;
  std::vector<std::string> argv_;
  std::chrono::steady_clock::time_point start_;
};

void emit(const Common& c, const json& report, const std::string& summary) {
  std::string text = report.dump(2) + "\n";
  if (!c.report.empty()) {
    std::ofstream out(c.report, std::ios::binary);
    if (!out || !(out << text)) throw CliError{kExitConfig, "cannot write '" + c.report + "'"};
  }
  if (c.json) {
    std::cout << text;
  } else {
    std::cout << summary;
  }
}

void add_common(CLI::App* app, Common& c, bool trials_cmd) {
  app->add_option("--seed", c.seed, "RNG seed (falls back to UMTS_LAB_SEED, then 1)");
  app->add_option("--report", c.report, "write the JSON report to PATH");
  app->add_flag("--json", c.json, "print the JSON report instead of a summary");
  app->add_flag("--timing", c.timing, "record wall-clock time in the report");
  if (trials_cmd) {
    app->add_option("--jobs", c.jobs, "worker threads for independent trials")
        ->check(CLI::Range(1u, 256u));
    app->add_flag("--log", c.log, "include the per-trial log");
  }
}

int run_simulate(const Command& cmd, const Common& c, const std::string& scenario_path) {
  std::string text = read_file(scenario_path);
  json scenario;
  try {
    scenario = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError{kExitConfig, "scenario is not valid JSON: " + std::string(e.what())};
  }
  if (c.seed || std::getenv("UMTS_LAB_SEED")) {
    if (!scenario.is_object()) throw CliError{kExitConfig, "scenario must be a JSON object"};
    scenario["seed"] = resolve_seed(c);
  }
  LibString out;
  check(umts_simulate(scenario.dump().c_str(), &out.p));
  json results = json::parse(out.str());
  json config = results["scenario"];
  results.erase("scenario");

  std::ostringstream s;
  for (const auto& e : results["transcript"]) {
    s << e["step"].get<int>() << "  " << e["sender"].get<std::string>() << " -> "
      << e["receiver"].get<std::string>() << "  " << e["message"].get<std::string>() << "  ["
      << e["action"].get<std::string>() << "]\n";
  }
  for (const auto& o : results["outcomes"]) {
    s << "session " << o["session"].get<int>() << " (subscriber " << o["subscriber"].get<int>()
      << "): " << o["outcome"].get<std::string>() << "\n";
  }
  emit(c, cmd.report(config, results, c.timing), s.str());
  return kExitOk;
}

int run_attack(const Command& cmd, const Common& c, const std::string& variant,
               std::uint64_t trials) {
  std::uint64_t seed = resolve_seed(c);
  LibString out;
  check(umts_attack(variant.c_str(), trials, seed, c.jobs, c.log ? 1 : 0, &out.p));
  json results = json::parse(out.str());
  json config{{"variant", variant}, {"trials", trials}, {"seed", seed}, {"jobs", c.jobs}};
  std::ostringstream s;
  const json& v = results["verdicts"];
  s << "variant " << variant << ": accuracy " << results["accuracy"].get<double>() << " ("
    << results["correct"].get<std::uint64_t>() << "/" << trials << " correct)\n"
    << "verdicts: same_as_victim " << v["same_as_victim"] << ", different " << v["different"]
    << ", undetermined " << v["undetermined"] << "\n";
  emit(c, cmd.report(config, results, c.timing), s.str());
  return kExitOk;
}

int run_game(const Command& cmd, const Common& c, const std::string& kind,
             const std::string& variant, const std::string& strategy, std::uint64_t trials,
             bool identity_requests) {
  std::uint64_t seed = resolve_seed(c);
  // The IMSI catcher is only meaningful when the MS answers identity requests.
  if (strategy == "imsi-catcher") identity_requests = true;
  LibString out;
  check(umts_game(kind.c_str(), variant.c_str(), strategy.c_str(), trials, seed,
                  identity_requests ? 1 : 0, c.jobs, c.log ? 1 : 0, &out.p));
  json results = json::parse(out.str());
  json config{{"kind", kind},   {"variant", variant}, {"strategy", strategy},
              {"trials", trials}, {"seed", seed},     {"identity_requests", identity_requests},
              {"jobs", c.jobs}};
  std::ostringstream s;
  s << kind << " game, variant " << variant << ", strategy " << strategy << ": advantage "
    << results["advantage"].get<double>() << " (" << results["successes"] << "/" << trials
    << " correct guesses)\n";
  emit(c, cmd.report(config, results, c.timing), s.str());
  return kExitOk;
}

std::string describe_trace(const json& cex) {
  std::ostringstream s;
  for (const auto& t : cex["trace"]) {
    s << "  " << t["step"] << ". " << t["action"].get<std::string>() << " "
      << t["label"].get<std::string>();
    if (t.contains("to") && !t["to"].is_null()) s << " -> " << t["to"].get<std::string>();
    if (t.contains("recipe") && !t["recipe"].is_null()) {
      s << " <- " << t["recipe"].get<std::string>();
    }
    if (t.contains("left") && !t["left"].is_null()) {
      s << "   left: " << t["left"].get<std::string>();
      if (t.contains("right") && !t["right"].is_null()) {
        s << "   right: " << t["right"].get<std::string>();
      }
    }
    s << "\n";
  }
  const json& e = cex["distinguishing_event"];
  s << "  distinguishing event: " << e["kind"].get<std::string>() << "\n"
    << "    left:  " << e["left"].get<std::string>() << "\n"
    << "    right: " << e["right"].get<std::string>() << "\n"
    << "  replay verified: " << (cex["verified"].get<bool>() ? "yes" : "no") << "\n";
  return s.str();
}

int run_check(const Command& cmd, const Common& c, const std::string& model_path,
              const std::string& bounds_text, const std::string& mode, bool print_model) {
  umts_bounds b = parse_bounds(bounds_text);
  std::string source = read_file(model_path);
  umts_model* raw = nullptr;
  check(umts_model_parse(source.c_str(), &raw));
  std::unique_ptr<umts_model, void (*)(umts_model*)> model(raw, umts_model_destroy);

  std::ostringstream s;
  if (print_model) {
    LibString text;
    check(umts_model_pretty(model.get(), &text.p));
    s << text.str() << "\n";
  }
  umts_verdict verdict = UMTS_EQUIVALENT;
  LibString out;
  check(umts_model_check(model.get(), &b, mode.c_str(), &verdict, &out.p));
  json results = json::parse(out.str());
  json config{{"model", model_path},
              {"bounds", json{{"repl", b.repl}, {"depth", b.depth}, {"steps", b.steps}}},
              {"mode", mode}};
  s << model_path << ": " << results["verdict"].get<std::string>() << " ("
    << results["states"] << " states, " << results["transitions"] << " transitions)\n";
  if (results.contains("counterexample") && !results["counterexample"].is_null()) {
    s << describe_trace(results["counterexample"]);
  }
  emit(c, cmd.report(config, results, c.timing), s.str());
  switch (verdict) {
    case UMTS_EQUIVALENT: return kExitOk;
    case UMTS_COUNTEREXAMPLE: return kExitCounterexample;
    case UMTS_BOUND_EXHAUSTED: return kExitBound;
  }
  return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"umts-lab: UMTS AKA privacy experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(umts_version()));

  Common common;
  std::string variant = "original";
  std::uint64_t trials = 1000;

  auto* simulate = app.add_subcommand("simulate", "run a scenario file over the simulated link");
  std::string scenario_path;
  simulate->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_common(simulate, common, false);

  auto* attack = app.add_subcommand("attack", "run the replay linkability attack");
  attack->add_option("--variant", variant, "original | unified | pk");
  attack->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  add_common(attack, common, true);

  auto* game = app.add_subcommand("game", "play an indistinguishability game");
  std::string kind;
  std::string strategy = "replay";
  bool identity_requests = false;
  game->add_option("kind", kind, "unlinkability | anonymity")->required();
  game->add_option("--variant", variant, "original | unified | pk");
  game->add_option("--strategy", strategy, "replay | passive | random-guess | imsi-catcher");
  game->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  game->add_flag("--identity-requests", identity_requests,
                 "let the MS answer identity requests");
  add_common(game, common, true);

  auto* chk = app.add_subcommand("check", "bounded diff-equivalence of a biprocess model");
  std::string model_path;
  std::string bounds_text;
  std::string mode = "observable";
  bool print_model = false;
  chk->add_option("model", model_path, "model file")->required();
  chk->add_option("--bounds", bounds_text, "repl=2,depth=3,steps=10000");
  chk->add_option("--mode", mode, "observable | strict");
  chk->add_flag("--print-model", print_model, "print the parsed model");
  add_common(chk, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (*simulate) return run_simulate(Command("simulate", args), common, scenario_path);
    if (*attack) return run_attack(Command("attack", args), common, variant, trials);
    if (*game) {
      return run_game(Command("game", args), common, kind, variant, strategy, trials,
                      identity_requests);
    }
    return run_check(Command("check", args), common, model_path, bounds_text, mode, print_model);
  } catch (const CliError& e) {
    std::cerr << "umts-lab: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "umts-lab: " << e.what() << "\n";
    return kExitInternal;
  }
}
