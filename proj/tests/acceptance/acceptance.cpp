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

// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
//   acceptance [--cli PATH] [--known-failure N]...
//
// Exits non-zero if a criterion fails that is not listed as a known failure.
// Known failures are still printed as FAIL.

#include <sys/resource.h>
#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "umtslab/attacks.hpp"
#include "umtslab/games.hpp"
#include "umtslab/messages.hpp"
#include "umtslab/netsim.hpp"
#include "umtslab/picalc/checker.hpp"
#include "umtslab/picalc/mutate.hpp"
#include "umtslab/picalc/parser.hpp"
#include "umtslab/protocol.hpp"

namespace {

using namespace umtslab;
namespace pc = umtslab::picalc;

// Pinned parameters.
constexpr std::uint64_t kSeed = 1;
constexpr std::size_t kTrials = 1000;
constexpr double kAdvantageTolerance = 0.05;
constexpr double kAttackSeconds = 10.0;
constexpr double kFixSeconds = 30.0;
constexpr double kCheckSeconds = 60.0;
constexpr long kCheckMemoryKiB = 1024L * 1024L;
constexpr std::size_t kConformanceCases = 1000;
constexpr int kFuzzMutants = 100;
constexpr std::size_t kFuzzMaxStates = 20000;

const std::string kModels = std::string(UMTSLAB_SOURCE_DIR) + "/models/";

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

long peak_rss_kib() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    pass = pass && ok;
  }
  void note(const std::string& what) { notes.push_back("      " + what); }
};

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << v;
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Criterion 1

Outcome linkability_attack() {
  Outcome o;
  Stopwatch sw;
  auto r = attacks::run_linkability_attack(ProtocolVariant::kOriginal, kTrials, kSeed);
  double t = sw.seconds();
  o.expect(r.accuracy == 1.0 && r.correct == kTrials,
           "original: accuracy " + fmt(r.accuracy) + " (" + std::to_string(r.correct) + "/" +
               std::to_string(kTrials) + ")");
  o.expect(r.same_as_victim > 0 && r.different > 0,
           "both ground truths occur: same " + std::to_string(r.same_as_victim) +
               ", different " + std::to_string(r.different));
  o.expect(t < kAttackSeconds, "runtime " + fmt(t) + " s < " + fmt(kAttackSeconds, 0) + " s");
  return o;
}

// Criterion 2

games::GameResult game(games::GameKind kind, ProtocolVariant v, const std::string& strategy,
                       bool identity_requests = false) {
  games::GameSpec s;
  s.kind = kind;
  s.variant = v;
  s.trials = kTrials;
  s.seed = kSeed;
  s.strategy = strategy;
  s.identity_requests = identity_requests;
  return games::play(s);
}

Outcome fix_efficacy() {
  Outcome o;
  Stopwatch sw;
  for (auto v : {ProtocolVariant::kUnifiedError, ProtocolVariant::kPkEncryptedError}) {
    auto r = attacks::run_linkability_attack(v, kTrials, kSeed);
    o.expect(r.undetermined == kTrials, std::string(variant_name(v)) + ": " +
                                            std::to_string(r.undetermined) + "/" +
                                            std::to_string(kTrials) + " verdicts undetermined");
  }
  auto orig = game(games::GameKind::kUnlinkability, ProtocolVariant::kOriginal, "replay");
  o.expect(orig.advantage == 1.0,
           "unlinkability game, replay strategy, original: advantage " + fmt(orig.advantage));
  for (auto v : {ProtocolVariant::kUnifiedError, ProtocolVariant::kPkEncryptedError}) {
    auto r = game(games::GameKind::kUnlinkability, v, "replay");
    o.expect(r.advantage <= kAdvantageTolerance,
             std::string("unlinkability game, replay strategy, ") + std::string(variant_name(v)) +
                 ": advantage " + fmt(r.advantage) + " <= " + fmt(kAdvantageTolerance, 2));
  }
  double t = sw.seconds();
  o.expect(t < kFixSeconds, "runtime " + fmt(t) + " s < " + fmt(kFixSeconds, 0) + " s");
  return o;
}

// Criterion 3

Outcome anonymity() {
  Outcome o;
  for (auto v : {ProtocolVariant::kOriginal, ProtocolVariant::kUnifiedError,
                 ProtocolVariant::kPkEncryptedError}) {
    auto r = game(games::GameKind::kAnonymity, v, "replay");
    o.expect(r.advantage <= kAdvantageTolerance,
             std::string("anonymity game, default strategy, ") + std::string(variant_name(v)) +
                 ": advantage " + fmt(r.advantage) + " <= " + fmt(kAdvantageTolerance, 2));
  }
  for (auto v : {ProtocolVariant::kOriginal, ProtocolVariant::kUnifiedError,
                 ProtocolVariant::kPkEncryptedError}) {
    auto r = game(games::GameKind::kAnonymity, v, "imsi-catcher", true);
    o.expect(r.advantage == 1.0, std::string("anonymity game, imsi-catcher, ") +
                                     std::string(variant_name(v)) + ": advantage " +
                                     fmt(r.advantage));
  }
  return o;
}

// Criteria 4 and 5 share the checker runs.

struct CheckRun {
  std::string model;
  pc::Mode mode;
  pc::CheckResult result;
  double seconds = 0;
  std::string left_value;
  std::string right_value;
};

struct Emitted {
  std::string name;
  pc::Model* model;
  pc::Counterexample cex;
};

std::vector<std::unique_ptr<pc::Model>> g_models;
std::vector<Emitted> g_counterexamples;

std::string value_text(const pc::Model& m, pc::TermId t) {
  return t == pc::kNoTerm ? "(no output)" : pc::to_string(m.pool, m.sig, t);
}

CheckRun run_check(const std::string& name, pc::Mode mode) {
  auto m = std::make_unique<pc::Model>(pc::parse_model(read_file(kModels + name)));
  pc::CheckOptions opts;
  opts.mode = mode;
  CheckRun run{name, mode, {}, 0, {}, {}};
  Stopwatch sw;
  run.result = pc::check_diff_equivalence(*m, opts);
  run.seconds = sw.seconds();
  if (run.result.counterexample) {
    const auto& e = run.result.counterexample->event;
    bool branch = e.kind == pc::EventKind::kBranchDivergence;
    run.left_value = branch ? e.left : value_text(*m, e.left_value);
    run.right_value = branch ? e.right : value_text(*m, e.right_value);
    g_counterexamples.push_back(
        {name + " (" + pc::mode_name(mode) + ")", m.get(), *run.result.counterexample});
  }
  g_models.push_back(std::move(m));
  return run;
}

bool mac_vs_synch(const CheckRun& r) {
  std::set<std::string> vals{r.left_value, r.right_value};
  return vals == std::set<std::string>{"macFail", "synchFail"};
}

std::string summary(const CheckRun& r) {
  std::string s = r.model + " [" + pc::mode_name(r.mode) + "]: " +
                  pc::verdict_name(r.result.verdict) + ", " + std::to_string(r.result.states) +
                  " states, " + fmt(r.seconds) + " s";
  if (r.result.counterexample) {
    s += ", " + pc::event_kind_name(r.result.counterexample->event.kind) + " left " +
         r.left_value + " / right " + r.right_value;
  }
  return s;
}

Outcome checker_parity() {
  Outcome o;
  CheckRun orig = run_check("aka_unlinkability.pv", pc::Mode::kObservable);
  CheckRun fix = run_check("aka_unlinkability_fix.pv", pc::Mode::kObservable);
  CheckRun anon = run_check("aka_anonymity.pv", pc::Mode::kObservable);
  CheckRun orig_strict = run_check("aka_unlinkability.pv", pc::Mode::kStrict);
  CheckRun nested = run_check("aka_unlinkability_nested_if.pv", pc::Mode::kObservable);
  long rss = peak_rss_kib();

  o.expect(orig.result.verdict == pc::Verdict::kCounterexample &&
               orig.result.counterexample->verified,
           "original model: verified counterexample");
  o.expect(mac_vs_synch(orig),
           "original model: replayed divergence is macFail vs synchFail (observed " +
               orig.left_value + " vs " + orig.right_value + ")");
  o.expect(fix.result.verdict == pc::Verdict::kEquivalent, "fixed model: equivalent up to bound");
  o.expect(anon.result.verdict == pc::Verdict::kEquivalent,
           "anonymity model: equivalent up to bound");
  for (const auto* r : {&orig, &fix, &anon}) {
    o.expect(r->seconds < kCheckSeconds, summary(*r));
  }
  o.expect(rss < kCheckMemoryKiB, "peak memory " + std::to_string(rss / 1024) + " MiB < 1024 MiB");
  o.note("strict mode, " + summary(orig_strict));
  o.note("nested-check variant, " + summary(nested));
  return o;
}

Outcome soundness() {
  Outcome o;
  // Re-verify every corpus counterexample independently of the flag the
  // checker attached.
  std::size_t ok = 0;
  for (const auto& c : g_counterexamples) {
    if (c.cex.verified && pc::verify_counterexample(*c.model, pc::Bounds{}, c.cex)) ++ok;
  }
  o.expect(!g_counterexamples.empty() && ok == g_counterexamples.size(),
           "corpus: " + std::to_string(ok) + "/" + std::to_string(g_counterexamples.size()) +
               " counterexamples replay");

  Rng rng(kSeed);
  const char* names[] = {"aka_unlinkability.pv", "aka_unlinkability_fix.pv", "aka_anonymity.pv",
                         "aka_unlinkability_nested_if.pv"};
  std::string sources[4];
  for (int i = 0; i < 4; ++i) sources[i] = read_file(kModels + names[i]);
  int emitted = 0;
  int replayed = 0;
  int exhausted = 0;
  for (int i = 0; i < kFuzzMutants; ++i) {
    pc::Model m = pc::parse_model(sources[i % 4]);
    int rounds = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < rounds; ++k) pc::mutate(m, rng);
    pc::CheckOptions opts;
    opts.mode = rng.coin() ? pc::Mode::kStrict : pc::Mode::kObservable;
    opts.max_states = kFuzzMaxStates;
    pc::CheckResult r = pc::check_diff_equivalence(m, opts);
    if (r.verdict == pc::Verdict::kBoundExhausted) ++exhausted;
    if (!r.counterexample) continue;
    ++emitted;
    if (r.counterexample->verified && pc::verify_counterexample(m, opts.bounds, *r.counterexample)) {
      ++replayed;
    }
  }
  o.expect(emitted > 0 && replayed == emitted,
           "fuzz: " + std::to_string(kFuzzMutants) + " mutants, " + std::to_string(emitted) +
               " counterexamples, " + std::to_string(replayed) + " replay, " +
               std::to_string(exhausted) + " bound exhausted");
  return o;
}

// Criterion 6

struct World {
  SnState sn;
  MsState ms;
};

World make_world(std::uint64_t seed, ProtocolVariant variant) {
  World w;
  Rng rng(seed);
  w.sn.variant = variant;
  w.sn.rng = Rng(derive_seed(seed, 1));
  w.sn.hn_keys = crypto::generate_keypair(rng);
  SubscriberRecord rec = provision_subscriber(rng, Imsi{rng.below(1'000'000'000'000'000ULL)});
  Tmsi t = fresh_tmsi(w.sn);
  w.sn.enrol(rec, t);
  w.ms.record = rec;
  w.ms.tmsi = t;
  w.ms.variant = variant;
  w.ms.pk_hn = w.sn.hn_keys.pk;
  w.ms.rng = Rng(derive_seed(seed, 2));
  return w;
}

ProtocolVariant any_variant(Rng& r) { return static_cast<ProtocolVariant>(r.below(3)); }

bool honest_case(Rng& r) {
  netsim::SimConfig cfg;
  cfg.seed = r.next_u64();
  cfg.variant = any_variant(r);
  cfg.n_subscribers = 1 + r.below(3);
  cfg.identity_requests = r.coin();
  std::size_t n = 1 + r.below(4);
  for (std::size_t i = 0; i < n; ++i) cfg.sessions.push_back(r.below(cfg.n_subscribers));
  netsim::Transcript t = netsim::run_scenario(cfg);
  if (t.outcomes.size() != n) return false;
  for (const auto& oc : t.outcomes) {
    if (oc.outcome != "accepted") return false;
  }
  World w = make_world(r.next_u64(), cfg.variant);
  AuthVector av = hn_generate_auth_vector(w.sn, w.ms.record.imsi);
  AuthOutcome out =
      sn_verify_response(w.sn, w.ms.record.imsi, av, ms_handle_auth_request(w.ms, av.rand, av.autn));
  auto* acc = std::get_if<outcome::Accepted>(&out);
  return acc && w.ms.keys && acc->keys == *w.ms.keys;
}

bool replay_case(Rng& r) {
  World w = make_world(r.next_u64(), any_variant(r));
  Imsi imsi = w.ms.record.imsi;
  AuthVector av = hn_generate_auth_vector(w.sn, imsi);
  AkaMessage res = ms_handle_auth_request(w.ms, av.rand, av.autn);
  if (!std::holds_alternative<outcome::Accepted>(sn_verify_response(w.sn, imsi, av, res))) {
    return false;
  }
  auto sqn = w.ms.record.sqn_ms;
  auto keys = w.ms.keys;
  // Challenge replayed to the MS.
  AkaMessage again = ms_handle_auth_request(w.ms, av.rand, av.autn);
  if (std::holds_alternative<msg::AuthResponse>(again)) return false;
  if (w.ms.record.sqn_ms != sqn || w.ms.keys != keys) return false;
  // Old response replayed to the SN against a fresh challenge.
  AuthVector av2 = hn_generate_auth_vector(w.sn, imsi);
  return std::holds_alternative<outcome::Rejected>(sn_verify_response(w.sn, imsi, av2, res));
}

bool resync_case(Rng& r) {
  auto variant = r.coin() ? ProtocolVariant::kOriginal : ProtocolVariant::kPkEncryptedError;
  World w = make_world(r.next_u64(), variant);
  std::uint64_t ahead = 1 + r.below(1u << 20);
  w.ms.record.sqn_ms = crypto::Sqn(ahead);
  Imsi imsi = w.ms.record.imsi;
  AuthVector av = hn_generate_auth_vector(w.sn, imsi);
  AkaMessage reply = ms_handle_auth_request(w.ms, av.rand, av.autn);
  if (!std::holds_alternative<outcome::Resynchronized>(sn_verify_response(w.sn, imsi, av, reply))) {
    return false;
  }
  if (w.sn.subscribers.at(imsi).sqn_hn.value() != ahead) return false;
  AuthVector next = hn_generate_auth_vector(w.sn, imsi);
  AuthOutcome o =
      sn_verify_response(w.sn, imsi, next, ms_handle_auth_request(w.ms, next.rand, next.autn));
  return std::holds_alternative<outcome::Accepted>(o) && w.ms.record.sqn_ms.value() == ahead + 1;
}

bool tmsi_case(Rng& r) {
  World w = make_world(r.next_u64(), any_variant(r));
  Imsi imsi = w.ms.record.imsi;
  AuthVector av = hn_generate_auth_vector(w.sn, imsi);
  AuthOutcome o =
      sn_verify_response(w.sn, imsi, av, ms_handle_auth_request(w.ms, av.rand, av.autn));
  auto* acc = std::get_if<outcome::Accepted>(&o);
  if (!acc) return false;
  Tmsi old = w.ms.tmsi;
  AkaMessage cmd = tmsi_reallocate(w.sn, imsi, acc->keys.ck);
  if (w.sn.lookup(old) != imsi) return false;
  AkaMessage done = ms_handle_tmsi_realloc(w.ms, std::get<msg::TmsiReallocCmd>(cmd), acc->keys.ck);
  if (!std::holds_alternative<msg::TmsiReallocComplete>(done)) return false;
  sn_complete_tmsi_realloc(w.sn, imsi);
  if (w.sn.lookup(w.ms.tmsi) != imsi) return false;
  return w.ms.tmsi == old || !w.sn.lookup(old).has_value();
}

AkaMessage random_message(Rng& rng) {
  switch (rng.below(12)) {
    case 0: return msg::LocationUpdate{Tmsi{rng.bytes<4>()}};
    case 1: return msg::IdentityRequest{};
    case 2: return msg::IdentityResponse{Imsi{rng.below(1'000'000'000'000'000ULL)}};
    case 3: {
      msg::AuthRequest m;
      rng.fill(m.rand.bytes);
      rng.fill(m.autn.concealed_sqn.bytes);
      rng.fill(m.autn.mac.bytes);
      return m;
    }
    case 4: {
      msg::AuthResponse m;
      rng.fill(m.res.bytes);
      return m;
    }
    case 5: return msg::MacFailure{};
    case 6: {
      msg::SynchFailure m;
      rng.fill(m.auts.concealed_sqn_ms.bytes);
      rng.fill(m.auts.mac_s.bytes);
      return m;
    }
    case 7: return msg::UnifiedFailure{};
    case 8: {
      msg::EncryptedFailure m;
      rng.fill(m.ciphertext);
      return m;
    }
    case 9: return msg::AuthReject{};
    case 10: {
      msg::TmsiReallocCmd m;
      rng.fill(m.ciphertext);
      return m;
    }
    default: return msg::TmsiReallocComplete{};
  }
}

bool codec_case(Rng& r) {
  AkaMessage m = random_message(r);
  Bytes wire = encode(m);
  auto back = decode(wire);
  if (!back || *back != m || encode(*back) != wire) return false;
  // Arbitrary bytes either fail to decode or decode canonically.
  Bytes junk(r.below(120));
  r.fill(junk);
  if (!junk.empty() && r.coin()) junk[0] = static_cast<std::uint8_t>(1 + r.below(12));
  auto j = decode(junk);
  return !j || encode(*j) == junk;
}

Outcome conformance() {
  Outcome o;
  struct Property {
    const char* name;
    std::function<bool(Rng&)> run;
  };
  const Property props[] = {{"honest-run completeness", honest_case},
                            {"replay rejection", replay_case},
                            {"SQN resynchronization round trip", resync_case},
                            {"TMSI reallocation round trip", tmsi_case},
                            {"codec round trip", codec_case}};
  std::uint64_t salt = 0;
  for (const auto& p : props) {
    Rng rng(derive_seed(kSeed, 100 + salt++));
    std::size_t ok = 0;
    for (std::size_t i = 0; i < kConformanceCases; ++i) {
      try {
        if (p.run(rng)) ++ok;
      } catch (const std::exception&) {
      }
    }
    o.expect(ok == kConformanceCases, std::string(p.name) + ": " + std::to_string(ok) + "/" +
                                          std::to_string(kConformanceCases));
  }
  return o;
}

// Criterion 7

std::string check_json(const std::string& name) {
  pc::Model m = pc::parse_model(read_file(kModels + name));
  return pc::check_result_to_json(m, pc::check_diff_equivalence(m, pc::CheckOptions{}));
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  using Producer = std::function<std::string()>;
  const std::pair<const char*, Producer> producers[] = {
      {"attack report",
       [] {
         return attacks::attack_report_to_json(
             attacks::run_linkability_attack(ProtocolVariant::kOriginal, 200, 7));
       }},
      {"game result",
       [] {
         games::GameSpec s;
         s.kind = games::GameKind::kAnonymity;
         s.trials = 200;
         s.seed = 7;
         return games::game_result_to_json(games::play(s), true);
       }},
      {"transcript",
       [] {
         netsim::SimConfig cfg;
         cfg.seed = 7;
         cfg.n_subscribers = 2;
         cfg.sessions = {0, 1, 0};
         return netsim::transcript_to_json(netsim::run_scenario(cfg));
       }},
      {"check result", [] { return check_json("aka_unlinkability.pv"); }},
  };
  for (const auto& [name, make] : producers) {
    o.expect(make() == make(), std::string(name) + ": identical on repeat");
  }
  auto jobs = [](unsigned j) {
    return attacks::attack_report_to_json(
        attacks::run_linkability_attack(ProtocolVariant::kPkEncryptedError, 200, 7, j));
  };
  o.expect(jobs(1) == jobs(4), "attack report: identical for 1 and 4 jobs");

  if (cli.empty()) {
    o.note("CLI reports not compared (no --cli given)");
    return o;
  }
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("umtslab_acceptance_" + std::to_string(getpid()));
  fs::create_directories(dir);
  const std::string src = UMTSLAB_SOURCE_DIR;
  const std::vector<std::string> commands = {
      "simulate " + src + "/scenarios/honest.json --seed 3",
      "attack --variant original --trials 300 --seed 3 --log",
      "game unlinkability --variant unified --trials 300 --seed 3 --log",
      "check " + src + "/models/aka_unlinkability.pv",
  };
  for (const auto& cmd : commands) {
    std::string report = (dir / "report.json").string();
    std::string bytes[2];
    bool ran = true;
    for (auto& b : bytes) {
      std::string line = "'" + cli + "' " + cmd + " --report '" + report + "' > /dev/null";
      int rc = std::system(line.c_str());
      if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) > 1) ran = false;
      b = ran ? read_file(report) : std::string();
    }
    o.expect(ran && !bytes[0].empty() && bytes[0] == bytes[1],
             "umts-lab " + cmd.substr(0, cmd.find(' ')) + ": byte-identical report");
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else if (a == "--known-failure" && i + 1 < argc) {
      known.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--cli PATH] [--known-failure N]...\n";
      return 2;
    }
  }

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"linkability attack reproduction", linkability_attack},
      {"fix efficacy", fix_efficacy},
      {"anonymity", anonymity},
      {"symbolic checker parity", checker_parity},
      {"counterexample soundness", soundness},
      {"protocol conformance", conformance},
      {"determinism", [&] { return determinism(cli); }},
  };

  int unexpected = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    Stopwatch sw;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << ": " << name << " ("
              << fmt(sw.seconds(), 2) << " s)";
    if (!o.pass && known.count(n)) std::cout << "  [known failure]";
    std::cout << "\n";
    for (const auto& line : o.notes) std::cout << "        " << line << "\n";
    std::cout.flush();
    if (!o.pass && !known.count(n)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
