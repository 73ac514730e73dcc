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

#include "umtslab/umtslab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "umtslab/attacks.hpp"
#include "umtslab/games.hpp"
#include "umtslab/netsim.hpp"
#include "umtslab/picalc/checker.hpp"
#include "umtslab/picalc/parser.hpp"

struct umts_model {
  umtslab::picalc::Model model;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

umts_status fail(umts_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Maps exceptions from the core onto status codes.
template <typename Fn>
umts_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const umtslab::picalc::ParseError& e) {
    return fail(UMTS_E_PARSE, e.what());
  } catch (const umtslab::picalc::UnsupportedTheory& e) {
    return fail(UMTS_E_UNSUPPORTED, e.what());
  } catch (const umtslab::netsim::StepBoundExceeded& e) {
    return fail(UMTS_E_STEP_BOUND, e.what());
  } catch (const umtslab::ConfigError& e) {
    return fail(UMTS_E_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UMTS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UMTS_E_INTERNAL, e.what());
  } catch (...) {
    return fail(UMTS_E_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

umtslab::ProtocolVariant variant_or_throw(const char* name) {
  if (!name) throw umtslab::ConfigError("variant is required");
  auto v = umtslab::parse_variant(name);
  if (!v) {
    throw umtslab::ConfigError(std::string("unknown variant '") + name +
                               "' (expected original, unified or pk)");
  }
  return *v;
}

}  // namespace

extern "C" {

const char* umts_version(void) { return "0.1.0"; }

const char* umts_last_error(void) { return g_last_error.c_str(); }

const char* umts_status_name(umts_status s) {
  switch (s) {
    case UMTS_OK: return "ok";
    case UMTS_E_INVALID_ARGUMENT: return "invalid argument";
    case UMTS_E_CONFIG: return "configuration error";
    case UMTS_E_PARSE: return "parse error";
    case UMTS_E_UNSUPPORTED: return "unsupported";
    case UMTS_E_STEP_BOUND: return "step bound exceeded";
    case UMTS_E_INTERNAL: return "internal error";
    case UMTS_E_IO: return "i/o error";
  }
  return "unknown status";
}

void umts_string_free(char* s) { std::free(s); }

umts_bounds umts_default_bounds(void) {
  umtslab::picalc::Bounds b;
  return umts_bounds{b.repl, b.depth, b.steps};
}

umts_status umts_simulate(const char* scenario_json, char** out_json) {
  if (!scenario_json || !out_json) return fail(UMTS_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    namespace ns = umtslab::netsim;
    ns::SimConfig cfg = ns::parse_scenario(scenario_json);
    ns::Transcript t = ns::run_scenario(cfg);
    json outcomes = json::array();
    for (const auto& o : t.outcomes) {
      outcomes.push_back(
          json{{"session", o.session}, {"subscriber", o.subscriber}, {"outcome", o.outcome}});
    }
    json imsis = json::array();
    for (const auto& i : t.imsis) imsis.push_back(i.value);
    json j{{"scenario", json::parse(ns::scenario_to_json(cfg))},
           {"imsis", imsis},
           {"transcript", json::parse(ns::transcript_to_json(t))},
           {"outcomes", outcomes}};
    *out_json = dup_string(j.dump());
    return UMTS_OK;
  });
}

umts_status umts_attack(const char* variant, uint64_t trials, uint64_t seed, unsigned jobs,
                        int with_log, char** out_json) {
  if (!out_json) return fail(UMTS_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (trials == 0) throw umtslab::ConfigError("trials must be at least 1");
    auto r = umtslab::attacks::run_linkability_attack(variant_or_throw(variant), trials, seed,
                                                      jobs);
    json j = json::parse(umtslab::attacks::attack_report_to_json(r));
    if (!with_log) j.erase("log");
    *out_json = dup_string(j.dump());
    return UMTS_OK;
  });
}

umts_status umts_game(const char* kind, const char* variant, const char* strategy,
                      uint64_t trials, uint64_t seed, int identity_requests, unsigned jobs,
                      int with_log, char** out_json) {
  if (!kind || !out_json) return fail(UMTS_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    namespace g = umtslab::games;
    auto k = g::parse_kind(kind);
    if (!k) {
      throw umtslab::ConfigError(std::string("unknown game '") + kind +
                                 "' (expected unlinkability or anonymity)");
    }
    g::GameSpec spec;
    spec.kind = *k;
    spec.variant = variant_or_throw(variant);
    spec.trials = trials;
    spec.seed = seed;
    if (strategy) spec.strategy = strategy;
    spec.identity_requests = identity_requests != 0;
    spec.jobs = jobs;
    *out_json = dup_string(g::game_result_to_json(g::play(spec), with_log != 0));
    return UMTS_OK;
  });
}

umts_status umts_model_parse(const char* source, umts_model** out) {
  if (!source || !out) return fail(UMTS_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto* m = new umts_model{umtslab::picalc::parse_model(source)};
    *out = m;
    return UMTS_OK;
  });
}

umts_status umts_model_pretty(const umts_model* model, char** out_text) {
  if (!model || !out_text) return fail(UMTS_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_text = dup_string(umtslab::picalc::pretty(model->model));
    return UMTS_OK;
  });
}

umts_status umts_model_check(umts_model* model, const umts_bounds* bounds, const char* mode,
                             umts_verdict* verdict, char** out_json) {
  if (!model || !out_json) return fail(UMTS_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    namespace pc = umtslab::picalc;
    pc::CheckOptions opts;
    if (bounds) {
      if (bounds->steps == 0) throw umtslab::ConfigError("steps must be at least 1");
      opts.bounds = pc::Bounds{bounds->repl, bounds->depth, bounds->steps};
    }
    if (mode) opts.mode = pc::parse_mode(mode);
    pc::CheckResult r = pc::check_diff_equivalence(model->model, opts);
    if (verdict) {
      switch (r.verdict) {
        case pc::Verdict::kEquivalent: *verdict = UMTS_EQUIVALENT; break;
        case pc::Verdict::kCounterexample: *verdict = UMTS_COUNTEREXAMPLE; break;
        case pc::Verdict::kBoundExhausted: *verdict = UMTS_BOUND_EXHAUSTED; break;
      }
    }
    *out_json = dup_string(pc::check_result_to_json(model->model, r));
    return UMTS_OK;
  });
}

void umts_model_destroy(umts_model* model) { delete model; }

}  // extern "C"
