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

#include "umtslab/netsim.hpp"

#include <json.hpp>

#include <set>

namespace umtslab::netsim {

using nlohmann::json;

std::string_view role_name(Role r) {
  switch (r) {
    case Role::kMs: return "ms";
    case Role::kSn: return "sn";
    case Role::kAdversary: return "adversary";
  }
  return "ms";
}

std::string_view action_name(ActionKind a) {
  switch (a) {
    case ActionKind::kDeliver: return "deliver";
    case ActionKind::kDrop: return "drop";
    case ActionKind::kInject: return "inject";
    case ActionKind::kReplay: return "replay";
    case ActionKind::kEavesdrop: return "eavesdrop";
  }
  return "deliver";
}

namespace {

constexpr std::uint64_t kImsiBase = 101'000'000'000'000ULL;

struct InFlight {
  Bytes bytes;
  Role sender;
  Role receiver;
  std::size_t subscriber;
};

// Serving-network side of one session.
struct SnSession {
  std::optional<Imsi> imsi;
  std::optional<AuthVector> av;
  bool awaiting_identity = false;
  bool resynchronized = false;
  bool awaiting_tmsi = false;
};

class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg) : cfg_(cfg) {
    validate();
    Rng master(cfg.seed);
    sn_.variant = cfg.variant;
    sn_.hn_keys = crypto::generate_keypair(master);
    sn_.rng = Rng(derive_seed(cfg.seed, 0));

    std::set<Imsi> used;
    for (std::size_t i = 0; i < cfg.n_subscribers; ++i) {
      Imsi imsi;
      if (!cfg.imsis.empty()) {
        imsi = cfg.imsis[i];
      } else {
        do {
          imsi = Imsi{kImsiBase + master.below(100'000'000'000ULL)};
        } while (used.contains(imsi));
      }
      used.insert(imsi);
      SubscriberRecord rec = provision_subscriber(master, imsi);
      Tmsi tmsi = fresh_tmsi(sn_);
      sn_.enrol(rec, tmsi);

      MsState ms;
      ms.record = rec;
      ms.tmsi = tmsi;
      ms.variant = cfg.variant;
      ms.pk_hn = sn_.hn_keys.pk;
      ms.identity_procedure_enabled = cfg.identity_requests;
      ms.rng = Rng(derive_seed(cfg.seed, 1 + i));
      ms_.push_back(std::move(ms));
      transcript_.imsis.push_back(imsi);
    }

    if (cfg.sessions.empty()) {
      for (std::size_t i = 0; i < cfg.n_subscribers; ++i) sessions_.push_back(i);
    } else {
      sessions_ = cfg.sessions;
    }
  }

  Transcript run() {
    std::optional<InFlight> in_flight;
    while (true) {
      if (in_flight) {
        AdversaryAction a = next_action();
        record(*in_flight, a.kind);
        switch (a.kind) {
          case ActionKind::kDeliver:
          case ActionKind::kEavesdrop:
            in_flight = dispatch(*in_flight);
            break;
          case ActionKind::kDrop:
            in_flight.reset();
            break;
          case ActionKind::kInject:
          case ActionKind::kReplay:
            in_flight = adversary_send(a);
            break;
        }
        continue;
      }
      if (script_pos_ < cfg_.script.size()) {
        const AdversaryAction& a = cfg_.script[script_pos_];
        if (a.kind == ActionKind::kInject || a.kind == ActionKind::kReplay) {
          ++script_pos_;
          in_flight = adversary_send(a);
          continue;
        }
      }
      if (next_session_ < sessions_.size()) {
        start_session();
        const MsState& ms = ms_[current_ms_];
        in_flight = InFlight{encode(msg::LocationUpdate{ms.tmsi}), Role::kMs, Role::kSn,
                             current_ms_};
        continue;
      }
      break;
    }
    return std::move(transcript_);
  }

 private:
  void validate() const {
    if (cfg_.n_subscribers == 0) throw ConfigError("n_subscribers must be at least 1");
    if (!cfg_.imsis.empty()) {
      if (cfg_.imsis.size() != cfg_.n_subscribers) {
        throw ConfigError("imsis must list one IMSI per subscriber");
      }
      std::set<Imsi> distinct(cfg_.imsis.begin(), cfg_.imsis.end());
      if (distinct.size() != cfg_.imsis.size()) throw ConfigError("imsis must be distinct");
    }
    for (std::size_t s : cfg_.sessions) {
      if (s >= cfg_.n_subscribers) throw ConfigError("session refers to unknown subscriber");
    }
    for (const auto& a : cfg_.script) {
      if ((a.kind == ActionKind::kInject || a.kind == ActionKind::kReplay) &&
          a.to.role == Role::kAdversary) {
        throw ConfigError("adversary cannot send to itself");
      }
      if (a.to.ms && *a.to.ms >= cfg_.n_subscribers) {
        throw ConfigError("action targets unknown subscriber");
      }
    }
  }

  AdversaryAction next_action() {
    if (script_pos_ < cfg_.script.size()) return cfg_.script[script_pos_++];
    return AdversaryAction::deliver();
  }

  std::size_t record(const InFlight& m, ActionKind action) {
    if (transcript_.events.size() >= cfg_.step_bound) throw StepBoundExceeded(cfg_.step_bound);
    std::size_t step = transcript_.events.size();
    transcript_.events.push_back(
        Event{step, m.sender, m.receiver, session_index(), m.subscriber, m.bytes, action});
    return step;
  }

  std::size_t session_index() const { return next_session_ == 0 ? 0 : next_session_ - 1; }

  std::optional<InFlight> adversary_send(const AdversaryAction& a) {
    Bytes bytes;
    if (a.kind == ActionKind::kInject) {
      bytes = a.bytes;
    } else {
      if (a.step >= transcript_.events.size()) {
        throw ConfigError("replay refers to step " + std::to_string(a.step) +
                          " which has not happened");
      }
      bytes = transcript_.events[a.step].bytes;
    }
    std::size_t ms = a.to.ms.value_or(current_ms_);
    InFlight injected{std::move(bytes), Role::kAdversary, a.to.role, ms};
    record(injected, ActionKind::kDeliver);
    return dispatch(injected);
  }

  std::optional<InFlight> dispatch(const InFlight& m) {
    if (m.receiver == Role::kMs) {
      auto reply = ms_receive(ms_[m.subscriber], m.bytes);
      if (!reply) return std::nullopt;
      return InFlight{encode(*reply), Role::kMs, Role::kSn, m.subscriber};
    }
    auto reply = sn_receive(m.bytes);
    if (!reply) return std::nullopt;
    return InFlight{encode(*reply), Role::kSn, Role::kMs, current_ms_};
  }

  void start_session() {
    if (session_.imsi && session_.awaiting_tmsi) sn_abandon_tmsi_realloc(sn_, *session_.imsi);
    session_ = SnSession{};
    current_ms_ = sessions_[next_session_++];
  }

  void log_outcome(const AuthOutcome& o) {
    transcript_.outcomes.push_back(
        SessionOutcome{session_index(), current_ms_, std::string(outcome_name(o))});
  }

  std::optional<AkaMessage> challenge() {
    session_.av = hn_generate_auth_vector(sn_, *session_.imsi);
    return msg::AuthRequest{session_.av->rand, session_.av->autn};
  }

  std::optional<AkaMessage> sn_receive(ByteView bytes) {
    auto m = decode(bytes);
    if (!m) return std::nullopt;
    if (const auto* lu = std::get_if<msg::LocationUpdate>(&*m)) {
      if (session_.imsi && session_.awaiting_tmsi) sn_abandon_tmsi_realloc(sn_, *session_.imsi);
      session_ = SnSession{};
      session_.imsi = sn_.lookup(lu->tmsi);
      if (session_.imsi) return challenge();
      if (!cfg_.identity_requests) return std::nullopt;
      session_.awaiting_identity = true;
      return msg::IdentityRequest{};
    }
    if (const auto* id = std::get_if<msg::IdentityResponse>(&*m)) {
      if (!session_.awaiting_identity || !sn_.subscribers.contains(id->imsi)) {
        return std::nullopt;
      }
      session_.awaiting_identity = false;
      session_.imsi = id->imsi;
      return challenge();
    }
    if (std::holds_alternative<msg::TmsiReallocComplete>(*m)) {
      if (!session_.awaiting_tmsi) return std::nullopt;
      sn_complete_tmsi_realloc(sn_, *session_.imsi);
      session_.awaiting_tmsi = false;
      return std::nullopt;
    }
    switch (tag_of(*m)) {
      case MessageTag::kAuthResponse:
      case MessageTag::kMacFailure:
      case MessageTag::kSynchFailure:
      case MessageTag::kUnifiedFailure:
      case MessageTag::kEncryptedFailure:
        break;
      default:
        return std::nullopt;
    }
    if (!session_.av) return std::nullopt;
    AuthVector av = *session_.av;
    session_.av.reset();
    AuthOutcome o = sn_verify_response(sn_, *session_.imsi, av, *m);
    if (std::holds_alternative<outcome::Resynchronized>(o) && session_.resynchronized) {
      o = outcome::Rejected{};
    }
    log_outcome(o);
    if (const auto* acc = std::get_if<outcome::Accepted>(&o)) {
      session_.awaiting_tmsi = true;
      return tmsi_reallocate(sn_, *session_.imsi, acc->keys.ck);
    }
    if (std::holds_alternative<outcome::Resynchronized>(o)) {
      session_.resynchronized = true;
      return challenge();
    }
    return msg::AuthReject{};
  }

  const SimConfig& cfg_;
  SnState sn_;
  std::vector<MsState> ms_;
  std::vector<std::size_t> sessions_;
  std::size_t next_session_ = 0;
  std::size_t current_ms_ = 0;
  std::size_t script_pos_ = 0;
  SnSession session_;
  Transcript transcript_;
};

Role parse_role(const std::string& s) {
  if (s == "ms") return Role::kMs;
  if (s == "sn") return Role::kSn;
  throw ConfigError("unknown target '" + s + "'");
}

AdversaryAction parse_action(const json& j) {
  if (!j.is_object() || !j.contains("action") || !j["action"].is_string()) {
    throw ConfigError("script entries need an 'action' string");
  }
  std::string name = j["action"].get<std::string>();
  json args = j.value("args", json::object());
  if (!args.is_object()) throw ConfigError("'args' must be an object");
  Target to;
  if (args.contains("to")) to.role = parse_role(args["to"].get<std::string>());
  if (args.contains("ms")) to.ms = args["ms"].get<std::size_t>();
  if (name == "deliver") return AdversaryAction::deliver();
  if (name == "drop") return AdversaryAction::drop();
  if (name == "eavesdrop") return AdversaryAction::eavesdrop();
  if (name == "inject") {
    if (!args.contains("bytes")) throw ConfigError("inject needs args.bytes");
    return AdversaryAction::inject(from_hex(args["bytes"].get<std::string>()), to);
  }
  if (name == "replay") {
    if (!args.contains("step")) throw ConfigError("replay needs args.step");
    return AdversaryAction::replay(args["step"].get<std::size_t>(), to);
  }
  throw ConfigError("unknown action '" + name + "'");
}

json action_to_json(const AdversaryAction& a) {
  json j{{"action", action_name(a.kind)}};
  if (a.kind == ActionKind::kInject || a.kind == ActionKind::kReplay) {
    json args{{"to", role_name(a.to.role)}};
    if (a.to.ms) args["ms"] = *a.to.ms;
    if (a.kind == ActionKind::kInject) args["bytes"] = to_hex(a.bytes);
    if (a.kind == ActionKind::kReplay) args["step"] = a.step;
    j["args"] = args;
  }
  return j;
}

json event_to_json(const Event& e) {
  auto m = decode(e.bytes);
  return json{{"step", e.step},
              {"direction", e.receiver == Role::kSn ? "uplink" : "downlink"},
              {"sender", role_name(e.sender)},
              {"receiver", role_name(e.receiver)},
              {"session", e.session},
              {"subscriber", e.subscriber},
              {"message", m ? message_name(tag_of(*m)) : "MALFORMED"},
              {"bytes", to_hex(e.bytes)},
              {"action", action_name(e.action)}};
}

}  // namespace

Transcript run_scenario(const SimConfig& cfg) {
  return Simulation(cfg).run();
}

std::vector<Bytes> adversary_view(const Transcript& t) {
  std::vector<Bytes> view;
  view.reserve(t.events.size());
  for (const auto& e : t.events) view.push_back(e.bytes);
  return view;
}

SimConfig parse_scenario(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  SimConfig cfg;
  try {
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("variant")) {
      auto v = parse_variant(j["variant"].get<std::string>());
      if (!v) throw ConfigError("unknown variant '" + j["variant"].get<std::string>() + "'");
      cfg.variant = *v;
    }
    cfg.n_subscribers = j.value("n_subscribers", cfg.n_subscribers);
    if (j.contains("sessions")) cfg.sessions = j["sessions"].get<std::vector<std::size_t>>();
    if (j.contains("imsis")) {
      for (auto v : j["imsis"].get<std::vector<std::uint64_t>>()) cfg.imsis.push_back(Imsi{v});
    }
    cfg.identity_requests = j.value("identity_requests", cfg.identity_requests);
    cfg.step_bound = j.value("step_bound", cfg.step_bound);
    if (j.contains("script")) {
      if (!j["script"].is_array()) throw ConfigError("'script' must be an array");
      for (const auto& a : j["script"]) cfg.script.push_back(parse_action(a));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
  return cfg;
}

std::string scenario_to_json(const SimConfig& cfg) {
  json script = json::array();
  for (const auto& a : cfg.script) script.push_back(action_to_json(a));
  json j{{"seed", cfg.seed},
         {"variant", variant_name(cfg.variant)},
         {"n_subscribers", cfg.n_subscribers},
         {"sessions", cfg.sessions},
         {"identity_requests", cfg.identity_requests},
         {"step_bound", cfg.step_bound},
         {"script", script}};
  if (!cfg.imsis.empty()) {
    json imsis = json::array();
    for (const auto& i : cfg.imsis) imsis.push_back(i.value);
    j["imsis"] = imsis;
  }
  return j.dump();
}

std::string transcript_to_json(const Transcript& t) {
  json events = json::array();
  for (const auto& e : t.events) events.push_back(event_to_json(e));
  return events.dump();
}

std::string transcript_to_jsonl(const Transcript& t) {
  std::string out;
  for (const auto& e : t.events) {
    out += event_to_json(e).dump();
    out += '\n';
  }
  return out;
}

}  // namespace umtslab::netsim
