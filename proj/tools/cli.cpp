#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "wuxu/attacks.hpp"
#include "wuxu/scheme.hpp"
#include "wuxu/serial.hpp"
#include "wuxu/simnet.hpp"

namespace wuxu::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Bad invocation or bad input file; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Identities double as card file names, so the CLI is stricter than the
// protocol about what they may contain.
bool filename_safe(std::string_view id) {
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '-' || c == '.';
  });
}

fs::path resolve(const fs::path& base, fs::path p) {
  return p.is_absolute() ? p : base / p;
}

ScenarioConfig::User parse_user(const json& j) {
  return {j.at("id").get<std::string>(), j.at("pw").get<std::string>()};
}

void validate_user(const ScenarioConfig::User& user, const char* role) {
  if (!valid_id(user.id) || !filename_safe(user.id)) {
    throw UsageError(std::string(role) + " id unusable: '" + user.id + "'");
  }
  if (user.pw.empty()) {
    throw UsageError(std::string(role) + " '" + user.id + "' has an empty password");
  }
}

fs::path server_path(const ScenarioConfig& cfg) { return cfg.output_path / "server.json"; }

fs::path card_path(const ScenarioConfig& cfg, const std::string& id) {
  return cfg.output_path / ("card_" + id + ".json");
}

fs::path default_trace_path(const ScenarioConfig& cfg) { return cfg.output_path / "trace.jsonl"; }

ServerState load_server(const ScenarioConfig& cfg) {
  return serial::server_from_json(serial::read_json_file(server_path(cfg)), cfg.alg);
}

SmartCard load_card(const ScenarioConfig& cfg, const std::string& id) {
  return serial::card_from_json(serial::read_json_file(card_path(cfg, id)));
}

const ScenarioConfig::User& find_user(const ScenarioConfig& cfg, const std::string& id) {
  for (const ScenarioConfig::User& u : cfg.users) {
    if (u.id == id) return u;
  }
  throw UsageError("unknown user: '" + id + "' (not in config users)");
}

// Clock increments for CLI scenarios; values are arbitrary but fixed so
// reruns replay tick-for-tick.
sim::SimClock make_clock() { return sim::SimClock(1, {3, 5, 7}); }

// --tamper grammar:
//   none
//   drop:request | drop:response
//   delay:request:N | delay:response:N
//   flip-bit:b1|c1|b2|c2:BIT
sim::TamperPolicy parse_tamper(const std::string& text) {
  sim::TamperPolicy policy;
  if (text == "none") {
    return policy;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) {
    parts.push_back(part);
  }
  auto need = [&](std::size_t n) {
    if (parts.size() != n) {
      throw UsageError("malformed tamper policy: '" + text + "'");
    }
  };
  auto leg = [&](const std::string& name) -> sim::TamperAction& {
    if (name == "request") return policy.user_to_server;
    if (name == "response") return policy.server_to_user;
    throw UsageError("tamper leg must be 'request' or 'response', got '" + name + "'");
  };
  auto number = [&](const std::string& s) -> std::uint64_t {
    try {
      std::size_t used = 0;
      std::uint64_t value = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return value;
    } catch (const std::exception&) {
      throw UsageError("tamper policy needs a number, got '" + s + "'");
    }
  };

  if (parts[0] == "drop") {
    need(2);
    leg(parts[1]) = sim::Drop{};
  } else if (parts[0] == "delay") {
    need(3);
    leg(parts[1]) = sim::Delay{number(parts[2])};
  } else if (parts[0] == "flip-bit") {
    need(3);
    sim::FlipBit flip;
    flip.bit = number(parts[2]);
    const std::string& target = parts[1];
    if (target == "b1" || target == "b2") {
      flip.field = sim::FlipBit::Field::kBlock;
    } else if (target == "c1" || target == "c2") {
      flip.field = sim::FlipBit::Field::kCiphertext;
    } else {
      throw UsageError("flip-bit target must be b1, c1, b2 or c2, got '" + target + "'");
    }
    if (target == "b1" || target == "c1") {
      policy.user_to_server = flip;
    } else {
      policy.server_to_user = flip;
    }
  } else {
    throw UsageError("unknown tamper action: '" + parts[0] + "'");
  }
  return policy;
}

// Session outcome for summaries and reports: the full exchange counts as
// accepted only when the card finished with a session key.
struct SessionSummary {
  std::uint64_t accepted = 0;
  std::map<std::string, std::uint64_t> rejected;  // reason (or "dropped") -> count
};

void classify(const sim::SessionResult& result, SessionSummary& summary) {
  if (result.card_session) {
    ++summary.accepted;
    return;
  }
  std::string reason = "dropped";
  if (result.login_delivered && !result.server.accepted()) {
    reason = std::string(to_string(result.server.reason));
  } else if (result.card && !result.card->accepted()) {
    reason = std::string(to_string(result.card->reason));
  }
  ++summary.rejected[reason];
}

json summary_to_json(const SessionSummary& summary, std::uint64_t sessions) {
  json rejected = json::object();
  for (const auto& [reason, count] : summary.rejected) {
    rejected[reason] = count;
  }
  return json{{"sessions", sessions}, {"accepted", summary.accepted}, {"rejected", rejected}};
}

// Derives h(x) the only way an outsider can: register once, read own card.
sim::AdversaryKnowledge make_adversary(ServerState& server, const ScenarioConfig& cfg,
                                       std::uint64_t seed) {
  RandomSource rng(seed);
  sim::AdversaryKnowledge knowledge;
  sim::adversary_register(server, cfg.adversary.id, cfg.adversary.pw, rng, knowledge);
  attacks::extract_master_digest(knowledge);
  return knowledge;
}

std::optional<std::pair<std::size_t, LoginMessage>> first_login(const sim::ChannelTrace& trace) {
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    if (const auto* login = std::get_if<LoginMessage>(&trace.events[i].payload)) {
      return std::make_pair(i, *login);
    }
  }
  return std::nullopt;
}

int finish_verdict(const json& verdict, bool success, const std::string& expect,
                   const std::optional<fs::path>& out_path, std::ostream& out) {
  out << verdict.dump(2) << "\n";
  if (out_path) {
    serial::write_json_file(*out_path, verdict);
  }
  return success == (expect == "success") ? kExitOk : kExitVerdict;
}

struct AttackArgs {
  std::string kind;
  std::string victim;  // empty -> first config user
  std::string mode = "wrong-password";
  std::uint64_t n = 100;
  std::string expect = "success";
  std::optional<fs::path> trace_path;
  std::optional<fs::path> dict_path;
  std::optional<fs::path> out_path;
};

int cmd_register(const ScenarioConfig& cfg, std::uint64_t seed, bool allow_reregister,
                 std::ostream& out) {
  fs::create_directories(cfg.output_path);
  RandomSource rng(seed);
  ServerState server(rng.bytes(kBlockWidth), cfg.freshness_window, cfg.alg);

  std::set<std::string> seen;
  json ids = json::array();
  for (const ScenarioConfig::User& user : cfg.users) {
    if (!seen.insert(user.id).second && !allow_reregister) {
      throw UsageError("duplicate user id '" + user.id +
                       "' (pass --allow-reregister to bump its counter)");
    }
    RegistrationRequest request = register_request(user.id, user.pw, cfg.alg, rng);
    CardContents contents = server.register_user(request.message);
    SmartCard card = finalize_card(contents, request.credentials.r);
    serial::write_json_file(card_path(cfg, user.id), serial::card_to_json(card));
    ids.push_back(user.id);
  }
  serial::write_json_file(server_path(cfg), serial::server_to_json(server));

  out << json{{"cards", ids}, {"registry_size", server.registry().size()}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_session(const ScenarioConfig& cfg, const std::vector<std::string>& user_ids,
                std::uint64_t n, const std::string& tamper,
                const std::optional<fs::path>& out_path, std::ostream& out) {
  sim::TamperPolicy policy = parse_tamper(tamper);
  ServerState server = load_server(cfg);

  std::vector<sim::UserAgent> agents;
  for (const std::string& id : user_ids) {
    const ScenarioConfig::User& user = find_user(cfg, id);
    agents.push_back(sim::UserAgent{load_card(cfg, id), user.id, user.pw});
  }

  sim::SimClock clock = make_clock();
  sim::SimChannel channel;
  SessionSummary summary;
  for (std::uint64_t i = 0; i < n; ++i) {
    const sim::UserAgent& agent = agents[i % agents.size()];
    classify(sim::run_session(agent, server, channel, clock, policy), summary);
  }

  serial::write_trace(out_path.value_or(default_trace_path(cfg)), channel.trace());
  out << summary_to_json(summary, n).dump(2) << "\n";
  return kExitOk;
}

int cmd_attack_pwguess(const ScenarioConfig& cfg, std::uint64_t seed, const AttackArgs& args,
                       std::ostream& out) {
  fs::path dict_path = args.dict_path.value_or(cfg.dictionary_path);
  if (dict_path.empty()) {
    throw UsageError("pwguess needs a dictionary: pass --dict or set dictionary_path");
  }
  attacks::Dictionary dictionary = attacks::Dictionary::load(dict_path);

  const std::string victim = args.victim.empty() ? cfg.users.front().id : args.victim;
  SmartCard victim_card = load_card(cfg, victim);
  sim::ChannelTrace trace = serial::read_trace(args.trace_path.value_or(default_trace_path(cfg)));
  auto login = first_login(trace);
  if (!login) {
    throw UsageError("trace contains no login message to attack");
  }

  ServerState server = load_server(cfg);
  sim::AdversaryKnowledge knowledge = make_adversary(server, cfg, seed);
  sim::eavesdrop(trace, knowledge);
  sim::extract_card(victim_card, victim, knowledge);

  attacks::AttackVerdict verdict;
  try {
    verdict = attacks::guess_password(knowledge, victim_card, login->second, dictionary);
  } catch (const attacks::AttackError& e) {
    verdict.kind = attacks::AttackKind::kPwGuess;
    verdict.success = false;
    verdict.error = e.what();
  }
  return finish_verdict(serial::verdict_to_json(verdict), verdict.success, args.expect,
                        args.out_path, out);
}

int cmd_attack_deanon(const ScenarioConfig& cfg, std::uint64_t seed, const AttackArgs& args,
                      std::ostream& out) {
  sim::ChannelTrace trace = serial::read_trace(args.trace_path.value_or(default_trace_path(cfg)));
  ServerState server = load_server(cfg);
  sim::AdversaryKnowledge knowledge = make_adversary(server, cfg, seed);
  sim::eavesdrop(trace, knowledge);

  json events = json::array();
  std::set<std::string> distinct;
  std::uint64_t work = 0;
  bool all_ok = true;
  bool any = false;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto* login = std::get_if<LoginMessage>(&trace.events[i].payload);
    if (login == nullptr) continue;
    attacks::AttackVerdict v = attacks::deanonymize(knowledge, *login);
    json entry{{"index", i},
               {"session_id", trace.events[i].session_id},
               {"success", v.success}};
    if (v.recovered) {
      std::string safe = serial::json_safe_string(*v.recovered);
      entry["recovered"] = safe;
      distinct.insert(std::move(safe));
    }
    if (v.error) {
      entry["error"] = serial::json_safe_string(*v.error);
    }
    events.push_back(entry);
    work += v.work;
    all_ok = all_ok && v.success;
    any = true;
  }

  json verdict{{"kind", "deanonymize"}, {"success", any && all_ok}, {"work", work},
               {"events", events}};
  if (!any) {
    verdict["error"] = "no login events in trace";
  } else if (all_ok && distinct.size() == 1) {
    verdict["recovered"] = *distinct.begin();
  }
  return finish_verdict(verdict, verdict["success"].get<bool>(), args.expect, args.out_path, out);
}

int cmd_attack_wronginput(const ScenarioConfig& cfg, const AttackArgs& args, std::ostream& out) {
  attacks::InputMode mode = attacks::input_mode_from_name(args.mode);
  const std::string victim = args.victim.empty() ? cfg.users.front().id : args.victim;
  const ScenarioConfig::User& user = find_user(cfg, victim);
  ServerState server = load_server(cfg);
  sim::UserAgent agent{load_card(cfg, victim), user.id, user.pw};

  sim::SimClock clock = make_clock();
  sim::SimChannel channel;
  attacks::AttackVerdict verdict =
      attacks::wrong_input_scenario(agent, server, channel, clock, mode);
  return finish_verdict(serial::verdict_to_json(verdict), verdict.success, args.expect,
                        args.out_path, out);
}

int cmd_attack_flood(const ScenarioConfig& cfg, const AttackArgs& args, std::ostream& out) {
  attacks::InputMode mode = attacks::input_mode_from_name(args.mode);
  const std::string victim = args.victim.empty() ? cfg.users.front().id : args.victim;
  const ScenarioConfig::User& user = find_user(cfg, victim);
  ServerState server = load_server(cfg);
  sim::UserAgent agent{load_card(cfg, victim), user.id, user.pw};

  sim::SimClock clock = make_clock();
  sim::SimChannel channel;
  attacks::FloodReport report =
      attacks::flood_cost_report(agent, server, channel, clock, args.n, mode);
  json j = serial::flood_to_json(report);
  out << j.dump(2) << "\n";
  if (args.out_path) {
    serial::write_json_file(*args.out_path, j);
  }
  return kExitOk;
}

int cmd_attack(const ScenarioConfig& cfg, std::uint64_t seed, const AttackArgs& args,
               std::ostream& out) {
  if (args.kind == "pwguess") return cmd_attack_pwguess(cfg, seed, args, out);
  if (args.kind == "deanon") return cmd_attack_deanon(cfg, seed, args, out);
  if (args.kind == "wronginput") return cmd_attack_wronginput(cfg, args, out);
  if (args.kind == "flood") return cmd_attack_flood(cfg, args, out);
  throw UsageError("unknown attack kind: '" + args.kind + "'");
}

int cmd_report(const ScenarioConfig& cfg, std::uint64_t seed,
               const std::optional<fs::path>& trace_arg,
               const std::optional<fs::path>& out_path, std::ostream& out) {
  sim::ChannelTrace trace = serial::read_trace(trace_arg.value_or(default_trace_path(cfg)));
  ServerState server = load_server(cfg);
  sim::AdversaryKnowledge knowledge = make_adversary(server, cfg, seed);

  // Per-session outcome, in order of first appearance.
  struct Row {
    std::uint64_t session_id = 0;
    std::uint64_t events = 0;
    std::string outcome = "incomplete";
    std::string reason;
  };
  std::vector<Row> rows;
  std::map<std::uint64_t, std::size_t> row_of;
  std::uint64_t last_tick = 0;
  for (const sim::TraceEvent& e : trace.events) {
    auto [it, fresh] = row_of.try_emplace(e.session_id, rows.size());
    if (fresh) {
      rows.push_back(Row{e.session_id, 0, "incomplete", ""});
    }
    Row& row = rows[it->second];
    ++row.events;
    last_tick = std::max(last_tick, e.tick);
    if (e.direction == sim::Direction::kServerToUser &&
        e.outcome == sim::EventOutcome::kAccepted) {
      row.outcome = "accepted";
      row.reason.clear();
    } else if (e.outcome == sim::EventOutcome::kRejected && row.outcome != "accepted") {
      row.outcome = "rejected";
      row.reason = std::string(to_string(e.reason));
    }
  }

  // Linkability: every login event de-anonymized with the derived h(x).
  std::map<std::string, std::vector<std::uint64_t>> groups;
  std::uint64_t login_events = 0;
  std::uint64_t replayable = 0;
  for (const sim::TraceEvent& e : trace.events) {
    const auto* login = std::get_if<LoginMessage>(&e.payload);
    if (login == nullptr) continue;
    ++login_events;
    if (last_tick - e.tick <= server.freshness_window()) {
      ++replayable;
    }
    attacks::AttackVerdict v = attacks::deanonymize(knowledge, *login);
    groups[v.recovered ? serial::json_safe_string(*v.recovered) : "<unknown>"].push_back(
        e.session_id);
  }

  json sessions = json::array();
  for (const Row& row : rows) {
    json entry{{"session_id", row.session_id}, {"events", row.events}, {"outcome", row.outcome}};
    if (!row.reason.empty()) {
      entry["reason"] = row.reason;
    }
    sessions.push_back(entry);
  }
  json groups_json = json::object();
  for (const auto& [id, ids] : groups) {
    groups_json[id] = ids;
  }
  json report{
      {"sessions", sessions},
      {"linkability_groups", groups_json},
      {"replay_window",
       json{{"freshness_window", server.freshness_window()},
            {"login_events", login_events},
            {"replayable_at_trace_end", replayable}}},
  };
  serial::write_json_file(out_path.value_or(cfg.output_path / "report.json"), report);

  // Human-readable view of the same data.
  out << std::left << std::setw(12) << "session" << std::setw(12) << "events" << std::setw(12)
      << "outcome" << "reason" << "\n";
  for (const Row& row : rows) {
    out << std::left << std::setw(12) << row.session_id << std::setw(12) << row.events
        << std::setw(12) << row.outcome << (row.reason.empty() ? "-" : row.reason) << "\n";
  }
  out << "\nlinkability groups (" << groups.size() << "):\n";
  for (const auto& [id, ids] : groups) {
    out << "  " << id << ":";
    for (std::uint64_t sid : ids) {
      out << " " << sid;
    }
    out << "\n";
  }
  out << "\nreplay window: " << replayable << "/" << login_events
      << " login messages still fresh at trace end (window " << server.freshness_window()
      << " ticks)\n";
  return kExitOk;
}

}  // namespace

ScenarioConfig load_config(const fs::path& path) {
  json j;
  try {
    j = serial::read_json_file(path);
  } catch (const json::exception& e) {
    throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
  }

  ScenarioConfig cfg;
  try {
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("hash_algorithm")) {
      cfg.alg = hash_alg_from_name(j.at("hash_algorithm").get<std::string>());
    }
    if (j.contains("freshness_window")) {
      cfg.freshness_window = j.at("freshness_window").get<std::uint64_t>();
    }
    for (const json& u : j.at("users")) {
      cfg.users.push_back(parse_user(u));
    }
    cfg.adversary = j.contains("adversary") ? parse_user(j.at("adversary"))
                                            : ScenarioConfig::User{"adv-e", "adv-e-pass"};
    if (j.contains("dictionary_path")) {
      cfg.dictionary_path = j.at("dictionary_path").get<std::string>();
    }
    cfg.output_path = j.contains("output_path") ? j.at("output_path").get<std::string>() : "out";
  } catch (const json::exception& e) {
    throw UsageError("config " + path.string() + " is malformed: " + e.what());
  }

  if (cfg.users.empty()) {
    throw UsageError("config needs at least one user");
  }
  for (const ScenarioConfig::User& user : cfg.users) {
    validate_user(user, "user");
  }
  validate_user(cfg.adversary, "adversary");
  for (const ScenarioConfig::User& user : cfg.users) {
    if (user.id == cfg.adversary.id) {
      throw UsageError("adversary id '" + cfg.adversary.id + "' collides with a user id");
    }
  }

  const fs::path base = fs::absolute(path).parent_path();
  if (!cfg.dictionary_path.empty()) {
    cfg.dictionary_path = resolve(base, cfg.dictionary_path);
  }
  cfg.output_path = resolve(base, cfg.output_path);
  return cfg;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smart-card authentication scheme simulator and attack harness"};
  app.name("wuxu-cli");
  app.require_subcommand(1);
  app.fallthrough(true);  // lets --config/--seed appear after the subcommand

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  app.add_option("--config", config_path, "Scenario config JSON")->required();
  app.add_option("--seed", seed_override, "Override the config seed");

  auto* reg = app.add_subcommand("register", "Provision the server DB and one card per user");
  bool allow_reregister = false;
  reg->add_flag("--allow-reregister", allow_reregister,
                "Permit duplicate user ids; each repeat bumps the registration counter");

  auto* ses = app.add_subcommand("session", "Run honest login sessions and record the trace");
  std::vector<std::string> session_users;
  std::uint64_t session_n = 1;
  std::string tamper = "none";
  std::string session_out;
  ses->add_option("--user", session_users, "User id (repeatable; sessions cycle through)")
      ->required();
  ses->add_option("--n", session_n, "Number of sessions");
  ses->add_option("--tamper", tamper,
                  "In-transit tampering: none | drop:LEG | delay:LEG:N | flip-bit:TARGET:BIT");
  ses->add_option("--out", session_out, "Trace file path (default <output>/trace.jsonl)");

  auto* atk = app.add_subcommand("attack", "Run an attack and emit its verdict");
  AttackArgs attack_args;
  std::string attack_trace;
  std::string attack_dict;
  std::string attack_out;
  atk->add_option("kind", attack_args.kind, "pwguess | deanon | wronginput | flood")
      ->required()
      ->check(CLI::IsMember({"pwguess", "deanon", "wronginput", "flood"}));
  atk->add_option("--victim", attack_args.victim, "Target user id (default: first config user)");
  atk->add_option("--mode", attack_args.mode,
                  "Input corruption for wronginput/flood: wrong-password | wrong-identity | "
                  "control");
  atk->add_option("--n", attack_args.n, "Sessions for flood");
  atk->add_option("--trace", attack_trace, "Trace file (default <output>/trace.jsonl)");
  atk->add_option("--dict", attack_dict, "Dictionary file for pwguess");
  atk->add_option("--expect", attack_args.expect, "Verdict expectation (exit 1 on mismatch)")
      ->check(CLI::IsMember({"success", "failure"}));
  atk->add_option("--out", attack_out, "Verdict file path (default <output>/verdict.json)");

  auto* rep = app.add_subcommand("report", "Summarize a recorded trace");
  std::string report_trace;
  std::string report_out;
  rep->add_option("trace", report_trace, "Trace file (default <output>/trace.jsonl)");
  rep->add_option("--out", report_out, "Report JSON path (default <output>/report.json)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    ScenarioConfig cfg = load_config(config_path);
    std::uint64_t seed = seed_override.value_or(cfg.seed);

    if (reg->parsed()) {
      return cmd_register(cfg, seed, allow_reregister, out);
    }
    if (ses->parsed()) {
      std::optional<fs::path> out_path;
      if (!session_out.empty()) out_path = fs::path(session_out);
      return cmd_session(cfg, session_users, session_n, tamper, out_path, out);
    }
    if (atk->parsed()) {
      if (!attack_trace.empty()) attack_args.trace_path = fs::path(attack_trace);
      if (!attack_dict.empty()) attack_args.dict_path = fs::path(attack_dict);
      attack_args.out_path = attack_out.empty()
                                 ? std::optional<fs::path>(cfg.output_path / "verdict.json")
                                 : std::optional<fs::path>(fs::path(attack_out));
      return cmd_attack(cfg, seed, attack_args, out);
    }
    if (rep->parsed()) {
      std::optional<fs::path> trace_path;
      if (!report_trace.empty()) trace_path = fs::path(report_trace);
      std::optional<fs::path> out_path;
      if (!report_out.empty()) out_path = fs::path(report_out);
      return cmd_report(cfg, seed, trace_path, out_path, out);
    }
    throw UsageError("no subcommand given");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace wuxu::cli
