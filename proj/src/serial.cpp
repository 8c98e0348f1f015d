#include "wuxu/serial.hpp"

#include <fstream>
#include <sstream>

namespace wuxu::serial {

json server_to_json(const ServerState& server) {
  json registry = json::array();
  for (const auto& [id, n] : server.registry()) {
    registry.push_back(json{{"id", id}, {"N", n}});
  }
  return json{
      {"master_key_hex", to_hex(server.master_key())},
      {"registry", registry},
      {"freshness_window", server.freshness_window()},
  };
}

ServerState server_from_json(const json& j, HashAlg alg) {
  ServerState server(from_hex(j.at("master_key_hex").get<std::string>()),
                     j.at("freshness_window").get<std::uint64_t>(), alg);
  for (const json& entry : j.at("registry")) {
    server.restore_registry_entry(entry.at("id").get<std::string>(),
                                  entry.at("N").get<std::uint64_t>());
  }
  return server;
}

json card_to_json(const SmartCard& card) {
  return json{
      {"L_hex", card.l.to_hex()},
      {"e_hex", card.e.to_hex()},
      {"r_hex", card.r.to_hex()},
      {"hash_alg", std::string(hash_alg_name(card.alg))},
  };
}

SmartCard card_from_json(const json& j) {
  return SmartCard{
      Block::from_hex(j.at("L_hex").get<std::string>()),
      Block::from_hex(j.at("e_hex").get<std::string>()),
      Block::from_hex(j.at("r_hex").get<std::string>()),
      hash_alg_from_name(j.at("hash_alg").get<std::string>()),
  };
}

json login_to_json(const LoginMessage& m) {
  return json{{"b1_hex", m.b1.to_hex()}, {"c1_hex", m.c1.to_hex()}};
}

LoginMessage login_from_json(const json& j) {
  return LoginMessage{Block::from_hex(j.at("b1_hex").get<std::string>()),
                      Ciphertext::from_hex(j.at("c1_hex").get<std::string>())};
}

json response_to_json(const ServerResponse& m) {
  return json{{"b2_hex", m.b2.to_hex()}, {"c2_hex", m.c2.to_hex()}};
}

ServerResponse response_from_json(const json& j) {
  return ServerResponse{Block::from_hex(j.at("b2_hex").get<std::string>()),
                        Ciphertext::from_hex(j.at("c2_hex").get<std::string>())};
}

namespace {

bool valid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const unsigned char*>(s.data());
  const std::size_t n = s.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = p[i];
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t extra;
    std::uint32_t cp, min;
    if ((c & 0xe0) == 0xc0) {
      extra = 1, cp = c & 0x1f, min = 0x80;
    } else if ((c & 0xf0) == 0xe0) {
      extra = 2, cp = c & 0x0f, min = 0x800;
    } else if ((c & 0xf8) == 0xf0) {
      extra = 3, cp = c & 0x07, min = 0x10000;
    } else {
      return false;
    }
    if (i + extra >= n) {
      return false;
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((p[i + k] & 0xc0) != 0x80) {
        return false;
      }
      cp = (cp << 6) | (p[i + k] & 0x3f);
    }
    if (cp < min || cp > 0x10ffff || (0xd800 <= cp && cp <= 0xdfff)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace

std::string json_safe_string(std::string_view s) {
  return valid_utf8(s) ? std::string(s) : "0x" + to_hex(as_bytes(s));
}

json verdict_to_json(const attacks::AttackVerdict& v) {
  json j{
      {"kind", std::string(attacks::to_string(v.kind))},
      {"success", v.success},
      {"work", v.work},
      {"transcript", v.transcript},
  };
  if (v.recovered) {
    j["recovered"] = json_safe_string(*v.recovered);
  }
  if (v.error) {
    j["error"] = json_safe_string(*v.error);
  }
  return j;
}

json flood_to_json(const attacks::FloodReport& r) {
  return json{
      {"messages_sent", r.messages_sent},
      {"server_rejections", r.server_rejections},
      {"server_work_units", r.server_work_units},
  };
}

std::string trace_header_line() {
  return json{{"schema", std::string(kTraceSchema)}, {"version", kTraceVersion}}.dump();
}

std::string event_to_line(const sim::TraceEvent& event) {
  json j{
      {"tick", event.tick},
      {"direction", std::string(to_string(event.direction))},
      {"session_id", event.session_id},
      {"outcome", std::string(to_string(event.outcome))},
  };
  if (const auto* login = std::get_if<LoginMessage>(&event.payload)) {
    j["kind"] = "login";
    j["payload"] = login_to_json(*login);
  } else {
    j["kind"] = "response";
    j["payload"] = response_to_json(std::get<ServerResponse>(event.payload));
  }
  if (event.outcome == sim::EventOutcome::kRejected) {
    j["reason"] = std::string(to_string(event.reason));
  }
  return j.dump();
}

sim::TraceEvent event_from_line(const std::string& line) {
  json j = json::parse(line);
  sim::TraceEvent e;
  e.tick = j.at("tick").get<std::uint64_t>();
  e.session_id = j.at("session_id").get<std::uint64_t>();
  std::string direction = j.at("direction").get<std::string>();
  if (direction == "user_to_server") {
    e.direction = sim::Direction::kUserToServer;
  } else if (direction == "server_to_user") {
    e.direction = sim::Direction::kServerToUser;
  } else {
    throw std::invalid_argument("unknown direction: " + direction);
  }
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "login") {
    e.payload = login_from_json(j.at("payload"));
  } else if (kind == "response") {
    e.payload = response_from_json(j.at("payload"));
  } else {
    throw std::invalid_argument("unknown event kind: " + kind);
  }
  std::string outcome = j.at("outcome").get<std::string>();
  if (outcome == "accepted") {
    e.outcome = sim::EventOutcome::kAccepted;
  } else if (outcome == "rejected") {
    e.outcome = sim::EventOutcome::kRejected;
  } else if (outcome == "in_flight") {
    e.outcome = sim::EventOutcome::kInFlight;
  } else {
    throw std::invalid_argument("unknown outcome: " + outcome);
  }
  if (e.outcome == sim::EventOutcome::kRejected) {
    e.reason = reject_reason_from_name(j.at("reason").get<std::string>());
  }
  return e;
}

std::string serialize_trace(const sim::ChannelTrace& trace) {
  std::ostringstream out;
  out << trace_header_line() << '\n';
  for (const sim::TraceEvent& e : trace.events) {
    out << event_to_line(e) << '\n';
  }
  return out.str();
}

void write_trace(const std::filesystem::path& path, const sim::ChannelTrace& trace) {
  write_text_file(path, serialize_trace(trace));
}

void append_trace(const std::filesystem::path& path, const sim::ChannelTrace& trace,
                  std::size_t from_index) {
  if (!std::filesystem::exists(path)) {
    write_trace(path, trace);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw std::runtime_error("cannot open trace file for append: " + path.string());
  }
  for (std::size_t i = from_index; i < trace.events.size(); ++i) {
    out << event_to_line(trace.events[i]) << '\n';
  }
}

sim::ChannelTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open trace file: " + path.string());
  }
  sim::ChannelTrace trace;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) {
      continue;
    }
    try {
      if (line_number == 1) {
        json header = json::parse(line);
        if (header.at("schema").get<std::string>() != kTraceSchema) {
          throw std::invalid_argument("unknown trace schema");
        }
        continue;
      }
      trace.events.push_back(event_from_line(line));
    } catch (const std::exception& e) {
      throw std::runtime_error("trace parse error at " + path.string() + ":" +
                               std::to_string(line_number) + ": " + e.what());
    }
  }
  if (line_number == 0) {
    throw std::runtime_error("trace parse error at " + path.string() + ":1: missing header");
  }
  return trace;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path.string());
  }
  out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read file: " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

json read_json_file(const std::filesystem::path& path) {
  return json::parse(read_text_file(path));
}

}  // namespace wuxu::serial
