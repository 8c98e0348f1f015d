#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wuxu/attacks.hpp"
#include "wuxu/scheme.hpp"
#include "wuxu/simnet.hpp"

// JSON wire/file formats. Object keys serialize alphabetically, all
// values are integers, strings or hex strings, so every writer here is
// byte-deterministic.

namespace wuxu::serial {

using nlohmann::json;

// server database: {freshness_window, master_key_hex, registry: [{N, id}]}
json server_to_json(const ServerState& server);
ServerState server_from_json(const json& j, HashAlg alg);

// card file: {L_hex, e_hex, hash_alg, r_hex}
json card_to_json(const SmartCard& card);
SmartCard card_from_json(const json& j);

// wire messages: {b1_hex, c1_hex} / {b2_hex, c2_hex}
json login_to_json(const LoginMessage& m);
LoginMessage login_from_json(const json& j);
json response_to_json(const ServerResponse& m);
ServerResponse response_from_json(const json& j);

json verdict_to_json(const attacks::AttackVerdict& v);
json flood_to_json(const attacks::FloodReport& r);

// Trace files are JSON-lines: a schema header line followed by one event
// per line.
inline constexpr std::string_view kTraceSchema = "wuxu.trace";
inline constexpr int kTraceVersion = 1;

std::string trace_header_line();
std::string event_to_line(const sim::TraceEvent& event);
sim::TraceEvent event_from_line(const std::string& line);

void write_trace(const std::filesystem::path& path, const sim::ChannelTrace& trace);
/// Appends events [from_index, end) to an existing trace file, or writes
/// a fresh file (with header) if none exists.
void append_trace(const std::filesystem::path& path, const sim::ChannelTrace& trace,
                  std::size_t from_index);
/// Throws std::runtime_error with the 1-based line number on malformed input.
sim::ChannelTrace read_trace(const std::filesystem::path& path);

std::string serialize_trace(const sim::ChannelTrace& trace);  // header + lines, for comparisons

/// JSON strings must be valid UTF-8; a de-anonymization run over tampered
/// messages can recover arbitrary bytes. Passes valid UTF-8 through and
/// renders anything else as "0x" + hex.
std::string json_safe_string(std::string_view s);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

}  // namespace wuxu::serial
