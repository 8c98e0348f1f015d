#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wuxu/scheme.hpp"
#include "wuxu/simnet.hpp"

// The attack suite. guess_password and deanonymize consume nothing but
// AdversaryKnowledge inputs; they have no way to reach server state or
// victim credentials, which is the point: each verdict demonstrates what
// an adversary with the stated capabilities can actually do.

namespace wuxu::attacks {

class AttackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Candidate password list, in guessing order.
class Dictionary {
 public:
  static Dictionary from_entries(std::vector<std::string> entries);
  /// UTF-8 text file, one password per line, LF-terminated, no blank
  /// lines, no duplicates. Throws on any violation.
  static Dictionary load(const std::filesystem::path& path);

  const std::vector<std::string>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::string> entries_;
};

enum class AttackKind { kPwGuess, kDeanonymize, kWrongInput };
std::string_view to_string(AttackKind kind);

struct AttackVerdict {
  AttackKind kind = AttackKind::kPwGuess;
  bool success = false;
  std::optional<std::string> recovered;  // password or identity; present iff success
  std::uint64_t work = 0;                // candidates tested / sessions run
  std::vector<std::size_t> transcript;   // indices into the intercepted trace view
  std::optional<std::string> error;      // set when the attack aborted early
};

/// Derives the system-wide digest h(x) = e_E xor h(RPW_E||ID_E) from the
/// adversary's own card and credentials, stores it in the knowledge and
/// returns it. Throws AttackError without an own registration.
Block extract_master_digest(sim::AdversaryKnowledge& knowledge);

/// Offline password guessing against one intercepted login message of a
/// victim whose card contents were extracted. T and the C1 plaintext are
/// guess-independent, so they are recovered once up front; the loop then
/// tests candidates via V == h(T||J*) with J* = L xor h(r||PW*).
/// work = 1-based position of the hit, or dictionary size on a miss.
/// Throws AttackError if T cannot be recovered (wrong h(x) or tampering).
AttackVerdict guess_password(const sim::AdversaryKnowledge& knowledge,
                             const SmartCard& victim_card, const LoginMessage& message,
                             const Dictionary& dictionary);

/// Identity recovery from a single login message:
/// ID = AID xor h(x) xor h(T). Returns a failed verdict (never throws)
/// when the XOR chain does not resolve, e.g. for tampered messages or a
/// wrong h(x).
AttackVerdict deanonymize(const sim::AdversaryKnowledge& knowledge, const LoginMessage& message);

enum class InputMode { kWrongPassword, kWrongIdentity, kControl };
std::string_view to_string(InputMode mode);
InputMode input_mode_from_name(std::string_view name);

/// Reproduces the wrong-input login flaw: corrupts the typed password or
/// identity, lets the card run anyway, and checks that (a) a login
/// message was emitted and (b) the server rejected it. kControl leaves
/// the input intact and expects acceptance instead.
AttackVerdict wrong_input_scenario(const sim::UserAgent& user, const ServerState& server,
                                   sim::SimChannel& channel, sim::SimClock& clock, InputMode mode);

struct FloodReport {
  std::uint64_t messages_sent = 0;
  std::uint64_t server_rejections = 0;
  std::uint64_t server_work_units = 0;
};

/// Quantifies the flooding cost of the missing input check: n wrong-input
/// sessions, counting the server-side work spent before each rejection.
FloodReport flood_cost_report(const sim::UserAgent& user, const ServerState& server,
                              sim::SimChannel& channel, sim::SimClock& clock, std::uint64_t n,
                              InputMode mode);

}  // namespace wuxu::attacks
