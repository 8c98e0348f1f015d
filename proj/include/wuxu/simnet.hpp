#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wuxu/scheme.hpp"

// Deterministic simulated public channel with a Dolev-Yao adversary:
// every message can be read, modified, delayed, dropped or replaced in
// transit, cards can be read out wholesale, and the adversary may hold a
// legitimate registration of their own.

namespace wuxu::sim {

/// Logical clock. Event times come from a cyclic schedule of increments,
/// so a fixed (seed, schedule) pair replays the exact same run.
class SimClock {
 public:
  explicit SimClock(std::uint64_t start = 0, std::vector<std::uint64_t> schedule = {1});

  Timestamp now() const { return {tick_}; }
  /// Advances to the next event tick; `extra` models adversarial delay.
  Timestamp advance(std::uint64_t extra = 0);

 private:
  std::uint64_t tick_;
  std::vector<std::uint64_t> schedule_;
  std::size_t next_ = 0;
};

enum class Direction { kUserToServer, kServerToUser };
enum class EventOutcome { kInFlight, kAccepted, kRejected };

std::string_view to_string(Direction d);
std::string_view to_string(EventOutcome o);

using WirePayload = std::variant<LoginMessage, ServerResponse>;

/// One observed channel event: the payload as it appeared on the wire
/// (after any in-transit tampering) and what the receiver did with it.
/// Dropped messages stay kInFlight forever.
struct TraceEvent {
  std::uint64_t tick = 0;
  Direction direction = Direction::kUserToServer;
  std::uint64_t session_id = 0;
  WirePayload payload;
  EventOutcome outcome = EventOutcome::kInFlight;
  RejectReason reason = RejectReason::kNone;
};

struct ChannelTrace {
  std::vector<TraceEvent> events;
};

// Declarative tamper actions, applied per direction while a message is
// in transit.
struct Pass {};
struct Drop {};
struct Delay {
  std::uint64_t ticks = 0;
};
struct FlipBit {
  /// Which wire field to corrupt: the XOR block (B1/B2) or the
  /// ciphertext (C1/C2), per direction.
  enum class Field { kBlock, kCiphertext };
  Field field = Field::kCiphertext;
  std::size_t bit = 0;
};
struct Replace {
  WirePayload payload;
};
using TamperAction = std::variant<Pass, Drop, Delay, FlipBit, Replace>;

struct TamperPolicy {
  TamperAction user_to_server = Pass{};
  TamperAction server_to_user = Pass{};
};

/// A user at the card reader: the card plus whatever identity and
/// password they type (possibly wrong; the card will not notice).
struct UserAgent {
  SmartCard card;
  std::string typed_id;
  std::string typed_pw;
};

/// The public channel: owns the trace and hands out session labels.
/// Session ids are harness bookkeeping only; nothing on the wire
/// carries them.
class SimChannel {
 public:
  ChannelTrace& trace() { return trace_; }
  const ChannelTrace& trace() const { return trace_; }
  std::uint64_t next_session_id() { return next_id_++; }

  /// Continue numbering/timing after a previously recorded trace.
  void resume_after(const ChannelTrace& previous);

 private:
  ChannelTrace trace_;
  std::uint64_t next_id_ = 1;
};

struct SessionResult {
  std::uint64_t session_id = 0;
  ServerAuthOutcome server;                   // reason kNone if never delivered
  bool login_delivered = false;
  std::optional<CardVerifyOutcome> card;      // engaged iff a response reached the card
  std::optional<SessionRecord> card_session;  // convenience copy on card acceptance
  LoginMessage sent_login;                    // pre-tamper, as the card emitted it
  std::optional<ServerResponse> sent_response;
  PendingLogin pending;                       // retained card state, for replay/reroute tests
};

/// Runs one full login/authentication exchange through the channel under
/// a tamper policy, appending every wire event to the trace. Rejections
/// are recorded outcomes, not errors.
SessionResult run_session(const UserAgent& user, const ServerState& server, SimChannel& channel,
                          SimClock& clock, const TamperPolicy& policy = {});

/// Everything the adversary has gathered. derived_hx is only ever filled
/// in by the attacks module; nothing here peeks at server state.
struct AdversaryKnowledge {
  std::map<std::string, SmartCard> extracted_cards;
  std::vector<TraceEvent> intercepted;
  std::optional<Credentials> own_creds;
  std::optional<SmartCard> own_card;
  std::optional<Block> derived_hx;
};

/// Verbatim copy of the public channel into adversary storage. Honest
/// parties cannot tell; replaces any previously intercepted view.
void eavesdrop(const ChannelTrace& trace, AdversaryKnowledge& knowledge);

/// Reads out a (stolen or borrowed) card. Read-only for the victim.
void extract_card(const SmartCard& victim_card, std::string_view label,
                  AdversaryKnowledge& knowledge);

/// The adversary registers as a legitimate user and keeps both the
/// credentials and the issued card.
void adversary_register(ServerState& server, std::string_view id, std::string_view pw,
                        RandomSource& rng, AdversaryKnowledge& knowledge);

}  // namespace wuxu::sim
