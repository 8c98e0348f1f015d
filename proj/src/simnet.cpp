#include "wuxu/simnet.hpp"

#include <algorithm>
#include <stdexcept>

namespace wuxu::sim {

SimClock::SimClock(std::uint64_t start, std::vector<std::uint64_t> schedule)
    : tick_(start), schedule_(std::move(schedule)) {
  if (schedule_.empty()) {
    throw std::invalid_argument("clock schedule must be non-empty");
  }
}

Timestamp SimClock::advance(std::uint64_t extra) {
  tick_ += schedule_[next_ % schedule_.size()] + extra;
  ++next_;
  return {tick_};
}

std::string_view to_string(Direction d) {
  return d == Direction::kUserToServer ? "user_to_server" : "server_to_user";
}

std::string_view to_string(EventOutcome o) {
  switch (o) {
    case EventOutcome::kInFlight:
      return "in_flight";
    case EventOutcome::kAccepted:
      return "accepted";
    case EventOutcome::kRejected:
      return "rejected";
  }
  return "in_flight";
}

void SimChannel::resume_after(const ChannelTrace& previous) {
  for (const TraceEvent& e : previous.events) {
    next_id_ = std::max(next_id_, e.session_id + 1);
  }
}

namespace {

struct Delivery {
  bool delivered = false;
  std::uint64_t extra_ticks = 0;
};

// Applies one tamper action to a message in transit. Returns whether the
// message still arrives and with how much added delay.
template <typename Message>
Delivery apply_action(const TamperAction& action, Message& message) {
  Delivery d;
  if (std::holds_alternative<Drop>(action)) {
    return d;
  }
  d.delivered = true;
  if (const auto* delay = std::get_if<Delay>(&action)) {
    d.extra_ticks = delay->ticks;
  } else if (const auto* flip = std::get_if<FlipBit>(&action)) {
    if (flip->field == FlipBit::Field::kBlock) {
      if constexpr (std::is_same_v<Message, LoginMessage>) {
        message.b1.flip_bit(flip->bit);
      } else {
        message.b2.flip_bit(flip->bit);
      }
    } else {
      if constexpr (std::is_same_v<Message, LoginMessage>) {
        message.c1.flip_bit(flip->bit);
      } else {
        message.c2.flip_bit(flip->bit);
      }
    }
  } else if (const auto* replace = std::get_if<Replace>(&action)) {
    const Message* substitute = std::get_if<Message>(&replace->payload);
    if (substitute == nullptr) {
      throw std::invalid_argument("replace payload does not match message direction");
    }
    message = *substitute;
  }
  return d;
}

}  // namespace

SessionResult run_session(const UserAgent& user, const ServerState& server, SimChannel& channel,
                          SimClock& clock, const TamperPolicy& policy) {
  SessionResult result;
  result.session_id = channel.next_session_id();

  // Login phase: the card emits <B1, C1> at the current tick.
  Timestamp t_login = clock.advance();
  LoginAttempt attempt = card_login(user.card, user.typed_id, user.typed_pw, t_login);
  result.sent_login = attempt.message;
  result.pending = attempt.pending;

  LoginMessage wire_login = attempt.message;
  Delivery to_server = apply_action(policy.user_to_server, wire_login);
  std::size_t login_event = channel.trace().events.size();
  channel.trace().events.push_back(TraceEvent{t_login.ticks, Direction::kUserToServer,
                                              result.session_id, wire_login,
                                              EventOutcome::kInFlight, RejectReason::kNone});
  if (!to_server.delivered) {
    return result;
  }

  Timestamp t_server = clock.advance(to_server.extra_ticks);
  result.server = server.authenticate(wire_login, t_server);
  result.login_delivered = true;
  {
    TraceEvent& e = channel.trace().events[login_event];
    e.outcome = result.server.accepted() ? EventOutcome::kAccepted : EventOutcome::kRejected;
    e.reason = result.server.reason;
  }
  if (!result.server.accepted()) {
    return result;
  }
  result.sent_response = result.server.accept->response;

  // Authentication phase: the response travels back to the card.
  ServerResponse wire_response = *result.sent_response;
  Delivery to_user = apply_action(policy.server_to_user, wire_response);
  std::size_t response_event = channel.trace().events.size();
  channel.trace().events.push_back(TraceEvent{t_server.ticks, Direction::kServerToUser,
                                              result.session_id, wire_response,
                                              EventOutcome::kInFlight, RejectReason::kNone});
  if (!to_user.delivered) {
    return result;
  }

  Timestamp t_card = clock.advance(to_user.extra_ticks);
  CardVerifyOutcome verify = card_verify_server(user.card, attempt.pending, wire_response, t_card,
                                                server.freshness_window());
  {
    TraceEvent& e = channel.trace().events[response_event];
    e.outcome = verify.accepted() ? EventOutcome::kAccepted : EventOutcome::kRejected;
    e.reason = verify.reason;
  }
  if (verify.accepted()) {
    result.card_session = verify.session;
  }
  result.card = std::move(verify);
  return result;
}

void eavesdrop(const ChannelTrace& trace, AdversaryKnowledge& knowledge) {
  knowledge.intercepted = trace.events;
}

void extract_card(const SmartCard& victim_card, std::string_view label,
                  AdversaryKnowledge& knowledge) {
  knowledge.extracted_cards.insert_or_assign(std::string(label), victim_card);
}

void adversary_register(ServerState& server, std::string_view id, std::string_view pw,
                        RandomSource& rng, AdversaryKnowledge& knowledge) {
  RegistrationRequest request = register_request(id, pw, server.alg(), rng);
  CardContents contents = server.register_user(request.message);
  knowledge.own_creds = request.credentials;
  knowledge.own_card = finalize_card(contents, request.credentials.r);
}

}  // namespace wuxu::sim
