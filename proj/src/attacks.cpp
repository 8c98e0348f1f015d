#include "wuxu/attacks.hpp"

#include <fstream>
#include <set>

namespace wuxu::attacks {

Dictionary Dictionary::from_entries(std::vector<std::string> entries) {
  if (entries.empty()) {
    throw std::invalid_argument("dictionary must be non-empty");
  }
  std::set<std::string_view> seen;
  for (const std::string& entry : entries) {
    if (entry.empty()) {
      throw std::invalid_argument("dictionary entries must be non-empty");
    }
    if (!seen.insert(entry).second) {
      throw std::invalid_argument("duplicate dictionary entry: " + entry);
    }
  }
  Dictionary d;
  d.entries_ = std::move(entries);
  return d;
}

Dictionary Dictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open dictionary file: " + path.string());
  }
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      throw std::invalid_argument("blank line in dictionary file: " + path.string());
    }
    entries.push_back(line);
  }
  return from_entries(std::move(entries));
}

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::kPwGuess:
      return "pw-guess";
    case AttackKind::kDeanonymize:
      return "deanonymize";
    case AttackKind::kWrongInput:
      return "wrong-input";
  }
  return "pw-guess";
}

std::string_view to_string(InputMode mode) {
  switch (mode) {
    case InputMode::kWrongPassword:
      return "wrong-password";
    case InputMode::kWrongIdentity:
      return "wrong-identity";
    case InputMode::kControl:
      return "control";
  }
  return "control";
}

InputMode input_mode_from_name(std::string_view name) {
  for (InputMode m : {InputMode::kWrongPassword, InputMode::kWrongIdentity, InputMode::kControl}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown input mode: " + std::string(name));
}

namespace {

// Indices of intercepted events whose payload equals the given message;
// ties a verdict back to the trace it was computed from.
std::vector<std::size_t> matching_intercepts(const sim::AdversaryKnowledge& knowledge,
                                             const LoginMessage& message) {
  std::vector<std::size_t> refs;
  for (std::size_t i = 0; i < knowledge.intercepted.size(); ++i) {
    const auto* login = std::get_if<LoginMessage>(&knowledge.intercepted[i].payload);
    if (login != nullptr && *login == message) {
      refs.push_back(i);
    }
  }
  return refs;
}

struct RecoveredLogin {
  Block t_block;
  Block h_t;
  Block aid;
  Block v;
};

// Shared front half of both offline attacks: recover T from B1 via the
// derived h(x), then decrypt C1 and split it into AID || T || V. Fails
// when the timestamp does not decode (wrong h(x) or tampered message).
std::optional<RecoveredLogin> recover_login(HashAlg alg, const Block& derived_hx,
                                            const LoginMessage& message) {
  if (message.c1.block_count() != 3) {
    return std::nullopt;
  }
  std::optional<Timestamp> t = decode_timestamp(message.b1 ^ derived_hx);
  if (!t) {
    return std::nullopt;
  }
  RecoveredLogin r;
  r.t_block = encode_timestamp(*t);
  r.h_t = hash(alg, r.t_block.view());
  Ciphertext plain = Ciphertext::from_bytes(sym_decrypt(alg, r.h_t, message.c1));
  r.aid = plain.block(0);
  r.v = plain.block(2);
  return r;
}

// Deterministic input corruption for the wrong-input scenarios. Keeps the
// identity encodable; the card would accept anything either way.
std::string corrupt(std::string_view input) {
  std::string out(input);
  if (out.size() < kBlockWidth) {
    out.push_back('#');
  } else {
    out.back() = out.back() == '#' ? '%' : '#';
  }
  return out;
}

}  // namespace

Block extract_master_digest(sim::AdversaryKnowledge& knowledge) {
  if (!knowledge.own_creds || !knowledge.own_card) {
    throw AttackError("extract_master_digest requires the adversary's own registration");
  }
  const Credentials& creds = *knowledge.own_creds;
  const SmartCard& card = *knowledge.own_card;
  const HashAlg alg = card.alg;
  // h(x) = e_E xor h(RPW_E || ID_E) with RPW_E = h(r_E || PW_E).
  Block rpw = hash(alg, concat_fields({card.r.view(), as_bytes(creds.pw)}));
  Block derived = card.e ^ hash(alg, concat_fields({rpw.view(), as_bytes(creds.id)}));
  knowledge.derived_hx = derived;
  return derived;
}

AttackVerdict guess_password(const sim::AdversaryKnowledge& knowledge,
                             const SmartCard& victim_card, const LoginMessage& message,
                             const Dictionary& dictionary) {
  AttackVerdict verdict;
  verdict.kind = AttackKind::kPwGuess;
  verdict.transcript = matching_intercepts(knowledge, message);
  if (!knowledge.derived_hx) {
    throw AttackError("guess_password requires a derived h(x)");
  }
  const HashAlg alg = victim_card.alg;

  // T and the C1 plaintext do not depend on the guess; recover them once.
  std::optional<RecoveredLogin> login = recover_login(alg, *knowledge.derived_hx, message);
  if (!login) {
    throw AttackError("timestamp recovery failed: wrong h(x) or tampered message");
  }

  for (std::size_t i = 0; i < dictionary.size(); ++i) {
    const std::string& guess = dictionary.entries()[i];
    Block rpw_guess = hash(alg, concat_fields({victim_card.r.view(), as_bytes(guess)}));
    Block j_guess = victim_card.l ^ rpw_guess;
    Block v_guess = hash(alg, concat_fields({login->t_block.view(), j_guess.view()}));
    if (v_guess == login->v) {
      verdict.success = true;
      verdict.recovered = guess;
      verdict.work = i + 1;
      return verdict;
    }
  }
  verdict.work = dictionary.size();
  return verdict;
}

AttackVerdict deanonymize(const sim::AdversaryKnowledge& knowledge, const LoginMessage& message) {
  AttackVerdict verdict;
  verdict.kind = AttackKind::kDeanonymize;
  verdict.transcript = matching_intercepts(knowledge, message);
  if (!knowledge.derived_hx) {
    throw AttackError("deanonymize requires a derived h(x)");
  }
  // The primitive handles come off any card the adversary holds.
  HashAlg alg = HashAlg::kSha256;
  if (knowledge.own_card) {
    alg = knowledge.own_card->alg;
  } else if (!knowledge.extracted_cards.empty()) {
    alg = knowledge.extracted_cards.begin()->second.alg;
  }
  verdict.work = 1;

  std::optional<RecoveredLogin> login = recover_login(alg, *knowledge.derived_hx, message);
  if (!login) {
    verdict.error = "timestamp recovery failed";
    return verdict;
  }
  // The cancellation chain: AID xor h(x) xor h(T) = ID.
  std::optional<std::string> id = decode_id(login->aid ^ *knowledge.derived_hx ^ login->h_t);
  if (!id) {
    verdict.error = "identity decode failed";
    return verdict;
  }
  verdict.success = true;
  verdict.recovered = *id;
  return verdict;
}

AttackVerdict wrong_input_scenario(const sim::UserAgent& user, const ServerState& server,
                                   sim::SimChannel& channel, sim::SimClock& clock,
                                   InputMode mode) {
  sim::UserAgent actual = user;
  switch (mode) {
    case InputMode::kWrongPassword:
      actual.typed_pw = corrupt(user.typed_pw);
      break;
    case InputMode::kWrongIdentity:
      actual.typed_id = corrupt(user.typed_id);
      break;
    case InputMode::kControl:
      break;
  }

  std::size_t first_event = channel.trace().events.size();
  sim::SessionResult session = run_session(actual, server, channel, clock);

  AttackVerdict verdict;
  verdict.kind = AttackKind::kWrongInput;
  verdict.work = 1;
  for (std::size_t i = first_event; i < channel.trace().events.size(); ++i) {
    verdict.transcript.push_back(i);
  }
  // The card always emits a message (the flaw); what varies is the
  // server's decision.
  const bool emitted = session.login_delivered;
  const bool server_accepted = session.server.accepted();
  if (mode == InputMode::kControl) {
    verdict.success = emitted && server_accepted;
    if (verdict.success) {
      verdict.recovered = "accepted";
    }
  } else {
    verdict.success = emitted && !server_accepted;
    if (verdict.success) {
      verdict.recovered = std::string(to_string(session.server.reason));
    }
  }
  return verdict;
}

FloodReport flood_cost_report(const sim::UserAgent& user, const ServerState& server,
                              sim::SimChannel& channel, sim::SimClock& clock, std::uint64_t n,
                              InputMode mode) {
  FloodReport report;
  for (std::uint64_t i = 0; i < n; ++i) {
    sim::UserAgent actual = user;
    switch (mode) {
      case InputMode::kWrongPassword:
        actual.typed_pw = corrupt(user.typed_pw);
        break;
      case InputMode::kWrongIdentity:
        actual.typed_id = corrupt(user.typed_id);
        break;
      case InputMode::kControl:
        break;
    }
    sim::SessionResult session = run_session(actual, server, channel, clock);
    report.messages_sent += 1;
    report.server_work_units += session.server.work_units;
    if (session.login_delivered && !session.server.accepted()) {
      report.server_rejections += 1;
    }
  }
  return report;
}

}  // namespace wuxu::attacks
