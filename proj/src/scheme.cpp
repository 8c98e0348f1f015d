#include "wuxu/scheme.hpp"

#include <stdexcept>

namespace wuxu {

namespace {

// 8-byte big-endian registration counter, as hashed into J = h(x||ID||N).
Bytes encode_counter(std::uint64_t n) {
  Bytes out(8);
  for (std::size_t i = 0; i < 8; ++i) {
    out[7 - i] = static_cast<std::uint8_t>(n & 0xff);
    n >>= 8;
  }
  return out;
}

Block compute_j(HashAlg alg, BytesView master_key, std::string_view id, std::uint64_t n) {
  Bytes counter = encode_counter(n);
  return hash(alg, concat_fields({master_key, as_bytes(id), BytesView(counter)}));
}

Block session_key(HashAlg alg, const Block& j, Timestamp t_user, Timestamp t_server,
                  std::string_view id) {
  Block tu = encode_timestamp(t_user);
  Block ts = encode_timestamp(t_server);
  return hash(alg, concat_fields({j.view(), tu.view(), ts.view(), as_bytes(id)}));
}

}  // namespace

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNone:
      return "none";
    case RejectReason::kStale:
      return "stale";
    case RejectReason::kTimestampMismatch:
      return "timestamp_mismatch";
    case RejectReason::kUnknownId:
      return "unknown_id";
    case RejectReason::kBadVerifier:
      return "bad_verifier";
    case RejectReason::kStaleServerTimestamp:
      return "stale_server_timestamp";
    case RejectReason::kVerifierMismatch:
      return "verifier_mismatch";
  }
  return "none";
}

RejectReason reject_reason_from_name(std::string_view name) {
  for (RejectReason r :
       {RejectReason::kNone, RejectReason::kStale, RejectReason::kTimestampMismatch,
        RejectReason::kUnknownId, RejectReason::kBadVerifier, RejectReason::kStaleServerTimestamp,
        RejectReason::kVerifierMismatch}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown reject reason: " + std::string(name));
}

bool valid_id(std::string_view id) {
  return !id.empty() && id.size() <= kBlockWidth && id.find('\0') == std::string_view::npos;
}

RegistrationRequest register_request(std::string_view id, std::string_view pw, HashAlg alg,
                                     RandomSource& rng) {
  if (!valid_id(id)) {
    throw std::invalid_argument("invalid identity");
  }
  if (pw.empty()) {
    throw std::invalid_argument("password must be non-empty");
  }
  Credentials creds{std::string(id), std::string(pw), rng.block()};
  Block rpw = hash(alg, concat_fields({creds.r.view(), as_bytes(pw)}));
  return RegistrationRequest{creds, RegistrationMessage{creds.id, rpw}};
}

SmartCard finalize_card(const CardContents& contents, const Block& r) {
  return SmartCard{contents.l, contents.e, r, contents.alg};
}

ServerState::ServerState(Bytes master_key, std::uint64_t freshness_window, HashAlg alg)
    : x_(std::move(master_key)),
      hx_(hash(alg, BytesView(x_.data(), x_.size()))),
      freshness_window_(freshness_window),
      alg_(alg) {
  if (x_.empty()) {
    throw std::invalid_argument("master key must be non-empty");
  }
}

CardContents ServerState::register_user(const RegistrationMessage& message) {
  if (!valid_id(message.id)) {
    throw std::invalid_argument("registration rejected: invalid identity");
  }
  std::uint64_t n = 0;
  if (auto it = registry_.find(message.id); it != registry_.end()) {
    n = it->second + 1;  // re-registration: the old card's J goes stale
  }
  Block j = compute_j(alg_, master_key(), message.id, n);
  Block l = j ^ message.rpw;
  Block e = hx_ ^ hash(alg_, concat_fields({message.rpw.view(), as_bytes(message.id)}));
  registry_[message.id] = n;
  return CardContents{l, e, alg_};
}

void ServerState::restore_registry_entry(const std::string& id, std::uint64_t n) {
  if (!valid_id(id)) {
    throw std::invalid_argument("registry restore rejected: invalid identity");
  }
  registry_[id] = n;
}

LoginAttempt card_login(const SmartCard& card, std::string_view typed_id,
                        std::string_view typed_pw, Timestamp now) {
  const HashAlg alg = card.alg;
  // No input validation happens here: whatever the user typed goes
  // straight into the algebra.
  Block rpw = hash(alg, concat_fields({card.r.view(), as_bytes(typed_pw)}));
  Block j = card.l ^ rpw;
  Block m = card.e ^ hash(alg, concat_fields({rpw.view(), as_bytes(typed_id)}));
  Block t_block = encode_timestamp(now);
  Block h_t = hash(alg, t_block.view());
  Block aid = m ^ h_t ^ encode_id(typed_id);
  Block b1 = m ^ t_block;
  Block v = hash(alg, concat_fields({t_block.view(), j.view()}));

  Bytes plaintext;
  plaintext.reserve(3 * kBlockWidth);
  for (const Block* part : {&aid, &t_block, &v}) {
    Bytes b = part->to_bytes();
    plaintext.insert(plaintext.end(), b.begin(), b.end());
  }
  Ciphertext c1 = sym_encrypt(alg, h_t, plaintext);

  return LoginAttempt{LoginMessage{b1, c1},
                      PendingLogin{v, now, j, std::string(typed_id), m}};
}

ServerAuthOutcome ServerState::authenticate(const LoginMessage& message, Timestamp now) const {
  ServerAuthOutcome out;
  if (message.c1.block_count() != 3) {
    out.reason = RejectReason::kStale;  // not a well-formed login message
    return out;
  }

  // Step 1: T' = B1 xor h(x), then the freshness window.
  out.work_units += 1;
  std::optional<Timestamp> t_prime = decode_timestamp(message.b1 ^ hx_);
  if (!t_prime || tick_distance(now, *t_prime) > freshness_window_) {
    out.reason = RejectReason::kStale;
    return out;
  }
  Block t_block = encode_timestamp(*t_prime);

  // Decrypt C1 under h(T') and split into AID || T || V.
  out.work_units += 2;  // key hash + decryption
  Block h_t = hash(alg_, t_block.view());
  Ciphertext plain = Ciphertext::from_bytes(sym_decrypt(alg_, h_t, message.c1));
  Block aid = plain.block(0);
  Block t_copy = plain.block(1);
  Block v = plain.block(2);
  if (t_copy != t_block) {
    out.reason = RejectReason::kTimestampMismatch;
    return out;
  }

  // ID' = AID xor h(x) xor h(T'), then the registry lookup.
  out.work_units += 1;
  std::optional<std::string> id = decode_id(aid ^ hx_ ^ h_t);
  if (!id) {
    out.reason = RejectReason::kUnknownId;
    return out;
  }
  auto entry = registry_.find(*id);
  if (entry == registry_.end()) {
    out.reason = RejectReason::kUnknownId;
    return out;
  }

  // J' = h(x||ID'||N); verify V = h(T'||J').
  out.work_units += 2;
  Block j = compute_j(alg_, master_key(), *id, entry->second);
  if (v != hash(alg_, concat_fields({t_block.view(), j.view()}))) {
    out.reason = RejectReason::kBadVerifier;
    return out;
  }

  // Step 2: emit <B2, C2> and derive sk.
  out.work_units += 3;  // key hash, encryption, session key
  Timestamp t_s = now;
  Block ts_block = encode_timestamp(t_s);
  Block b2 = hx_ ^ ts_block;
  Bytes c2_plain;
  c2_plain.reserve(2 * kBlockWidth);
  for (const Block* part : {&v, &ts_block}) {
    Bytes b = part->to_bytes();
    c2_plain.insert(c2_plain.end(), b.begin(), b.end());
  }
  Ciphertext c2 = sym_encrypt(alg_, hash(alg_, ts_block.view()), c2_plain);
  Block sk = session_key(alg_, j, *t_prime, t_s, *id);

  out.accept = ServerAccept{ServerResponse{b2, c2}, SessionRecord{sk, *id, *t_prime, t_s}};
  return out;
}

CardVerifyOutcome card_verify_server(const SmartCard& card, const PendingLogin& pending,
                                     const ServerResponse& response, Timestamp now,
                                     std::uint64_t freshness_window) {
  CardVerifyOutcome out;
  if (response.c2.block_count() != 2) {
    out.reason = RejectReason::kStaleServerTimestamp;
    return out;
  }

  // Step 3: T_s' = B2 xor (e xor h(RPW||ID)), i.e. B2 xor M.
  std::optional<Timestamp> t_s = decode_timestamp(response.b2 ^ pending.m);
  if (!t_s || tick_distance(now, *t_s) > freshness_window) {
    out.reason = RejectReason::kStaleServerTimestamp;
    return out;
  }
  Block ts_block = encode_timestamp(*t_s);

  Ciphertext plain = Ciphertext::from_bytes(
      sym_decrypt(card.alg, hash(card.alg, ts_block.view()), response.c2));
  Block v_copy = plain.block(0);
  Block ts_copy = plain.block(1);
  if (v_copy != pending.v) {
    out.reason = RejectReason::kVerifierMismatch;
    return out;
  }
  if (ts_copy != ts_block) {
    out.reason = RejectReason::kTimestampMismatch;
    return out;
  }

  Block sk = session_key(card.alg, pending.j, pending.t_i, *t_s, pending.id);
  out.session = SessionRecord{sk, pending.id, pending.t_i, *t_s};
  return out;
}

}  // namespace wuxu
