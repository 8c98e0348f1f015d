#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "wuxu/bytes.hpp"
#include "wuxu/cipher.hpp"
#include "wuxu/encoding.hpp"
#include "wuxu/hash.hpp"
#include "wuxu/rng.hpp"

// State machines for the Wu-Xu smart-card authentication scheme:
// registration, login and mutual authentication with session key
// agreement. The card-side login deliberately performs no input
// validation; the scheme defines none, and several of the attack
// scenarios in wuxu::attacks depend on that behavior being preserved.

namespace wuxu {

enum class RejectReason {
  kNone,
  // server side
  kStale,              // timestamp undecodable or outside the freshness window
  kTimestampMismatch,  // decrypted timestamp copy disagrees (also used card-side for T_s)
  kUnknownId,          // recovered identity not in the registry
  kBadVerifier,        // V check failed
  // card side
  kStaleServerTimestamp,
  kVerifierMismatch,
};

std::string_view to_string(RejectReason reason);
RejectReason reject_reason_from_name(std::string_view name);

/// What the user knows and keeps: identity, password, and the random
/// number r generated at registration (later stored on the card).
struct Credentials {
  std::string id;
  std::string pw;
  Block r;
};

/// Registration request sent over the secure channel. Carries only the
/// identity and the blinded password digest RPW = h(r||PW); neither the
/// password nor r ever leaves the user.
struct RegistrationMessage {
  std::string id;
  Block rpw;
};

/// What the server embeds into a fresh card: L = J xor RPW with
/// J = h(x||ID||N), e = h(x) xor h(RPW||ID), plus the primitive handles
/// (hash/encrypt/decrypt), modeled here by the algorithm tag.
struct CardContents {
  Block l;
  Block e;
  HashAlg alg = HashAlg::kSha256;
};

/// The personalized card after the user stored r on it. Inert data: the
/// card keeps no password and no identity.
struct SmartCard {
  Block l;
  Block e;
  Block r;
  HashAlg alg = HashAlg::kSha256;
};

/// Login message <B1, C1>: B1 = h(x) xor T (via e xor h(RPW||ID) xor T),
/// C1 = E_{h(T)}(AID || T || V), exactly 3 blocks of ciphertext.
struct LoginMessage {
  Block b1;
  Ciphertext c1;
  friend bool operator==(const LoginMessage&, const LoginMessage&) = default;
};

/// Server response <B2, C2>: B2 = h(x) xor T_s, C2 = E_{h(T_s)}(V || T_s),
/// exactly 2 blocks of ciphertext.
struct ServerResponse {
  Block b2;
  Ciphertext c2;
  friend bool operator==(const ServerResponse&, const ServerResponse&) = default;
};

/// Outcome of a completed mutual authentication on either side.
/// sk = h(J || T_user || T_server || ID).
struct SessionRecord {
  Block sk;
  std::string peer_id;
  Timestamp t_user;
  Timestamp t_server;
};

/// Values the card retains between sending a login and verifying the
/// server's response, cleared afterwards: the verifier V, the login
/// timestamp, J, the typed identity and M = e xor h(RPW||ID) (the card's
/// view of h(x)).
struct PendingLogin {
  Block v;
  Timestamp t_i;
  Block j;
  std::string id;
  Block m;
};

struct LoginAttempt {
  LoginMessage message;
  PendingLogin pending;
};

struct ServerAccept {
  ServerResponse response;
  SessionRecord session;
};

struct ServerAuthOutcome {
  std::optional<ServerAccept> accept;
  RejectReason reason = RejectReason::kNone;
  /// Hash evaluations, decryptions and XOR/decode attempts the server
  /// spent before deciding; the flooding-cost metric.
  std::uint32_t work_units = 0;
  bool accepted() const { return accept.has_value(); }
};

struct CardVerifyOutcome {
  std::optional<SessionRecord> session;
  RejectReason reason = RejectReason::kNone;
  bool accepted() const { return session.has_value(); }
};

struct RegistrationRequest {
  Credentials credentials;    // kept by the user
  RegistrationMessage message;  // what actually travels to the server
};

/// Identity rule enforced at registration: non-empty, at most kBlockWidth
/// bytes, no NUL bytes (the encoding's zero padding must stay unambiguous).
bool valid_id(std::string_view id);

/// Registration step 1 (user side): draw r, compute RPW = h(r||PW).
RegistrationRequest register_request(std::string_view id, std::string_view pw, HashAlg alg,
                                     RandomSource& rng);

/// Registration step 3 (user side): store r into the card.
SmartCard finalize_card(const CardContents& contents, const Block& r);

/// Server with master key x, cached h(x), the (ID -> N) registry and the
/// timestamp freshness window. Registration and authentication are
/// single-writer; message values are immutable and freely shareable.
class ServerState {
 public:
  ServerState(Bytes master_key, std::uint64_t freshness_window, HashAlg alg);

  /// Registration step 2. New identities enter the registry with N = 0;
  /// re-registration increments N, which re-keys J and strands any card
  /// issued under the previous counter. Throws on invalid identity.
  CardContents register_user(const RegistrationMessage& message);

  /// Authentication steps 1-2. Recovers T' = B1 xor h(x), enforces the
  /// freshness window, decrypts C1 under h(T'), cross-checks the embedded
  /// timestamp copy, resolves the identity via the AID xor chain, and
  /// verifies V against J' = h(x||ID'||N). On success emits <B2, C2> and
  /// the server-side session record.
  ServerAuthOutcome authenticate(const LoginMessage& message, Timestamp now) const;

  /// Puts an (ID, N) pair straight into the registry; used when restoring
  /// persisted server state. Throws on invalid identity.
  void restore_registry_entry(const std::string& id, std::uint64_t n);

  const Block& master_digest() const { return hx_; }
  HashAlg alg() const { return alg_; }
  std::uint64_t freshness_window() const { return freshness_window_; }
  const std::map<std::string, std::uint64_t>& registry() const { return registry_; }
  BytesView master_key() const { return {x_.data(), x_.size()}; }

 private:
  Bytes x_;
  Block hx_;
  std::map<std::string, std::uint64_t> registry_;
  std::uint64_t freshness_window_;
  HashAlg alg_;
};

/// Login steps 1-2 (card side). Computes RPW from the typed password,
/// J = L xor RPW, M = e xor h(RPW||ID), AID = M xor h(T) xor ID,
/// B1 = M xor T, V = h(T||J), C1 = E_{h(T)}(AID||T||V). The card checks
/// nothing: wrong input still produces a well-formed message (the login
/// flaw). Throws only if the typed identity cannot be encoded at all.
LoginAttempt card_login(const SmartCard& card, std::string_view typed_id,
                        std::string_view typed_pw, Timestamp now);

/// Authentication step 3 (card side). Recovers T_s' = B2 xor M, enforces
/// freshness, decrypts C2 under h(T_s'), compares the verifier copy with
/// the retained V and the timestamp copy with T_s', then derives sk.
CardVerifyOutcome card_verify_server(const SmartCard& card, const PendingLogin& pending,
                                     const ServerResponse& response, Timestamp now,
                                     std::uint64_t freshness_window);

}  // namespace wuxu
