// The attack suite: dictionary handling, master-digest derivation,
// offline password guessing, de-anonymization, wrong-input scenarios and
// the flooding cost model.

#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "wuxu/attacks.hpp"
#include "wuxu/serial.hpp"
#include "support.hpp"

using namespace wuxu;
using namespace wuxu::attacks;

namespace {

struct World {
  ServerState server;
  RandomSource rng{2718};  // must precede victim: enroll() draws from it
  sim::UserAgent victim;
  sim::SimChannel channel;
  sim::SimClock clock;

  World()
      : server([] {
          RandomSource boot(314159);
          return ServerState(boot.bytes(32), 60, HashAlg::kSha256);
        }()),
        victim(enroll("alice", "correct-horse")),
        clock(1, {3, 5, 7}) {}

  sim::UserAgent enroll(std::string id, std::string pw) {
    RegistrationRequest request = register_request(id, pw, server.alg(), rng);
    CardContents contents = server.register_user(request.message);
    return sim::UserAgent{finalize_card(contents, request.credentials.r), std::move(id),
                          std::move(pw)};
  }

  // The standard adversary: eavesdrops, stole the victim's card, and
  // holds a legitimate account of their own.
  sim::AdversaryKnowledge adversary() {
    sim::AdversaryKnowledge knowledge;
    sim::adversary_register(server, "eve", "evepass", rng, knowledge);
    sim::eavesdrop(channel.trace(), knowledge);
    sim::extract_card(victim.card, victim.typed_id, knowledge);
    extract_master_digest(knowledge);
    return knowledge;
  }

  LoginMessage observe_login() {
    sim::SessionResult r = sim::run_session(victim, server, channel, clock);
    REQUIRE(r.card_session.has_value());
    return r.sent_login;
  }
};

Dictionary planted_dictionary(std::size_t size, std::size_t position_1based,
                              const std::string& truth) {
  std::vector<std::string> entries;
  entries.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    entries.push_back("candidate-" + std::to_string(i));
  }
  entries[position_1based - 1] = truth;
  return Dictionary::from_entries(std::move(entries));
}

}  // namespace

TEST_SUITE("attacks") {

TEST_CASE("dictionary construction rejects malformed candidate lists") {
  CHECK_THROWS_AS(Dictionary::from_entries({}), std::invalid_argument);
  CHECK_THROWS_AS(Dictionary::from_entries({"a", ""}), std::invalid_argument);
  CHECK_THROWS_AS(Dictionary::from_entries({"a", "b", "a"}), std::invalid_argument);
  Dictionary d = Dictionary::from_entries({"b", "a", "c"});
  CHECK(d.size() == 3);
  CHECK(d.entries()[0] == "b");  // guessing order is preserved
}

TEST_CASE("dictionary files: one candidate per line, CRLF tolerated, blanks rejected") {
  auto dir = make_temp_dir("dict");
  auto good = dir / "good.txt";
  serial::write_text_file(good, "first\r\nsecond\nthird\n");
  Dictionary d = Dictionary::load(good);
  REQUIRE(d.size() == 3);
  CHECK(d.entries()[0] == "first");
  CHECK(d.entries()[1] == "second");

  auto blank = dir / "blank.txt";
  serial::write_text_file(blank, "first\n\nthird\n");
  CHECK_THROWS_AS(Dictionary::load(blank), std::invalid_argument);
  CHECK_THROWS_AS(Dictionary::load(dir / "missing.txt"), std::runtime_error);
}

TEST_CASE("attack kind and input mode names") {
  CHECK(to_string(AttackKind::kPwGuess) == "pw-guess");
  CHECK(to_string(AttackKind::kDeanonymize) == "deanonymize");
  CHECK(to_string(AttackKind::kWrongInput) == "wrong-input");
  for (InputMode m : {InputMode::kWrongPassword, InputMode::kWrongIdentity, InputMode::kControl}) {
    CHECK(input_mode_from_name(to_string(m)) == m);
  }
  CHECK_THROWS_AS(input_mode_from_name("sideways"), std::invalid_argument);
}

TEST_CASE("the adversary's own registration yields the system-wide digest") {
  World w;
  sim::AdversaryKnowledge knowledge;
  sim::adversary_register(w.server, "eve", "evepass", w.rng, knowledge);
  Block derived = extract_master_digest(knowledge);
  CHECK(derived == w.server.master_digest());
  REQUIRE(knowledge.derived_hx.has_value());
  CHECK(*knowledge.derived_hx == derived);

  // Any account works: a second, unrelated registration derives the same
  // digest, because e always blinds the same h(x).
  sim::AdversaryKnowledge other;
  sim::adversary_register(w.server, "mallory", "m-pass", w.rng, other);
  CHECK(extract_master_digest(other) == derived);

  sim::AdversaryKnowledge empty;
  CHECK_THROWS_AS(extract_master_digest(empty), AttackError);
}

TEST_CASE("password guessing walks the dictionary to the planted password") {
  World w;
  LoginMessage login = w.observe_login();
  sim::AdversaryKnowledge knowledge = w.adversary();
  Dictionary dict = planted_dictionary(1000, 617, "correct-horse");

  AttackVerdict v = guess_password(knowledge, w.victim.card, login, dict);
  CHECK(v.kind == AttackKind::kPwGuess);
  CHECK(v.success);
  REQUIRE(v.recovered.has_value());
  CHECK(*v.recovered == "correct-horse");
  CHECK(v.work == 617);
  // The verdict points back at the intercepted event it was computed from.
  REQUIRE(v.transcript.size() == 1);
  CHECK(v.transcript[0] == 0);
}

TEST_CASE("a dictionary without the password is scanned fully and misses") {
  World w;
  LoginMessage login = w.observe_login();
  sim::AdversaryKnowledge knowledge = w.adversary();
  Dictionary dict = planted_dictionary(500, 1, "not-the-password");

  AttackVerdict v = guess_password(knowledge, w.victim.card, login, dict);
  CHECK_FALSE(v.success);
  CHECK_FALSE(v.recovered.has_value());
  CHECK(v.work == 500);
}

TEST_CASE("single-entry dictionary hit costs one unit of work") {
  World w;
  LoginMessage login = w.observe_login();
  sim::AdversaryKnowledge knowledge = w.adversary();
  AttackVerdict v = guess_password(knowledge, w.victim.card, login,
                                   Dictionary::from_entries({"correct-horse"}));
  CHECK(v.success);
  CHECK(v.work == 1);
}

TEST_CASE("the verifier equation singles out exactly one candidate") {
  // Soundness behind the guessing loop: across many sessions, a full
  // dictionary scan matches V for the true password and nothing else.
  World w;
  sim::AdversaryKnowledge knowledge = w.adversary();
  Dictionary dict = planted_dictionary(200, 101, "correct-horse");
  for (int i = 0; i < 20; ++i) {
    LoginMessage login = w.observe_login();
    sim::eavesdrop(w.channel.trace(), knowledge);

    // Count matches by probing every entry as a one-candidate dictionary.
    int hits = 0;
    for (const std::string& candidate : dict.entries()) {
      AttackVerdict probe =
          guess_password(knowledge, w.victim.card, login, Dictionary::from_entries({candidate}));
      hits += probe.success ? 1 : 0;
    }
    CHECK(hits == 1);
  }
}

TEST_CASE("guessing requires the derived digest and an untampered message") {
  World w;
  LoginMessage login = w.observe_login();
  Dictionary dict = Dictionary::from_entries({"correct-horse"});

  sim::AdversaryKnowledge no_digest;
  sim::eavesdrop(w.channel.trace(), no_digest);
  sim::extract_card(w.victim.card, "alice", no_digest);
  CHECK_THROWS_AS(guess_password(no_digest, w.victim.card, login, dict), AttackError);

  sim::AdversaryKnowledge knowledge = w.adversary();
  SUBCASE("wrong digest") {
    knowledge.derived_hx = RandomSource(1).block();
    CHECK_THROWS_AS(guess_password(knowledge, w.victim.card, login, dict), AttackError);
  }
  SUBCASE("garbled B1") {
    LoginMessage tampered = login;
    tampered.b1.flip_bit(5);
    CHECK_THROWS_AS(guess_password(knowledge, w.victim.card, tampered, dict), AttackError);
  }
  SUBCASE("malformed C1") {
    LoginMessage malformed = login;
    malformed.c1 = Ciphertext::from_bytes(Bytes(2 * kBlockWidth, 0x00));
    CHECK_THROWS_AS(guess_password(knowledge, w.victim.card, malformed, dict), AttackError);
  }
}

TEST_CASE("de-anonymization recovers and links identities across sessions") {
  World w;
  sim::UserAgent bob = w.enroll("bob", "tiger");
  sim::run_session(w.victim, w.server, w.channel, w.clock);
  sim::run_session(bob, w.server, w.channel, w.clock);
  sim::run_session(w.victim, w.server, w.channel, w.clock);
  sim::AdversaryKnowledge knowledge = w.adversary();

  std::vector<std::string> recovered;
  for (std::size_t i = 0; i < knowledge.intercepted.size(); ++i) {
    const auto* login = std::get_if<LoginMessage>(&knowledge.intercepted[i].payload);
    if (login == nullptr) continue;
    AttackVerdict v = deanonymize(knowledge, *login);
    CHECK(v.kind == AttackKind::kDeanonymize);
    REQUIRE(v.success);
    CHECK(v.work == 1);
    REQUIRE(v.transcript.size() == 1);
    CHECK(v.transcript[0] == i);
    recovered.push_back(*v.recovered);
  }
  CHECK(recovered == std::vector<std::string>{"alice", "bob", "alice"});
}

TEST_CASE("de-anonymization degrades gracefully instead of guessing") {
  World w;
  LoginMessage login = w.observe_login();
  sim::AdversaryKnowledge knowledge = w.adversary();

  SUBCASE("wrong digest cannot even recover the timestamp") {
    knowledge.derived_hx = RandomSource(7).block();
    AttackVerdict v = deanonymize(knowledge, login);
    CHECK_FALSE(v.success);
    REQUIRE(v.error.has_value());
    CHECK(*v.error == "timestamp recovery failed");
  }
  SUBCASE("garbled B1 fails the same way") {
    LoginMessage tampered = login;
    tampered.b1.flip_bit(0);
    AttackVerdict v = deanonymize(knowledge, tampered);
    CHECK_FALSE(v.success);
    CHECK(v.error.has_value());
  }
  SUBCASE("an AID flip silently shifts the recovered identity") {
    // The chain still resolves; the adversary has no oracle to notice.
    LoginMessage tampered = login;
    tampered.c1.flip_bit(0);
    AttackVerdict v = deanonymize(knowledge, tampered);
    CHECK(v.success);
    CHECK(*v.recovered != "alice");
  }
  SUBCASE("missing digest is a capability error") {
    sim::AdversaryKnowledge bare;
    CHECK_THROWS_AS(deanonymize(bare, login), AttackError);
  }
}

TEST_CASE("wrong-input scenarios: the card complies, the server refuses") {
  World w;
  SUBCASE("wrong password") {
    AttackVerdict v =
        wrong_input_scenario(w.victim, w.server, w.channel, w.clock, InputMode::kWrongPassword);
    CHECK(v.kind == AttackKind::kWrongInput);
    CHECK(v.success);
    REQUIRE(v.recovered.has_value());
    CHECK(*v.recovered == "stale");  // the garbled chain surfaces as staleness
    CHECK(v.transcript.size() == 1);  // login event only; no response ever
  }
  SUBCASE("wrong identity") {
    AttackVerdict v =
        wrong_input_scenario(w.victim, w.server, w.channel, w.clock, InputMode::kWrongIdentity);
    CHECK(v.success);
    CHECK(*v.recovered == "stale");
  }
  SUBCASE("control run with intact input") {
    AttackVerdict v =
        wrong_input_scenario(w.victim, w.server, w.channel, w.clock, InputMode::kControl);
    CHECK(v.success);
    CHECK(*v.recovered == "accepted");
    CHECK(v.transcript.size() == 2);
  }
  SUBCASE("transcript indices continue across scenarios") {
    wrong_input_scenario(w.victim, w.server, w.channel, w.clock, InputMode::kControl);
    AttackVerdict v =
        wrong_input_scenario(w.victim, w.server, w.channel, w.clock, InputMode::kWrongPassword);
    REQUIRE(v.transcript.size() == 1);
    CHECK(v.transcript[0] == 2);
  }
}

TEST_CASE("flood cost: every wrong-input message costs the server one unit") {
  World w;
  FloodReport flood =
      flood_cost_report(w.victim, w.server, w.channel, w.clock, 100, InputMode::kWrongPassword);
  CHECK(flood.messages_sent == 100);
  CHECK(flood.server_rejections == 100);
  CHECK(flood.server_work_units == 100);  // one decode attempt per message

  FloodReport idle = flood_cost_report(w.victim, w.server, w.channel, w.clock, 0,
                                       InputMode::kWrongIdentity);
  CHECK(idle.messages_sent == 0);
  CHECK(idle.server_rejections == 0);
  CHECK(idle.server_work_units == 0);
}

TEST_CASE("flood control group: accepted sessions cost full protocol work") {
  World w;
  FloodReport flood =
      flood_cost_report(w.victim, w.server, w.channel, w.clock, 10, InputMode::kControl);
  CHECK(flood.messages_sent == 10);
  CHECK(flood.server_rejections == 0);
  CHECK(flood.server_work_units == 90);  // nine units per accepted handshake
}

}  // TEST_SUITE("attacks")
