#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "wuxu/attacks.hpp"
#include "wuxu/scheme.hpp"
#include "wuxu/simnet.hpp"

namespace py = pybind11;
using namespace wuxu;

namespace {

Bytes to_byte_vec(const py::bytes& b) {
  std::string s = b;
  return Bytes(s.begin(), s.end());
}

py::bytes to_py(BytesView v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

Block block_arg(const py::bytes& b) { return Block::from_bytes(to_byte_vec(b)); }

py::dict verdict_dict(const attacks::AttackVerdict& v, bool recovered_as_bytes) {
  py::dict d;
  d["kind"] = std::string(attacks::to_string(v.kind));
  d["success"] = v.success;
  d["work"] = v.work;
  if (v.recovered) {
    if (recovered_as_bytes) {
      d["recovered"] = py::bytes(*v.recovered);
    } else {
      d["recovered"] = *v.recovered;
    }
  } else {
    d["recovered"] = py::none();
  }
  if (v.error) {
    d["error"] = *v.error;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smart-card authentication scheme, simulated channel and attack suite";

  // --- primitives ---------------------------------------------------------
  m.def(
      "hash_digest",
      [](const std::string& alg, const py::bytes& data) {
        return to_py(hash(hash_alg_from_name(alg), to_byte_vec(data)).view());
      },
      py::arg("alg"), py::arg("data"), "One-shot 32-byte digest");

  m.def(
      "keystream_encrypt",
      [](const std::string& alg, const py::bytes& key, const py::bytes& plaintext) {
        Ciphertext ct =
            sym_encrypt(hash_alg_from_name(alg), block_arg(key), to_byte_vec(plaintext));
        return to_py(ct.view());
      },
      py::arg("alg"), py::arg("key"), py::arg("plaintext"),
      "Counter-mode keystream cipher; plaintext length must be a multiple of 32");

  m.def(
      "keystream_decrypt",
      [](const std::string& alg, const py::bytes& key, const py::bytes& ciphertext) {
        Bytes plain = sym_decrypt(hash_alg_from_name(alg), block_arg(key),
                                  Ciphertext::from_bytes(to_byte_vec(ciphertext)));
        return to_py(plain);
      },
      py::arg("alg"), py::arg("key"), py::arg("ciphertext"));

  m.def(
      "concat_fields",
      [](const std::vector<py::bytes>& fields) {
        std::vector<Bytes> storage;
        storage.reserve(fields.size());
        for (const py::bytes& f : fields) {
          storage.push_back(to_byte_vec(f));
        }
        std::vector<BytesView> views(storage.begin(), storage.end());
        return to_py(concat_fields(std::span<const BytesView>(views)));
      },
      py::arg("fields"), "Length-prefixed injective concatenation");

  m.def(
      "split_fields",
      [](const py::bytes& joined) {
        std::vector<py::bytes> out;
        for (const Bytes& f : split_fields(to_byte_vec(joined))) {
          out.push_back(to_py(f));
        }
        return out;
      },
      py::arg("joined"));

  m.def(
      "encode_id", [](const std::string& id) { return to_py(encode_id(id).view()); },
      py::arg("id"));
  m.def(
      "decode_id",
      [](const py::bytes& block) -> std::optional<py::bytes> {
        std::optional<std::string> id = decode_id(block_arg(block));
        if (!id) return std::nullopt;
        return py::bytes(*id);
      },
      py::arg("block"));

  m.def(
      "encode_timestamp",
      [](std::uint64_t ticks) { return to_py(encode_timestamp({ticks}).view()); },
      py::arg("ticks"));
  m.def(
      "decode_timestamp",
      [](const py::bytes& block) -> std::optional<std::uint64_t> {
        std::optional<Timestamp> t = decode_timestamp(block_arg(block));
        if (!t) return std::nullopt;
        return t->ticks;
      },
      py::arg("block"));

  // --- scheme --------------------------------------------------------------
  py::class_<RandomSource>(m, "RandomSource", "Seeded deterministic randomness")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("block", [](RandomSource& rng) { return to_py(rng.block().view()); })
      .def(
          "bytes", [](RandomSource& rng, std::size_t n) { return to_py(rng.bytes(n)); },
          py::arg("n"));

  py::class_<SmartCard>(m, "SmartCard", "Issued card: {L, e, r} plus the hash handle")
      .def_property_readonly("l", [](const SmartCard& c) { return to_py(c.l.view()); })
      .def_property_readonly("e", [](const SmartCard& c) { return to_py(c.e.view()); })
      .def_property_readonly("r", [](const SmartCard& c) { return to_py(c.r.view()); })
      .def_property_readonly("hash_alg",
                             [](const SmartCard& c) { return std::string(hash_alg_name(c.alg)); });

  py::class_<PendingLogin>(m, "PendingLogin",
                           "Card state retained between login and server verification");

  py::class_<LoginAttempt>(m, "LoginAttempt", "Login message <B1, C1> plus retained card state")
      .def_property_readonly("b1", [](const LoginAttempt& a) { return to_py(a.message.b1.view()); })
      .def_property_readonly("c1", [](const LoginAttempt& a) { return to_py(a.message.c1.view()); })
      .def_readonly("pending", &LoginAttempt::pending);

  py::class_<ServerState>(m, "Server", "Registration server and authenticator")
      .def(py::init([](const py::bytes& master_key, std::uint64_t freshness_window,
                       const std::string& alg) {
             return ServerState(to_byte_vec(master_key), freshness_window,
                                hash_alg_from_name(alg));
           }),
           py::arg("master_key"), py::arg("freshness_window") = 60, py::arg("alg") = "sha256")
      .def(
          "enroll",
          [](ServerState& s, const std::string& id, const std::string& pw, RandomSource& rng) {
            RegistrationRequest request = register_request(id, pw, s.alg(), rng);
            return finalize_card(s.register_user(request.message), request.credentials.r);
          },
          py::arg("id"), py::arg("pw"), py::arg("rng"),
          "Full registration round trip; returns the personalized card")
      .def(
          "authenticate",
          [](const ServerState& s, const py::bytes& b1, const py::bytes& c1, std::uint64_t tick) {
            LoginMessage message{block_arg(b1), Ciphertext::from_bytes(to_byte_vec(c1))};
            ServerAuthOutcome outcome = s.authenticate(message, {tick});
            py::dict d;
            d["accepted"] = outcome.accepted();
            d["reason"] = std::string(to_string(outcome.reason));
            d["work_units"] = outcome.work_units;
            if (outcome.accepted()) {
              d["b2"] = to_py(outcome.accept->response.b2.view());
              d["c2"] = to_py(outcome.accept->response.c2.view());
              d["sk"] = to_py(outcome.accept->session.sk.view());
              d["peer_id"] = outcome.accept->session.peer_id;
            }
            return d;
          },
          py::arg("b1"), py::arg("c1"), py::arg("tick"))
      .def_property_readonly("freshness_window", &ServerState::freshness_window)
      .def_property_readonly("registry", &ServerState::registry)
      .def_property_readonly(
          "master_digest",
          [](const ServerState& s) { return to_py(s.master_digest().view()); });

  m.def(
      "card_login",
      [](const SmartCard& card, const std::string& typed_id, const std::string& typed_pw,
         std::uint64_t tick) { return card_login(card, typed_id, typed_pw, {tick}); },
      py::arg("card"), py::arg("typed_id"), py::arg("typed_pw"), py::arg("tick"),
      "Card-side login; performs no input validation by design");

  m.def(
      "card_verify_server",
      [](const SmartCard& card, const PendingLogin& pending, const py::bytes& b2,
         const py::bytes& c2, std::uint64_t tick, std::uint64_t freshness_window) {
        ServerResponse response{block_arg(b2), Ciphertext::from_bytes(to_byte_vec(c2))};
        CardVerifyOutcome outcome =
            card_verify_server(card, pending, response, {tick}, freshness_window);
        py::dict d;
        d["accepted"] = outcome.accepted();
        d["reason"] = std::string(to_string(outcome.reason));
        if (outcome.accepted()) {
          d["sk"] = to_py(outcome.session->sk.view());
          d["peer_id"] = outcome.session->peer_id;
        }
        return d;
      },
      py::arg("card"), py::arg("pending"), py::arg("b2"), py::arg("c2"), py::arg("tick"),
      py::arg("freshness_window"));

  // --- attacks ---------------------------------------------------------
  m.def(
      "derive_master_digest",
      [](const SmartCard& own_card, const std::string& id, const std::string& pw) {
        sim::AdversaryKnowledge knowledge;
        knowledge.own_card = own_card;
        knowledge.own_creds = Credentials{id, pw, Block::from_bytes(own_card.r.view())};
        return to_py(attacks::extract_master_digest(knowledge).view());
      },
      py::arg("own_card"), py::arg("id"), py::arg("pw"),
      "h(x) from the adversary's own registration: e xor h(h(r||pw)||id)");

  m.def(
      "guess_password",
      [](const SmartCard& victim_card, const py::bytes& b1, const py::bytes& c1,
         const py::bytes& master_digest, const std::vector<std::string>& dictionary) {
        sim::AdversaryKnowledge knowledge;
        knowledge.derived_hx = block_arg(master_digest);
        LoginMessage message{block_arg(b1), Ciphertext::from_bytes(to_byte_vec(c1))};
        attacks::AttackVerdict verdict = attacks::guess_password(
            knowledge, victim_card, message, attacks::Dictionary::from_entries(dictionary));
        return verdict_dict(verdict, /*recovered_as_bytes=*/false);
      },
      py::arg("victim_card"), py::arg("b1"), py::arg("c1"), py::arg("master_digest"),
      py::arg("dictionary"), "Offline dictionary attack against one intercepted login");

  m.def(
      "deanonymize",
      [](const SmartCard& any_card, const py::bytes& b1, const py::bytes& c1,
         const py::bytes& master_digest) {
        sim::AdversaryKnowledge knowledge;
        knowledge.own_card = any_card;
        knowledge.derived_hx = block_arg(master_digest);
        LoginMessage message{block_arg(b1), Ciphertext::from_bytes(to_byte_vec(c1))};
        attacks::AttackVerdict verdict = attacks::deanonymize(knowledge, message);
        return verdict_dict(verdict, /*recovered_as_bytes=*/true);
      },
      py::arg("any_card"), py::arg("b1"), py::arg("c1"), py::arg("master_digest"),
      "Identity recovery from one intercepted login message");

  m.def(
      "wrong_input_scenario",
      [](const ServerState& server, const SmartCard& card, const std::string& id,
         const std::string& pw, const std::string& mode) {
        sim::SimChannel channel;
        sim::SimClock clock(1, {3, 5, 7});
        attacks::AttackVerdict verdict = attacks::wrong_input_scenario(
            sim::UserAgent{card, id, pw}, server, channel, clock,
            attacks::input_mode_from_name(mode));
        return verdict_dict(verdict, /*recovered_as_bytes=*/false);
      },
      py::arg("server"), py::arg("card"), py::arg("id"), py::arg("pw"), py::arg("mode"),
      "Wrong-input login flaw: card emits, server rejects (modes: wrong-password, "
      "wrong-identity, control)");
}
