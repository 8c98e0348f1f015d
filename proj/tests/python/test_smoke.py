"""Smoke tests for the python bindings.

Runs directly (``python3 test_smoke.py``) or under pytest. Needs the
built extension on PYTHONPATH (the build stages a complete package into
``<build>/python``).
"""

import wuxu_sim as wx
from wuxu_sim import reference as ref


def test_primitives_match_reference():
    for alg in ("sha256", "sha3-256", "blake2s256"):
        for data in (b"", b"abc", bytes(range(100))):
            assert wx.hash_digest(alg, data) == ref.hash_digest(alg, data)

    key = bytes(range(32))
    plaintext = bytes((i * 7) & 0xFF for i in range(96))
    ct = wx.keystream_encrypt("sha256", key, plaintext)
    assert ct == ref.keystream_encrypt("sha256", key, plaintext)
    assert wx.keystream_decrypt("sha256", key, ct) == plaintext

    fields = [b"one", b"two", b"three"]
    joined = wx.concat_fields(fields)
    assert joined == ref.concat_fields(fields)
    assert wx.split_fields(joined) == fields

    assert wx.encode_id("alice") == ref.encode_id("alice")
    assert wx.decode_id(wx.encode_id("alice")) == b"alice"
    assert wx.decode_id(bytes(32)) is None
    assert wx.encode_timestamp(12345) == ref.encode_timestamp(12345)
    assert wx.decode_timestamp(wx.encode_timestamp(12345)) == 12345


def _provisioned_world():
    rng = wx.RandomSource(77)
    server = wx.Server(rng.bytes(32), freshness_window=60, alg="sha256")
    card = server.enroll("alice", "correct-horse", rng)
    return server, card


def test_honest_session_agrees_on_key():
    server, card = _provisioned_world()
    attempt = wx.card_login(card, "alice", "correct-horse", 100)
    outcome = server.authenticate(attempt.b1, attempt.c1, 102)
    assert outcome["accepted"], outcome
    assert outcome["peer_id"] == "alice"
    finish = wx.card_verify_server(card, attempt.pending, outcome["b2"], outcome["c2"], 104, 60)
    assert finish["accepted"], finish
    assert finish["sk"] == outcome["sk"]


def test_wrong_input_is_emitted_then_rejected():
    server, card = _provisioned_world()
    attempt = wx.card_login(card, "alice", "wrong-password", 100)
    outcome = server.authenticate(attempt.b1, attempt.c1, 101)
    assert not outcome["accepted"]
    assert outcome["reason"] == "stale"

    result = wx.wrong_input_scenario(server, card, "alice", "correct-horse", "wrong-identity")
    assert result["success"], result


def test_offline_attacks_work_from_derived_digest():
    server, card = _provisioned_world()
    rng = wx.RandomSource(88)
    own_card = server.enroll("eve", "evepass", rng)
    digest = wx.derive_master_digest(own_card, "eve", "evepass")
    assert digest == server.master_digest

    attempt = wx.card_login(card, "alice", "correct-horse", 500)
    dictionary = ["alpha", "beta", "correct-horse", "gamma"]
    verdict = wx.guess_password(card, attempt.b1, attempt.c1, digest, dictionary)
    assert verdict["success"], verdict
    assert verdict["recovered"] == "correct-horse"
    assert verdict["work"] == 3

    who = wx.deanonymize(own_card, attempt.b1, attempt.c1, digest)
    assert who["success"], who
    assert who["recovered"] == b"alice"


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok: {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
