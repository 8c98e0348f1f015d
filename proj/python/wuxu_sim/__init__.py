"""Smart-card authentication scheme simulator with a built-in attack suite.

The heavy lifting lives in the C++ extension ``wuxu_sim._core``; this
package re-exports its public surface and ships a pure-python reference
implementation of the primitives (:mod:`wuxu_sim.reference`) used for
cross-checking.
"""

from wuxu_sim._core import (
    LoginAttempt,
    PendingLogin,
    RandomSource,
    Server,
    SmartCard,
    card_login,
    card_verify_server,
    concat_fields,
    deanonymize,
    decode_id,
    decode_timestamp,
    derive_master_digest,
    encode_id,
    encode_timestamp,
    guess_password,
    hash_digest,
    keystream_decrypt,
    keystream_encrypt,
    split_fields,
    wrong_input_scenario,
)

__all__ = [
    "LoginAttempt",
    "PendingLogin",
    "RandomSource",
    "Server",
    "SmartCard",
    "card_login",
    "card_verify_server",
    "concat_fields",
    "deanonymize",
    "decode_id",
    "decode_timestamp",
    "derive_master_digest",
    "encode_id",
    "encode_timestamp",
    "guess_password",
    "hash_digest",
    "keystream_decrypt",
    "keystream_encrypt",
    "split_fields",
    "wrong_input_scenario",
]

__version__ = "0.1.0"
