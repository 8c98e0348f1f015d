"""Pure-python reference implementation of the wire-level primitives.

Everything here is independent of the C++ extension (hashlib instead of
OpenSSL EVP calls, int arithmetic instead of byte loops) and exists so
tests can cross-check the two implementations byte for byte.
"""

from __future__ import annotations

import hashlib
import struct
from typing import List, Optional

BLOCK_WIDTH = 32

_ALGS = {
    "sha256": hashlib.sha256,
    "sha3-256": hashlib.sha3_256,
    "blake2s256": hashlib.blake2s,
}


def hash_digest(alg: str, data: bytes) -> bytes:
    return _ALGS[alg](data).digest()


def concat_fields(fields: List[bytes]) -> bytes:
    if not fields:
        raise ValueError("field list must be non-empty")
    out = bytearray()
    for field in fields:
        if not field:
            raise ValueError("fields must be non-empty")
        out += struct.pack(">I", len(field))
        out += field
    return bytes(out)


def split_fields(joined: bytes) -> List[bytes]:
    fields = []
    i = 0
    while i < len(joined):
        if i + 4 > len(joined):
            raise ValueError("truncated length prefix")
        (n,) = struct.unpack(">I", joined[i : i + 4])
        i += 4
        if n == 0 or i + n > len(joined):
            raise ValueError("bad field length")
        fields.append(joined[i : i + n])
        i += n
    if not fields:
        raise ValueError("no fields")
    return fields


def keystream_encrypt(alg: str, key: bytes, plaintext: bytes) -> bytes:
    if len(key) != BLOCK_WIDTH:
        raise ValueError("key must be one block")
    if len(plaintext) % BLOCK_WIDTH != 0:
        raise ValueError("plaintext must be a whole number of blocks")
    out = bytearray()
    for j in range(len(plaintext) // BLOCK_WIDTH):
        stream = hash_digest(alg, concat_fields([key, struct.pack(">I", j)]))
        chunk = plaintext[j * BLOCK_WIDTH : (j + 1) * BLOCK_WIDTH]
        out += bytes(a ^ b for a, b in zip(chunk, stream))
    return bytes(out)


keystream_decrypt = keystream_encrypt  # XOR keystream: involution


def encode_id(identity: str) -> bytes:
    raw = identity.encode("utf-8")
    if not raw or len(raw) > BLOCK_WIDTH or b"\x00" in raw:
        raise ValueError("identity must be 1..32 bytes with no NUL")
    return raw + b"\x00" * (BLOCK_WIDTH - len(raw))


def decode_id(block: bytes) -> Optional[bytes]:
    if len(block) != BLOCK_WIDTH:
        raise ValueError("identity block must be 32 bytes")
    raw = block.rstrip(b"\x00")
    if not raw or b"\x00" in raw:
        return None
    return raw


def encode_timestamp(ticks: int) -> bytes:
    return b"\x00" * 24 + struct.pack(">Q", ticks)


def decode_timestamp(block: bytes) -> Optional[int]:
    if len(block) != BLOCK_WIDTH:
        raise ValueError("timestamp block must be 32 bytes")
    if block[:24] != b"\x00" * 24:
        return None
    (ticks,) = struct.unpack(">Q", block[24:])
    return ticks
