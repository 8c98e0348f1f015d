#!/usr/bin/env python3
"""Independent oracle for the wire-level primitives.

Reads a JSON file with a list of requests, answers each one with the
pure-python reference implementation, writes a JSON list of hex results
(null where the reference reports a decode failure).

Request forms (all byte arguments hex-encoded):
    {"op": "hash",             "alg": A, "data": H}
    {"op": "keystream",        "alg": A, "key": H, "plaintext": H}
    {"op": "concat",           "fields": [H, ...]}
    {"op": "encode_id",        "id": H}
    {"op": "decode_id",        "block": H}
    {"op": "encode_timestamp", "ticks": N}
    {"op": "decode_timestamp", "block": H}

Usage: reference_oracle.py REQUEST_JSON RESPONSE_JSON
"""

import importlib.util
import json
import pathlib
import sys

_REF_PATH = pathlib.Path(__file__).resolve().parent.parent / "python" / "wuxu_sim" / "reference.py"
_spec = importlib.util.spec_from_file_location("wuxu_reference", _REF_PATH)
ref = importlib.util.module_from_spec(_spec)
_spec.loader.exec_module(ref)


def answer(req):
    op = req["op"]
    if op == "hash":
        return ref.hash_digest(req["alg"], bytes.fromhex(req["data"])).hex()
    if op == "keystream":
        return ref.keystream_encrypt(
            req["alg"], bytes.fromhex(req["key"]), bytes.fromhex(req["plaintext"])
        ).hex()
    if op == "concat":
        return ref.concat_fields([bytes.fromhex(f) for f in req["fields"]]).hex()
    if op == "encode_id":
        return ref.encode_id(bytes.fromhex(req["id"]).decode("utf-8")).hex()
    if op == "decode_id":
        raw = ref.decode_id(bytes.fromhex(req["block"]))
        return None if raw is None else raw.hex()
    if op == "encode_timestamp":
        return ref.encode_timestamp(req["ticks"]).hex()
    if op == "decode_timestamp":
        ticks = ref.decode_timestamp(bytes.fromhex(req["block"]))
        return None if ticks is None else format(ticks, "016x")
    raise ValueError(f"unknown op: {op}")


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    requests = json.loads(pathlib.Path(sys.argv[1]).read_text())
    results = [answer(req) for req in requests]
    pathlib.Path(sys.argv[2]).write_text(json.dumps(results))


if __name__ == "__main__":
    main()
