#!/usr/bin/env python3
"""Independent reference for the byte-level formats used by vaccsc.

Regenerates tests/data/*.json from hashlib and the `cryptography` package.
The C++ tests load the frozen output; rerun this only when a format changes.

    python3 tests/oracles/gen_vectors.py tests/data
"""

import hashlib
import json
import random
import struct
import sys
from pathlib import Path

from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PrivateKey
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms

CONTENT_BYTE = {"placebo": 0x00, "vaccine": 0x01}


def sha256(*parts: bytes) -> bytes:
    h = hashlib.sha256()
    for p in parts:
        h.update(p)
    return h.digest()


def u32(v: int) -> bytes:
    return struct.pack(">I", v)


def u64(v: int) -> bytes:
    return struct.pack(">Q", v)


def var_bytes(b: bytes) -> bytes:
    return u32(len(b)) + b


class Rng:
    """ChaCha20 (IETF, zero nonce) keystream keyed from a seed."""

    def __init__(self, key: bytes):
        self.key = key
        self.stream = b""
        self.blocks = 0

    @classmethod
    def from_seed(cls, seed: int) -> "Rng":
        return cls(sha256(b"vaccsc.rng.seed", u64(seed)))

    def fork(self, label: str) -> "Rng":
        return Rng(sha256(b"vaccsc.rng.fork", self.key, label.encode()))

    def take(self, n: int) -> bytes:
        while len(self.stream) < n:
            # cryptography's 16-byte ChaCha20 nonce is counter(LE32) || nonce(12).
            nonce = struct.pack("<I", self.blocks) + bytes(12)
            enc = Cipher(algorithms.ChaCha20(self.key, nonce), mode=None).encryptor()
            self.stream += enc.update(bytes(64 * 64))
            self.blocks += 64
        out, self.stream = self.stream[:n], self.stream[n:]
        return out

    def next_u64(self) -> int:
        return int.from_bytes(self.take(8), "little")

    def uniform_below(self, bound: int) -> int:
        top = 2**64 - 1
        limit = top - (top % bound + 1) % bound
        while True:
            v = self.next_u64()
            if v <= limit:
                return v % bound

    def uniform01(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


def commitment_vectors():
    rnd = random.Random(20240601)
    nonces = [bytes(32), b"\xff" * 32, bytes(range(32))]
    nonces += [rnd.randbytes(32) for _ in range(5)]
    out = []
    for nonce in nonces:
        for content in ("vaccine", "placebo"):
            digest = sha256(nonce + bytes([CONTENT_BYTE[content]]))
            out.append(
                {"nonce_hex": nonce.hex(), "content": content, "expected_digest_hex": digest.hex()}
            )
    return out


def coinflip_vectors():
    rnd = random.Random(7)
    contributions = []
    for value in (0, 1, 2**64 - 1, 0x0123456789ABCDEF):
        nonce = rnd.randbytes(32)
        contributions.append(
            {
                "value": value,
                "nonce_hex": nonce.hex(),
                "expected_digest_hex": sha256(u64(value) + nonce).hex(),
            }
        )
    selections = []
    for _ in range(12):
        a, b = rnd.getrandbits(64), rnd.getrandbits(64)
        count = rnd.choice([1, 2, 3, 7, 10, 1000, 2**32 + 15])
        selections.append(
            {"r_a": a, "r_b": b, "count": count, "result": a ^ b, "index": (a ^ b) % count}
        )
    return {"contributions": contributions, "selections": selections}


def rng_vectors():
    seeds = []
    for seed in (0, 1, 42, 2**64 - 1):
        rng = Rng.from_seed(seed)
        seeds.append(
            {
                "seed": seed,
                "key_hex": rng.key.hex(),
                "u64": [rng.next_u64() for _ in range(6)],
            }
        )
    # Crosses the 64-block refill boundary.
    far = Rng.from_seed(9)
    far.take(4096 - 4)
    boundary = far.take(16).hex()

    fork = Rng.from_seed(42).fork("clinic/0")
    fork_vec = {"seed": 42, "label": "clinic/0", "key_hex": fork.key.hex(),
                "u64": [fork.next_u64() for _ in range(4)]}

    derived = Rng.from_seed(5)
    below = [derived.uniform_below(b) for b in (1, 2, 3, 10, 1000, 2**63 + 1)]
    unit = [derived.uniform01() for _ in range(4)]
    return {
        "seeds": seeds,
        "boundary": {"seed": 9, "offset": 4096 - 4, "bytes_hex": boundary},
        "fork": fork_vec,
        "derived": {"seed": 5, "bounds": [1, 2, 3, 10, 1000, 2**63 + 1], "uniform_below": below,
                    "uniform01": unit},
    }


def account_vectors():
    out = []
    for seed, label in ((42, "developer"), (42, "clinic/0"), (7, "patient/3")):
        rng = Rng.from_seed(seed).fork(label)
        signing_seed = rng.take(32)
        sk = Ed25519PrivateKey.from_private_bytes(signing_seed)
        pk = sk.public_key().public_bytes(serialization.Encoding.Raw, serialization.PublicFormat.Raw)
        address = sha256(pk)[:20]

        method, payload, sequence = "report_sick", b"", 3
        msg = b"vaccsc.tx.v1" + var_bytes(method.encode()) + var_bytes(payload) + u64(sequence)
        out.append(
            {
                "seed": seed,
                "label": label,
                "signing_seed_hex": signing_seed.hex(),
                "public_key_hex": pk.hex(),
                "address_hex": address.hex(),
                "tx": {
                    "method": method,
                    "payload_hex": payload.hex(),
                    "sequence": sequence,
                    "signing_bytes_hex": msg.hex(),
                    "signature_hex": sk.sign(msg).hex(),
                },
            }
        )
    return out


def main():
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent.parent / "data")
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {
        "commitment_vectors.json": commitment_vectors(),
        "coinflip_vectors.json": coinflip_vectors(),
        "rng_vectors.json": rng_vectors(),
        "account_vectors.json": account_vectors(),
    }
    for name, data in files.items():
        (out_dir / name).write_text(json.dumps(data, indent=2) + "\n")
        print(f"wrote {out_dir / name}")


if __name__ == "__main__":
    main()
