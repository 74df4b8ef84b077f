#!/usr/bin/env python3
"""Independent big-integer reference for the zkagree field hash.

Implements the t=3 algebraic permutation, the length-tagged sponge and the
31-byte chunk-and-fold document digest with plain Python integers, with no
code shared with the C++ implementation. Used to generate and cross-check
the frozen golden vectors in data/golden/hash_vectors.json.

Usage:
  python3 reference_oracle.py vectors   # print golden-vector JSON to stdout
  python3 reference_oracle.py zeros     # print the Merkle zero-subtree chain
"""

import json
import sys

P = 21888242871839275222246405745257275088548364400416034343698204186575808495617

SEED = 0x5A4B414752454531  # ascii "ZKAGREE1"
FULL_ROUNDS = 8
PARTIAL_ROUNDS = 56
NUM_CONSTANTS = FULL_ROUNDS * 3 + PARTIAL_ROUNDS

MASK64 = (1 << 64) - 1


def splitmix64_stream(seed):
    x = seed
    while True:
        x = (x + 0x9E3779B97F4A7C15) & MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def round_constants():
    gen = splitmix64_stream(SEED)
    out = []
    for _ in range(NUM_CONSTANTS):
        limbs = [next(gen) for _ in range(4)]
        v = sum(l << (64 * i) for i, l in enumerate(limbs))
        out.append(v % P)
    return out


RC = round_constants()


def sbox(x):
    return pow(x, 5, P)


def matmul_external(s):
    t = sum(s) % P
    return [(x + t) % P for x in s]


def matmul_internal(s):
    t = sum(s) % P
    return [(s[0] + t) % P, (s[1] + t) % P, (2 * s[2] + t) % P]


def permute(state):
    s = matmul_external(state)
    rc = 0
    half = FULL_ROUNDS // 2
    for _ in range(half):
        s = [sbox((x + RC[rc + i]) % P) for i, x in enumerate(s)]
        rc += 3
        s = matmul_external(s)
    for _ in range(PARTIAL_ROUNDS):
        s[0] = sbox((s[0] + RC[rc]) % P)
        rc += 1
        s = matmul_internal(s)
    for _ in range(half):
        s = [sbox((x + RC[rc + i]) % P) for i, x in enumerate(s)]
        rc += 3
        s = matmul_external(s)
    return s


def hash_fields(inputs):
    n = len(inputs)
    assert 1 <= n <= 16
    state = [0, 0, n % P]
    i = 0
    while i < n:
        state[0] = (state[0] + inputs[i]) % P
        if i + 1 < n:
            state[1] = (state[1] + inputs[i + 1]) % P
        state = permute(state)
        i += 2
    return state[0]


def digest_document(data: bytes):
    chunks = []
    for off in range(0, len(data), 31):
        piece = data[off:off + 31]
        piece = piece + b"\x00" * (31 - len(piece))
        chunks.append(int.from_bytes(piece, "little"))
    if not chunks:
        chunks = [0]
    acc = hash_fields([chunks[0]])
    for c in chunks[1:]:
        acc = hash_fields([acc, c])
    return acc


def fe_hex(v):
    return format(v, "064x")


def make_vectors():
    hf_cases = [
        [0],
        [1],
        [2],
        [0, 0],
        [1, 2],
        [2, 1],
        [P - 1],
        [P - 1, P - 1],
        [1, 2, 3],
        [5, 0, 0, 7],
        list(range(1, 17)),
    ]
    dd_cases = [
        b"",
        b"a",
        b"abc",
        b"\x00" * 31,
        b"\x00" * 32,
        bytes(range(1, 63)),
        b"the quick brown fox jumps over the lazy dog",
    ]
    doc = {
        "hash_fields": [
            {"inputs_hex": [fe_hex(x) for x in ins], "output_hex": fe_hex(hash_fields(ins))}
            for ins in hf_cases
        ],
        "digest_document": [
            {"doc_hex": d.hex(), "output_hex": fe_hex(digest_document(d))}
            for d in dd_cases
        ],
    }
    return doc


def merkle_zeros(depth=20):
    zs = [0]
    for _ in range(depth):
        zs.append(hash_fields([zs[-1], zs[-1]]))
    return zs


if __name__ == "__main__":
    mode = sys.argv[1] if len(sys.argv) > 1 else "vectors"
    if mode == "vectors":
        print(json.dumps(make_vectors(), indent=2))
    elif mode == "zeros":
        for i, z in enumerate(merkle_zeros()):
            print(f"{i:2d} {fe_hex(z)}")
    elif mode == "digest-file":
        with open(sys.argv[2], "rb") as f:
            print(fe_hex(digest_document(f.read())))
    else:
        raise SystemExit(f"unknown mode {mode}")
