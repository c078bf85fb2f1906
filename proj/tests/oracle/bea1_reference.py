#!/usr/bin/env python3
"""Straight-line BEA-1 reference used to cross-check the C++ library.

Reads the table assets directly and applies M bit by bit from the basis
images, so it shares no code with the C++ implementation.

Usage:
  bea1_reference.py DATA_DIR verify-kat KAT_FILE
  bea1_reference.py DATA_DIR expand-key KEYHEX
  bea1_reference.py DATA_DIR encrypt KEYHEX PTHEX
"""
import sys
from pathlib import Path


def load(data_dir):
    d = Path(data_dir)
    sboxes = [[int(t, 16) for t in (d / f"sbox{i}.txt").read_text().split()] for i in range(4)]
    inv = []
    for s in sboxes:
        r = [0] * 1024
        for x, y in enumerate(s):
            r[y] = x
        inv.append(r)
    def rows(name):
        v = [int(t, 16) for t in (d / name).read_text().split()]
        return [v[4 * i:4 * i + 4] for i in range(40)]
    return sboxes, inv, rows("m.txt"), rows("minv.txt")


def linear(rows, v):
    out = [0, 0, 0, 0]
    for j in range(4):
        for t in range(10):
            if (v[j] >> t) & 1:
                img = rows[10 * j + t]
                out = [a ^ b for a, b in zip(out, img)]
    return out


def from_hex(text, nbundles):
    v = int(text, 16)
    return [(v >> (10 * (nbundles - 1 - i))) & 0x3FF for i in range(nbundles)]


def to_hex(bundles):
    v = 0
    for b in bundles:
        v = (v << 10) | b
    return format(v, "0%dX" % (len(bundles) * 10 // 4))


def expand_key(tables, key):
    s, _, m, _ = tables
    k = list(key)
    for i in range(7):
        x = linear(m, k[12 * i + 8:12 * i + 12])
        x = [s[j][x[j]] for j in range(4)]
        x[0] ^= pow(3, i, 1024)
        k += [k[12 * i + j] ^ x[j] for j in range(4)]
        k += [k[12 * i + 4 + j] ^ k[12 * i + 12 + j] for j in range(4)]
        k += [k[12 * i + 8 + j] ^ k[12 * i + 16 + j] for j in range(4)]
    assert len(k) == 96
    return [k[8 * r:8 * r + 8] for r in range(12)]


SHIFT = (0, 5, 2, 7, 4, 1, 6, 3)


def encrypt(tables, key, p):
    s, _, m, _ = tables
    rk = expand_key(tables, key)
    x = list(p)
    for r in range(10):
        x = [a ^ b for a, b in zip(x, rk[r])]
        x = [s[i % 4][x[i]] for i in range(8)]
        x = [x[i] for i in SHIFT]
        x = linear(m, x[:4]) + linear(m, x[4:])
    x = [a ^ b for a, b in zip(x, rk[10])]
    x = [s[i % 4][x[i]] for i in range(8)]
    x = [x[i] for i in SHIFT]
    return [a ^ b for a, b in zip(x, rk[11])]


def decrypt(tables, key, c):
    _, si, _, mi = tables
    rk = expand_key(tables, key)
    x = [a ^ b for a, b in zip(c, rk[11])]
    x = [x[i] for i in SHIFT]
    x = [si[i % 4][x[i]] for i in range(8)]
    x = [a ^ b for a, b in zip(x, rk[10])]
    for r in range(9, -1, -1):
        x = linear(mi, x[:4]) + linear(mi, x[4:])
        x = [x[i] for i in SHIFT]
        x = [si[i % 4][x[i]] for i in range(8)]
        x = [a ^ b for a, b in zip(x, rk[r])]
    return x


def verify_kat(tables, path):
    records, cur = [], {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            if cur:
                records.append(cur)
                cur = {}
            continue
        k, v = line.split("=", 1)
        cur[k.strip()] = v.strip()
    if cur:
        records.append(cur)
    for idx, rec in enumerate(records):
        key = from_hex(rec["KEY"], 12)
        pt = from_hex(rec["PT"], 8)
        ct = to_hex(encrypt(tables, key, pt))
        if ct != rec["CT"]:
            print(f"record {idx}: expected {rec['CT']} got {ct}")
            return 1
        if decrypt(tables, key, from_hex(ct, 8)) != pt:
            print(f"record {idx}: decrypt mismatch")
            return 1
    print(f"{len(records)} records verified")
    return 0


def main(argv):
    tables = load(argv[1])
    cmd = argv[2]
    if cmd == "verify-kat":
        return verify_kat(tables, argv[3])
    if cmd == "expand-key":
        for rk in expand_key(tables, from_hex(argv[3], 12)):
            print(to_hex(rk))
        return 0
    if cmd == "encrypt":
        print(to_hex(encrypt(tables, from_hex(argv[3], 12), from_hex(argv[4], 8))))
        return 0
    print(__doc__)
    return 1


if __name__ == "__main__":
    sys.exit(main(sys.argv))
