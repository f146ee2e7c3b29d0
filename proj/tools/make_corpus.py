"""Writes the seeded random part of the instance corpus used by the tests."""

import json
import pathlib
import sys

import numpy as np


def cmat(rng, w, scale=1.0):
    m = (rng.standard_normal((w, w)) + 1j * rng.standard_normal((w, w))) * scale / np.sqrt(2)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def instance(seed, d, n, m, with_k, families):
    rng = np.random.default_rng(seed)
    w = d * n
    doc = {
        "format_version": 1,
        "algebra_dim": d,
        "module_rank": n,
        "measure": [
            {"weight": float(rng.uniform(0.2, 2.0)), "operator": cmat(rng, w)} for _ in range(m)
        ],
    }
    if with_k:
        doc["k_operator"] = cmat(rng, w)
    if families:
        doc["families"] = {name: [cmat(rng, w, 0.2) for _ in range(m)] for name in families}
    return doc


SPECS = [
    (1, 1, 2, 3, False, []),
    (2, 1, 3, 2, True, []),
    (3, 2, 2, 4, False, ["R"]),
    (4, 3, 1, 5, True, ["R"]),
    (5, 2, 3, 3, False, ["T2", "T3"]),
    (6, 1, 4, 6, True, ["R1", "R2", "T2"]),
    (7, 3, 2, 2, True, ["R"]),
    (8, 2, 4, 8, False, []),
    (9, 1, 3, 16, True, ["R"]),
]


def main(out_dir):
    out = pathlib.Path(out_dir)
    for seed, d, n, m, with_k, fams in SPECS:
        doc = instance(seed, d, n, m, with_k, fams)
        path = out / f"random_{seed:02d}_d{d}n{n}m{m}.json"
        path.write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/instances")
