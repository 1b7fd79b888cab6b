#!/usr/bin/env python3
"""Regenerate fixtures/covend_golden.json.

Builds the 4-player EWL game as explicit 16x16 matrices (Kronecker products of
single-qubit gates, qubit 0 least significant) and multiplies them out with
numpy. Nothing here shares code with the Rust simulator.

    python3 scripts/golden_covend.py > fixtures/covend_golden.json
"""
import json
import math

import numpy as np

WEIGHTS = [0.5102, 0.3239, 0.0136, 0.1523]  # academia, industry, government, civil society
N = 4

I2 = np.eye(2, dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
S = np.diag([1, 1j])
SDG = np.diag([1, -1j])
P0 = np.diag([1, 0]).astype(complex)
P1 = np.diag([0, 1]).astype(complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)


def ry(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def embed(ops):
    """ops: dict qubit -> 2x2. Kronecker order is qubit N-1 first."""
    full = np.array([[1]], dtype=complex)
    for q in reversed(range(N)):
        full = np.kron(full, ops.get(q, I2))
    return full


def single(gate, q):
    return embed({q: gate})


def cx(control, target):
    return embed({control: P0}) + embed({control: P1, target: X})


def main():
    thetas = [2 * math.asin(math.sqrt(p)) for p in WEIGHTS]
    layers = []
    layers += [single(H, q) for q in range(N)]
    layers += [single(S, q) for q in range(N)]
    layers += [cx(q, q + 1) for q in range(N - 1)]
    layers += [single(ry(t), q) for q, t in enumerate(thetas)]
    layers += [cx(q, q + 1) for q in reversed(range(N - 1))]
    layers += [single(SDG, q) for q in range(N)]

    psi = np.zeros(2 ** N, dtype=complex)
    psi[0] = 1
    for u in layers:
        psi = u @ psi
    probs = np.abs(psi) ** 2
    q = [float(sum(probs[k] for k in range(2 ** N) if (k >> i) & 1)) for i in range(N)]
    json.dump(
        {
            "project_id": "101045956",
            "weights": WEIGHTS,
            "thetas": thetas,
            "probabilities": [float(p) for p in probs],
            "q": q,
        },
        fp=__import__("sys").stdout,
        indent=2,
    )
    print()


if __name__ == "__main__":
    main()
