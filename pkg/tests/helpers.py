"""Shared builders for tests."""

import numpy as np

from cuequiv.circuit import CliffordUCircuit, Layer, Slot
from cuequiv.tableau import GATE_ARITY, CliffordGate

ALL_KINDS = sorted(GATE_ARITY)


def random_gates(n, count, rng, kinds=ALL_KINDS):
    kinds = [k for k in kinds if GATE_ARITY[k] <= n]
    out = []
    for _ in range(count):
        kind = kinds[rng.integers(len(kinds))]
        qs = rng.choice(n, size=GATE_ARITY[kind], replace=False) + 1
        out.append(CliffordGate(kind, tuple(int(q) for q in qs)))
    return out


def random_circuit(n, m, depth, rng, kinds=ALL_KINDS):
    layers = [Layer(n, tuple(random_gates(n, depth, rng, kinds))) for _ in range(m + 1)]
    slots = [Slot(i + 1, int(rng.integers(n)) + 1) for i in range(m)]
    return CliffordUCircuit(n, tuple(layers), tuple(slots))


def assert_same_structure(c1, c2):
    from cuequiv.tableau import equal_up_to_phase

    assert c1.n == c2.n and c1.m == c2.m
    for s1, s2 in zip(c1.slots, c2.slots):
        assert (s1.label, s1.qubit, s1.content) == (s2.label, s2.qubit, s2.content)
    for l1, l2 in zip(c1.layers, c2.layers):
        assert equal_up_to_phase(l1.tableau, l2.tableau)


def dense_sign(matrix, pauli_body_matrix):
    """+1 or -1 if ``matrix`` is ± the given Pauli body, else None."""
    d = matrix.shape[0]
    coeff = np.trace(pauli_body_matrix.conj().T @ matrix) / d
    if np.allclose(matrix, coeff * pauli_body_matrix, atol=1e-12) and np.isclose(abs(coeff), 1, atol=1e-12):
        if np.isclose(coeff, 1):
            return 1
        if np.isclose(coeff, -1):
            return -1
    return None
