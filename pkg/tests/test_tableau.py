import numpy as np
import pytest
from helpers import ALL_KINDS, dense_sign, random_gates

from cuequiv.oracle import clifford_matrix, pauli_matrix
from cuequiv.pauli import PauliString
from cuequiv.tableau import (
    CliffordGate,
    CliffordTableau,
    Frame,
    apply_gate,
    compose,
    conjugate,
    equal_up_to_phase,
    inverse,
    synthesize,
    tableau_of,
)


def all_paulis(n):
    for z in range(2**n):
        for x in range(2**n):
            for r in (0, 1):
                yield PauliString(n, z, x, r)


def check_against_dense(gates, n):
    t = CliffordTableau.from_gates(n, gates)
    u = clifford_matrix(n, gates)
    for p in all_paulis(n):
        image = conjugate(t, p)
        dense = u @ pauli_matrix(p) @ u.conj().T
        body = pauli_matrix(image.with_sign(0))
        assert dense_sign(dense, body) == (-1 if image.r else 1), (gates, p, image)


class TestGate:
    def test_validation(self):
        with pytest.raises(ValueError):
            CliffordGate("T", (1,))
        with pytest.raises(ValueError):
            CliffordGate("CNOT", (1,))
        with pytest.raises(ValueError):
            CliffordGate("CNOT", (2, 2))
        with pytest.raises(IndexError):
            CliffordGate("H", (0,))

    def test_inverse(self):
        assert CliffordGate("S", (1,)).inverse().kind == "S_DAGGER"
        assert CliffordGate("CNOT", (1, 2)).inverse() == CliffordGate("CNOT", (1, 2))


class TestSingleGates:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_every_gate_exhaustively(self, kind):
        n = 2
        targets = (1,) if kind in ("H", "S", "S_DAGGER", "X", "Y", "Z") else (1, 2)
        check_against_dense([CliffordGate(kind, targets)], n)
        if len(targets) == 2:
            check_against_dense([CliffordGate(kind, (2, 1))], n)

    def test_known_images(self):
        h = tableau_of(CliffordGate("H", (1,)), 1)
        assert conjugate(h, PauliString.from_label("Y")) == PauliString.from_label("-Y")
        s = tableau_of(CliffordGate("S", (1,)), 1)
        assert conjugate(s, PauliString.from_label("X")) == PauliString.from_label("Y")
        x = tableau_of(CliffordGate("X", (1,)), 1)
        assert conjugate(x, PauliString.from_label("Z")) == PauliString.from_label("-Z")
        cx = tableau_of(CliffordGate("CNOT", (1, 2)), 2)
        assert conjugate(cx, PauliString.from_label("XI")) == PauliString.from_label("XX")
        assert conjugate(cx, PauliString.from_label("IZ")) == PauliString.from_label("ZZ")


class TestComposition:
    def test_random_circuits_match_dense(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 4))
            check_against_dense(random_gates(n, int(rng.integers(1, 12)), rng), n)

    def test_compose_matches_concatenation(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 5))
            g1, g2 = random_gates(n, 8, rng), random_gates(n, 8, rng)
            t1, t2 = CliffordTableau.from_gates(n, g1), CliffordTableau.from_gates(n, g2)
            assert compose(t2, t1) == CliffordTableau.from_gates(n, g1 + g2)

    def test_prepend_matches_compose(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 6))
            base = random_gates(n, 10, rng)
            f = Frame.from_tableau(CliffordTableau.from_gates(n, base))
            extra = random_gates(n, 10, rng)
            for g in reversed(extra):
                f.prepend(g)
            assert f.to_tableau() == CliffordTableau.from_gates(n, extra + base)

    def test_apply_gate(self):
        t = apply_gate(CliffordTableau.identity(1), CliffordGate("H", (1,)))
        assert t.x_images[0] == PauliString.from_label("Z")

    def test_conjugate_bits_agrees(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 5))
            t = CliffordTableau.from_gates(n, random_gates(n, 12, rng))
            f = Frame.from_tableau(t)
            p = PauliString(n, int(rng.integers(2**n)), int(rng.integers(2**n)), int(rng.integers(2)))
            x, z, r = f.conjugate_bits(p.x, p.z, p.r)
            assert PauliString(n, z, x, r) == conjugate(t, p)


class TestInverseAndSynthesis:
    def test_inverse(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 5))
            t = CliffordTableau.from_gates(n, random_gates(n, 15, rng))
            assert compose(inverse(t), t) == CliffordTableau.identity(n)
            assert compose(t, inverse(t)) == CliffordTableau.identity(n)

    def test_synthesis_reproduces_tableau(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 6))
            t = CliffordTableau.from_gates(n, random_gates(n, 20, rng))
            assert CliffordTableau.from_gates(n, synthesize(t)) == t

    def test_symplectic(self, rng):
        t = CliffordTableau.from_gates(4, random_gates(4, 30, rng))
        assert t.is_symplectic()
        broken = CliffordTableau(2, (PauliString.from_label("XI"),) * 2, (PauliString.from_label("ZI"),) * 2)
        assert not broken.is_symplectic()

    def test_equal_up_to_phase_ignores_global_phase(self):
        # S·S·S·S = I and (XZ)(XZ) = -I, both identity as Cliffords
        s4 = CliffordTableau.from_gates(1, [CliffordGate("S", (1,))] * 4)
        xzxz = CliffordTableau.from_gates(1, [CliffordGate(k, (1,)) for k in "XZXZ"])
        assert equal_up_to_phase(s4, CliffordTableau.identity(1))
        assert equal_up_to_phase(xzxz, CliffordTableau.identity(1))
        x = CliffordTableau.from_gates(1, [CliffordGate("X", (1,))])
        assert not equal_up_to_phase(x, CliffordTableau.identity(1))

    def test_synthesized_matrix_equals_original_up_to_phase(self, rng):
        from cuequiv.oracle import equal_up_to_global_phase

        for _ in range(10):
            n = int(rng.integers(1, 4))
            gates = random_gates(n, 15, rng)
            t = CliffordTableau.from_gates(n, gates)
            assert equal_up_to_global_phase(clifford_matrix(n, gates), clifford_matrix(n, synthesize(t)))
