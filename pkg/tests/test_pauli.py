import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuequiv.oracle import pauli_matrix
from cuequiv.pauli import (
    DimensionError,
    PauliString,
    PhasedPauli,
    PhaseError,
    derive_y_column,
    multiply,
    single_qubit_pauli,
    symplectic_inner_product,
)


def paulis(n):
    return st.builds(
        PauliString,
        st.just(n),
        st.integers(0, 2**n - 1),
        st.integers(0, 2**n - 1),
        st.integers(0, 1),
    )


class TestPauliString:
    def test_encoding(self):
        p = PauliString.from_label("IXYZ")
        assert [p.letter(q) for q in range(1, 5)] == list("IXYZ")
        # (z, x) per qubit: I=(0,0) X=(0,1) Y=(1,1) Z=(1,0)
        assert p.to_vector() == [0, 0, 1, 1, 0, 1, 1, 0, 0]

    def test_label_round_trip(self):
        for label in ["+X", "-Z", "+IYZX", "-YYYY"]:
            assert str(PauliString.from_label(label)) == label

    def test_vector_round_trip(self):
        p = PauliString.from_label("-XZIY")
        assert PauliString.from_vector(p.to_vector()) == p

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            PauliString.from_label("XQ")
        with pytest.raises(ValueError):
            PauliString(2, 4, 0)
        with pytest.raises(ValueError):
            PauliString(1, 0, 0, 2)
        with pytest.raises(IndexError):
            single_qubit_pauli(3, 4, "X")

    def test_weight(self):
        assert PauliString.from_label("XIZY").weight == 3


class TestSymplectic:
    def test_single_qubit_table(self):
        for a, b in itertools.product("IXYZ", repeat=2):
            pa, pb = PauliString.from_label(a), PauliString.from_label(b)
            anti = a != "I" and b != "I" and a != b
            assert symplectic_inner_product(pa, pb) == int(anti)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            symplectic_inner_product(PauliString.identity(2), PauliString.identity(3))

    @given(paulis(3), paulis(3))
    def test_matches_dense_commutator(self, a, b):
        ma, mb = pauli_matrix(a), pauli_matrix(b)
        commute = np.allclose(ma @ mb, mb @ ma)
        assert symplectic_inner_product(a, b) == (0 if commute else 1)

    @given(paulis(3), paulis(3), paulis(3))
    def test_bilinear(self, a, b, c):
        ab = multiply(PhasedPauli(a), PhasedPauli(b)).base
        assert symplectic_inner_product(ab, c) == symplectic_inner_product(a, c) ^ symplectic_inner_product(b, c)


class TestMultiply:
    @given(paulis(3), paulis(3))
    def test_matches_dense_product(self, a, b):
        prod = multiply(PhasedPauli(a), PhasedPauli(b))
        dense = pauli_matrix(prod.base) * (1j**prod.quarter_phase)
        assert np.allclose(dense, pauli_matrix(a) @ pauli_matrix(b))

    def test_xz_gives_minus_iy(self):
        x, z = PauliString.from_label("X"), PauliString.from_label("Z")
        prod = multiply(PhasedPauli(x), PhasedPauli(z))
        assert prod.base.body == "Y" and prod.quarter_phase == 3

    def test_non_hermitian_rejected(self):
        prod = multiply(PhasedPauli(PauliString.from_label("X")), PhasedPauli(PauliString.from_label("Z")))
        with pytest.raises(PhaseError):
            prod.to_pauli()

    def test_sign_folds_into_phase(self):
        p = PhasedPauli(PauliString.from_label("-X"))
        assert p.quarter_phase == 2 and p.base.r == 0
        assert p.to_pauli() == PauliString.from_label("-X")


class TestDeriveY:
    def test_plain(self):
        y = derive_y_column(PauliString.from_label("X"), PauliString.from_label("Z"))
        assert y == PauliString.from_label("Y")

    def test_after_hadamard(self):
        # H maps X -> Z, Z -> X, so Y -> -Y
        y = derive_y_column(PauliString.from_label("Z"), PauliString.from_label("X"))
        assert y == PauliString.from_label("-Y")

    def test_commuting_inputs(self):
        with pytest.raises(PhaseError):
            derive_y_column(PauliString.from_label("XI"), PauliString.from_label("IZ"))
