"""Equivalence checking for Clifford circuits with shared single-qubit slots."""

from .circuit import CliffordUCircuit, Layer, Slot, normalize
from .decision import (
    DecisionMatrix,
    Mode,
    Outcome,
    SlotPermutation,
    Verdict,
    build_decision_matrix,
    check_equivalence,
    check_equivalence_permuted,
    inversion_pairs,
    propagate_column,
)
from .pauli import PauliString, symplectic_inner_product
from .qasm import emit_qasm, parse_qasm, read_circuit
from .tableau import CliffordGate, CliffordTableau, conjugate, equal_up_to_phase

__all__ = [
    "CliffordGate",
    "CliffordTableau",
    "CliffordUCircuit",
    "DecisionMatrix",
    "Layer",
    "Mode",
    "Outcome",
    "PauliString",
    "Slot",
    "SlotPermutation",
    "Verdict",
    "build_decision_matrix",
    "check_equivalence",
    "check_equivalence_permuted",
    "conjugate",
    "emit_qasm",
    "equal_up_to_phase",
    "inversion_pairs",
    "normalize",
    "parse_qasm",
    "propagate_column",
    "read_circuit",
    "symplectic_inner_product",
]
__version__ = "0.1.0"
