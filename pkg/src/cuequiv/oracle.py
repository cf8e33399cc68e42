"""Dense state-vector-free ground truth for small circuits.

Everything here works with explicit ``2^n × 2^n`` matrices and is only meant
for cross-checking the tableau machinery at desk scale.  Qubit 1 is the
leftmost (most significant) tensor factor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import CliffordUCircuit, ParametricGate, Slot
from .pauli import DimensionError, PauliString
from .tableau import CliffordGate

__all__ = [
    "DenseUnitary",
    "ResourceError",
    "SlotAssignment",
    "clifford_matrix",
    "equal_up_to_global_phase",
    "evaluate",
    "pauli_expansion_check",
    "pauli_matrix",
    "phase_aligned_distance",
    "slot_matrix",
    "unitaries_close",
]

MAX_QUBITS = 12
MAX_EXPANSION_SLOTS = 6
MAX_EXPANSION_QUBITS = 6


class ResourceError(RuntimeError):
    """Request exceeds the oracle's hard size guard."""


I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)

ONE_QUBIT = {"H": _H, "S": _S, "S_DAGGER": _S.conj().T, "X": PAULI["X"], "Y": PAULI["Y"], "Z": PAULI["Z"]}
TWO_QUBIT = {
    "CNOT": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "SWAP": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
}


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]]
    )


def u1(lam: float) -> np.ndarray:
    return np.diag([1, np.exp(1j * lam)])


def _parametric_matrix(g: ParametricGate) -> np.ndarray:
    if not g.is_fixed:
        raise ValueError(f"{g.name} has no concrete angle")
    v = g.values
    match g.name:
        case "rx":
            return rx(v[0])
        case "ry":
            return ry(v[0])
        case "rz":
            return rz(v[0])
        case "u1":
            return u1(v[0])
        case "u3":
            return u3(*v)
        case "t":
            return u1(np.pi / 4)
        case "tdg":
            return u1(-np.pi / 4)
    raise ValueError(f"no matrix for {g.name}")


def slot_matrix(slot: Slot) -> np.ndarray:
    """2×2 unitary of a fixed slot; content gates act in program order."""
    if not slot.is_fixed:
        raise ValueError(f"slot {slot.label} is symbolic")
    u = I2
    for g in slot.content:
        u = _parametric_matrix(g) @ u
    return u


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of a signed Pauli string."""
    out = np.array([[1.0 + 0j]])
    for q in range(1, p.n + 1):
        out = np.kron(out, PAULI[p.letter(q)])
    return -out if p.r else out


def _is_unitary(u: np.ndarray, tol: float) -> bool:
    return np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) < tol


@dataclass(frozen=True)
class DenseUnitary:
    n: int
    entries: np.ndarray

    def __post_init__(self):
        d = 1 << self.n
        if self.entries.shape != (d, d):
            raise DimensionError(f"expected a {d}×{d} matrix for n={self.n}, got {self.entries.shape}")
        if not _is_unitary(self.entries, 1e-10):
            raise ValueError("matrix is not unitary to 1e-10")

    def __matmul__(self, other: DenseUnitary) -> DenseUnitary:
        return DenseUnitary(self.n, self.entries @ other.entries)


@dataclass(frozen=True)
class SlotAssignment:
    """One 2×2 unitary per slot position, in slot order."""

    unitaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        us = tuple(np.asarray(u, dtype=complex) for u in self.unitaries)
        object.__setattr__(self, "unitaries", us)
        for k, u in enumerate(us, start=1):
            if u.shape != (2, 2) or not _is_unitary(u, 1e-12):
                raise ValueError(f"slot {k} assignment is not a 2×2 unitary")

    @classmethod
    def from_euler(cls, angles: Sequence[tuple[float, float, float]]) -> SlotAssignment:
        """``Rz(a) · Rx(b) · Rz(c)`` per slot."""
        return cls(tuple(rz(a) @ rx(b) @ rz(c) for a, b, c in angles))

    @classmethod
    def from_paulis(cls, letters: str) -> SlotAssignment:
        return cls(tuple(PAULI[p] for p in letters.upper()))

    @classmethod
    def random(cls, m: int, rng: np.random.Generator) -> SlotAssignment:
        return cls.from_euler([tuple(rng.uniform(0, 2 * np.pi, 3)) for _ in range(m)])

    @classmethod
    def for_circuit(cls, c: CliffordUCircuit, rng: np.random.Generator | None = None) -> SlotAssignment:
        """Concrete matrices for fixed slots, random Euler angles for symbolic ones."""
        rng = rng if rng is not None else np.random.default_rng()
        out = []
        for s in c.slots:
            if s.is_fixed:
                out.append(slot_matrix(s))
            else:
                a, b, g = rng.uniform(0, 2 * np.pi, 3)
                out.append(rz(a) @ rx(b) @ rz(g))
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.unitaries)

    def permuted(self, sigma: Sequence[int]) -> SlotAssignment:
        """Assignment for a circuit whose slot j carries ``U_{σ(j)}``."""
        seq = getattr(sigma, "sigma", sigma)
        return SlotAssignment(tuple(self.unitaries[i - 1] for i in seq))


def _apply(state: np.ndarray, n: int, gate: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """Left-multiply the operator ``state`` (shape ``(2,)*n + (D,)``) by ``gate``."""
    k = len(qubits)
    axes = [q - 1 for q in qubits]
    g = gate.reshape((2,) * (2 * k))
    out = np.tensordot(g, state, axes=(list(range(k, 2 * k)), axes))
    # tensordot puts the gate's output axes first; move them back into place
    return np.moveaxis(out, list(range(k)), axes)


def _apply_clifford(state, n, g: CliffordGate):
    if g.kind in ONE_QUBIT:
        return _apply(state, n, ONE_QUBIT[g.kind], g.targets)
    return _apply(state, n, TWO_QUBIT[g.kind], g.targets)


def clifford_matrix(n: int, gates: Sequence[CliffordGate]) -> np.ndarray:
    """Dense matrix of ``gates`` applied in order (the first gate acts first)."""
    if n > MAX_QUBITS:
        raise ResourceError(f"n={n} exceeds the dense guard of {MAX_QUBITS}")
    d = 1 << n
    state = np.eye(d, dtype=complex).reshape((2,) * n + (d,))
    for g in gates:
        state = _apply_clifford(state, n, g)
    return state.reshape(d, d)


def evaluate(c: CliffordUCircuit, a: SlotAssignment) -> DenseUnitary:
    """``C_m U_m C_{m-1} ... U_1 C_0`` as a dense matrix."""
    if c.n > MAX_QUBITS:
        raise ResourceError(f"n={c.n} exceeds the dense guard of {MAX_QUBITS}")
    if len(a) != c.m:
        raise ValueError(f"assignment covers {len(a)} slots, circuit has {c.m}")
    n, d = c.n, 1 << c.n
    state = np.eye(d, dtype=complex).reshape((2,) * n + (d,))
    for g in c.layers[0].gates:
        state = _apply_clifford(state, n, g)
    for slot, u, layer in zip(c.slots, a.unitaries, c.layers[1:]):
        state = _apply(state, n, u, (slot.qubit,))
        for g in layer.gates:
            state = _apply_clifford(state, n, g)
    return DenseUnitary(n, state.reshape(d, d))


def _as_array(u) -> np.ndarray:
    return u.entries if isinstance(u, DenseUnitary) else np.asarray(u)


def phase_aligned_distance(u, v) -> float:
    """``min``-style distance ``‖u − e^{iφ} v‖_F`` with φ fixed by the largest entry of v."""
    u, v = _as_array(u), _as_array(v)
    if u.shape != v.shape:
        raise DimensionError(f"shapes differ: {u.shape} vs {v.shape}")
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(u[k]) == 0:
        return float(np.linalg.norm(u - v))
    phase = u[k] / v[k]
    phase /= abs(phase)
    return float(np.linalg.norm(u - phase * v))


def equal_up_to_global_phase(u, v, tol: float = 1e-9) -> bool:
    return phase_aligned_distance(u, v) < tol


def unitaries_close(u, v, tol: float = 1e-9) -> bool:
    return equal_up_to_global_phase(u, v, tol)


def pauli_coefficients(u: np.ndarray) -> dict[str, complex]:
    """``c(P) = tr(P U) / 2`` so that ``U = Σ c(P) P``."""
    return {p: complex(np.trace(PAULI[p] @ u)) / 2 for p in "IXYZ"}


def pauli_expansion_check(c: CliffordUCircuit, a: SlotAssignment) -> float:
    """Frobenius residual between ``F(U)`` and its expansion over all Pauli tuples."""
    if c.m > MAX_EXPANSION_SLOTS or c.n > MAX_EXPANSION_QUBITS:
        raise ResourceError(
            f"expansion guard is m ≤ {MAX_EXPANSION_SLOTS}, n ≤ {MAX_EXPANSION_QUBITS}; got m={c.m}, n={c.n}"
        )
    if len(a) != c.m:
        raise ValueError(f"assignment covers {len(a)} slots, circuit has {c.m}")
    coeffs = [pauli_coefficients(u) for u in a.unitaries]
    d = 1 << c.n
    total = np.zeros((d, d), dtype=complex)
    for letters in itertools.product("IXYZ", repeat=c.m):
        eps = np.prod([cf[p] for cf, p in zip(coeffs, letters)]) if c.m else 1.0
        if eps == 0:
            continue
        total += eps * evaluate(c, SlotAssignment.from_paulis("".join(letters))).entries
    return float(np.linalg.norm(total - evaluate(c, a).entries))
