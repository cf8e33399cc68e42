"""Clifford unitaries as stabilizer tableaux.

A tableau stores, for every qubit q, the signed Pauli images ``C X_q C†`` and
``C Z_q C†``.  Rows are packed :class:`~cuequiv.pauli.PauliString` values, so a
row product costs O(n / w) word operations.

Two update directions are supported on the mutable :class:`Frame`:

* ``append(g)`` turns ``C`` into ``g·C`` by conjugating each row through ``g``;
  O(n) row touches per gate.
* ``prepend(g)`` turns ``C`` into ``C·g``.  Since ``C g P g† C† = C (g P g†) C†``
  and ``g P g†`` is a product of at most two generators, this is at most two
  row products per gate, i.e. O(n / w) words.  The decision engine relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .pauli import (
    DimensionError,
    PauliString,
    PhasedPauli,
    PhaseError,
    derive_y_column,
    multiply,
    product_phase,
)

__all__ = [
    "GATE_ARITY",
    "CliffordGate",
    "CliffordTableau",
    "Frame",
    "apply_gate",
    "compose",
    "conjugate",
    "conjugate_through_gate",
    "equal_up_to_phase",
    "inverse",
    "synthesize",
    "tableau_of",
]

GATE_ARITY = {
    "H": 1,
    "S": 1,
    "S_DAGGER": 1,
    "X": 1,
    "Y": 1,
    "Z": 1,
    "CNOT": 2,
    "CZ": 2,
    "SWAP": 2,
}
_INVERSE_KIND = {"S": "S_DAGGER", "S_DAGGER": "S"}


@dataclass(frozen=True)
class CliffordGate:
    """A named Clifford gate on 1-based qubit indices (control first for CNOT)."""

    kind: str
    targets: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_ARITY:
            raise ValueError(f"unknown Clifford gate kind {self.kind!r}")
        targets = tuple(int(t) for t in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) != GATE_ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {GATE_ARITY[self.kind]} qubit(s), got {targets}")
        if len(set(targets)) != len(targets):
            raise ValueError(f"{self.kind} targets must be distinct, got {targets}")
        if min(targets) < 1:
            raise IndexError(f"qubit indices are 1-based, got {targets}")

    def inverse(self) -> CliffordGate:
        return CliffordGate(_INVERSE_KIND.get(self.kind, self.kind), self.targets)

    def check_range(self, n: int) -> None:
        if max(self.targets) > n:
            raise IndexError(f"{self.kind} on qubit {max(self.targets)} exceeds register size {n}")

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(map(str, self.targets))})"


def conjugate_through_gate(kind: str, a: int, b: int, x: int, z: int, r: int) -> tuple[int, int, int]:
    """Packed ``(x, z, r)`` of ``g P g†`` for gate ``kind`` on 0-based bits ``a`` (, ``b``)."""
    xa = (x >> a) & 1
    za = (z >> a) & 1
    if kind == "H":
        if xa != za:
            x ^= 1 << a
            z ^= 1 << a
        r ^= xa & za
    elif kind == "S":
        r ^= xa & za
        z ^= xa << a
    elif kind == "S_DAGGER":
        r ^= xa & (za ^ 1)
        z ^= xa << a
    elif kind == "X":
        r ^= za
    elif kind == "Z":
        r ^= xa
    elif kind == "Y":
        r ^= xa ^ za
    else:
        xb = (x >> b) & 1
        zb = (z >> b) & 1
        if kind == "CNOT":
            r ^= xa & zb & (xb ^ za ^ 1)
            x ^= xa << b
            z ^= zb << a
        elif kind == "CZ":
            r ^= xa & xb & (za ^ zb)
            z ^= (xb << a) | (xa << b)
        elif kind == "SWAP":
            if xa != xb:
                x ^= (1 << a) | (1 << b)
            if za != zb:
                z ^= (1 << a) | (1 << b)
        else:
            raise ValueError(f"unknown Clifford gate kind {kind!r}")
    return x, z, r


class Frame:
    """Mutable row-major tableau used on hot paths.

    ``xx[q], xz[q], xr[q]`` hold the x bits, z bits and sign of the image of
    X_{q+1}; ``zx, zz, zr`` likewise for Z_{q+1}.
    """

    __slots__ = ("n", "xx", "xz", "xr", "zx", "zz", "zr")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"qubit count must be positive, got {n}")
        self.n = n
        self.xx = [1 << q for q in range(n)]
        self.xz = [0] * n
        self.xr = [0] * n
        self.zx = [0] * n
        self.zz = [1 << q for q in range(n)]
        self.zr = [0] * n

    @classmethod
    def from_tableau(cls, t: CliffordTableau) -> Frame:
        f = cls(t.n)
        f.xx = [p.x for p in t.x_images]
        f.xz = [p.z for p in t.x_images]
        f.xr = [p.r for p in t.x_images]
        f.zx = [p.x for p in t.z_images]
        f.zz = [p.z for p in t.z_images]
        f.zr = [p.r for p in t.z_images]
        return f

    def to_tableau(self) -> CliffordTableau:
        n = self.n
        return CliffordTableau(
            n,
            tuple(PauliString(n, self.xz[q], self.xx[q], self.xr[q]) for q in range(n)),
            tuple(PauliString(n, self.zz[q], self.zx[q], self.zr[q]) for q in range(n)),
        )

    def x_image(self, q: int) -> PauliString:
        """Image of X on 0-based qubit ``q``."""
        return PauliString(self.n, self.xz[q], self.xx[q], self.xr[q])

    def z_image(self, q: int) -> PauliString:
        return PauliString(self.n, self.zz[q], self.zx[q], self.zr[q])

    def append(self, g: CliffordGate) -> None:
        a = g.targets[0] - 1
        b = g.targets[1] - 1 if len(g.targets) == 2 else 0
        kind = g.kind
        for q in range(self.n):
            self.xx[q], self.xz[q], self.xr[q] = conjugate_through_gate(
                kind, a, b, self.xx[q], self.xz[q], self.xr[q]
            )
            self.zx[q], self.zz[q], self.zr[q] = conjugate_through_gate(
                kind, a, b, self.zx[q], self.zz[q], self.zr[q]
            )

    def prepend(self, g: CliffordGate) -> None:
        kind = g.kind
        a = g.targets[0] - 1
        xx, xz, xr, zx, zz, zr = self.xx, self.xz, self.xr, self.zx, self.zz, self.zr
        if kind == "H":
            xx[a], zx[a] = zx[a], xx[a]
            xz[a], zz[a] = zz[a], xz[a]
            xr[a], zr[a] = zr[a], xr[a]
        elif kind == "S" or kind == "S_DAGGER":
            # X -> ±Y = ±i X Z
            k = 1 if kind == "S" else 3
            k += 2 * (xr[a] + zr[a]) + product_phase(xx[a], xz[a], zx[a], zz[a])
            if k & 1:
                raise PhaseError("images of X and Z commute; tableau is corrupted")
            xx[a] ^= zx[a]
            xz[a] ^= zz[a]
            xr[a] = (k >> 1) & 1
        elif kind == "X":
            zr[a] ^= 1
        elif kind == "Z":
            xr[a] ^= 1
        elif kind == "Y":
            xr[a] ^= 1
            zr[a] ^= 1
        else:
            b = g.targets[1] - 1
            if kind == "CNOT":
                # X_c -> X_c X_t, Z_t -> Z_c Z_t
                self._mul_into(xx, xz, xr, a, xx[b], xz[b], xr[b])
                self._mul_into(zx, zz, zr, b, zx[a], zz[a], zr[a], left=True)
            elif kind == "CZ":
                # X_a -> X_a Z_b, X_b -> Z_a X_b
                self._mul_into(xx, xz, xr, a, zx[b], zz[b], zr[b])
                self._mul_into(xx, xz, xr, b, zx[a], zz[a], zr[a], left=True)
            elif kind == "SWAP":
                for rows in (xx, xz, xr, zx, zz, zr):
                    rows[a], rows[b] = rows[b], rows[a]
            else:
                raise ValueError(f"unknown Clifford gate kind {kind!r}")

    @staticmethod
    def _mul_into(rx, rz, rr, q, ox, oz, orr, left=False):
        # row q <- row q · other (or other · row q); both factors commute
        if left:
            k = product_phase(ox, oz, rx[q], rz[q])
        else:
            k = product_phase(rx[q], rz[q], ox, oz)
        k += 2 * (rr[q] + orr)
        if k & 1:
            raise PhaseError("row product is not Hermitian; tableau is corrupted")
        rx[q] ^= ox
        rz[q] ^= oz
        rr[q] = (k >> 1) & 1

    def conjugate_bits(self, x: int, z: int, r: int) -> tuple[int, int, int]:
        """Signed image of the Pauli with packed bits ``(x, z, r)``."""
        # P = (-1)^r i^{#Y} prod_q X_q^{x_q} Z_q^{z_q}
        k = 2 * r + (x & z).bit_count()
        ox = oz = 0
        support = x | z
        while support:
            low = support & -support
            q = low.bit_length() - 1
            support ^= low
            if x & low:
                k += product_phase(ox, oz, self.xx[q], self.xz[q]) + 2 * self.xr[q]
                ox ^= self.xx[q]
                oz ^= self.xz[q]
            if z & low:
                k += product_phase(ox, oz, self.zx[q], self.zz[q]) + 2 * self.zr[q]
                ox ^= self.zx[q]
                oz ^= self.zz[q]
        if k & 1:
            raise PhaseError("conjugated Pauli acquired an imaginary phase")
        return ox, oz, (k >> 1) & 1

    def copy(self) -> Frame:
        f = Frame.__new__(Frame)
        f.n = self.n
        for name in ("xx", "xz", "xr", "zx", "zz", "zr"):
            setattr(f, name, list(getattr(self, name)))
        return f


@dataclass(frozen=True)
class CliffordTableau:
    """Immutable Clifford element, given by the images of X_q and Z_q."""

    n: int
    x_images: tuple[PauliString, ...]
    z_images: tuple[PauliString, ...]

    def __post_init__(self):
        if len(self.x_images) != self.n or len(self.z_images) != self.n:
            raise ValueError("a tableau needs exactly n X images and n Z images")
        for p in self.x_images + self.z_images:
            if p.n != self.n:
                raise DimensionError(f"image on {p.n} qubits in a {self.n}-qubit tableau")

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        return Frame(n).to_tableau()

    @classmethod
    def from_gates(cls, n: int, gates: Iterable[CliffordGate]) -> CliffordTableau:
        """Tableau of the circuit applying ``gates`` in order."""
        f = Frame(n)
        for g in gates:
            g.check_range(n)
            f.append(g)
        return f.to_tableau()

    def y_image(self, q: int) -> PauliString:
        """Image of Y on 1-based qubit ``q``."""
        return derive_y_column(self.x_images[q - 1], self.z_images[q - 1])

    def is_symplectic(self) -> bool:
        """Images reproduce the canonical commutation relations."""
        from .pauli import symplectic_inner_product as sip

        imgs = self.x_images + self.z_images
        n = self.n
        for i in range(2 * n):
            for j in range(i, 2 * n):
                want = 1 if j - i == n else 0
                if sip(imgs[i], imgs[j]) != want:
                    return False
        return True

    def __str__(self) -> str:
        lines = [f"X{q + 1} -> {p}" for q, p in enumerate(self.x_images)]
        lines += [f"Z{q + 1} -> {p}" for q, p in enumerate(self.z_images)]
        return "\n".join(lines)


def tableau_of(g: CliffordGate, n: int) -> CliffordTableau:
    return CliffordTableau.from_gates(n, [g])


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionError(f"qubit counts differ: {a.n} vs {b.n}")


def apply_gate(t: CliffordTableau, g: CliffordGate) -> CliffordTableau:
    """Tableau of ``g ∘ t``: the gate acts after the existing circuit."""
    g.check_range(t.n)
    f = Frame.from_tableau(t)
    f.append(g)
    return f.to_tableau()


def conjugate(t: CliffordTableau, p: PauliString) -> PauliString:
    """``t · p · t†`` as a signed Pauli string."""
    _same_n(t, p)
    # Multiplies generator images one by one; Y factors are i·X·Z.
    acc = PhasedPauli(PauliString.identity(t.n), 2 * p.r)
    for q in range(1, t.n + 1):
        letter = p.letter(q)
        if letter == "X":
            acc = multiply(acc, PhasedPauli(t.x_images[q - 1]))
        elif letter == "Z":
            acc = multiply(acc, PhasedPauli(t.z_images[q - 1]))
        elif letter == "Y":
            acc = multiply(acc, PhasedPauli(t.y_image(q)))
    return acc.to_pauli()


def compose(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """Tableau of the product ``a · b`` (``b`` acts first)."""
    _same_n(a, b)
    return CliffordTableau(
        a.n,
        tuple(conjugate(a, p) for p in b.x_images),
        tuple(conjugate(a, p) for p in b.z_images),
    )


def equal_up_to_phase(a: CliffordTableau, b: CliffordTableau) -> bool:
    """True iff the two Cliffords agree as unitaries up to a global phase."""
    _same_n(a, b)
    return a.x_images == b.x_images and a.z_images == b.z_images


def inverse(t: CliffordTableau) -> CliffordTableau:
    n = t.n
    xs, zs = [], []
    for q in range(n):
        # bodies from the symplectic inverse: <C†PC, Q> = <P, C Q C†>
        bx_z = sum(((t.x_images[j].z >> q) & 1) << j for j in range(n))
        bx_x = sum(((t.z_images[j].z >> q) & 1) << j for j in range(n))
        bz_z = sum(((t.x_images[j].x >> q) & 1) << j for j in range(n))
        bz_x = sum(((t.z_images[j].x >> q) & 1) << j for j in range(n))
        for body_z, body_x, out in ((bx_z, bx_x, xs), (bz_z, bz_x, zs)):
            cand = PauliString(n, body_z, body_x, 0)
            out.append(cand.with_sign(conjugate(t, cand).r))
    return CliffordTableau(n, tuple(xs), tuple(zs))


def synthesize(t: CliffordTableau) -> list[CliffordGate]:
    """A gate list over {H, S, S_DAGGER, CNOT, X, Z} implementing ``t``.

    Reduces the tableau to the identity by appending gates qubit by qubit and
    returns the inverse of the reducing sequence.  Emits O(n²) gates.
    """
    n = t.n
    f = Frame.from_tableau(t)
    applied: list[CliffordGate] = []

    def do(kind, *targets):
        g = CliffordGate(kind, tuple(q + 1 for q in targets))
        f.append(g)
        applied.append(g)

    def letter(x, z, j):
        return ((x >> j) & 1, (z >> j) & 1)

    for q in range(n):
        # image of X_q -> X_q
        for j in range(q, n):
            xb, zb = letter(f.xx[q], f.xz[q], j)
            if (xb, zb) == (0, 1):
                do("H", j)
            elif (xb, zb) == (1, 1):
                do("S", j)
        if not (f.xx[q] >> q) & 1:
            j = next(j for j in range(q + 1, n) if (f.xx[q] >> j) & 1)
            do("CNOT", j, q)
        for j in range(q + 1, n):
            if (f.xx[q] >> j) & 1:
                do("CNOT", q, j)
        # image of Z_q -> Z_q, keeping X_q fixed
        if (f.zx[q] >> q) & 1:
            do("H", q)
            do("S", q)
            do("H", q)
        for j in range(q + 1, n):
            xb, zb = letter(f.zx[q], f.zz[q], j)
            if (xb, zb) == (1, 0):
                do("H", j)
            elif (xb, zb) == (1, 1):
                do("S", j)
                do("H", j)
        for j in range(q + 1, n):
            if (f.zz[q] >> j) & 1:
                do("CNOT", j, q)
    for q in range(n):
        if f.xr[q]:
            do("Z", q)
        if f.zr[q]:
            do("X", q)
    return [g.inverse() for g in reversed(applied)]


def gates_to_tableau(n: int, gates: Sequence[CliffordGate]) -> CliffordTableau:
    return CliffordTableau.from_gates(n, gates)
