"""Signed Pauli strings in binary symplectic form.

A Hermitian n-qubit Pauli ``(-1)^r P_1 ⊗ ... ⊗ P_n`` is stored as two packed
bit vectors ``z`` and ``x`` plus a sign bit ``r``.  Bit ``q - 1`` of each vector
holds qubit ``q`` (qubits are 1-based at the API boundary), with the encoding

    I -> (z, x) = (0, 0)    X -> (0, 1)    Y -> (1, 1)    Z -> (1, 0)

Python integers serve as the packed word arrays, so every bitwise operation
below touches ``ceil(n / wordsize)`` machine words rather than ``n`` bits.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "DimensionError",
    "PauliString",
    "PhasedPauli",
    "PhaseError",
    "derive_y_column",
    "multiply",
    "product_phase",
    "single_qubit_pauli",
    "symplectic_inner_product",
]

_LETTERS = {(0, 0): "I", (0, 1): "X", (1, 1): "Y", (1, 0): "Z"}
_BITS = {letter: zx for zx, letter in _LETTERS.items()}


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class PhaseError(ArithmeticError):
    """A product that must be Hermitian picked up an odd power of i."""


def product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of i (mod 4) produced by multiplying two unsigned Hermitian Paulis.

    Per qubit, XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i;
    the counts are taken over whole packed words at once.
    """
    xo1, yo1, zo1 = x1 & ~z1, x1 & z1, z1 & ~x1
    xo2, yo2, zo2 = x2 & ~z2, x2 & z2, z2 & ~x2
    plus = (xo1 & yo2) | (yo1 & zo2) | (zo1 & xo2)
    minus = (yo1 & xo2) | (zo1 & yo2) | (xo1 & zo2)
    return (plus.bit_count() - minus.bit_count()) & 3


@dataclass(frozen=True)
class PauliString:
    """Hermitian Pauli operator ``(-1)^r`` times a tensor product of I, X, Y, Z."""

    n: int
    z: int
    x: int
    r: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        if self.r not in (0, 1):
            raise ValueError(f"sign bit must be 0 or 1, got {self.r}")
        limit = 1 << self.n
        if not (0 <= self.z < limit and 0 <= self.x < limit):
            raise ValueError(f"bit vectors do not fit in {self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse text such as ``"-XIZY"`` (qubit 1 leftmost, optional sign)."""
        text = label.strip()
        r = 0
        if text[:1] in "+-":
            r = 1 if text[0] == "-" else 0
            text = text[1:]
        if not text:
            raise ValueError(f"empty Pauli label {label!r}")
        z = x = 0
        for q, letter in enumerate(text.upper()):
            try:
                zb, xb = _BITS[letter]
            except KeyError:
                raise ValueError(f"bad Pauli letter {letter!r} in {label!r}") from None
            z |= zb << q
            x |= xb << q
        return cls(len(text), z, x, r)

    def letter(self, q: int) -> str:
        """Pauli letter on 1-based qubit ``q``."""
        if not 1 <= q <= self.n:
            raise IndexError(f"qubit {q} out of range 1..{self.n}")
        return _LETTERS[((self.z >> (q - 1)) & 1, (self.x >> (q - 1)) & 1)]

    @property
    def body(self) -> str:
        return "".join(self.letter(q) for q in range(1, self.n + 1))

    @property
    def weight(self) -> int:
        return (self.z | self.x).bit_count()

    def negate(self) -> PauliString:
        return PauliString(self.n, self.z, self.x, self.r ^ 1)

    def with_sign(self, r: int) -> PauliString:
        return PauliString(self.n, self.z, self.x, r)

    def to_vector(self) -> list[int]:
        """Column ``(z_1..z_n, x_1..x_n, r)`` of length ``2n + 1``."""
        zs = [(self.z >> q) & 1 for q in range(self.n)]
        xs = [(self.x >> q) & 1 for q in range(self.n)]
        return zs + xs + [self.r]

    @classmethod
    def from_vector(cls, bits) -> PauliString:
        bits = [int(b) for b in bits]
        if len(bits) % 2 != 1:
            raise ValueError("symplectic vector must have odd length 2n + 1")
        n = len(bits) // 2
        z = sum(b << q for q, b in enumerate(bits[:n]))
        x = sum(b << q for q, b in enumerate(bits[n : 2 * n]))
        return cls(n, z, x, bits[-1])

    def __str__(self) -> str:
        return ("-" if self.r else "+") + self.body


def single_qubit_pauli(n: int, q: int, p: str) -> PauliString:
    """``p`` in {I, X, Y, Z} on 1-based qubit ``q`` of an n-qubit register."""
    if not 1 <= q <= n:
        raise IndexError(f"qubit {q} out of range 1..{n}")
    try:
        zb, xb = _BITS[p.upper()]
    except KeyError:
        raise ValueError(f"unknown Pauli {p!r}") from None
    return PauliString(n, zb << (q - 1), xb << (q - 1), 0)


def _check_same_n(a, b):
    if a.n != b.n:
        raise DimensionError(f"qubit counts differ: {a.n} vs {b.n}")


def symplectic_inner_product(a: PauliString, b: PauliString) -> int:
    """0 when ``a`` and ``b`` commute, 1 when they anticommute."""
    _check_same_n(a, b)
    return ((a.z & b.x) ^ (a.x & b.z)).bit_count() & 1


@dataclass(frozen=True)
class PhasedPauli:
    """``i**quarter_phase * base`` where ``base`` always has ``r == 0``."""

    base: PauliString
    quarter_phase: int = 0

    def __post_init__(self):
        if self.base.r:
            # fold the sign into the quarter phase so the representation is unique
            object.__setattr__(self, "base", self.base.with_sign(0))
            object.__setattr__(self, "quarter_phase", self.quarter_phase + 2)
        object.__setattr__(self, "quarter_phase", self.quarter_phase & 3)

    @classmethod
    def of(cls, p: PauliString) -> PhasedPauli:
        return cls(p)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def is_hermitian(self) -> bool:
        return self.quarter_phase % 2 == 0

    def to_pauli(self) -> PauliString:
        """Signed Hermitian form; raises :class:`PhaseError` for ``±i`` phases."""
        if not self.is_hermitian:
            raise PhaseError(f"i^{self.quarter_phase}·{self.base.body} is not Hermitian")
        return self.base.with_sign(self.quarter_phase >> 1)


def multiply(a: PhasedPauli, b: PhasedPauli) -> PhasedPauli:
    """Exact operator product ``a · b``."""
    _check_same_n(a, b)
    pa, pb = a.base, b.base
    k = product_phase(pa.x, pa.z, pb.x, pb.z)
    body = PauliString(pa.n, pa.z ^ pb.z, pa.x ^ pb.x, 0)
    return PhasedPauli(body, a.quarter_phase + b.quarter_phase + k)


def derive_y_column(vx: PauliString, vz: PauliString) -> PauliString:
    """Hermitian form of ``i · vx · vz``, the image of Y given the images of X and Z."""
    prod = multiply(PhasedPauli(vx), PhasedPauli(vz))
    try:
        return PhasedPauli(prod.base, prod.quarter_phase + 1).to_pauli()
    except PhaseError as exc:
        raise PhaseError(
            f"images {vx} and {vz} commute; not a conjugated X/Z pair"
        ) from exc
