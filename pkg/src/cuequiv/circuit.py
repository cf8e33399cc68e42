"""Clifford-U circuit representation.

A :class:`CliffordUCircuit` is the alternating product

    C_m U_m C_{m-1} ... C_1 U_1 C_0

where each ``C_i`` is a :class:`Layer` of Clifford gates and each ``U_i`` is a
:class:`Slot`: a placeholder for an arbitrary single-qubit unitary on one wire.
:func:`normalize` folds a raw gate list (as produced by the QASM reader) into
this shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

from .tableau import CliffordGate, CliffordTableau, synthesize

__all__ = [
    "Barrier",
    "CliffordUCircuit",
    "Layer",
    "ParametricGate",
    "RawCircuit",
    "Slot",
    "normalize",
]

# rotation-style gates that may be fused into one slot
FUSABLE = frozenset({"rx", "ry", "rz", "u1", "u3", "t", "tdg"})


@dataclass(frozen=True)
class ParametricGate:
    """A single-qubit non-Clifford gate, kept opaque for the checker.

    ``params`` holds the angle expressions verbatim; ``values`` the parsed
    floats, or ``None`` where an expression is symbolic.  Gates without a
    fusable name (``param_u3``, opaque declarations) are pure slot markers.
    """

    name: str
    params: tuple[str, ...]
    values: tuple[float | None, ...]
    qubit: int
    line: int | None = field(default=None, compare=False)

    @property
    def fusable(self) -> bool:
        return self.name in FUSABLE

    @property
    def is_fixed(self) -> bool:
        return self.fusable and all(v is not None for v in self.values)


@dataclass(frozen=True)
class Barrier:
    """Program-order separator; breaks slot fusion and nothing else."""

    qubits: tuple[int, ...] = ()


RawOp = Union[CliffordGate, ParametricGate, Barrier]


@dataclass
class RawCircuit:
    n: int
    ops: list[RawOp] = field(default_factory=list)

    def __post_init__(self):
        for op in self.ops:
            if isinstance(op, CliffordGate):
                op.check_range(self.n)
            elif isinstance(op, ParametricGate) and not 1 <= op.qubit <= self.n:
                raise IndexError(f"{op.name} on qubit {op.qubit} exceeds register size {self.n}")

    @property
    def clifford_count(self) -> int:
        return sum(isinstance(op, CliffordGate) for op in self.ops)

    @property
    def parametric_count(self) -> int:
        return sum(isinstance(op, ParametricGate) for op in self.ops)


@dataclass(frozen=True)
class Layer:
    """One Clifford layer, kept as its gate list; the tableau is derived."""

    n: int
    gates: tuple[CliffordGate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            g.check_range(self.n)

    @classmethod
    def from_tableau(cls, t: CliffordTableau) -> Layer:
        return cls(t.n, tuple(synthesize(t)))

    @cached_property
    def tableau(self) -> CliffordTableau:
        return CliffordTableau.from_gates(self.n, self.gates)

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Slot:
    """Placeholder for ``U_label`` acting on 1-based ``qubit``.

    ``content`` records the rotation gates the slot was built from.  An empty
    content, or one containing any symbolic angle, makes the slot symbolic.
    """

    label: int
    qubit: int
    content: tuple[ParametricGate, ...] = ()

    @property
    def is_fixed(self) -> bool:
        return bool(self.content) and all(g.is_fixed for g in self.content)


@dataclass(frozen=True)
class CliffordUCircuit:
    n: int
    layers: tuple[Layer, ...]
    slots: tuple[Slot, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "slots", tuple(self.slots))
        if len(self.layers) != len(self.slots) + 1:
            raise ValueError(
                f"need m+1 layers for m slots, got {len(self.layers)} layers and {len(self.slots)} slots"
            )
        for layer in self.layers:
            if layer.n != self.n:
                raise ValueError(f"layer on {layer.n} qubits in a {self.n}-qubit circuit")
        labels = sorted(s.label for s in self.slots)
        if labels != list(range(1, len(self.slots) + 1)):
            raise ValueError(f"slot labels must be a permutation of 1..m, got {labels}")
        for s in self.slots:
            if not 1 <= s.qubit <= self.n:
                raise IndexError(f"slot {s.label} on qubit {s.qubit} exceeds register size {self.n}")

    @classmethod
    def build(
        cls,
        n: int,
        layers: Sequence[Sequence[CliffordGate] | Layer | CliffordTableau],
        slot_qubits: Sequence[int],
    ) -> CliffordUCircuit:
        """Convenience constructor from gate lists (or tableaux) and slot wires."""
        built = []
        for item in layers:
            if isinstance(item, Layer):
                built.append(item)
            elif isinstance(item, CliffordTableau):
                built.append(Layer.from_tableau(item))
            else:
                built.append(Layer(n, tuple(item)))
        slots = tuple(Slot(i + 1, q) for i, q in enumerate(slot_qubits))
        return cls(n, tuple(built), slots)

    @property
    def m(self) -> int:
        return len(self.slots)

    @property
    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def has_fixed_slots(self) -> bool:
        return any(s.is_fixed for s in self.slots)

    def backbone(self) -> CliffordTableau:
        """Tableau of ``C_m ... C_0`` with every slot removed."""
        return CliffordTableau.from_gates(self.n, [g for layer in self.layers for g in layer.gates])

    def replace_layer(self, i: int, layer: Layer) -> CliffordUCircuit:
        layers = list(self.layers)
        layers[i] = layer
        return CliffordUCircuit(self.n, tuple(layers), self.slots)


def normalize(raw: RawCircuit, fuse: bool = True) -> CliffordUCircuit:
    """Fold a raw gate list into alternating Clifford layers and slots.

    Consecutive Clifford gates share a layer.  Each parametric gate opens a new
    slot, except that with ``fuse`` a fusable gate directly following another
    fusable gate on the same qubit (nothing in between, not even a gate on
    another wire or a barrier) joins the previous slot.
    """
    layers: list[Layer] = []
    slots: list[Slot] = []
    current: list[CliffordGate] = []
    run: list[ParametricGate] = []

    def close_run():
        if run:
            layers.append(Layer(raw.n, tuple(current)))
            current.clear()
            # bare markers name a slot but carry no gate of their own
            content = tuple(g for g in run if g.fusable)
            slots.append(Slot(len(slots) + 1, run[0].qubit, content))
            run.clear()

    for op in raw.ops:
        if isinstance(op, ParametricGate):
            if fuse and run and op.fusable and run[-1].fusable and run[-1].qubit == op.qubit:
                run.append(op)
                continue
            close_run()
            run.append(op)
        else:
            close_run()
            if isinstance(op, CliffordGate):
                current.append(op)
    close_run()
    layers.append(Layer(raw.n, tuple(current)))
    return CliffordUCircuit(raw.n, tuple(layers), tuple(slots))
