"""Random benchmark instances.

Randomness is drawn from numpy ``PCG64`` generators seeded by
``SeedSequence(seed, spawn_key=(stream,))``.  Each purpose below owns a
stream id, so layer content, slot wires, relabelling and error injection
never share draws and a change in one cannot shift another.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import CliffordUCircuit, Layer, Slot
from .decision import SlotPermutation
from .tableau import CliffordGate

__all__ = [
    "GeneratorConfig",
    "InjectionSite",
    "anticommuting_reorder",
    "commuting_reorder",
    "derive_equivalent",
    "generate_base",
    "generate_independent",
    "inject_pauli_error",
    "random_layer",
    "swap_network",
]

STREAM_LAYERS = 0
STREAM_SLOTS = 1
STREAM_RELABEL = 2
STREAM_INJECT = 3
STREAM_INDEPENDENT_LAYERS = 4
STREAM_INDEPENDENT_SLOTS = 5
STREAM_REORDER = 6

GATE_KINDS = ("CNOT", "H", "S")


def rng_stream(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    m: int
    clifford_depth: int = 10
    gate_mix: tuple[float, float, float] = (0.2, 0.4, 0.4)  # CNOT, H, S
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise ValueError(f"need n ≥ 1 and m ≥ 0, got n={self.n}, m={self.m}")
        if self.clifford_depth < 1:
            raise ValueError("clifford_depth must be at least 1")
        mix = tuple(float(f) for f in self.gate_mix)
        object.__setattr__(self, "gate_mix", mix)
        if len(mix) != 3 or min(mix) < 0 or abs(sum(mix) - 1) > 1e-9:
            raise ValueError(f"gate_mix must be three non-negative fractions summing to 1, got {mix}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def random_layer(n: int, depth: int, mix, rng: np.random.Generator) -> Layer:
    """``depth`` gates drawn from CNOT/H/S with probabilities ``mix``."""
    p = np.asarray(mix, dtype=float)
    if n == 1:
        # no room for a CNOT; keep the single-qubit ratio
        p = np.array([0.0, p[1], p[2]])
        p = p / p.sum() if p.sum() else np.array([0.0, 0.5, 0.5])
    gates = []
    for kind in rng.choice(3, size=depth, p=p):
        if kind == 0:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(CliffordGate("CNOT", (int(c) + 1, int(t) + 1)))
        else:
            gates.append(CliffordGate(GATE_KINDS[kind], (int(rng.integers(n)) + 1,)))
    return Layer(n, tuple(gates))


def _generate(cfg: GeneratorConfig, layer_stream: int, slot_stream: int) -> CliffordUCircuit:
    lr = rng_stream(cfg.seed, layer_stream)
    sr = rng_stream(cfg.seed, slot_stream)
    layers = tuple(random_layer(cfg.n, cfg.clifford_depth, cfg.gate_mix, lr) for _ in range(cfg.m + 1))
    slots = tuple(Slot(i + 1, int(q) + 1) for i, q in enumerate(sr.integers(cfg.n, size=cfg.m)))
    return CliffordUCircuit(cfg.n, layers, slots)


def generate_base(cfg: GeneratorConfig) -> CliffordUCircuit:
    return _generate(cfg, STREAM_LAYERS, STREAM_SLOTS)


def generate_independent(cfg: GeneratorConfig) -> CliffordUCircuit:
    """Same shape as :func:`generate_base` with fresh layers and slot wires."""
    return _generate(cfg, STREAM_INDEPENDENT_LAYERS, STREAM_INDEPENDENT_SLOTS)


def swap_network(perm) -> list[CliffordGate]:
    """SWAPs moving the content of wire ``w`` to wire ``perm[w]`` (0-based map)."""
    n = len(perm)
    at = list(range(n))  # at[wire] = original wire whose content sits there
    where = list(range(n))
    gates = []
    for w in range(n):
        t = perm[w]
        cur = where[w]
        if cur != t:
            other = at[t]
            gates.append(CliffordGate("SWAP", (cur + 1, t + 1)))
            at[cur], at[t] = other, w
            where[other], where[w] = cur, t
    return gates


def _relabel_perm(n: int, k: int, l: int, rng: np.random.Generator, scramble: bool) -> list[int]:
    """A wire permutation sending ``k`` to ``l`` (0-based)."""
    if not scramble:
        perm = list(range(n))
        perm[k], perm[l] = perm[l], perm[k]
        return perm
    rest_src = [w for w in range(n) if w != k]
    rest_dst = [w for w in range(n) if w != l]
    rng.shuffle(rest_dst)
    perm = [0] * n
    perm[k] = l
    for s, d in zip(rest_src, rest_dst):
        perm[s] = d
    return perm


def derive_equivalent(
    base: CliffordUCircuit, seed: int, scramble: bool = True, resynthesize: bool = False
) -> CliffordUCircuit:
    """An equivalent circuit with re-sampled slot wires.

    A SWAP network ``P_i`` moving wire ``k_i`` to the new wire ``l_i`` is
    placed around each slot, and ``P_i`` is undone at the start of the next
    layer:

        C'_0 = P_1 C_0,   C'_i = P_{i+1} C_i P_i^{-1},   C'_m = C_m P_m^{-1}

    so ``P_i^{-1} U^{(l_i)} P_i = U^{(k_i)}`` restores the original product.
    With ``scramble`` the other wires are permuted at random too; with
    ``resynthesize`` every layer is re-expressed from its tableau, mimicking
    an optimising pass that erases the visible SWAPs.
    """
    n, m = base.n, base.m
    rng = rng_stream(seed, STREAM_RELABEL)
    new_wires = [int(q) + 1 for q in rng.integers(n, size=m)]
    nets = []
    for s, l in zip(base.slots, new_wires):
        if s.qubit == l and not scramble:
            nets.append([])
        else:
            nets.append(swap_network(_relabel_perm(n, s.qubit - 1, l - 1, rng, scramble)))
    layers = []
    for i, layer in enumerate(base.layers):
        undo = [g for g in reversed(nets[i - 1])] if i >= 1 else []
        redo = nets[i] if i < m else []
        layers.append(Layer(n, tuple(undo) + layer.gates + tuple(redo)))
    if resynthesize:
        layers = [Layer.from_tableau(layer.tableau) for layer in layers]
    slots = tuple(Slot(s.label, l, s.content) for s, l in zip(base.slots, new_wires))
    return CliffordUCircuit(n, tuple(layers), slots)


@dataclass(frozen=True)
class InjectionSite:
    layer: int
    qubit: int
    pauli: str


def inject_pauli_error(
    c: CliffordUCircuit, seed: int, site: InjectionSite | None = None
) -> tuple[CliffordUCircuit, InjectionSite]:
    """Append one X or Z at the end of a uniformly chosen layer and qubit."""
    if site is None:
        rng = rng_stream(seed, STREAM_INJECT)
        layer = int(rng.integers(c.m + 1))
        qubit = int(rng.integers(c.n)) + 1
        pauli = "X" if rng.integers(2) == 0 else "Z"
        site = InjectionSite(layer, qubit, pauli)
    if not 0 <= site.layer <= c.m or not 1 <= site.qubit <= c.n or site.pauli not in ("X", "Z"):
        raise ValueError(f"invalid injection site {site}")
    old = c.layers[site.layer]
    new = Layer(c.n, old.gates + (CliffordGate(site.pauli, (site.qubit,)),))
    return c.replace_layer(site.layer, new), site


# ------------------------------------------------------------ reorder suites


@dataclass(frozen=True)
class ReorderInstance:
    a: CliffordUCircuit
    b: CliffordUCircuit
    sigma: SlotPermutation
    swapped: tuple[int, ...] = field(default=())


def _untouched_layer(n: int, depth: int, mix, avoid: int, rng) -> Layer:
    """Random layer on every wire except ``avoid`` (1-based)."""
    inner = random_layer(n - 1, depth, mix, rng)
    remap = [q if q < avoid else q + 1 for q in range(n)]
    return Layer(n, tuple(CliffordGate(g.kind, tuple(remap[t] for t in g.targets)) for g in inner.gates))


def commuting_reorder(cfg: GeneratorConfig) -> ReorderInstance:
    """Exchange adjacent slots whose images commute; equivalent by construction.

    For a chosen pair (i, i+1) on distinct wires p ≠ q, layer C_i avoids wire
    p, so ``C_i U_i^{(p)} = U_i^{(p)} C_i`` and the two slots may trade places
    once C_i is pulled below them into the previous layer.
    """
    if cfg.n < 2 or cfg.m < 2:
        raise ValueError("a commuting reorder needs n ≥ 2 and m ≥ 2")
    base = generate_base(cfg)
    rng = rng_stream(cfg.seed, STREAM_REORDER)
    n, m = cfg.n, cfg.m
    starts = [i for i in range(1, m, 2) if rng.random() < 0.5] or [1 + 2 * int(rng.integers((m) // 2))]
    wires = [s.qubit for s in base.slots]
    layers = list(base.layers)
    for i in starts:
        p = wires[i - 1]
        if wires[i] == p:
            wires[i] = int(rng.choice([w for w in range(1, n + 1) if w != p]))
        layers[i] = _untouched_layer(n, cfg.clifford_depth, cfg.gate_mix, p, rng)
    a = CliffordUCircuit(n, tuple(layers), tuple(Slot(k + 1, w) for k, w in enumerate(wires)))

    b_layers = list(layers)
    b_wires = list(wires)
    sigma = list(range(1, m + 1))
    for i in starts:
        b_layers[i - 1] = Layer(n, layers[i - 1].gates + layers[i].gates)
        b_layers[i] = Layer(n, ())
        b_wires[i - 1], b_wires[i] = wires[i], wires[i - 1]
        sigma[i - 1], sigma[i] = i + 1, i
    b = CliffordUCircuit(n, tuple(b_layers), tuple(Slot(k + 1, w) for k, w in enumerate(b_wires)))
    return ReorderInstance(a, b, SlotPermutation(tuple(sigma)), tuple(starts))


def anticommuting_reorder(cfg: GeneratorConfig) -> ReorderInstance:
    """Swap two adjacent slots on one wire with nothing between them."""
    if cfg.m < 2:
        raise ValueError("an anticommuting reorder needs m ≥ 2")
    base = generate_base(cfg)
    rng = rng_stream(cfg.seed, STREAM_REORDER)
    i = int(rng.integers(1, cfg.m))
    wires = [s.qubit for s in base.slots]
    wires[i] = wires[i - 1]
    layers = list(base.layers)
    layers[i] = Layer(cfg.n, ())
    a = CliffordUCircuit(cfg.n, tuple(layers), tuple(Slot(k + 1, w) for k, w in enumerate(wires)))
    sigma = list(range(1, cfg.m + 1))
    sigma[i - 1], sigma[i] = i + 1, i
    return ReorderInstance(a, a, SlotPermutation(tuple(sigma)), (i,))
