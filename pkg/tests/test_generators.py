import numpy as np
import pytest

from cuequiv.decision import Outcome, check_equivalence
from cuequiv.generators import (
    GeneratorConfig,
    InjectionSite,
    derive_equivalent,
    generate_base,
    generate_independent,
    inject_pauli_error,
    swap_network,
)
from cuequiv.oracle import SlotAssignment, evaluate, phase_aligned_distance
from cuequiv.qasm import emit_qasm


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            GeneratorConfig(n=2, m=1, gate_mix=(0.5, 0.5, 0.5))
        with pytest.raises(ValueError):
            GeneratorConfig(n=2, m=1, clifford_depth=0)
        with pytest.raises(ValueError):
            GeneratorConfig(n=0, m=1)


class TestBase:
    def test_deterministic(self):
        cfg = GeneratorConfig(n=2, m=1, clifford_depth=1, seed=99)
        assert emit_qasm(generate_base(cfg)) == emit_qasm(generate_base(cfg))
        assert generate_base(cfg) != generate_base(GeneratorConfig(n=2, m=1, clifford_depth=1, seed=100))

    def test_layer_depth(self):
        c = generate_base(GeneratorConfig(n=5, m=10, seed=1))
        assert len(c.layers) == 11 and all(len(layer) == 10 for layer in c.layers)
        assert {g.kind for layer in c.layers for g in layer.gates} <= {"CNOT", "H", "S"}

    def test_gate_mix_statistics(self):
        c = generate_base(GeneratorConfig(n=6, m=999, seed=4))
        kinds = [g.kind for layer in c.layers for g in layer.gates]
        total = len(kinds)
        assert total == 10_000
        for kind, p in (("CNOT", 0.2), ("H", 0.4), ("S", 0.4)):
            sigma = np.sqrt(total * p * (1 - p))
            assert abs(kinds.count(kind) - total * p) < 3 * sigma

    def test_single_qubit(self):
        c = generate_base(GeneratorConfig(n=1, m=3, seed=2))
        assert all(g.kind != "CNOT" for layer in c.layers for g in layer.gates)

    def test_independent_differs(self):
        cfg = GeneratorConfig(n=4, m=3, seed=8)
        assert generate_independent(cfg) != generate_base(cfg)
        assert generate_independent(cfg) == generate_independent(cfg)


class TestSwapNetwork:
    def test_realises_permutation(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 7))
            perm = [int(v) for v in rng.permutation(n)]
            content = list(range(n))
            for g in swap_network(perm):
                a, b = g.targets[0] - 1, g.targets[1] - 1
                content[a], content[b] = content[b], content[a]
            assert all(content[perm[w]] == w for w in range(n))


class TestDerive:
    def test_identity_relabel(self):
        base = generate_base(GeneratorConfig(n=1, m=3, seed=0))
        assert derive_equivalent(base, 5, scramble=False) == base

    def test_two_qubit_example(self, rng):
        for seed in range(20):
            base = generate_base(GeneratorConfig(n=2, m=1, seed=seed))
            derived = derive_equivalent(base, seed)
            assert check_equivalence(base, derived).equivalent
            u = SlotAssignment.random(1, rng)
            assert phase_aligned_distance(evaluate(base, u), evaluate(derived, u)) < 1e-9

    def test_slot_wires_move(self):
        base = generate_base(GeneratorConfig(n=6, m=20, seed=3))
        derived = derive_equivalent(base, 1)
        assert [s.qubit for s in base.slots] != [s.qubit for s in derived.slots]

    def test_resynthesis_changes_gates(self):
        base = generate_base(GeneratorConfig(n=4, m=5, seed=3))
        derived = derive_equivalent(base, 2, resynthesize=True)
        assert derived.layers != base.layers
        assert check_equivalence(base, derived).equivalent


class TestInject:
    def test_always_detected(self):
        for seed in range(50):
            base = generate_base(GeneratorConfig(n=3, m=5, seed=seed))
            bad, site = inject_pauli_error(base, seed)
            assert 0 <= site.layer <= 5 and site.pauli in "XZ"
            assert check_equivalence(base, bad).outcome is Outcome.NOT_EQUIVALENT

    def test_z_after_slot_flips_x_sign(self):
        base = generate_base(GeneratorConfig(n=3, m=4, seed=11))
        # put the Z at the very start of layer 2, right after slot 2
        q = base.slots[1].qubit
        from cuequiv.circuit import Layer
        from cuequiv.tableau import CliffordGate

        bad = base.replace_layer(2, Layer(3, (CliffordGate("Z", (q,)),) + base.layers[2].gates))
        v = check_equivalence(base, bad)
        w = v.witness
        assert (w.slot, w.pauli) == (2, "X")
        assert w.expected[1:] == w.actual[1:] and w.expected[0] != w.actual[0]

    def test_late_injection_compares_few_columns(self):
        base = generate_base(GeneratorConfig(n=5, m=30, seed=2))
        bad, _ = inject_pauli_error(base, 0, InjectionSite(30, 1, "X"))
        assert check_equivalence(base, bad).columns_compared <= 2

    def test_layer_zero_injection_is_backbone_only(self):
        base = generate_base(GeneratorConfig(n=5, m=30, seed=2))
        bad, _ = inject_pauli_error(base, 0, InjectionSite(0, 3, "Z"))
        v = check_equivalence(base, bad)
        assert v.columns_compared == 60 and v.witness.kind == "backbone_mismatch"

    def test_invalid_site(self):
        base = generate_base(GeneratorConfig(n=2, m=1, seed=0))
        with pytest.raises(ValueError):
            inject_pauli_error(base, 0, InjectionSite(5, 1, "X"))
