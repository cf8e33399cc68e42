"""Command-line entry point: ``cuequiv check|gen|bench|oracle``.

Exit codes for ``check`` and ``oracle check``: 0 equivalent, 1 not
equivalent, 2 inconclusive; anything above 2 is an error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bench import DEFAULT_SWEEP, environment_fingerprint, run_scaling_bench
from .decision import Mode, SlotPermutation, check_equivalence, check_equivalence_permuted
from .generators import (
    GeneratorConfig,
    derive_equivalent,
    generate_base,
    generate_independent,
    inject_pauli_error,
)
from .qasm import QasmError, emit_qasm, read_circuit

REPORT_SCHEMA = "cuequiv.report/1"
EXIT_ERROR = 3


def _load_pair(args, allow_fixed: bool):
    fuse = not args.no_fuse
    a = read_circuit(args.first, fuse=fuse, allow_fixed_gates=allow_fixed)
    b = read_circuit(args.second, fuse=fuse, allow_fixed_gates=allow_fixed)
    sigma = SlotPermutation.load(args.perm) if args.perm else None
    return a, b, sigma


def cmd_check(args) -> int:
    mode = Mode(args.mode)
    a, b, sigma = _load_pair(args, allow_fixed=args.allow_fixed or mode is Mode.FIXED_INSTANCE)
    if sigma is None:
        verdict = check_equivalence(a, b, mode)
    else:
        verdict = check_equivalence_permuted(a, b, sigma, mode)
    print(verdict.outcome.value)
    if verdict.witness is not None:
        print(f"witness: {verdict.to_dict()['witness']}")
    for note in verdict.notes:
        print(f"note: {note}")
    print(f"columns compared: {verdict.columns_compared}, {verdict.wall_time_ns / 1e6:.3f} ms")
    if args.json:
        report = {
            "schema": REPORT_SCHEMA,
            "inputs": {"first": str(args.first), "second": str(args.second),
                       "permutation": list(sigma.sigma) if sigma else None,
                       "n": a.n, "m": [a.m, b.m]},
            "verdict": verdict.to_dict(),
            "environment": environment_fingerprint(),
        }
        Path(args.json).write_text(json.dumps(report, indent=2) + "\n")
    return verdict.exit_code


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(n=args.n, m=args.m, clifford_depth=args.depth, seed=args.seed)
    base = generate_base(cfg)
    if args.kind == "base":
        c = base
    elif args.kind == "equivalent":
        c = derive_equivalent(base, args.seed, resynthesize=args.resynthesize)
    elif args.kind == "error":
        c, site = inject_pauli_error(derive_equivalent(base, args.seed), args.seed)
        print(f"injected {site.pauli} on q{site.qubit} at the end of layer {site.layer}", file=sys.stderr)
    else:
        c = generate_independent(cfg)
    text = emit_qasm(c)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    spec = json.loads(Path(args.sweep).read_text()) if args.sweep else DEFAULT_SWEEP

    def progress(rec):
        print(f"{rec.sweep}-sweep n={rec.n} m={rec.m}: median {rec.median_ns / 1e6:.3f} ms", file=sys.stderr)

    report = run_scaling_bench(spec, progress=progress)
    for name, slope in report.slopes.items():
        print(f"{name}-sweep log-log slope: {slope:.3f}")
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    return 0


def cmd_oracle(args) -> int:
    from .oracle import SlotAssignment, evaluate, phase_aligned_distance

    a, b, sigma = _load_pair(args, allow_fixed=True)
    if a.n != b.n or a.m != b.m:
        print(f"shape mismatch: n {a.n}/{b.n}, m {a.m}/{b.m}")
        return 1
    rng = np.random.default_rng(args.angles)
    worst = 0.0
    for _ in range(args.samples):
        u = SlotAssignment.for_circuit(a, rng)
        ub = u.permuted(sigma) if sigma else u
        worst = max(worst, phase_aligned_distance(evaluate(a, u).entries, evaluate(b, ub).entries))
    equal = worst < args.tol
    print(f"{'equal' if equal else 'different'} up to phase (max distance {worst:.3e} over {args.samples} samples)")
    return 0 if equal else 1


class _Parser(argparse.ArgumentParser):
    # argparse's usage-error code 2 would read as "inconclusive"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cuequiv", description="Clifford+slot circuit equivalence checker")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_args(p):
        p.add_argument("first", type=Path)
        p.add_argument("second", type=Path)
        p.add_argument("--perm", type=Path, help="slot correspondence: JSON array or 'i -> j' lines")
        p.add_argument("--no-fuse", action="store_true", help="one slot per parametric gate")

    p = sub.add_parser("check", help="decide equivalence of two QASM files")
    pair_args(p)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="all")
    p.add_argument("--allow-fixed", action="store_true", help="accept t/tdg as fixed slots")
    p.add_argument("--json", type=Path, help="write a JSON report here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a random benchmark circuit as QASM")
    p.add_argument("--kind", choices=["base", "equivalent", "error", "independent"], default="base")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resynthesize", action="store_true", help="re-synthesize layers of equivalent circuits")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run the scaling harness")
    p.add_argument("--sweep", type=Path, help="JSON sweep spec (default: the built-in sweep)")
    p.add_argument("--report", type=Path)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="dense brute-force tools")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("check", help="compare two small circuits at random slot angles")
    pair_args(q)
    q.add_argument("--angles", type=int, default=0, help="seed for the random angles")
    q.add_argument("--samples", type=int, default=3)
    q.add_argument("--tol", type=float, default=1e-9)
    q.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QasmError, OSError, ValueError, ArithmeticError, RuntimeError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
