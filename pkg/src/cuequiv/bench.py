"""Scaling harness: time full equivalence checks over (n, m) sweeps.

A sweep spec is a JSON-like mapping::

    {"seed": 7, "reps": 5, "sweeps": [
        {"name": "m", "n": 50, "m": [100, 200, 400], "depth": 10},
        {"name": "n", "n": [64, 128], "m": 100, "depth": 10}]}

Exactly one of ``n`` / ``m`` per sweep is a list; it is the swept axis.
Each point times ``check_equivalence(F, F')`` on an equivalent-by-design pair
so no early exit cuts the work short.
"""

from __future__ import annotations

import gc
import os
import platform
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .decision import check_equivalence
from .generators import GeneratorConfig, derive_equivalent, generate_base

__all__ = ["BenchRecord", "BenchReport", "DEFAULT_SWEEP", "environment_fingerprint", "fit_slope", "run_scaling_bench"]

REPORT_SCHEMA = "cuequiv.bench/1"

DEFAULT_SWEEP = {
    "seed": 2024,
    "reps": 9,
    "sweeps": [
        {"name": "m", "n": 50, "m": [100, 200, 400, 800, 1600], "depth": 10},
        {"name": "n", "n": [64, 128, 256, 512], "m": 100, "depth": 10},
    ],
}


def environment_fingerprint() -> dict:
    return {
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "platform": platform.platform(),
        "machine": platform.machine(),
        "cpu_count": os.cpu_count(),
    }


@dataclass
class BenchRecord:
    sweep: str
    n: int
    m: int
    depth: int
    seed: int
    verdict: str
    columns_compared: int
    times_ns: list[int]
    median_ns: float


@dataclass
class BenchReport:
    records: list[BenchRecord] = field(default_factory=list)
    slopes: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "environment": environment_fingerprint(),
            "records": [asdict(r) for r in self.records],
            "slopes": dict(self.slopes),
        }


def fit_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def _time_point(n: int, m: int, depth: int, seed: int, reps: int) -> tuple[list[int], object]:
    a = generate_base(GeneratorConfig(n=n, m=m, clifford_depth=depth, seed=seed))
    b = derive_equivalent(a, seed, scramble=False)
    verdict = check_equivalence(a, b)  # warm-up, discarded
    times = []
    # as in timeit: cyclic GC passes scale with the live heap, not with the check
    enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for _ in range(reps):
            t0 = time.perf_counter_ns()
            verdict = check_equivalence(a, b)
            times.append(time.perf_counter_ns() - t0)
    finally:
        if enabled:
            gc.enable()
    return times, verdict


def run_scaling_bench(spec: dict | None = None, progress=None) -> BenchReport:
    spec = DEFAULT_SWEEP if spec is None else spec
    seed = int(spec.get("seed", 0))
    reps = max(5, int(spec.get("reps", 5)))
    report = BenchReport()
    for sw in spec.get("sweeps", []):
        name = sw.get("name") or ("m" if isinstance(sw["m"], list) else "n")
        depth = int(sw.get("depth", 10))
        ns = sw["n"] if isinstance(sw["n"], list) else None
        ms = sw["m"] if isinstance(sw["m"], list) else None
        if (ns is None) == (ms is None):
            raise ValueError(f"sweep {name!r} must vary exactly one of n and m")
        points = [(n, sw["m"]) for n in ns] if ns is not None else [(sw["n"], m) for m in ms]
        xs, ys = [], []
        for n, m in points:
            times, verdict = _time_point(int(n), int(m), depth, seed, reps)
            med = float(np.median(times))
            report.records.append(
                BenchRecord(name, int(n), int(m), depth, seed, verdict.outcome.value,
                            verdict.columns_compared, times, med)
            )
            xs.append(n if ns is not None else m)
            ys.append(med)
            if progress:
                progress(report.records[-1])
        if len(xs) >= 2:
            report.slopes[name] = fit_slope(xs, ys)
    return report
