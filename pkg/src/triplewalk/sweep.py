"""Grid sweeps over (N, l, S, J) and the parity/gcd switching law.

The empirical law under test: switching occurs iff the side chain has an odd
number of sites and gcd(N+1, l) <= 2. Each grid point carries its gcd value,
both gcd predicates, the side-chain parity, the switching verdict, and an
agreement flag against the law. Per-point failures (for example a start site
that falls on the attachment point) are captured in the record instead of
aborting the sweep.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .dynamics import SwitchingVerdict, switching_verdict
from .errors import SpecError
from .model import TripleGraphSpec, validate_spec

__all__ = [
    "SweepGrid",
    "SweepRecord",
    "gcd_predicate",
    "switching_law",
    "run_sweep",
    "classify_parity_effect",
]

SWEEP_START = 1
SWEEP_HORIZON = 1500.0
SWEEP_DT = 0.05
SWEEP_THRESHOLD = 0.05


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian grid of model parameters with fixed dynamics parameters.

    The default start site is 1: the first site overlaps every remaining
    level (its eigenvector amplitude is proportional to sin(k*pi/g), never
    zero), so crossings are never hidden by a nodal start. The default
    horizon covers the slow strong-coupling beat period at J around 10.
    """

    n_values: tuple[int, ...]
    l_values: tuple[int, ...]
    s_values: tuple[int, ...]
    j_values: tuple[float, ...]
    start: int = SWEEP_START
    horizon: float = SWEEP_HORIZON
    dt: float = SWEEP_DT
    threshold: float = SWEEP_THRESHOLD


@dataclass(frozen=True)
class SweepRecord:
    """One grid point's parameters, classification, and outcome.

    predicate_strict is gcd(N+1, l) > 2 (the blocking law's threshold;
    gcd = 2 leaves only the zero-energy level, which carries no crossing);
    predicate_weak is gcd(N+1, l) > 1 (some level remains at all).
    """

    spec: TripleGraphSpec
    gcd_value: int
    predicate_strict: bool
    predicate_weak: bool
    parity: str
    verdict: SwitchingVerdict | None
    agreement: bool | None
    error: str | None = None


def gcd_predicate(n_main: int, attach: int) -> tuple[int, bool, bool]:
    """gcd(N+1, l) with its two thresholds: (value, gcd > 2, gcd > 1)."""
    if not 1 <= attach <= n_main:
        raise SpecError(f"attach site {attach} out of range 1..{n_main}")
    g = math.gcd(n_main + 1, attach)
    return g, g > 2, g > 1


def switching_law(side_len: int, predicate_strict: bool) -> bool:
    """Expected switching verdict: odd side chain and gcd(N+1, l) <= 2."""
    return side_len % 2 == 1 and not predicate_strict


def _grid_points(grid: SweepGrid):
    return itertools.product(
        grid.n_values, grid.l_values, grid.s_values, grid.j_values
    )


def _evaluate_point(args) -> SweepRecord:
    n, l, s, j, start, horizon, dt, threshold = args
    spec = TripleGraphSpec(main_len=n, side_len=s, attach=l, coupling=j)
    try:
        validate_spec(spec)
        g, pred_strict, pred_weak = gcd_predicate(n, l)
    except SpecError as exc:
        return SweepRecord(
            spec=spec,
            gcd_value=0,
            predicate_strict=False,
            predicate_weak=False,
            parity="odd" if s % 2 else "even",
            verdict=None,
            agreement=None,
            error=str(exc),
        )
    parity = "odd" if s % 2 else "even"
    try:
        verdict = switching_verdict(
            spec, start=start, horizon=horizon, dt=dt, threshold=threshold
        )
    except Exception as exc:
        return SweepRecord(
            spec=spec,
            gcd_value=g,
            predicate_strict=pred_strict,
            predicate_weak=pred_weak,
            parity=parity,
            verdict=None,
            agreement=None,
            error=str(exc),
        )
    return SweepRecord(
        spec=spec,
        gcd_value=g,
        predicate_strict=pred_strict,
        predicate_weak=pred_weak,
        parity=parity,
        verdict=verdict,
        agreement=verdict.switching == switching_law(s, pred_strict),
    )


def run_sweep(grid: SweepGrid, workers: int | None = None) -> list[SweepRecord]:
    """Evaluate every grid point, in grid order, deterministically.

    Iteration order is the Cartesian product over (n, l, s, j) values in the
    order given. With workers > 1 the points are evaluated in a process pool;
    results are still returned in grid order.
    """
    if not (grid.n_values and grid.l_values and grid.s_values and grid.j_values):
        raise SpecError("sweep grid has an empty parameter range")
    args = [
        (n, l, s, j, grid.start, grid.horizon, grid.dt, grid.threshold)
        for n, l, s, j in _grid_points(grid)
    ]
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate_point, args))
    return [_evaluate_point(a) for a in args]


def classify_parity_effect(records: list[SweepRecord]) -> dict:
    """Cross-tabulate (parity, gcd predicate) against switching verdicts.

    Returns a summary with one cell per observed (parity, predicate) pair;
    combinations with no records are absent from the table rather than
    reported as zero. The agreement rate is over non-errored records.
    """
    if not records:
        raise SpecError("classify_parity_effect needs at least one record")
    cells: dict[str, dict] = {}
    agreed = 0
    judged = 0
    errors = 0
    for rec in records:
        if rec.verdict is None:
            errors += 1
            continue
        judged += 1
        agreed += bool(rec.agreement)
        key = f"{rec.parity}|{'gcd>2' if rec.predicate_strict else 'gcd<=2'}"
        cell = cells.setdefault(
            key, {"records": 0, "switching": 0, "agreeing": 0}
        )
        cell["records"] += 1
        cell["switching"] += bool(rec.verdict.switching)
        cell["agreeing"] += bool(rec.agreement)
    for cell in cells.values():
        cell["agreement"] = cell["agreeing"] / cell["records"]
    return {
        "total": len(records),
        "errors": errors,
        "cells": cells,
        "agreement_rate": (agreed / judged) if judged else None,
    }
