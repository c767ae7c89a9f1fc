"""Command-line front end.

Subcommands: evolve (probability-trace CSV plus optional figure), spectrum
(JSON spectral report), sweep (grid CSV plus parity summary JSON), and verify
(built-in check suite). All numeric CSV/JSON output is full double precision
and deterministic. Relative output paths are resolved under the directory in
the TRIPLEWALK_OUTDIR environment variable when it is set.

Each subcommand accepts --config FILE with flat `name=value` lines using the
same names as the long flags; explicit flags override file values.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from .acceptance import CHECKS, run_checks
from .config import load_config
from .dynamics import (
    DEFAULT_DT,
    DEFAULT_HORIZON,
    DEFAULT_START,
    DEFAULT_THRESHOLD,
    propagate_trace,
)
from .errors import DegeneratePartitionError, SpecError
from .linalg import symmetric_eig
from .model import TripleGraphSpec, build_hamiltonian, validate_spec
from .spectral import classify_levels, find_roots, remaining_levels
from .sweep import SWEEP_HORIZON, SWEEP_START, SweepGrid, classify_parity_effect, run_sweep

__all__ = ["main"]


def _int_value(text: str) -> int:
    return int(text)


def _float_value(text: str) -> float:
    return float(text)


def _int_list(text: str) -> list[int]:
    """Parse '11', '5,6', or an inclusive range '2:10'."""
    if ":" in text:
        lo, _, hi = text.partition(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part != ""]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part != ""]


# One row per option: name -> (converter, built-in default, help).
EVOLVE_OPTIONS = {
    "n": (_int_value, 11, "main-chain length N"),
    "l": (_int_value, 5, "attachment site (1..N)"),
    "s": (_int_value, 1, "side-chain length S"),
    "j": (_float_value, 10.0, "side-chain hopping J"),
    "start": (_int_value, DEFAULT_START, "initial site (1..N+S)"),
    "horizon": (_float_value, DEFAULT_HORIZON, "final time"),
    "dt": (_float_value, DEFAULT_DT, "sampling step"),
    "out": (str, "evolve.csv", "CSV path, or - for stdout"),
    "plot": (str, None, "optional figure path (.svg, .pdf, .png)"),
}

SPECTRUM_OPTIONS = {
    "n": (_int_value, 11, "main-chain length N"),
    "l": (_int_value, 5, "attachment site (1..N)"),
    "s": (_int_value, 1, "side-chain length S"),
    "j": (_float_value, 10.0, "side-chain hopping J"),
    "mode": (str, "exact", "level equation: exact or large_j"),
    "out": (str, "spectrum.json", "JSON path, or - for stdout"),
}

SWEEP_OPTIONS = {
    "n": (_int_list, [11], "N values: X, X,Y or A:B"),
    "l": (_int_list, list(range(2, 11)), "attachment sites: X, X,Y or A:B"),
    "s": (_int_list, [1, 2, 3, 4], "side lengths: X, X,Y or A:B"),
    "j": (_float_list, [10.0], "couplings: X or X,Y"),
    "start": (_int_value, SWEEP_START, "initial site for every point"),
    "horizon": (_float_value, SWEEP_HORIZON, "final time per point"),
    "dt": (_float_value, DEFAULT_DT, "sampling step"),
    "threshold": (_float_value, DEFAULT_THRESHOLD, "switching threshold"),
    "workers": (_int_value, None, "process-pool size (default: in-process)"),
    "out": (str, "sweep.csv", "CSV path, or - for stdout"),
    "summary": (str, None, "summary JSON path (default: derived from --out)"),
}


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _resolve_path(path: str) -> str:
    if path == "-" or os.path.isabs(path):
        return path
    base = os.environ.get("TRIPLEWALK_OUTDIR")
    return os.path.join(base, path) if base else path


def _add_options(parser: argparse.ArgumentParser, table: dict) -> None:
    for name, (conv, default, help_text) in table.items():
        shown = default if default is not None else "none"
        parser.add_argument(
            f"--{name}",
            type=conv,
            default=None,
            help=f"{help_text} (default: {shown})",
        )
    parser.add_argument(
        "--config", default=None, help="flat name=value defaults file"
    )


def _merge_options(args: argparse.Namespace, table: dict) -> dict | int:
    """Combine built-in defaults, config file values, and explicit flags."""
    file_values: dict[str, str] = {}
    if args.config is not None:
        try:
            file_values = load_config(args.config)
        except OSError as exc:
            print(f"error: --config: {exc}", file=sys.stderr)
            return 1
        except ValueError as exc:
            return _fail(f"--config: {exc}")
        unknown = set(file_values) - set(table)
        if unknown:
            return _fail(f"--config: unknown option {sorted(unknown)[0]!r}")
    merged = {}
    for name, (conv, default, _) in table.items():
        explicit = getattr(args, name)
        if explicit is not None:
            merged[name] = explicit
        elif name in file_values:
            try:
                merged[name] = conv(file_values[name])
            except ValueError:
                return _fail(f"--config: invalid value for {name!r}")
        else:
            merged[name] = default
    return merged


def _build_spec(values: dict) -> TripleGraphSpec | int:
    n, l, s, j = values["n"], values["l"], values["s"], values["j"]
    if n < 1:
        return _fail("--n must be at least 1")
    if s < 0:
        return _fail("--s must be at least 0")
    if not 1 <= l <= n:
        return _fail(f"--l must be in 1..{n}")
    if not j > 0:
        return _fail("--j must be positive")
    spec = TripleGraphSpec(main_len=n, side_len=s, attach=l, coupling=j)
    try:
        validate_spec(spec)
    except SpecError as exc:
        return _fail(str(exc))
    return spec


def _float_text(value: float) -> str:
    return repr(float(value))


def _write_text(path: str, render) -> int:
    """Render into path ('-' for stdout); returns an exit code."""
    resolved = _resolve_path(path)
    if resolved == "-":
        render(sys.stdout)
        return 0
    try:
        with open(resolved, "w", encoding="utf-8", newline="") as fh:
            render(fh)
    except OSError as exc:
        print(f"error: cannot write {resolved!r}: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    values = _merge_options(args, EVOLVE_OPTIONS)
    if isinstance(values, int):
        return values
    spec = _build_spec(values)
    if isinstance(spec, int):
        return spec
    if values["horizon"] <= 0:
        return _fail("--horizon must be positive")
    if values["dt"] <= 0:
        return _fail("--dt must be positive")
    if not 1 <= values["start"] <= spec.dim:
        return _fail(f"--start must be in 1..{spec.dim}")
    trace = propagate_trace(
        spec, start=values["start"], horizon=values["horizon"], dt=values["dt"]
    )

    def render(fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "p_left", "p_conn", "p_right", "p_side"])
        for k in range(len(trace.times)):
            writer.writerow(
                [
                    _float_text(trace.times[k]),
                    _float_text(trace.p_left[k]),
                    _float_text(trace.p_conn[k]),
                    _float_text(trace.p_right[k]),
                    _float_text(trace.p_side[k]),
                ]
            )

    code = _write_text(values["out"], render)
    if code != 0:
        return code
    if values["plot"] is not None:
        from .plotting import plot_trace

        try:
            plot_trace(trace, _resolve_path(values["plot"]))
        except OSError as exc:
            print(f"error: cannot write plot: {exc}", file=sys.stderr)
            return 1
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    values = _merge_options(args, SPECTRUM_OPTIONS)
    if isinstance(values, int):
        return values
    spec = _build_spec(values)
    if isinstance(spec, int):
        return spec
    mode = values["mode"]
    if mode not in ("exact", "large_j"):
        return _fail("--mode must be 'exact' or 'large_j'")
    dec = symmetric_eig(build_hamiltonian(spec))
    report: dict = {
        "spec": {"n": spec.main_len, "l": spec.attach, "s": spec.side_len,
                 "j": spec.coupling},
        "spectrum": [float(v) for v in dec.values],
        "remaining": [float(v) for v in remaining_levels(spec.main_len, spec.attach)],
    }
    try:
        levels = classify_levels(spec)
    except DegeneratePartitionError:
        levels = None
    if levels is None:
        report["large_j"] = None
        report["matching"] = None
    else:
        detached = list(levels.detached) if levels.detached else None
        report["large_j"] = {
            "shifted": [float(v) for v in levels.shifted],
            "detached": detached,
        }
        predictions = np.concatenate(
            [levels.shifted, levels.detached if levels.detached else []]
        )
        report["matching"] = [
            {
                "eigenvalue": float(v),
                "nearest_prediction": float(
                    predictions[np.argmin(np.abs(predictions - v))]
                ),
                "distance": float(np.min(np.abs(predictions - v))),
            }
            for v in dec.values
        ]
    if spec.side_len >= 1:
        try:
            roots = find_roots(spec, mode=mode)
            report["roots"] = {
                "mode": roots.mode,
                "roots": [float(v) for v in roots.roots],
                "residuals": [float(v) for v in roots.residuals],
            }
        except (SpecError, DegeneratePartitionError):
            report["roots"] = None
    else:
        report["roots"] = None

    def render(fh) -> None:
        json.dump(report, fh, indent=2)
        fh.write("\n")

    return _write_text(values["out"], render)


def cmd_sweep(args: argparse.Namespace) -> int:
    values = _merge_options(args, SWEEP_OPTIONS)
    if isinstance(values, int):
        return values
    for name in ("n", "l", "s", "j"):
        if not values[name]:
            return _fail(f"--{name} produced an empty range")
    if values["horizon"] <= 0:
        return _fail("--horizon must be positive")
    if values["dt"] <= 0:
        return _fail("--dt must be positive")
    if values["threshold"] <= 0:
        return _fail("--threshold must be positive")
    grid = SweepGrid(
        n_values=tuple(values["n"]),
        l_values=tuple(values["l"]),
        s_values=tuple(values["s"]),
        j_values=tuple(values["j"]),
        start=values["start"],
        horizon=values["horizon"],
        dt=values["dt"],
        threshold=values["threshold"],
    )
    try:
        records = run_sweep(grid, workers=values["workers"])
    except SpecError as exc:
        return _fail(str(exc))

    def bool_text(flag) -> str:
        return "true" if flag else "false"

    def render(fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["n", "l", "s", "j", "gcd", "pred_gt2", "parity",
             "max_opposite", "switching", "agreement"]
        )
        for rec in records:
            if rec.verdict is None:
                tail = ["", "", ""]
            else:
                tail = [
                    _float_text(rec.verdict.max_opposite),
                    bool_text(rec.verdict.switching),
                    bool_text(rec.agreement),
                ]
            writer.writerow(
                [
                    rec.spec.main_len,
                    rec.spec.attach,
                    rec.spec.side_len,
                    _float_text(rec.spec.coupling),
                    rec.gcd_value,
                    bool_text(rec.predicate_strict),
                    rec.parity,
                ]
                + tail
            )

    code = _write_text(values["out"], render)
    if code != 0:
        return code
    summary_path = values["summary"]
    if summary_path is None:
        if values["out"] == "-":
            return 0
        stem, _ = os.path.splitext(values["out"])
        summary_path = stem + ".summary.json"
    summary = {
        "grid": {
            "n": list(grid.n_values),
            "l": list(grid.l_values),
            "s": list(grid.s_values),
            "j": list(grid.j_values),
            "start": grid.start,
            "horizon": grid.horizon,
            "dt": grid.dt,
            "threshold": grid.threshold,
        },
        "parity_table": classify_parity_effect(records),
    }

    def render_summary(fh) -> None:
        json.dump(summary, fh, indent=2)
        fh.write("\n")

    return _write_text(summary_path, render_summary)


def cmd_verify(args: argparse.Namespace) -> int:
    names = args.only if args.only else None
    if names:
        unknown = [name for name in names if name not in CHECKS]
        if unknown:
            available = ", ".join(CHECKS)
            return _fail(
                f"unknown check {unknown[0]!r}; available checks: {available}"
            )
    results = run_checks(names)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
    passed = sum(r.passed for r in results)
    total_time = sum(r.seconds for r in results)
    print(f"{passed}/{len(results)} checks passed in {total_time:.1f}s")
    return 0 if passed == len(results) else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="triplewalk",
        description=(
            "Continuous-time quantum walks on a chain with an attached side "
            "chain: traces, spectra, sweeps, verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser(
        "evolve", help="write a probability-trace CSV (and optional figure)"
    )
    _add_options(p_evolve, EVOLVE_OPTIONS)
    p_evolve.set_defaults(func=cmd_evolve)

    p_spectrum = sub.add_parser("spectrum", help="write a JSON spectral report")
    _add_options(p_spectrum, SPECTRUM_OPTIONS)
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_sweep = sub.add_parser(
        "sweep", help="run a parameter grid and write CSV plus summary JSON"
    )
    _add_options(p_sweep, SWEEP_OPTIONS)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the built-in check suite")
    p_verify.add_argument(
        "--only",
        action="append",
        metavar="NAME",
        help="run a single named check (repeatable)",
    )
    p_verify.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
