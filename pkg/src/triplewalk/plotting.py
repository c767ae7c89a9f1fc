"""Figure rendering for probability traces.

Renders in-process to self-contained vector-graphics files (SVG by default,
or whatever format the file extension selects) using the non-interactive
matplotlib backend.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .dynamics import ProbabilityTrace

__all__ = ["plot_trace"]


def plot_trace(trace: ProbabilityTrace, path: str) -> None:
    """Write a line plot of p_left and p_right versus time.

    The time axis is in units of the inverse main-chain hopping strength.
    """
    spec = trace.spec
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(trace.times, trace.p_left, label="left part", linewidth=1.2)
    ax.plot(
        trace.times, trace.p_right, label="right part", linewidth=1.2,
        linestyle="--",
    )
    ax.set_xlabel("t (1 / main-chain hopping)")
    ax.set_ylabel("probability")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(
        f"N={spec.main_len}, S={spec.side_len}, l={spec.attach}, "
        f"J={spec.coupling:g}, start={trace.start}"
    )
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
