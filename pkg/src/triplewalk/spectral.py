"""Closed-form spectral machinery for triple graphs.

Everything here is analytic: chain spectra, the diagonal and off-diagonal
Green function of the bare main chain, the classification of levels into
remaining (untouched by the side chain) and shifted (pushed onto the two
sub-chain spectra at strong coupling), exact and strong-coupling level
equations with pole-bracketed root finding, the first-order level shift, the
perturbative crossing amplitude, and the side-chain leakage residue.

Conventions: energies are in units of the main-chain hopping; sites are
1-indexed. The test for a vanishing sine weight sin(l*m*pi/(N+1)) = 0 is done
arithmetically, (N+1) divides l*m, never by floating-point comparison.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    BracketFailureWarning,
    DegeneratePartitionError,
    SpecError,
    ZOnSpectrumError,
)
from .model import TripleGraphSpec, validate_spec

__all__ = [
    "ChainSpectrum",
    "LevelClassification",
    "RootSet",
    "chain_levels",
    "g0_diag",
    "g0_element",
    "remaining_levels",
    "shifted_levels_large_j",
    "lambda_s",
    "side_chain_g_diag",
    "level_equation",
    "find_roots",
    "delta_shift",
    "perturbative_amplitude",
    "side_leak_residue",
    "classify_levels",
]

SPECTRUM_GUARD = 1e-8
ROOT_XTOL = 1e-12
POLE_OFFSET = 1e-6
SCAN_POINTS = 10_000


@dataclass(frozen=True)
class ChainSpectrum:
    """Spectrum of a bare path graph of the given length.

    levels[m-1] = -2 cos(m*pi/(length+1)) for m = 1..length, strictly
    increasing; amplitude(j, m) is the normalized eigenvector component
    sqrt(2/(length+1)) * sin(j*m*pi/(length+1)).
    """

    length: int
    levels: np.ndarray

    def amplitude(self, j: int, m: int) -> float:
        ln = self.length
        if not (1 <= j <= ln and 1 <= m <= ln):
            raise ValueError(f"indices ({j},{m}) out of range 1..{ln}")
        return math.sqrt(2.0 / (ln + 1)) * math.sin(j * m * math.pi / (ln + 1))


@dataclass(frozen=True)
class LevelClassification:
    """Level bookkeeping for a triple graph at strong coupling.

    remaining: main-chain levels whose eigenstates vanish at the attachment
    site (they persist unchanged for any J). shifted: the strong-coupling
    positions of all other levels, i.e. the spectra of the two sub-chains to
    the left and right of the attachment site. detached: the (-J, +J) pair
    that splits off for an odd side chain; the pair tracks the actual outer
    eigenvalues only for a single-site side chain.
    """

    remaining: np.ndarray
    shifted: np.ndarray
    detached: tuple[float, float] | None


@dataclass(frozen=True)
class RootSet:
    """Sorted real roots of a level equation with per-root residuals."""

    mode: str
    roots: np.ndarray
    residuals: np.ndarray


def chain_levels(length: int) -> ChainSpectrum:
    """Analytic spectrum of a bare path of the given length (>= 1)."""
    if not isinstance(length, (int, np.integer)) or length < 1:
        raise SpecError(f"length must be an integer >= 1, got {length!r}")
    m = np.arange(1, length + 1)
    return ChainSpectrum(
        length=int(length), levels=-2.0 * np.cos(m * np.pi / (length + 1))
    )


def _weighted_modes(attach: int, n_main: int) -> tuple[np.ndarray, np.ndarray]:
    """Energies and sine-squared weights of the main-chain modes that do not
    vanish at the attachment site ((N+1) does not divide l*m)."""
    m = np.arange(1, n_main + 1)
    keep = (attach * m) % (n_main + 1) != 0
    m = m[keep]
    energies = -2.0 * np.cos(m * np.pi / (n_main + 1))
    weights = (2.0 / (n_main + 1)) * np.sin(attach * m * np.pi / (n_main + 1)) ** 2
    return energies, weights


def _check_site_range(attach: int, n_main: int) -> None:
    if not isinstance(n_main, (int, np.integer)) or n_main < 1:
        raise SpecError(f"main_len must be an integer >= 1, got {n_main!r}")
    if not isinstance(attach, (int, np.integer)) or not 1 <= attach <= n_main:
        raise SpecError(f"attach site {attach!r} out of range 1..{n_main}")


def g0_diag(z: complex, attach: int, n_main: int) -> complex:
    """Diagonal Green function of the bare main chain at the attachment site.

    Returns sum_m w_m / (z - E_m) over modes m with nonvanishing weight
    w_m = (2/(N+1)) sin^2(l*m*pi/(N+1)), E_m = -2 cos(m*pi/(N+1)). Modes whose
    weight vanishes identically contribute no pole, so z may lie exactly on
    such a level; z within 1e-8 of a contributing level raises.
    """
    _check_site_range(attach, n_main)
    energies, weights = _weighted_modes(attach, n_main)
    z = complex(z)
    if abs(z.imag) < SPECTRUM_GUARD and energies.size:
        dist = float(np.min(np.abs(z - energies)))
        if dist < SPECTRUM_GUARD:
            raise ZOnSpectrumError(
                f"z = {z!r} lies within {dist:.3e} of a contributing main-chain level"
            )
    value = complex(np.sum(weights / (z - energies)))
    return value


def g0_element(z: complex, j1: int, j2: int, n_main: int) -> complex:
    """Off-diagonal Green function element of the bare main chain.

    Spectral sum with sin(j1.)sin(j2.) weights; symmetric in j1, j2 and equal
    to g0_diag when j1 = j2. Modes where either sine vanishes (arithmetic
    divisibility test) are skipped from the sum and from the pole guard.
    """
    _check_site_range(j1, n_main)
    _check_site_range(j2, n_main)
    m = np.arange(1, n_main + 1)
    keep = ((j1 * m) % (n_main + 1) != 0) & ((j2 * m) % (n_main + 1) != 0)
    m = m[keep]
    energies = -2.0 * np.cos(m * np.pi / (n_main + 1))
    weights = (
        (2.0 / (n_main + 1))
        * np.sin(j1 * m * np.pi / (n_main + 1))
        * np.sin(j2 * m * np.pi / (n_main + 1))
    )
    z = complex(z)
    if abs(z.imag) < SPECTRUM_GUARD and energies.size:
        dist = float(np.min(np.abs(z - energies)))
        if dist < SPECTRUM_GUARD:
            raise ZOnSpectrumError(
                f"z = {z!r} lies within {dist:.3e} of a contributing main-chain level"
            )
    return complex(np.sum(weights / (z - energies)))


def remaining_levels(n_main: int, attach: int) -> np.ndarray:
    """Main-chain levels that survive the side chain unchanged, sorted.

    These are the E_m with sin(l*m*pi/(N+1)) = 0, i.e. (N+1) | l*m; with
    g = gcd(N+1, l) they are the g-1 distinct values -2 cos(k*pi/g),
    k = 1..g-1, so the set is nonempty iff g > 1.
    """
    _check_site_range(attach, n_main)
    g = math.gcd(n_main + 1, attach)
    k = np.arange(1, g)
    return np.sort(-2.0 * np.cos(k * np.pi / g))


def shifted_levels_large_j(n_main: int, attach: int) -> np.ndarray:
    """Strong-coupling positions of the non-remaining levels, sorted multiset.

    The attachment site effectively cuts the main chain at strong coupling,
    so the shifted levels are the spectra of the two sub-chains of lengths
    l-1 and N-l: {-2 cos(n*pi/l)}_{n=1..l-1} union
    {-2 cos(n'*pi/(N+1-l))}_{n'=1..N-l}, always N-1 values counting
    multiplicity. Equivalently these are the zeros of g0_diag.
    """
    _check_site_range(attach, n_main)
    if attach in (1, n_main):
        raise DegeneratePartitionError(
            f"attach site {attach} leaves an empty sub-chain (needs 2 <= l <= N-1)"
        )
    n = np.arange(1, attach)
    left = -2.0 * np.cos(n * np.pi / attach)
    np_ = np.arange(1, n_main + 1 - attach)
    right = -2.0 * np.cos(np_ * np.pi / (n_main + 1 - attach))
    return np.sort(np.concatenate([left, right]))


def lambda_s(side_len: int) -> float:
    """Coefficient of the 1/z term in the even-side-chain level equation.

    Returns (1/(2(S+1))) * sum_{n=1..S} tan^2(n*pi/(S+1)); equal to S/2 for
    every even S.
    """
    if not isinstance(side_len, (int, np.integer)) or side_len < 2 or side_len % 2:
        raise SpecError(f"side_len must be an even integer >= 2, got {side_len!r}")
    terms = [
        math.tan(n * math.pi / (side_len + 1)) ** 2 for n in range(1, side_len + 1)
    ]
    return math.fsum(terms) / (2.0 * (side_len + 1))


def side_chain_g_diag(z: complex, side_len: int, coupling: float) -> complex:
    """Surface Green function of the isolated side chain at its first site.

    Returns sum_n (2/(S+1)) sin^2(n*pi/(S+1)) / (z + 2J cos(n*pi/(S+1))),
    the (1,1) resolvent element of the S-site chain with hopping J. Its poles
    are the side-chain levels -2J cos(n*pi/(S+1)) and its zeros sit at
    -2J cos(k*pi/S), k = 1..S-1.
    """
    if not isinstance(side_len, (int, np.integer)) or side_len < 1:
        raise SpecError(f"side_len must be an integer >= 1, got {side_len!r}")
    j = float(coupling)
    if not math.isfinite(j) or j <= 0.0:
        raise SpecError(f"coupling must be positive and finite, got {coupling!r}")
    n = np.arange(1, side_len + 1)
    energies = -2.0 * j * np.cos(n * np.pi / (side_len + 1))
    weights = (2.0 / (side_len + 1)) * np.sin(n * np.pi / (side_len + 1)) ** 2
    z = complex(z)
    if abs(z.imag) < SPECTRUM_GUARD:
        dist = float(np.min(np.abs(z - energies)))
        if dist < SPECTRUM_GUARD:
            raise ZOnSpectrumError(
                f"z = {z!r} lies within {dist:.3e} of a side-chain level"
            )
    return complex(np.sum(weights / (z - energies)))


def _side_gf_zeros(side_len: int, coupling: float) -> np.ndarray:
    k = np.arange(1, side_len)
    return -2.0 * float(coupling) * np.cos(k * np.pi / side_len)


def level_equation(z: float, spec: TripleGraphSpec, mode: str = "exact") -> float:
    """Value of the level equation's left-hand side at real energy z.

    mode="exact": the finite-coupling equation 1/(J^2 g~0(z)) - g0(z) whose
    zeros are the hybridized levels of the full graph. The reciprocal of the
    side-chain surface Green function is evaluated through the recurrence
    1/g~0_S(z) = z - J^2 g~0_{S-1}(z), which is regular at the side-chain
    levels themselves; its poles are the zeros of g~0_S. The equation reduces
    to z/J^2 - g0(z) for S=1 and to z/J^2 - 1/z - g0(z) for S=2. Strictly
    increasing between consecutive poles (contributing main-chain levels and
    the zeros of the side-chain surface Green function).

    mode="large_j": the strong-coupling limit; g0(z) for odd S and
    g0(z) + lambda_s/z for even S. Strictly decreasing between poles.
    """
    validate_spec(spec)
    if spec.side_len < 1:
        raise SpecError("level_equation requires a side chain (side_len >= 1)")
    n, s, l = spec.main_len, spec.side_len, spec.attach
    j = float(spec.coupling)
    z = float(z)
    g0 = g0_diag(z, l, n).real
    if mode == "exact":
        if s == 1:
            side_recip = z
        else:
            side_recip = z - j * j * side_chain_g_diag(z, s - 1, j).real
        return side_recip / (j * j) - g0
    if mode == "large_j":
        if s % 2 == 1:
            return g0
        if abs(z) < SPECTRUM_GUARD:
            raise ZOnSpectrumError("z = 0 is a pole of the even-side-chain equation")
        return g0 + lambda_s(s) / z
    raise SpecError(f"unknown mode {mode!r} (expected 'exact' or 'large_j')")


def _equation_poles(spec: TripleGraphSpec, mode: str) -> np.ndarray:
    n, s, l = spec.main_len, spec.side_len, spec.attach
    mains, _ = _weighted_modes(l, n)
    if mode == "exact":
        extra = _side_gf_zeros(s, spec.coupling)
    else:
        extra = np.array([0.0]) if s % 2 == 0 else np.array([])
    merged = np.sort(np.concatenate([mains, extra]))
    if merged.size == 0:
        return merged
    out = [merged[0]]
    for val in merged[1:]:
        if val - out[-1] > 1e-9:
            out.append(val)
    return np.array(out)


def find_roots(spec: TripleGraphSpec, mode: str = "exact") -> RootSet:
    """All real roots of the selected level equation, pole-bracketed.

    The scan range is (-2J-3, 2J+3), covering the full graph spectrum. The
    equation's poles split the range into segments on which it is strictly
    monotone; each segment is scanned on a shared 10^4-point grid augmented
    with pole-adjacent points at offset 1e-6, and every sign change is
    refined by bisection to width 1e-12. Residuals |equation(root)| are
    recorded per root.

    Interior segments (pole-bounded on both sides) always contain exactly one
    root of the monotone equations used here; one without a sign change
    triggers a BracketFailureWarning. Note that for even S in exact mode the
    graph's zero-energy eigenvalue coincides with a pole/zero collision of
    the equation and is deliberately not reported as a root.
    """
    validate_spec(spec)
    if spec.side_len < 1:
        raise SpecError("find_roots requires a side chain (side_len >= 1)")
    if mode not in ("exact", "large_j"):
        raise SpecError(f"unknown mode {mode!r} (expected 'exact' or 'large_j')")
    if mode == "large_j" and spec.side_len % 2 == 0:
        lambda_s(spec.side_len)  # validates even side length
    j = float(spec.coupling)
    lo, hi = -2.0 * j - 3.0, 2.0 * j + 3.0
    poles = _equation_poles(spec, mode)
    grid = np.linspace(lo, hi, SCAN_POINTS)

    def f(x: float) -> float:
        return level_equation(x, spec, mode)

    def safe(x: float) -> float | None:
        try:
            val = f(x)
        except ZOnSpectrumError:
            return None
        return val if math.isfinite(val) else None

    edges = np.concatenate([[lo], poles, [hi]])
    roots: list[float] = []
    residuals: list[float] = []
    for i in range(len(edges) - 1):
        a = edges[i] + (POLE_OFFSET if i > 0 else 0.0)
        b = edges[i + 1] - (POLE_OFFSET if i < len(edges) - 2 else 0.0)
        if b <= a:
            continue
        inner = grid[(grid > a) & (grid < b)]
        points = np.concatenate([[a], inner, [b]])
        values = [safe(x) for x in points]
        found = False
        for k in range(len(points) - 1):
            v0, v1 = values[k], values[k + 1]
            if v0 is None or v1 is None or v0 * v1 > 0 or v0 == v1 == 0.0:
                continue
            root = _bisect(f, float(points[k]), float(points[k + 1]), v0)
            roots.append(root)
            residuals.append(abs(f(root)))
            found = True
        interior = 0 < i < len(edges) - 2
        if interior and not found:
            warnings.warn(
                f"no sign change found in ({a:.9g}, {b:.9g}) for mode {mode!r}",
                BracketFailureWarning,
                stacklevel=2,
            )
    order = np.argsort(roots)
    return RootSet(
        mode=mode,
        roots=np.array(roots)[order],
        residuals=np.array(residuals)[order],
    )


def _bisect(f, a: float, b: float, fa: float) -> float:
    while b - a > ROOT_XTOL:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fa < 0.0) != (fm < 0.0):
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def delta_shift(z0: float, spec: TripleGraphSpec) -> float:
    """First-order strong-coupling shift of a zero z0 of g0_diag.

    Returns -z0 / (J^2 * sum_m w_m/(z0-E_m)^2) over the contributing modes.
    The exact level nearest z0 sits at z0 + delta up to higher orders in 1/J.
    """
    validate_spec(spec)
    n, l = spec.main_len, spec.attach
    j = float(spec.coupling)
    z0 = float(z0)
    energies, weights = _weighted_modes(l, n)
    value = abs(float(np.sum(weights / (z0 - energies)))) if energies.size else 0.0
    if not math.isfinite(value) or value > 1e-6:
        raise SpecError(
            f"z0 = {z0!r} is not a zero of the main-chain Green function "
            f"(|g0| = {value:.3e} > 1e-06)"
        )
    if z0 == 0.0:
        return 0.0
    curvature = float(np.sum(weights / (z0 - energies) ** 2))
    return -z0 / (j * j * curvature)


def perturbative_amplitude(
    j1: int, j2: int, t: float, spec: TripleGraphSpec
) -> complex:
    """Leading-order crossing amplitude from site j2 (left) to j1 (right).

    Sums, over the remaining levels E with theta = arccos(-E/2),
    (2/(N+1)) sin(j1*theta) sin(j2*theta) e^{-iEt} (e^{-i delta(E) t} - 1),
    dropping the O(1/J^2) remainder. Zero whenever no levels remain, and
    exactly zero at t = 0. Requires an odd side chain and sites strictly on
    opposite sides of the attachment point (j1 > l > j2).
    """
    validate_spec(spec)
    n, s, l = spec.main_len, spec.side_len, spec.attach
    if s % 2 == 0:
        raise SpecError(f"perturbative amplitude requires odd side_len, got {s}")
    if not (1 <= j2 < l < j1 <= n):
        raise SpecError(
            f"sites must straddle the attachment point: need j2 < {l} < j1, "
            f"got j1={j1}, j2={j2}"
        )
    total = 0j
    for energy in remaining_levels(n, l):
        theta = math.acos(min(1.0, max(-1.0, -energy / 2.0)))
        delta = delta_shift(energy, spec)
        total += (
            (2.0 / (n + 1))
            * math.sin(j1 * theta)
            * math.sin(j2 * theta)
            * np.exp(-1j * energy * t)
            * (np.exp(-1j * delta * t) - 1.0)
        )
    return complex(total)


def side_leak_residue(j: int, spec: TripleGraphSpec) -> float:
    """Residue controlling single-site side-chain leakage from main site j.

    For a single-site side chain the detached level near z = J couples the
    side site to the main chain with residue -1/2 at the attachment site,
    +1/(2J) at its main-chain neighbors, and 0 elsewhere; leakage from any
    non-attachment site is therefore O(1/J^2).
    """
    validate_spec(spec)
    if spec.side_len != 1:
        raise SpecError(
            f"side_leak_residue is defined for side_len = 1, got {spec.side_len}"
        )
    n, l = spec.main_len, spec.attach
    if not 1 <= j <= n:
        raise SpecError(f"site {j} out of range 1..{n}")
    if j == l:
        return -0.5
    if abs(j - l) == 1:
        return 1.0 / (2.0 * float(spec.coupling))
    return 0.0


def classify_levels(spec: TripleGraphSpec) -> LevelClassification:
    """Aggregate remaining/shifted/detached level data for a spec."""
    validate_spec(spec)
    j = float(spec.coupling)
    detached = (-j, j) if spec.side_len % 2 == 1 else None
    return LevelClassification(
        remaining=remaining_levels(spec.main_len, spec.attach),
        shifted=shifted_levels_large_j(spec.main_len, spec.attach),
        detached=detached,
    )
