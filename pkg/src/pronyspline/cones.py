"""Positivity and realizability.

Membership in the positive simplicial spline cone (a closed orthant in
basis coordinates), the fixed-node linear inequalities, positivity of the
reconstructed measure, single-polygon realization with an explicit
certificate polygon, and the Brunn-Minkowski concavity obstruction for
higher-dimensional slice densities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ComplexRoots, NegativeDensity
from .inverse import ReconstructionResult, reconstruct, solve_amplitudes
from .measures import (
    KnotSet,
    PiecewiseLinearDensity,
    Polygon,
    density_eval,
    density_support,
)


@dataclass(frozen=True)
class ConeDecision:
    """Interior / Boundary / Outside with the tested values.

    `violated_indices` are 1-based (matching the basis labels alpha_1..),
    listing negative coordinates for Outside and zero coordinates for
    Boundary.
    """

    status: str
    violated_indices: tuple[int, ...]
    values: tuple[float, ...]
    diagnostic: str | None = None


def spline_cone_membership(alphas, tol: float = 1e-9) -> ConeDecision:
    """Coordinatewise orthant test on the basis amplitudes."""
    values = tuple(float(a) for a in alphas)
    band = tol * (1.0 + max((abs(v) for v in values), default=0.0))
    negative = [i + 1 for i, v in enumerate(values) if v < -band]
    if negative:
        return ConeDecision("Outside", tuple(negative), values)
    zero = [i + 1 for i, v in enumerate(values) if abs(v) <= band]
    if zero:
        return ConeDecision("Boundary", tuple(zero), values)
    return ConeDecision("Interior", (), values)


def fixed_node_inequalities(d: int, knots, M) -> np.ndarray:
    """The linear forms l_i(M) cutting out the fixed-node moment cone.

    These are exactly the amplitudes A^{-1} b(M); nonnegativity of all of
    them is membership in the positive simplicial spline cone.
    """
    return solve_amplitudes(d, knots, M)


@dataclass(frozen=True)
class PositivityResult:
    decision: ConeDecision
    reconstruction: ReconstructionResult | None


def reconstructed_positivity(d: int, n: int, M, tol: float = 1e-8) -> PositivityResult:
    """Reconstruct, then test the amplitudes against the orthant.

    A failed root-realness test yields Outside with diagnostic
    "RealRootsFailed"; other reconstruction failures propagate.
    """
    try:
        result = reconstruct(d, n, M, tol)
    except ComplexRoots:
        return PositivityResult(
            ConeDecision("Outside", (), (), diagnostic="RealRootsFailed"), None
        )
    decision = spline_cone_membership(result.alphas)
    return PositivityResult(decision, result)


@dataclass(frozen=True)
class Violation:
    """kind is one of "endpoint", "negative", "slope"; index is 1-based."""

    kind: str
    index: int
    value: float


@dataclass(frozen=True)
class RealizabilityResult:
    realizable: bool
    certificate: Polygon | None
    violations: tuple[Violation, ...]


def polygon_realizable(rho: PiecewiseLinearDensity, tol: float = 1e-9) -> RealizabilityResult:
    """Decide whether the profile is the slice density of a convex polygon.

    The criterion: endpoint values zero, interior values nonnegative, and
    chord slopes nonincreasing.  On success the symmetric certificate
    polygon with vertices (x_i, +-y_i/2) is returned; on failure the
    violated conditions are listed.
    """
    xs = np.asarray(rho.knots.values)
    ys = np.asarray(rho.nodal_values)
    n = len(xs)
    scale = 1.0 + np.max(np.abs(ys))
    band = tol * scale
    violations = []
    if abs(ys[0]) > band:
        violations.append(Violation("endpoint", 1, float(ys[0])))
    if abs(ys[-1]) > band:
        violations.append(Violation("endpoint", n, float(ys[-1])))
    for i in range(1, n - 1):
        if ys[i] < -band:
            violations.append(Violation("negative", i + 1, float(ys[i])))
    slopes = np.diff(ys) / np.diff(xs)
    for i in range(2, n):  # slope entering x_i vs slope leaving x_i
        if slopes[i - 1] > slopes[i - 2] + band:
            violations.append(Violation("slope", i, float(slopes[i - 1] - slopes[i - 2])))
    if violations:
        return RealizabilityResult(False, None, tuple(violations))
    if np.max(np.abs(ys)) <= band:
        # identically zero profile: realizable only degenerately
        return RealizabilityResult(True, None, ())
    lower = [(float(x), -float(y) / 2.0) for x, y in zip(xs, ys)]
    upper = [(float(x), float(y) / 2.0) for x, y in zip(xs[::-1], ys[::-1])]
    # endpoints (y = 0) appear once: drop them from the upper chain
    verts = lower + upper[1:-1]
    return RealizabilityResult(True, Polygon(verts), ())


@dataclass(frozen=True)
class ConcavityReport:
    ok: bool
    violating_triple: tuple[float, float, float] | None = None

    def __bool__(self):
        return self.ok


def bm_obstruction(rho, d: int, samples: int = 1000, tol: float = 1e-9) -> ConcavityReport:
    """Brunn-Minkowski obstruction: midpoint concavity of rho^(1/(d-1)).

    Tests `samples` uniformly spaced triples (x-h, x, x+h) inside the
    support.  Raises NegativeDensity if the density is negative anywhere it
    is sampled.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    lo, hi = density_support(rho)
    xs = np.linspace(lo, hi, samples + 2)
    vals = np.array([density_eval(rho, x) for x in xs])
    scale = 1.0 + np.max(np.abs(vals))
    if np.min(vals) < -1e-10 * scale:
        raise NegativeDensity("density is negative on its support")
    f = np.power(np.clip(vals, 0.0, None), 1.0 / (d - 1))
    for i in range(1, samples + 1):
        if f[i] < 0.5 * (f[i - 1] + f[i + 1]) - tol:
            return ConcavityReport(False, (float(xs[i - 1]), float(xs[i]), float(xs[i + 1])))
    return ConcavityReport(True)
