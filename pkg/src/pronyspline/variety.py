"""Directional moment variety membership and invariants.

The shifted Hankel matrix whose maximal minors cut out the variety of
order-k directional moment vectors of projected d-polytopes with n
vertices, numerical-rank membership, and the dimension/degree formulas.
Only index metadata is produced for the minors; no ideal-theoretic
computation happens here.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import WindowTooShort
from .symmetric import binomial


@dataclass(frozen=True)
class VarietyParams:
    d: int
    n: int
    k: int

    def __post_init__(self):
        if self.d < 0 or self.n < self.d + 1 or self.k < 0:
            raise ValueError("need d >= 0, n >= d + 1, k >= 0")

    @property
    def nontrivial(self) -> bool:
        """Below k = 2n - d the variety fills projective space."""
        return self.k >= 2 * self.n - self.d


def variety_hankel(moments, params: VarietyParams) -> np.ndarray:
    """(n+1) x (k+d-n+1) Hankel matrix of the normalized sequence."""
    moments = np.asarray(getattr(moments, "moments", moments), dtype=float)
    if len(moments) != params.k + 1:
        raise ValueError(f"need k+1 = {params.k + 1} moments, got {len(moments)}")
    cols = params.k + params.d - params.n + 1
    if cols < 1:
        raise ValueError("k + d - n must be nonnegative")
    c = np.zeros(params.k + params.d + 1)
    for i, m in enumerate(moments):
        c[params.d + i] = binomial(i + params.d, params.d) * m
    return np.array([[c[i + j] for j in range(cols)] for i in range(params.n + 1)])


@dataclass(frozen=True)
class MembershipResult:
    on_variety: bool
    rank: int
    singular_values: tuple[float, ...]


def membership(moments, params: VarietyParams, tol: float = 1e-8) -> MembershipResult:
    """Numerical-rank membership test: on the variety iff rank <= n."""
    if not params.nontrivial:
        raise WindowTooShort(
            f"k = {params.k} < 2n - d = {2 * params.n - params.d}: test is vacuous"
        )
    H = variety_hankel(moments, params)
    s = np.linalg.svd(H, compute_uv=False)
    smax = s[0] if len(s) else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return MembershipResult(rank <= params.n, rank, tuple(float(x) for x in s))


def variety_invariants(params: VarietyParams) -> tuple[int, int]:
    """(dimension, degree) = (2n - d - 1, C(k - n + d + 1, n))."""
    if not params.nontrivial:
        raise WindowTooShort(
            f"k = {params.k} < 2n - d = {2 * params.n - params.d}"
        )
    return 2 * params.n - params.d - 1, math.comb(params.k - params.n + params.d + 1, params.n)


def minor_index_sets(params: VarietyParams) -> list[dict]:
    """Column index sets of all maximal ((n+1) x (n+1)) minors."""
    rows = params.n + 1
    cols = params.k + params.d - params.n + 1
    size = min(rows, cols)
    return [
        {"rows": list(r), "cols": list(c)}
        for r in itertools.combinations(range(rows), size)
        for c in itertools.combinations(range(cols), size)
    ]


def export_json(moments, params: VarietyParams) -> str:
    """Hankel matrix plus minor index sets, for external algebra tools."""
    H = variety_hankel(moments, params)
    doc = {
        "d": params.d,
        "n": params.n,
        "k": params.k,
        "matrix": H.tolist(),
        "minors": minor_index_sets(params),
    }
    return json.dumps(doc, sort_keys=True)
