"""Multidirectional moment compatibility.

Directional moments of atomic measures and moment tensors, the basic
mass / barycentre / PSD checks, Veronese evaluation rank tests, the
codimension formula for compatible directional data, and the finite
matching enumeration for two planar projections.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DependentDirections, SizeLimit


@dataclass(frozen=True)
class AtomicMeasure:
    """Weighted atoms: n pairwise distinct points in R^d with nonzero weights."""

    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __init__(self, points, weights):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        w = np.asarray(weights, dtype=float)
        if pts.shape[0] != len(w):
            raise ValueError("need one weight per point")
        if np.any(w == 0.0):
            raise ValueError("weights must be nonzero")
        for i in range(len(pts)):
            for k in range(i + 1, len(pts)):
                if np.allclose(pts[i], pts[k], rtol=0, atol=1e-12):
                    raise ValueError("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class MomentTensorSet:
    """Full symmetric moment tensors T_r = sum_i w_i p_i^(x r), r <= R."""

    d: int
    R: int
    tensors: dict = field(repr=False)

    @classmethod
    def from_atomic(cls, mu: AtomicMeasure, R: int) -> "MomentTensorSet":
        tensors = {}
        for r in range(R + 1):
            T = np.zeros((mu.dim,) * r) if r > 0 else np.zeros(())
            for p, w in zip(mu.points, mu.weights):
                term = np.array(w)
                for _ in range(r):
                    term = np.multiply.outer(term, p)
                T = T + term
            tensors[r] = T
        return cls(mu.dim, R, tensors)


@dataclass(frozen=True)
class DirectionalDataset:
    """Directions u_j with moment values s_r^(j) for 0 <= r <= orders."""

    directions: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __init__(self, directions, values):
        dirs = np.atleast_2d(np.asarray(directions, dtype=float))
        vals = np.atleast_2d(np.asarray(values, dtype=float))
        if dirs.shape[0] != vals.shape[0]:
            raise ValueError("need one value row per direction")
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "values", vals)

    @property
    def d(self) -> int:
        return self.directions.shape[1]

    @property
    def n_directions(self) -> int:
        return self.directions.shape[0]

    @property
    def orders(self) -> int:
        return self.values.shape[1] - 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "directions": self.directions.tolist(),
                "orders": self.orders,
                "values": self.values.tolist(),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "DirectionalDataset":
        doc = json.loads(text) if isinstance(text, str) else text
        unknown = set(doc) - {"d", "directions", "orders", "values"}
        if unknown:
            raise ValueError(f"unknown fields {sorted(unknown)}")
        ds = cls(doc["directions"], doc["values"])
        if ds.d != doc["d"] or ds.orders != doc["orders"]:
            raise ValueError("d/orders fields inconsistent with the arrays")
        return ds

    @classmethod
    def from_atomic(cls, mu: AtomicMeasure, directions, R: int) -> "DirectionalDataset":
        dirs = np.atleast_2d(np.asarray(directions, dtype=float))
        vals = [[directional_moment(mu, u, r) for r in range(R + 1)] for u in dirs]
        return cls(dirs, vals)


def directional_moment(mu, u, r: int) -> float:
    """r-th moment of the projection onto direction u.

    For atoms this is sum_i w_i (u . p_i)^r; for a tensor set it is the
    full contraction of T_r with u, which carries the multinomial weights
    automatically.
    """
    u = np.asarray(u, dtype=float)
    if r < 0:
        raise ValueError("order must be nonnegative")
    if isinstance(mu, AtomicMeasure):
        return float(np.sum(mu.weights * (mu.points @ u) ** r))
    if isinstance(mu, MomentTensorSet):
        if r > mu.R:
            raise ValueError(f"order {r} exceeds stored tensors (R = {mu.R})")
        T = mu.tensors[r]
        for _ in range(r):
            T = np.tensordot(T, u, axes=([0], [0]))
        return float(T)
    raise TypeError(f"unsupported measure type {type(mu).__name__}")


# ---------------------------------------------------------------------------
# compatibility checks


def rank_bound(d: int, r: int) -> int:
    """Dimension of degree-r directional moment functions: C(d+r-1, r)."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    return math.comb(d + r - 1, r)


def compat_codimension(d: int, N: int, R: int) -> int:
    """Codimension of compatible directional data among all collections."""
    if N < 1 or R < 0:
        raise ValueError("need N >= 1 and R >= 0")
    return sum(max(0, N - rank_bound(d, r)) for r in range(R + 1))


def _monomial_exponents(d: int, r: int) -> list[tuple[int, ...]]:
    if d == 1:
        return [(r,)]
    out = []
    for head in range(r, -1, -1):
        for rest in _monomial_exponents(d - 1, r - head):
            out.append((head,) + rest)
    return out


@dataclass(frozen=True)
class VeroneseFit:
    compatible: bool
    residual: float
    coefficients: np.ndarray = field(repr=False)
    exponents: tuple = field(repr=False)
    rank: int


def veronese_compatibility(directions, values, r: int, tol: float = 1e-8) -> VeroneseFit:
    """Can the values at fixed order r be interpolated by one degree-r form?

    Least squares in the monomial basis with max-abs column scaling; the
    numerical rank of the evaluation matrix is reported so degenerate
    direction sets are visible.
    """
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    vals = np.asarray(values, dtype=float)
    if dirs.shape[0] != len(vals):
        raise ValueError("need one value per direction")
    d = dirs.shape[1]
    exps = _monomial_exponents(d, r)
    A = np.empty((dirs.shape[0], len(exps)))
    for j, e in enumerate(exps):
        A[:, j] = np.prod(dirs ** np.asarray(e), axis=1)
    scales = np.max(np.abs(A), axis=0)
    scales[scales == 0.0] = 1.0
    As = A / scales
    coeffs, _, rank, _ = np.linalg.lstsq(As, vals, rcond=None)
    residual = float(np.linalg.norm(As @ coeffs - vals))
    compatible = bool(residual <= tol * (1.0 + np.linalg.norm(vals)))
    return VeroneseFit(compatible, residual, coeffs / scales, tuple(exps), int(rank))


@dataclass(frozen=True)
class CompatibilityReport:
    masses: tuple[float, ...]
    mass_ok: bool
    barycentre: np.ndarray = field(repr=False)
    barycentre_residual: float = 0.0
    second_moment: np.ndarray = field(repr=False, default=None)
    second_moment_residual: float = 0.0
    min_eigenvalue: float = 0.0
    psd_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.mass_ok and self.psd_ok


def basic_compatibility(dataset: DirectionalDataset, tol: float = 1e-8) -> CompatibilityReport:
    """Mass, barycentre and second-moment checks across directions.

    (a) all zeroth moments agree; (b) first moments fit a single barycentre
    linearly; (c) second moments fit a single symmetric matrix S, whose
    smallest eigenvalue is reported (PSD up to -tol).
    """
    if dataset.orders < 2:
        raise ValueError("need directional moments up to order 2")
    dirs = dataset.directions
    d = dataset.d
    s0 = dataset.values[:, 0]
    mass_ok = bool(np.max(np.abs(s0 - np.mean(s0))) <= tol * (1.0 + abs(float(np.mean(s0)))))
    # barycentre: s1 = u . b
    s1 = dataset.values[:, 1]
    b, *_ = np.linalg.lstsq(dirs, s1, rcond=None)
    b_res = float(np.linalg.norm(dirs @ b - s1))
    # second moments: s2 = u^T S u, S symmetric
    s2 = dataset.values[:, 2]
    pairs = [(a, c) for a in range(d) for c in range(a, d)]
    A = np.empty((len(dirs), len(pairs)))
    for j, (a, c) in enumerate(pairs):
        A[:, j] = dirs[:, a] * dirs[:, c] * (1.0 if a == c else 2.0)
    sol, *_ = np.linalg.lstsq(A, s2, rcond=None)
    S = np.zeros((d, d))
    for val, (a, c) in zip(sol, pairs):
        S[a, c] = val
        S[c, a] = val
    s_res = float(np.linalg.norm(A @ sol - s2))
    eigmin = float(np.min(np.linalg.eigvalsh(S)))
    scale = 1.0 + float(np.max(np.abs(s2))) if len(s2) else 1.0
    psd_ok = bool(eigmin >= -tol * scale)
    return CompatibilityReport(
        masses=tuple(float(x) for x in s0),
        mass_ok=mass_ok,
        barycentre=b,
        barycentre_residual=b_res,
        second_moment=S,
        second_moment_residual=s_res,
        min_eigenvalue=eigmin,
        psd_ok=psd_ok,
    )


# ---------------------------------------------------------------------------
# two-projection matching


def match_two_projections(u, v, proj_u, proj_v, tol: float = 1e-8) -> list[AtomicMeasure]:
    """All planar configurations consistent with two projected datasets.

    Each projection is a list of (value, weight) pairs.  Every weight-
    consistent bijection is inverted through the 2x2 map p -> (u.p, v.p);
    candidate configurations equal up to tolerance are deduplicated.
    Enumeration order is lexicographic in the matching permutation.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    T = np.vstack([u, v])
    if abs(np.linalg.det(T)) <= tol * (1.0 + np.linalg.norm(u) * np.linalg.norm(v)):
        raise DependentDirections("directions are linearly dependent")
    pu = [(float(a), float(w)) for a, w in proj_u]
    pv = [(float(a), float(w)) for a, w in proj_v]
    if len(pu) != len(pv):
        raise ValueError("projection lists must have equal length")
    n = len(pu)
    if n > 10:
        raise SizeLimit(f"matching enumeration limited to n <= 10, got {n}")
    wscale = 1.0 + max(abs(w) for _, w in pu + pv)
    Tinv = np.linalg.inv(T)
    candidates = []
    for perm in itertools.permutations(range(n)):
        if any(abs(pu[i][1] - pv[perm[i]][1]) > tol * wscale for i in range(n)):
            continue
        pts = np.array([Tinv @ np.array([pu[i][0], pv[perm[i]][0]]) for i in range(n)])
        weights = np.array([pu[i][1] for i in range(n)])
        order = np.lexsort((pts[:, 1], pts[:, 0]))
        key = (pts[order], weights[order])
        if any(
            np.allclose(key[0], k0, atol=tol * (1.0 + np.max(np.abs(key[0]))), rtol=0)
            and np.allclose(key[1], k1, atol=tol * wscale, rtol=0)
            for k0, k1 in candidates
        ):
            continue
        candidates.append(key)
    return [AtomicMeasure(pts, w) for pts, w in candidates]
