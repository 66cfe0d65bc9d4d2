"""Spline measures and polytope pushforwards.

A convex d-polytope projected to a line yields a spline density of degree
d-1 with knots at the projected vertices.  This module holds the value
types (knot sets, B-spline densities, spline measures, piecewise-linear
slice profiles, simplices, polygons), evaluates densities by the
Cox-de Boor recursion, computes pushforwards of simplices and convex
polygons, and provides a quadrature moment oracle that is independent of
the symmetric-function moment formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AtomicMeasureError,
    DegenerateProjection,
    NotConcave,
    OriginNotInK,
)


@dataclass(frozen=True)
class KnotSet:
    """Strictly increasing knot coordinates x_1 < ... < x_n."""

    values: tuple[float, ...]

    def __init__(self, values):
        vals = tuple(float(v) for v in values)
        if len(vals) < 1:
            raise ValueError("knot set must be nonempty")
        if any(b - a <= 0 for a, b in zip(vals, vals[1:])):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def as_knots(knots) -> KnotSet:
    return knots if isinstance(knots, KnotSet) else KnotSet(knots)


@dataclass(frozen=True)
class BSplineDensity:
    """Mass-normalized B-spline (M-spline) density.

    `knots` are d+1 strictly increasing reals; the density is piecewise
    polynomial of degree d-1, supported on [knots[0], knots[-1]], and
    integrates to `mass`.
    """

    knots: tuple[float, ...]
    mass: float

    def __init__(self, knots, mass):
        k = tuple(float(v) for v in knots)
        if len(k) < 2:
            raise ValueError("need at least two knots")
        if any(b - a <= 0 for a, b in zip(k, k[1:])):
            raise ValueError("knots must be strictly increasing (simple knots only)")
        if mass <= 0:
            raise ValueError("mass must be positive")
        object.__setattr__(self, "knots", k)
        object.__setattr__(self, "mass", float(mass))

    @property
    def d(self) -> int:
        return len(self.knots) - 1


@dataclass(frozen=True)
class SplineMeasure:
    """Spline measure sum alphas[i] * mu_i in the consecutive basis.

    mu_i is the mass-one B-spline with knot window (x_i, ..., x_{i+d}),
    so the total mass is sum(alphas).
    """

    d: int
    knots: KnotSet
    alphas: tuple[float, ...]

    def __init__(self, d, knots, alphas):
        knots = as_knots(knots)
        alphas = tuple(float(a) for a in alphas)
        n = len(knots)
        if d < 0:
            raise ValueError("d must be nonnegative")
        if n < d + 1:
            raise ValueError(f"need at least d+1 = {d + 1} knots, got {n}")
        if len(alphas) != n - d:
            raise ValueError(f"need n-d = {n - d} amplitudes, got {len(alphas)}")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "alphas", alphas)

    @property
    def n(self) -> int:
        return len(self.knots)

    def basis(self) -> list[BSplineDensity]:
        if self.d == 0:
            raise AtomicMeasureError("d = 0 measures are atomic; no density basis")
        return [
            BSplineDensity(self.knots.values[i : i + self.d + 1], 1.0)
            for i in range(self.n - self.d)
        ]


@dataclass(frozen=True)
class PiecewiseLinearDensity:
    """Continuous piecewise-linear interpolant of (x_i, y_i), zero outside."""

    knots: KnotSet
    nodal_values: tuple[float, ...]

    def __init__(self, knots, nodal_values):
        knots = as_knots(knots)
        vals = tuple(float(v) for v in nodal_values)
        if len(vals) != len(knots):
            raise ValueError("need one nodal value per knot")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "nodal_values", vals)

    def __call__(self, x):
        xs = np.asarray(self.knots.values)
        ys = np.asarray(self.nodal_values)
        return np.where(
            (np.asarray(x) < xs[0]) | (np.asarray(x) > xs[-1]),
            0.0,
            np.interp(x, xs, ys),
        )


@dataclass(frozen=True)
class Simplex:
    """d+1 affinely independent points in R^d (rows of `vertices`)."""

    vertices: np.ndarray = field(repr=False)

    def __init__(self, vertices):
        v = np.atleast_2d(np.asarray(vertices, dtype=float))
        if v.shape[0] != v.shape[1] + 1:
            raise ValueError(f"a simplex in R^{v.shape[1]} needs {v.shape[1] + 1} vertices")
        if abs(np.linalg.det(v[1:] - v[0])) == 0.0:
            raise ValueError("vertices are affinely dependent (zero volume)")
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def volume(self) -> float:
        d = self.dim
        return abs(np.linalg.det(self.vertices[1:] - self.vertices[0])) / math.factorial(d)


@dataclass(frozen=True)
class Polygon:
    """Convex polygon in R^2, vertices counterclockwise.

    Collinear consecutive vertices are tolerated (needed for realization
    certificates whose profile has repeated slopes); reflex vertices and
    clockwise orientation are rejected.
    """

    vertices: tuple[tuple[float, float], ...]

    def __init__(self, vertices, tol: float = 1e-12):
        v = [(float(p[0]), float(p[1])) for p in vertices]
        if len(v) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        arr = np.asarray(v)
        scale = 1.0 + np.max(np.abs(arr))
        area2 = 0.0
        for i in range(len(v)):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % len(v)]
            area2 += x0 * y1 - x1 * y0
        if area2 <= 0:
            raise ValueError("vertices must be in counterclockwise order")
        for i in range(len(v)):
            a = arr[i]
            b = arr[(i + 1) % len(v)]
            c = arr[(i + 2) % len(v)]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross < -tol * scale * scale:
                raise ValueError("polygon is not convex")
        object.__setattr__(self, "vertices", tuple(v))

    @property
    def area(self) -> float:
        v = self.vertices
        return 0.5 * sum(
            v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1]
            for i in range(len(v))
        )


# ---------------------------------------------------------------------------
# density evaluation


def bspline_eval(density: BSplineDensity, x: float) -> float:
    """Mass-normalized B-spline density value at x (Cox-de Boor recursion)."""
    v = density.knots
    x = float(x)
    if x < v[0] or x > v[-1]:
        return 0.0
    p = len(v) - 2  # polynomial degree of the density

    def basis(i, k):
        if k == 0:
            if v[i] <= x < v[i + 1]:
                return 1.0
            # closed right end of the global support
            if x == v[-1] and v[i + 1] == v[-1]:
                return 1.0
            return 0.0
        left = 0.0
        if v[i + k] > v[i]:
            left = (x - v[i]) / (v[i + k] - v[i]) * basis(i, k - 1)
        right = 0.0
        if v[i + k + 1] > v[i + 1]:
            right = (v[i + k + 1] - x) / (v[i + k + 1] - v[i + 1]) * basis(i + 1, k - 1)
        return left + right

    # integral of the degree-p B-spline basis function is span / (p+1)
    return density.mass * (p + 1) / (v[-1] - v[0]) * basis(0, p)


def measure_density_eval(nu: SplineMeasure, x: float) -> float:
    """Density of the spline measure at x; refuses atomic (d = 0) measures."""
    if nu.d == 0:
        raise AtomicMeasureError("d = 0 measure is atomic and has no density")
    return float(sum(a * bspline_eval(b, x) for a, b in zip(nu.alphas, nu.basis())))


def density_support(rho) -> tuple[float, float]:
    if isinstance(rho, BSplineDensity):
        return rho.knots[0], rho.knots[-1]
    if isinstance(rho, (SplineMeasure, PiecewiseLinearDensity)):
        return rho.knots[0], rho.knots[-1]
    if isinstance(rho, tuple) and len(rho) == 2 and callable(rho[1]):
        return float(rho[0][0]), float(rho[0][1])
    raise TypeError(f"unsupported density type {type(rho).__name__}")


def density_eval(rho, x: float) -> float:
    """Uniform density evaluation.

    Accepts the value types of this module or a generic ((lo, hi), f)
    pair for densities given by an explicit formula.
    """
    if isinstance(rho, BSplineDensity):
        return bspline_eval(rho, x)
    if isinstance(rho, SplineMeasure):
        return measure_density_eval(rho, x)
    if isinstance(rho, PiecewiseLinearDensity):
        return float(rho(x))
    if isinstance(rho, tuple) and len(rho) == 2 and callable(rho[1]):
        return float(rho[1](x))
    raise TypeError(f"unsupported density type {type(rho).__name__}")


# ---------------------------------------------------------------------------
# pushforwards


def simplex_pushforward(s: Simplex, tol: float = 1e-9) -> BSplineDensity:
    """Pushforward of the simplex under projection to the first coordinate.

    The result is the B-spline density whose knots are the sorted projected
    vertex coordinates and whose mass is the d-volume of the simplex.
    Raises DegenerateProjection when two projected vertices coincide.
    """
    coords = np.sort(s.vertices[:, 0])
    scale = 1.0 + np.max(np.abs(coords))
    if np.min(np.diff(coords)) <= tol * scale:
        raise DegenerateProjection("two projected vertices coincide")
    return BSplineDensity(coords, s.volume)


def _polygon_slice_length(vertices, x: float) -> float:
    ys = []
    m = len(vertices)
    for i in range(m):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % m]
        if x0 == x1:
            if x0 == x:
                ys.extend([y0, y1])
            continue
        lo, hi = (x0, x1) if x0 < x1 else (x1, x0)
        if lo <= x <= hi:
            t = (x - x0) / (x1 - x0)
            ys.append(y0 + t * (y1 - y0))
    if not ys:
        return 0.0
    return max(ys) - min(ys)


def polygon_slice_length(P: Polygon, x: float) -> float:
    """Length of the vertical slice of the polygon at abscissa x."""
    return _polygon_slice_length(P.vertices, float(x))


def polygon_pushforward(P: Polygon, tol: float = 1e-9) -> PiecewiseLinearDensity:
    """Slice-length profile of a convex polygon projected to the x-axis."""
    xs = np.array(sorted(p[0] for p in P.vertices))
    scale = 1.0 + np.max(np.abs(xs))
    if np.min(np.diff(xs)) <= tol * scale:
        raise DegenerateProjection("two vertices share an x-coordinate")
    values = [_polygon_slice_length(P.vertices, float(x)) for x in xs]
    values[0] = 0.0
    values[-1] = 0.0
    return PiecewiseLinearDensity(KnotSet(xs), values)


# ---------------------------------------------------------------------------
# quadrature moment oracle


def _gauss_interval(f, a: float, b: float, points: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(points)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * sum(w * f(mid + half * t) for t, w in zip(nodes, weights))


def numeric_moment(density, j: int) -> float:
    """Integral of x^j against the density, by per-interval Gauss-Legendre.

    The point count is chosen so the quadrature is exact for the piecewise
    polynomial integrand up to round-off.  For an atomic measure (d = 0
    SplineMeasure) the exact weighted power sum is returned instead.
    """
    if j < 0:
        raise ValueError("moment order must be nonnegative")
    if isinstance(density, BSplineDensity):
        knots = density.knots
        deg = density.d - 1
        f = lambda x: bspline_eval(density, x)
    elif isinstance(density, SplineMeasure):
        if density.d == 0:
            return float(
                sum(a * x**j for a, x in zip(density.alphas, density.knots))
            )
        knots = density.knots.values
        deg = density.d - 1
        f = lambda x: measure_density_eval(density, x)
    elif isinstance(density, PiecewiseLinearDensity):
        knots = density.knots.values
        deg = 1
        f = lambda x: float(density(x))
    else:
        raise TypeError(f"unsupported density type {type(density).__name__}")
    points = (j + deg) // 2 + 2
    total = 0.0
    for a, b in zip(knots, knots[1:]):
        total += _gauss_interval(lambda x: x**j * f(x), a, b, points)
    return total


def density_samples(nu, samples: int) -> list[tuple[float, float]]:
    """Uniform-grid (x, rho) samples over the support; endpoints included.

    A single sample is taken at the support midpoint.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    lo, hi = density_support(nu)
    if samples == 1:
        xs = [0.5 * (lo + hi)]
    else:
        xs = list(np.linspace(lo, hi, samples))
    return [(float(x), density_eval(nu, x)) for x in xs]


def density_csv(nu, samples: int) -> str:
    """CSV rows "x,rho" for plotting."""
    rows = density_samples(nu, samples)
    return "\n".join(f"{x!r},{y!r}" for x, y in rows) + "\n"


# ---------------------------------------------------------------------------
# product bodies P_{g,K}


def _check_profile_concave(g: PiecewiseLinearDensity, tol: float):
    ys = np.asarray(g.nodal_values)
    xs = np.asarray(g.knots.values)
    scale = 1.0 + np.max(np.abs(ys))
    if np.min(ys) < -tol * scale:
        raise NotConcave("profile takes negative values")
    slopes = np.diff(ys) / np.diff(xs)
    if np.any(np.diff(slopes) > tol * scale):
        raise NotConcave("profile slopes are not nonincreasing")


def _cross_section(K):
    """Normalize the cross-section input.

    Returns (dim, vertices, volume): a segment [lo, hi] in R^1 for d = 2,
    or a convex CCW polygon in R^2 for d = 3.  The origin must belong to K.
    """
    if isinstance(K, Polygon):
        verts = np.asarray(K.vertices)
    else:
        arr = np.asarray(K, dtype=float)
        if arr.ndim == 1 and arr.size == 2:
            lo, hi = sorted(arr)
            if lo == hi:
                raise ValueError("segment cross-section is degenerate")
            if not (lo <= 0.0 <= hi):
                raise OriginNotInK("segment does not contain the origin")
            return 1, np.array([[lo], [hi]]), hi - lo
        verts = np.asarray(Polygon(arr).vertices)
    # origin inside the convex polygon (boundary allowed)
    scale = 1.0 + np.max(np.abs(verts))
    m = len(verts)
    for i in range(m):
        a, b = verts[i], verts[(i + 1) % m]
        cross = (b[0] - a[0]) * (0.0 - a[1]) - (b[1] - a[1]) * (0.0 - a[0])
        if cross < -1e-12 * scale * scale:
            raise OriginNotInK("polygon does not contain the origin")
    area = 0.5 * abs(
        sum(verts[i][0] * verts[(i + 1) % m][1] - verts[(i + 1) % m][0] * verts[i][1] for i in range(m))
    )
    return 2, verts, area


def _fan_triangles(verts):
    return [(verts[0], verts[i], verts[i + 1]) for i in range(1, len(verts) - 1)]


def _slab_simplices_2d(x0, x1, g0, g1, lo, hi):
    a = [(x0, g0 * lo), (x0, g0 * hi)]
    b = [(x1, g1 * hi), (x1, g1 * lo)]
    quad = [a[0], a[1], b[0], b[1]]
    tris = [(quad[0], quad[1], quad[2]), (quad[0], quad[2], quad[3])]
    out = []
    for tri in tris:
        arr = np.asarray(tri)
        area = 0.5 * abs(np.linalg.det(arr[1:] - arr[0]))
        if area > 1e-14:
            out.append(Simplex(arr))
    return out


def _slab_simplices_3d(x0, x1, g0, g1, kverts):
    out = []
    for tri in _fan_triangles(kverts):
        a = [np.array([x0, g0 * w[0], g0 * w[1]]) for w in tri]
        b = [np.array([x1, g1 * w[0], g1 * w[1]]) for w in tri]
        # standard tower split; degenerate tetrahedra (collapsed slice) dropped
        tets = [
            (a[0], a[1], a[2], b[0]),
            (a[1], a[2], b[0], b[1]),
            (a[2], b[0], b[1], b[2]),
        ]
        for tet in tets:
            arr = np.asarray(tet)
            vol = abs(np.linalg.det(arr[1:] - arr[0])) / 6.0
            if vol > 1e-14:
                out.append(Simplex(arr))
    return out


def simplex_slice_measure(s: Simplex, x: float) -> float:
    """(d-1)-volume of the slice of the simplex at first coordinate x (d = 2, 3)."""
    v = s.vertices
    d = s.dim
    if d == 2:
        return _polygon_slice_length([tuple(p) for p in v], x)
    if d != 3:
        raise ValueError("slice measure implemented for d = 2, 3 only")
    pts = []
    m = len(v)
    for i in range(m):
        for k in range(i + 1, m):
            p, q = v[i], v[k]
            if (p[0] - x) * (q[0] - x) < 0:
                t = (x - p[0]) / (q[0] - p[0])
                pts.append(p[1:] + t * (q[1:] - p[1:]))
            elif p[0] == x:
                pts.append(p[1:])
    if len(pts) < 3:
        return 0.0
    pts = np.unique(np.round(np.asarray(pts), 12), axis=0)
    if len(pts) < 3:
        return 0.0
    center = pts.mean(axis=0)
    order = np.argsort(np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0]))
    pts = pts[order]
    area = 0.0
    for i in range(len(pts)):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % len(pts)]
        area += x0 * y1 - x1 * y0
    return abs(area) / 2.0


@dataclass(frozen=True)
class DensityCheckReport:
    midpoints: tuple[float, ...]
    expected: tuple[float, ...]
    actual: tuple[float, ...]
    max_rel_error: float
    passed: bool


@dataclass(frozen=True)
class ProductBody:
    simplices: list
    report: DensityCheckReport


def product_body(g: PiecewiseLinearDensity, K, tol: float = 1e-9) -> ProductBody:
    """Triangulated model of P_{g,K} = {(x, u) : u in g(x) K}.

    g must be nonnegative and concave; K is a segment (for d = 2) or a
    convex polygon containing the origin (for d = 3).  The report verifies
    that the projection density of the triangulation equals
    vol_{d-1}(K) * g(x)^{d-1} at the midpoints of the knot intervals.
    """
    _check_profile_concave(g, tol)
    kdim, kverts, kvol = _cross_section(K)
    d = kdim + 1
    xs = g.knots.values
    ys = g.nodal_values
    simplices = []
    for i in range(len(xs) - 1):
        if kdim == 1:
            simplices.extend(
                _slab_simplices_2d(xs[i], xs[i + 1], ys[i], ys[i + 1], kverts[0][0], kverts[1][0])
            )
        else:
            simplices.extend(_slab_simplices_3d(xs[i], xs[i + 1], ys[i], ys[i + 1], kverts))
    mids, expected, actual = [], [], []
    for i in range(len(xs) - 1):
        xm = 0.5 * (xs[i] + xs[i + 1])
        gm = 0.5 * (ys[i] + ys[i + 1])
        mids.append(xm)
        expected.append(kvol * gm ** (d - 1))
        actual.append(sum(simplex_slice_measure(s, xm) for s in simplices))
    errs = [
        abs(a - e) / (1.0 + abs(e)) if e == 0 else abs(a - e) / abs(e)
        for a, e in zip(actual, expected)
    ]
    max_err = max(errs) if errs else 0.0
    report = DensityCheckReport(
        tuple(mids), tuple(expected), tuple(actual), max_err, max_err <= 1e-8
    )
    return ProductBody(simplices, report)
