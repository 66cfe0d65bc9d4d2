"""Shared random-instance generators for the test suite."""

import numpy as np
from scipy.spatial import ConvexHull

from pronyspline.measures import Polygon, Simplex


def random_knots(rng, n, gap=(0.2, 0.9), lo=-3.0, hi=3.0):
    """Strictly increasing knots with pairwise gaps in `gap`, inside [lo, hi]."""
    gaps = rng.uniform(gap[0], gap[1], n - 1)
    span = float(np.sum(gaps))
    start = rng.uniform(lo, hi - span) if hi - span > lo else lo
    return start + np.concatenate([[0.0], np.cumsum(gaps)])


def random_instance(rng, nmax=7, dmax=3, **kw):
    """(d, knots, alphas) with separation >= 0.2 and alphas in [0.5, 2]."""
    n = int(rng.integers(2, nmax + 1))
    d = int(rng.integers(0, min(dmax, n - 1) + 1))
    knots = random_knots(rng, n, **kw)
    alphas = rng.uniform(0.5, 2.0, n - d)
    return d, knots, alphas


def random_convex_polygon(rng, min_xgap=1e-2, scale=2.0):
    """Convex hull of random points, retried until projected knots separate."""
    while True:
        pts = rng.uniform(-scale, scale, (int(rng.integers(4, 12)), 2))
        hull = ConvexHull(pts)
        verts = pts[hull.vertices]  # counterclockwise
        xs = np.sort(verts[:, 0])
        if len(verts) >= 3 and np.min(np.diff(xs)) > min_xgap:
            return Polygon(verts)


def random_simplex(rng, d, min_xgap=0.05, scale=2.0):
    """Nondegenerate d-simplex whose projected vertices are well separated."""
    while True:
        v = rng.uniform(-scale, scale, (d + 1, d))
        xs = np.sort(v[:, 0])
        if np.min(np.diff(xs)) < min_xgap:
            continue
        if abs(np.linalg.det(v[1:] - v[0])) < 1e-3:
            continue
        return Simplex(v)
