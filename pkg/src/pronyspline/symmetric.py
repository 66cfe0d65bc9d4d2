"""Symmetric-function and univariate polynomial utilities.

Complete homogeneous and elementary symmetric polynomials, conversion
between roots and coefficients, and companion-matrix root finding.  The
moment formulas, the recurrence and the amplitude matrix downstream are
all expressed through these primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexRoots, DegreeDrop, MultipleRoots

# Reconstruction at desk scale never needs higher degree than this.
MAX_DEGREE = 64


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial, coefficients ascending: coeffs[k] multiplies t^k.

    Exact trailing zeros are stripped, so the leading coefficient is
    nonzero unless the polynomial is identically zero.
    """

    coeffs: tuple[float, ...]

    def __init__(self, coeffs):
        c = [float(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        if not c:
            c = [0.0]
        if len(c) - 1 > MAX_DEGREE:
            raise ValueError(f"degree {len(c) - 1} exceeds the supported maximum {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0.0:
            return -1
        return len(self.coeffs) - 1

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(t, self.coeffs)

    def monic(self, tol: float = 0.0) -> "Polynomial":
        lead = self.coeffs[-1]
        norm = max(abs(c) for c in self.coeffs)
        if norm == 0.0 or abs(lead) <= tol * norm:
            raise DegreeDrop("leading coefficient numerically vanishes")
        return Polynomial([c / lead for c in self.coeffs])


def _homogeneous_table(j: int, variables) -> np.ndarray:
    """h_0 .. h_j of the given variables, by the two-index recurrence.

    h_j(v_1..v_m) = h_j(v_1..v_{m-1}) + v_m * h_{j-1}(v_1..v_m); scanning k
    upwards reuses the already-updated h_{k-1}, which is exactly the
    recurrence and avoids the cancellation-prone generating-series division.
    """
    h = np.zeros(j + 1)
    h[0] = 1.0
    for v in variables:
        for k in range(1, j + 1):
            h[k] += v * h[k - 1]
    return h


def complete_homogeneous(j: int, variables) -> float:
    """Complete homogeneous symmetric polynomial h_j(variables)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    variables = list(variables)
    if not variables:
        raise ValueError("variable list must be nonempty")
    return float(_homogeneous_table(j, variables)[j])


def elementary_symmetric(i: int, variables) -> float:
    """Elementary symmetric polynomial e_i(variables), one-pass expansion."""
    variables = list(variables)
    if i < 0 or i > len(variables):
        raise ValueError(f"need 0 <= i <= {len(variables)}, got {i}")
    e = np.zeros(i + 1)
    e[0] = 1.0
    for v in variables:
        for k in range(i, 0, -1):
            e[k] += v * e[k - 1]
    return float(e[i])


def elementary_all(variables) -> np.ndarray:
    """All e_0 .. e_m for m = len(variables)."""
    variables = list(variables)
    e = np.zeros(len(variables) + 1)
    e[0] = 1.0
    for idx, v in enumerate(variables, start=1):
        for k in range(idx, 0, -1):
            e[k] += v * e[k - 1]
    return e


def binomial(a: int, b: int) -> int:
    return math.comb(a, b)


def poly_from_roots(roots) -> Polynomial:
    """Monic polynomial with the given roots; prod (z - r)."""
    coeffs = np.array([1.0])
    for r in roots:
        coeffs = np.convolve(coeffs, [-float(r), 1.0])
    return Polynomial(coeffs)


def real_roots(p: Polynomial, tol: float = 1e-8) -> list[float]:
    """All roots of p via companion-matrix eigenvalues, as sorted reals.

    A root is accepted as real when ``|imag| <= tol * (1 + |real|)``.
    Raises ComplexRoots if any root fails the test, MultipleRoots if two
    accepted roots coincide within tolerance, DegreeDrop if the leading
    coefficient is numerically zero.
    """
    coeffs = np.asarray(p.coeffs, dtype=float)
    norm = np.max(np.abs(coeffs))
    if norm == 0.0 or p.degree < 1:
        raise ValueError("polynomial must be nonzero of degree >= 1")
    if abs(coeffs[-1]) <= tol * norm:
        raise DegreeDrop("leading coefficient below tolerance")
    roots = np.polynomial.polynomial.polyroots(coeffs)
    out = []
    for z in np.atleast_1d(roots):
        if abs(z.imag) > tol * (1.0 + abs(z.real)):
            raise ComplexRoots(f"root {z} fails the realness test")
        out.append(float(z.real))
    out.sort()
    scale = 1.0 + max(abs(r) for r in out)
    for a, b in zip(out, out[1:]):
        if b - a <= tol * scale:
            raise MultipleRoots(f"roots {a} and {b} coincide within tolerance")
    return out


def power_series_ratio(num: Polynomial, den: Polynomial, count: int) -> np.ndarray:
    """First `count` power-series coefficients of num(t)/den(t).

    Requires den(0) != 0.
    """
    q = np.asarray(den.coeffs, dtype=float)
    r = np.asarray(num.coeffs, dtype=float)
    if q[0] == 0.0:
        raise ValueError("denominator must have nonzero constant term")
    s = np.zeros(count)
    for k in range(count):
        acc = r[k] if k < len(r) else 0.0
        for i in range(1, min(k, len(q) - 1) + 1):
            acc -= q[i] * s[k - i]
        s[k] = acc / q[0]
    return s
