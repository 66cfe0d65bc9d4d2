"""Forward moment map for spline measures.

From (d, knots, amplitudes) to moments via complete homogeneous symmetric
polynomials, the binomial-normalized sequence, the rational generating
function R/Q, the linear recurrence test, and the minimal annihilating
polynomial of a normalized sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoAnnihilator
from .measures import KnotSet, SplineMeasure, as_knots
from .symmetric import (
    Polynomial,
    _homogeneous_table,
    binomial,
    elementary_all,
)


@dataclass(frozen=True)
class MomentVector:
    """Raw moments m_0, ..., m_{count-1} of a degree parameter d, n nodes."""

    d: int
    n: int
    moments: tuple[float, ...]

    def __init__(self, d, n, moments):
        moments = tuple(float(m) for m in moments)
        if d < 0 or n < d + 1:
            raise ValueError("need d >= 0 and n >= d + 1")
        if len(moments) < 1:
            raise ValueError("need at least one moment")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "moments", moments)

    @property
    def expected_length(self) -> int:
        """2n - d, the moment count used by the reconstruction theorem."""
        return 2 * self.n - self.d


@dataclass(frozen=True)
class NormalizedSequence:
    """Sequence c with c_0 = ... = c_{d-1} = 0 and c_{d+i} = C(i+d, d) m_i."""

    d: int
    c: tuple[float, ...]

    def __init__(self, d, c):
        c = tuple(float(v) for v in c)
        if any(c[i] != 0.0 for i in range(min(d, len(c)))):
            raise ValueError("first d entries must be exactly zero")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "c", c)

    def __len__(self):
        return len(self.c)


def _seq(c) -> np.ndarray:
    """Accept a NormalizedSequence or a plain array of c-values."""
    return np.asarray(getattr(c, "c", c), dtype=float)


def forward_moments(d: int, knots, alphas, count: int | None = None) -> MomentVector:
    """Moments of the spline measure: the higher Prony forward map.

    m_j = sum_i alphas[i] * h_j(x_i, ..., x_{i+d}) / C(j+d, d).
    The default count is 2n - d, the full reconstruction window.
    """
    knots = as_knots(knots)
    n = len(knots)
    alphas = [float(a) for a in alphas]
    if len(alphas) != n - d:
        raise ValueError(f"need n-d = {n - d} amplitudes, got {len(alphas)}")
    if count is None:
        count = 2 * n - d
    if count < 1:
        raise ValueError("count must be >= 1")
    jmax = count - 1
    acc = np.zeros(count)
    for i, a in enumerate(alphas):
        window = knots.values[i : i + d + 1]
        acc += a * _homogeneous_table(jmax, window)
    moments = [acc[j] / binomial(j + d, d) for j in range(count)]
    return MomentVector(d, n, moments)


def normalize(M: MomentVector) -> NormalizedSequence:
    """Binomial normalization with d leading zeros."""
    c = [0.0] * M.d + [
        binomial(i + M.d, M.d) * m for i, m in enumerate(M.moments)
    ]
    return NormalizedSequence(M.d, c)


def denormalize(c, d: int, n: int) -> MomentVector:
    """Inverse of normalize: drop the d leading zeros and divide by binomials."""
    cc = _seq(c)
    moments = [cc[d + i] / binomial(i + d, d) for i in range(len(cc) - d)]
    return MomentVector(d, n, moments)


def rational_form(nu: SplineMeasure) -> tuple[Polynomial, Polynomial]:
    """Numerator and denominator of the moment generating function.

    Q(t) = prod_r (1 - x_r t); R(t) = sum_i alpha_i prod_{r outside the
    window of mu_i} (1 - x_r t), with deg R <= n - d - 1.  The power series
    of R/Q generates the normalized moments c_{d+j}.
    """
    xs = nu.knots.values
    q = np.array([1.0])
    for x in xs:
        q = np.convolve(q, [1.0, -x])
    r = np.zeros(1)
    for i, a in enumerate(nu.alphas):
        term = np.array([a])
        for ridx, x in enumerate(xs):
            if i <= ridx <= i + nu.d:
                continue
            term = np.convolve(term, [1.0, -x])
        padded = np.zeros(max(len(r), len(term)))
        padded[: len(r)] += r
        padded[: len(term)] += term
        r = padded
    return Polynomial(r), Polynomial(q)


def check_recurrence(c, knots, tol: float = 1e-10) -> bool:
    """Test the knot-driven linear recurrence on a normalized sequence.

    True iff every window satisfies
    |sum_{i=0..n} (-1)^i e_i(X) c_{d+j-i}| <= tol * (1 + max|c|)
    for all j >= n - d with indices in range.
    """
    knots = as_knots(knots)
    cc = _seq(c)
    n = len(knots)
    # windows run over c_{idx-n} .. c_{idx}; d only shifts the index labels
    if len(cc) < n + 1:
        raise ValueError("sequence too short to test the recurrence")
    e = elementary_all(knots.values)
    signs = np.array([(-1.0) ** i for i in range(n + 1)])
    bound = tol * (1.0 + np.max(np.abs(cc)))
    for idx in range(n, len(cc)):
        res = sum(signs[i] * e[i] * cc[idx - i] for i in range(n + 1))
        if abs(res) > bound:
            return False
    return True


def minimal_annihilator(c, max_order: int, tol: float = 1e-8) -> Polynomial:
    """Monic annihilating polynomial of least order r <= max_order.

    The order-r candidate is obtained by least squares on the shifted
    windows of c; it is accepted when the residual of every window is below
    tol * (1 + max|c|).
    """
    cc = _seq(c)
    if len(cc) < 2 * max_order:
        raise ValueError("sequence too short for the requested max_order")
    bound = tol * (1.0 + np.max(np.abs(cc)))
    for r in range(1, max_order + 1):
        rows = len(cc) - r
        A = np.empty((rows, r))
        b = np.empty(rows)
        for i in range(rows):
            A[i] = cc[i : i + r]
            b[i] = -cc[i + r]
        coeffs, *_ = np.linalg.lstsq(A, b, rcond=None)
        residual = A @ coeffs - b
        if np.max(np.abs(residual)) <= bound:
            return Polynomial(list(coeffs) + [1.0])
    raise NoAnnihilator(f"no annihilating polynomial of order <= {max_order}")


def assemble(d: int, knots, alphas) -> SplineMeasure:
    """Convenience constructor matching forward_moments' argument order."""
    return SplineMeasure(d, as_knots(knots), alphas)
