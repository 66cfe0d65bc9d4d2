"""Inverse reconstruction from moments.

Rectangular Hankel nullspace -> kernel polynomial -> nodes, then the
amplitude system with its closed-form determinant, and the full generic
reconstruction pipeline with diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeDrop, KernelDimensionError, SingularSystem
from .forward import MomentVector, _seq, forward_moments, normalize
from .measures import KnotSet, as_knots
from .symmetric import Polynomial, _homogeneous_table, binomial, real_roots


def hankel_matrix(c, n: int) -> np.ndarray:
    """Rectangular n x (n+1) Hankel matrix with entry (i, j) = c_{i+j}."""
    cc = _seq(c)
    if len(cc) < 2 * n:
        raise ValueError(f"need at least 2n = {2 * n} sequence entries, got {len(cc)}")
    return np.array([[cc[i + j] for j in range(n + 1)] for i in range(n)])


def numerical_nullity(H: np.ndarray, tol: float) -> tuple[int, np.ndarray, np.ndarray]:
    """(nullity over columns, singular values, right singular vectors)."""
    U, s, Vt = np.linalg.svd(H)
    ncols = H.shape[1]
    smax = s[0] if len(s) else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return ncols - rank, s, Vt


def kernel_polynomial(H: np.ndarray, tol: float = 1e-8) -> Polynomial:
    """Kernel polynomial of the rectangular Hankel matrix.

    The coefficient vector is the right singular vector of the smallest
    singular value; it is accepted only when the numerical nullity is
    exactly one (relative singular-value gap test).
    """
    H = np.asarray(H, dtype=float)
    if H.shape[1] != H.shape[0] + 1:
        raise ValueError(f"expected an n x (n+1) matrix, got {H.shape}")
    nullity, s, Vt = numerical_nullity(H, tol)
    if nullity != 1:
        raise KernelDimensionError(nullity, s)
    return Polynomial(Vt[-1])


def amplitude_matrix(d: int, knots) -> np.ndarray:
    """(n-d) x (n-d) matrix with entry (r, i) = h_r(x_i, ..., x_{i+d})."""
    knots = as_knots(knots)
    n = len(knots)
    m = n - d
    if m < 1:
        raise ValueError("need n >= d + 1")
    A = np.empty((m, m))
    for i in range(m):
        A[:, i] = _homogeneous_table(m - 1, knots.values[i : i + d + 1])
    return A


def det_amplitude_closed_form(d: int, knots) -> float:
    """Closed-form determinant: prod over pairs j - i >= d + 1 of (x_j - x_i)."""
    xs = as_knots(knots).values
    n = len(xs)
    out = 1.0
    for i in range(n):
        for j in range(i + d + 1, n):
            out *= xs[j] - xs[i]
    return out


def moment_rhs(d: int, n: int, moments) -> np.ndarray:
    """Right-hand side b(M) = (C(d,d) m_0, ..., C(n-1,d) m_{n-d-1})."""
    moments = np.asarray(getattr(moments, "moments", moments), dtype=float)
    m = n - d
    if len(moments) < m:
        raise ValueError(f"need at least n-d = {m} moments")
    return np.array([binomial(d + i, d) * moments[i] for i in range(m)])


def solve_amplitudes(d: int, knots, M, least_squares: bool = False) -> np.ndarray:
    """Amplitudes from the linear system A_{d,n} alpha = b(M).

    The default uses exactly the first n - d moments (the square system of
    the reconstruction theorem); `least_squares=True` instead fits all
    available moment equations.
    """
    knots = as_knots(knots)
    n = len(knots)
    A = amplitude_matrix(d, knots)
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= 1e-12 * s[0]:
        raise SingularSystem("amplitude matrix numerically singular")
    moments = np.asarray(getattr(M, "moments", M), dtype=float)
    if least_squares:
        jmax = len(moments) - 1
        rows = np.empty((len(moments), n - d))
        for i in range(n - d):
            rows[:, i] = _homogeneous_table(jmax, knots.values[i : i + d + 1])
        b = np.array([binomial(j + d, d) * moments[j] for j in range(len(moments))])
        alphas, *_ = np.linalg.lstsq(rows, b, rcond=None)
        return alphas
    return np.linalg.solve(A, moment_rhs(d, n, moments))


def _sequence_scale(cc: np.ndarray) -> float:
    """Balancing scale s with c_k / s^k of comparable magnitude.

    Equivalent to measuring the knots in units of s; keeps the Hankel
    singular-value gap test meaningful when knots exceed unit size.
    """
    s = 1.0
    for k in range(1, len(cc)):
        if cc[k] != 0.0:
            s = max(s, abs(cc[k]) ** (1.0 / k))
    return s


@dataclass(frozen=True)
class Diagnostics:
    nullity: int
    singular_values: tuple[float, ...]
    sv_gap: float
    amplitude_condition: float
    moment_residual: float


@dataclass(frozen=True)
class ReconstructionResult:
    knots: KnotSet
    alphas: tuple[float, ...]
    diagnostics: Diagnostics = field(repr=False)


def reconstruct(d: int, n: int, M, tol: float = 1e-8) -> ReconstructionResult:
    """Full inverse pipeline: normalize, Hankel kernel, roots, amplitudes.

    Requires the full window of 2n - d moments.  Raises
    KernelDimensionError / ComplexRoots / MultipleRoots / SingularSystem
    when the data leave the generic regime of the reconstruction theorem.
    """
    moments = np.asarray(getattr(M, "moments", M), dtype=float)
    if len(moments) != 2 * n - d:
        raise ValueError(f"need exactly 2n-d = {2 * n - d} moments, got {len(moments)}")
    mv = MomentVector(d, n, moments)
    cc = np.asarray(normalize(mv).c)
    # balance the Hankel matrix: work with c_k / s^k, i.e. knots scaled by 1/s
    scale_s = _sequence_scale(cc)
    cc_bal = cc / scale_s ** np.arange(len(cc))
    H = hankel_matrix(cc_bal, n)
    # row/column equilibration: H (Dc x) = 0 iff (Dr H Dc) x = 0, so the
    # kernel maps back exactly while the singular-value gap becomes a
    # faithful degeneracy indicator even for ill-conditioned Hankels
    row_norms = np.linalg.norm(H, axis=1)
    row_norms[row_norms == 0.0] = 1.0
    He = H / row_norms[:, None]
    col_norms = np.linalg.norm(He, axis=0)
    col_norms[col_norms == 0.0] = 1.0
    He = He / col_norms[None, :]
    # genuine rank drops sit at machine level after equilibration; generic
    # ill-conditioned data stays orders of magnitude above this floor
    ntol = max(tol * 1e-4, 1e3 * np.finfo(float).eps)
    nullity, s, Vt = numerical_nullity(He, ntol)
    if nullity != 1:
        raise KernelDimensionError(nullity, s)
    kernel = Vt[-1] / col_norms
    if abs(kernel[-1]) <= tol * np.linalg.norm(kernel):
        raise DegreeDrop("kernel polynomial has vanishing top coefficient")
    p = Polynomial(kernel).monic()
    knots = KnotSet([scale_s * r for r in real_roots(p, tol)])
    alphas = solve_amplitudes(d, knots, moments)
    back = forward_moments(d, knots, alphas, len(moments))
    scale = 1.0 + np.max(np.abs(moments))
    residual = float(np.max(np.abs(np.asarray(back.moments) - moments)) / scale)
    A = amplitude_matrix(d, knots)
    diag = Diagnostics(
        nullity=1,
        singular_values=tuple(float(x) for x in s),
        sv_gap=float(s[-1] / s[0]) if s[0] > 0 else 0.0,
        amplitude_condition=float(np.linalg.cond(A)),
        moment_residual=residual,
    )
    return ReconstructionResult(knots, tuple(float(a) for a in alphas), diag)
