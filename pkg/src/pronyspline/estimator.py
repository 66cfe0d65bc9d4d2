"""Scikit-learn compatible front end for the moment reconstruction.

`PronyReconstructor` wraps the Hankel-kernel pipeline in the usual
fit/predict estimator shape so it composes with sklearn tooling
(`get_params`/`set_params`, cloning, pipelines over moment features).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .cones import spline_cone_membership
from .forward import forward_moments
from .inverse import reconstruct
from .measures import SplineMeasure


class PronyReconstructor(BaseEstimator):
    """Recover knots and amplitudes of a spline measure from its moments.

    Parameters
    ----------
    d : int
        Degree parameter; d = 0 is the classical discrete Prony system.
    tol : float
        Relative tolerance for the singular-value gap, root realness and
        root separation tests.

    Attributes (after fit)
    ----------------------
    n_ : number of knots, inferred from the moment count 2n - d.
    knots_ : recovered knots, ascending.
    alphas_ : recovered amplitudes in the consecutive spline basis.
    diagnostics_ : singular values, gap, condition and residual.
    cone_status_ : Interior / Boundary / Outside in the positive cone.
    """

    def __init__(self, d: int = 0, tol: float = 1e-8):
        self.d = d
        self.tol = tol

    def _validate_moments(self, moments) -> np.ndarray:
        m = np.asarray(moments, dtype=float).ravel()
        if m.size < 2 or not np.all(np.isfinite(m)):
            raise ValueError("moments must be a finite 1-d sequence of length >= 2")
        if (m.size + self.d) % 2 != 0:
            raise ValueError(
                f"moment count {m.size} is not of the form 2n - d for d = {self.d}"
            )
        return m

    def fit(self, moments, y=None):
        m = self._validate_moments(moments)
        n = (m.size + self.d) // 2
        result = reconstruct(self.d, n, m, tol=self.tol)
        self.n_ = n
        self.knots_ = np.asarray(result.knots.values)
        self.alphas_ = np.asarray(result.alphas)
        self.diagnostics_ = result.diagnostics
        self.cone_status_ = spline_cone_membership(result.alphas).status
        return self

    def _check_fitted(self):
        if not hasattr(self, "knots_"):
            raise NotFittedError("call fit before using the estimator")

    def predict(self, count: int) -> np.ndarray:
        """Moments m_0 .. m_{count-1} of the fitted measure (moment completion)."""
        self._check_fitted()
        return np.asarray(
            forward_moments(self.d, self.knots_, self.alphas_, count).moments
        )

    def to_measure(self) -> SplineMeasure:
        self._check_fitted()
        return SplineMeasure(self.d, self.knots_, self.alphas_)
