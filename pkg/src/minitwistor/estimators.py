"""scikit-learn compatible front ends for the Abel-Jacobi and Seifert maps."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .hyperelliptic_curve import G2, BranchConfig, CurvePoint
from .jacobian import abel, period_lattice
from .seifert import BoundaryData, SeifertSolver


def _config(branch_points) -> BranchConfig:
    if branch_points is None:
        return G2
    return BranchConfig.from_points(tuple(branch_points))


class AbelJacobiTransformer(TransformerMixin, BaseEstimator):
    """Map curve points to fractional Jacobian coordinates.

    Parameters
    ----------
    branch_points : sequence of float, optional
        Defaults to the genus two test curve.

    Attributes
    ----------
    config_ : BranchConfig
    lattice_ : PeriodLattice
    n_features_in_ : int
        Always 2: the columns are ``z`` and ``w``.
    """

    def __init__(self, branch_points=None):
        self.branch_points = branch_points

    def fit(self, X=None, y=None):
        self.config_ = _config(self.branch_points)
        self.lattice_ = period_lattice(self.config_)
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        """Return an ``(n, 2g)`` array: real then imaginary fractional parts in ``[0, 1)``."""
        check_is_fitted(self, "lattice_")
        X = np.asarray(X, dtype=complex)
        if X.ndim != 2 or X.shape[1] != 2:
            raise ValueError(f"expected shape (n, 2), got {X.shape}")
        cfg, lat = self.config_, self.lattice_
        out = np.empty((len(X), 2 * cfg.genus))
        for n, (z, w) in enumerate(X):
            j = abel(cfg, lat, CurvePoint(complex(z), complex(w)))
            out[n] = np.concatenate([j.re_array, j.im_array])
        return out


class SeifertHyperplaneTransformer(TransformerMixin, BaseEstimator):
    """Map lifted outer angles ``(s, t)`` to unit Seifert hyperplanes.

    Parameters
    ----------
    branch_points : sequence of float, optional
    k : int
        Seifert index in ``1 .. 2**(g-1)``.
    """

    def __init__(self, branch_points=None, k=1):
        self.branch_points = branch_points
        self.k = k

    def fit(self, X=None, y=None):
        cfg = _config(self.branch_points)
        self.boundary_ = BoundaryData.from_k(cfg.genus, int(self.k))
        self.solver_ = SeifertSolver(cfg)
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        """Return ``(n, g + 3)`` coefficients with ``c_w >= 0``."""
        check_is_fitted(self, "solver_")
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != 2:
            raise ValueError(f"expected shape (n, 2), got {X.shape}")
        c, _, _, _, _ = self.solver_.hyperplanes(self.boundary_, X[:, 0], X[:, 1])
        return c
