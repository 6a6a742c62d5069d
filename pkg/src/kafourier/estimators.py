"""Scikit-learn style estimator for the transform itself."""
from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_samples
from .measure import build_quadrature
from .params import Params
from .transform import build_basis, build_transform, forward, inverse, project

__all__ = ["GeneralizedFourierTransform"]


class GeneralizedFourierTransform(TransformerMixin, BaseEstimator):
    """``F_{k,a}`` as a fit/transform estimator.

    ``fit`` builds the quadrature rule, the spectral basis and the unitary
    matrix; nothing is learned from ``X``.  Rows of ``X`` are either basis
    coefficient vectors or samples on the quadrature nodes (``nodes_``),
    depending on ``representation``.

    Parameters
    ----------
    k, a : float
        Multiplicity and deformation parameter.
    N : int
        Dimension; ``N >= 2`` works with radial profiles.
    n_basis : int
        Number of basis functions.
    n_nodes : int, optional
        Quadrature order (default ``4 * n_basis``, doubled in radial mode).
    representation : {"coefficients", "grid"}
    max_residual : float or None
        Projection residual limit for grid input.

    Examples
    --------
    >>> import numpy as np
    >>> est = GeneralizedFourierTransform(k=0.0, a=2.0, n_basis=8).fit()
    >>> e1 = np.eye(8)[1]
    >>> np.round(est.transform(e1)[0, 1], 8)
    -1j
    """

    def __init__(self, k=0.0, a=2.0, N=1, n_basis=48, n_nodes=None,
                 representation="coefficients", max_residual=1e-4):
        self.k = k
        self.a = a
        self.N = N
        self.n_basis = n_basis
        self.n_nodes = n_nodes
        self.representation = representation
        self.max_residual = max_residual

    def fit(self, X=None, y=None):
        if self.representation not in ("coefficients", "grid"):
            raise ValueError(f"unknown representation {self.representation!r}")
        params = Params(int(self.N), float(self.k), float(self.a))
        rule = None
        if self.n_nodes is not None:
            rule = build_quadrature(params, int(self.n_nodes))
        self.basis_ = build_basis(params, int(self.n_basis), rule)
        self.operator_ = build_transform(self.basis_)
        self.params_ = params
        self.nodes_ = self.basis_.rule.nodes
        self.n_features_in_ = (
            len(self.nodes_) if self.representation == "grid" else self.basis_.n_basis
        )
        return self

    def _run(self, X, inv):
        check_is_fitted(self, "operator_")
        X = check_samples(X, self.n_features_in_)
        op = self.operator_
        if self.representation == "grid":
            coeffs, res = project(op.basis, X, self.max_residual)
            self.last_residual_ = res
            out = inverse(op, coeffs) if inv else forward(op, coeffs)
            return out @ op.basis.funcs
        return inverse(op, X) if inv else forward(op, X)

    def transform(self, X):
        return self._run(X, inv=False)

    def inverse_transform(self, X):
        return self._run(X, inv=True)
