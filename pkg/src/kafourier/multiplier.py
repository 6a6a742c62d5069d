"""Fourier multipliers ``A = F^{-1} h F`` and empirical L^p -> L^q norms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_samples
from .exceptions import BoundInfinite
from .inequalities import Exponents, hormander_bound
from .measure import GridFunction, lp_norm
from .symbols import MultiplierSymbol, parse_symbol
from .transform import MAX_RESIDUAL, project, synthesize

__all__ = [
    "MultiplierSymbol",
    "apply_multiplier",
    "multiplier_matrix",
    "test_family",
    "empirical_opnorm",
    "verify_multiplier_theorem",
    "MultiplierReport",
    "FourierMultiplier",
]

FAMILIES = ("gaussians", "basis_vectors", "random_bandlimited")


def _symbol_on_grid(T, h):
    vals = h(T.rule.nodes)
    if not np.all(np.isfinite(vals)):
        raise ValueError("symbol is not finite on the quadrature nodes")
    return vals


def multiplier_matrix(T, h):
    """Matrix of ``A`` in basis coordinates: ``U^* P diag(h) S U``.

    ``S`` synthesises on the quadrature grid and ``P`` projects back, so the
    symbol is applied pointwise at the nodes.
    """
    hv = _symbol_on_grid(T, h)
    funcs, w = T.basis.funcs, T.rule.weights
    H = (funcs * (w * hv)) @ funcs.T
    return T.U.conj().T @ H @ T.U


def apply_multiplier(T, h, f, max_residual=MAX_RESIDUAL):
    """``A f = F^{-1}(h F f)`` as a grid function.

    ``f`` is a coefficient vector or a grid function.  The product ``h F f``
    is formed on the quadrature grid and projected back onto the basis; the
    larger of the two projection residuals is stored on the result.

    Raises
    ------
    ProjectionResidualTooLarge
        If a projection residual exceeds ``max_residual`` (``None`` disables
        the check).
    """
    res_in = 0.0
    if isinstance(f, GridFunction):
        coeffs, res_in = project(T.basis, f, max_residual)
    else:
        coeffs = np.asarray(f)
    Ff = synthesize(T.basis, coeffs @ T.U.T)
    product = _symbol_on_grid(T, h) * Ff.values
    back, res_out = project(T.basis, product, max_residual)
    return synthesize(T.basis, back @ T.U.conj(), residual=max(res_in, res_out))


def test_family(T, family, n_samples=64, seed=42):
    """Coefficient vectors of a named test family (rows).

    ``gaussians``: dilations ``exp(-(|x|/s)^a / a)`` for ``n_samples`` scales
    log-spaced in [0.25, 4], projected onto the basis.  ``basis_vectors``: all
    unit vectors.  ``random_bandlimited``: seeded complex Gaussian
    coefficients on the lower half of the oscillator spectrum.
    """
    basis = T.basis
    n = basis.n_basis
    if family == "gaussians":
        nodes = np.abs(basis.rule.nodes)
        a = T.params.a
        scales = np.logspace(np.log10(0.25), np.log10(4.0), n_samples)
        g = np.exp(-((nodes[None, :] / scales[:, None]) ** a) / a)
        return project(basis, g, max_residual=None)[0].astype(complex)
    if family == "basis_vectors":
        return np.eye(n, dtype=complex)
    if family == "random_bandlimited":
        rng = np.random.default_rng(seed)
        band = max(1, n // 2)
        c = np.zeros((n_samples, n), dtype=complex)
        c[:, :band] = rng.normal(size=(n_samples, band)) + 1j * rng.normal(size=(n_samples, band))
        return c @ basis.eigvecs.T
    raise ValueError(f"unknown test family {family!r}; choose from {FAMILIES}")


def _families(test_family_name):
    if test_family_name in ("default", "all", None):
        return FAMILIES
    if isinstance(test_family_name, str):
        return (test_family_name,)
    return tuple(test_family_name)


def empirical_opnorm(T, h, p, q, test_family_name="default", n_samples=64, seed=42,
                     full_output=False):
    """Largest ``||A f||_q / ||f||_p`` over a test family.

    Functions with ``||f||_p < 1e-12`` are skipped.  Deterministic for a given
    seed.  With ``full_output`` returns ``(max_ratio, info)`` where ``info``
    holds the arg-max sample and the largest re-projection residual.
    """
    if not (1 <= p and 1 <= q):
        raise ValueError("exponents must be >= 1")
    A = multiplier_matrix(T, h)
    funcs, w = T.basis.funcs, T.rule.weights
    hv = _symbol_on_grid(T, h)
    best, arg, worst_res = 0.0, None, 0.0
    for fam in _families(test_family_name):
        coeffs = test_family(T, fam, n_samples, seed)
        for i, c in enumerate(coeffs):
            f = c @ funcs
            nf = lp_norm(f, p, T.rule)
            if nf < 1e-12:
                continue
            Af = (c @ A.T) @ funcs
            ratio = lp_norm(Af, q, T.rule) / nf
            if ratio > best:
                best, arg = ratio, (fam, i)
        # residual of the product h * F f (the symbol may leave the span)
        prod = hv * ((coeffs @ T.U.T) @ funcs)
        _, res = project(T.basis, prod, max_residual=None)
        worst_res = max(worst_res, res)
    if full_output:
        return best, {"argmax": arg, "max_residual": worst_res}
    return best


@dataclass
class MultiplierReport:
    H: float
    max_ratio: float
    tolerance_factor: float
    passed: bool
    p: float
    q: float
    symbol: str
    info: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "H": self.H,
            "max_ratio": self.max_ratio,
            "ratio_over_H": self.max_ratio / self.H if self.H else math.inf,
            "tolerance_factor": self.tolerance_factor,
            "pass": self.passed,
            "p": self.p,
            "q": self.q,
            "symbol": self.symbol,
            **self.info,
        }


def verify_multiplier_theorem(T, h, p, q, tolerance_factor=10.0,
                              test_family_name="default", n_samples=64, seed=42):
    """Compare the empirical norm of ``A`` with the Hormander bound ``H``.

    Passes when ``max_ratio <= tolerance_factor * H``.

    Raises
    ------
    BoundInfinite
        If ``H`` is infinite: the theorem says nothing about such a symbol
        (which may still define a bounded operator).
    """
    Exponents(p, q=q)
    H = hormander_bound(h, p, q, T.params, T.rule)
    if math.isinf(H):
        raise BoundInfinite(
            f"H = inf for {h.describe()} at p={p}, q={q}; no information"
        )
    max_ratio, info = empirical_opnorm(
        T, h, p, q, test_family_name, n_samples, seed, full_output=True
    )
    return MultiplierReport(
        H=H,
        max_ratio=max_ratio,
        tolerance_factor=tolerance_factor,
        passed=bool(max_ratio <= tolerance_factor * H),
        p=p,
        q=q,
        symbol=h.describe(),
        info=info,
    )


class FourierMultiplier(TransformerMixin, BaseEstimator):
    """Scikit-learn style wrapper around a multiplier ``A = F^{-1} h F``.

    Parameters
    ----------
    symbol : MultiplierSymbol or str
        Symbol ``h`` (or its spec string, e.g. ``"power:gamma=0.5"``).
    k, a, N, n_basis, n_nodes :
        Forwarded to :class:`~kafourier.GeneralizedFourierTransform`.
    representation : {"coefficients", "grid"}
        Whether rows of ``X`` are basis coefficients or grid samples.
    """

    def __init__(self, symbol="one", k=0.0, a=2.0, N=1, n_basis=48, n_nodes=None,
                 representation="coefficients"):
        self.symbol = symbol
        self.k = k
        self.a = a
        self.N = N
        self.n_basis = n_basis
        self.n_nodes = n_nodes
        self.representation = representation

    def fit(self, X=None, y=None):
        from .estimators import GeneralizedFourierTransform

        self.transform_ = GeneralizedFourierTransform(
            k=self.k, a=self.a, N=self.N, n_basis=self.n_basis,
            n_nodes=self.n_nodes, representation=self.representation,
        ).fit(X)
        h = self.symbol
        self.symbol_ = parse_symbol(h) if isinstance(h, str) else h
        self.matrix_ = multiplier_matrix(self.transform_.operator_, self.symbol_)
        return self

    def transform(self, X):
        check_is_fitted(self, "matrix_")
        op = self.transform_.operator_
        if self.representation == "grid":
            X = check_samples(X, len(op.rule.nodes))
            coeffs, _ = project(op.basis, X, max_residual=None)
            return (coeffs @ self.matrix_.T) @ op.basis.funcs
        X = check_samples(X, op.n_basis)
        return X @ self.matrix_.T
