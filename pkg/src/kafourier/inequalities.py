"""Both sides of the Paley, Hausdorff-Young and Hausdorff-Young-Paley
inequalities, and the Hormander-type bound of a multiplier symbol.

The inequalities hold up to unspecified constants, so only raw ratios are
reported; the harness checks that they stay uniformly bounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _orthopoly
from .exceptions import ExponentOutOfRange, InfinitePaleyFunctional
from .measure import GridFunction, level_sup, lp_norm, paley_functional, superlevel_measure
from .transform import project, synthesize

__all__ = [
    "Exponents",
    "RatioResult",
    "paley_ratio",
    "hyp_ratio",
    "hy_ratio",
    "hormander_bound",
    "default_suite",
    "suite_functions",
]

_EXP_TOL = 1e-12


def conjugate(p):
    return math.inf if p == 1 else p / (p - 1)


@dataclass(frozen=True)
class Exponents:
    """Lebesgue exponents with their conjugates.

    ``p`` in (1, 2]; optional ``q`` in [2, inf) and ``b`` in [p, p'].
    """

    p: float
    q: float | None = None
    b: float | None = None

    def __post_init__(self):
        p, q, b = self.p, self.q, self.b
        if not 1 < p <= 2:
            raise ExponentOutOfRange(f"p must lie in (1, 2], got {p}")
        if q is not None and not 2 <= q < math.inf:
            raise ExponentOutOfRange(f"q must lie in [2, inf), got {q}")
        if b is not None and not (p - _EXP_TOL <= b <= self.p_conj + _EXP_TOL):
            raise ExponentOutOfRange(f"b must lie in [p, p'] = [{p}, {self.p_conj}]")

    @property
    def p_conj(self):
        return conjugate(self.p)

    @property
    def q_conj(self):
        return None if self.q is None else conjugate(self.q)

    @property
    def inv_r(self):
        """``1/r = 1/p - 1/q``."""
        return None if self.q is None else 1 / self.p - 1 / self.q


class RatioResult(NamedTuple):
    lhs: float
    rhs_core: float
    ratio: float


def _ratio(lhs, rhs):
    if lhs == 0:
        return 0.0
    return lhs / rhs if rhs > 0 else math.inf


def _as_grid(T, f):
    if isinstance(f, GridFunction):
        coeffs, res = project(T.basis, f)
        return coeffs, synthesize(T.basis, coeffs, residual=res)
    coeffs = np.asarray(f)
    return coeffs, synthesize(T.basis, coeffs)


def _power_weighted_lhs(T, coeffs_F, psi, expo, b):
    """``int (|F f| psi^expo)^b d mu`` for a pure power ``psi``.

    The factor ``|xi|^{-gamma expo b}`` goes into the Gauss weight, so the
    rule stays accurate where the integrand is singular at the origin.
    Returns ``None`` when the shifted density is not integrable.
    """
    params = T.params
    beta = 2 * params.k_eff + params.a - 2 - psi.gamma * expo * b
    if not beta > -1:
        return None
    nodes, weights = _orthopoly.gauss_rule(beta, params.a, T.rule.n_gauss)
    if params.radial:
        keep = nodes > 0
        nodes, weights = nodes[keep], weights[keep]
    vals = np.abs(coeffs_F @ T.basis.evaluate(nodes)) * abs(psi.coef) ** expo
    peak = vals.max() if vals.size else 0.0
    if peak == 0:
        return 0.0
    return float(peak * np.sum(weights * (vals / peak) ** b) ** (1.0 / b))


def hyp_ratio(T, f, psi, p, b, M_psi=None):
    """Hausdorff-Young-Paley:
    ``(int (|F f| psi^{1/b - 1/p'})^b d mu)^{1/b}`` against
    ``M_psi^{1/b - 1/p'} ||f||_p``.

    ``f`` is a coefficient vector or a grid function.  The transform side is
    evaluated on the quadrature grid by basis synthesis; for a pure power
    ``psi`` the singular weight is absorbed into a dedicated Gauss rule.

    Raises
    ------
    ExponentOutOfRange
        Unless ``1 < p <= 2`` and ``p <= b <= p'``.
    InfinitePaleyFunctional
        If ``M_psi`` is infinite while ``b < p'``.
    """
    exps = Exponents(p, b=b)
    params = T.params
    rule = T.rule
    expo = 1 / b - 1 / exps.p_conj
    if abs(expo) < _EXP_TOL:
        expo = 0.0
    if M_psi is None:
        M_psi = 1.0 if expo == 0 else paley_functional(psi, params, rule)
    if math.isinf(M_psi) and expo != 0:
        raise InfinitePaleyFunctional("M_psi is infinite; the inequality is void")

    coeffs, fgrid = _as_grid(T, f)
    coeffs_F = coeffs @ T.U.T
    lhs = None
    if expo != 0 and psi.kind == "power":
        lhs = _power_weighted_lhs(T, coeffs_F, psi, expo, b)
    if lhs is None:
        Ff = synthesize(T.basis, coeffs_F)
        weight = np.ones(len(rule.nodes)) if expo == 0 else np.abs(psi(rule.nodes)) ** expo
        lhs = lp_norm(np.abs(Ff.values) * weight, b, rule)
    rhs = M_psi**expo * lp_norm(fgrid, p)
    return RatioResult(lhs, rhs, _ratio(lhs, rhs))


def paley_ratio(T, f, psi, p, M_psi=None):
    """Paley: ``(int |F f|^p psi^{2-p} d mu)^{1/p}`` against
    ``M_psi^{(2-p)/p} ||f||_p``; the ``b = p`` case of :func:`hyp_ratio`."""
    return hyp_ratio(T, f, psi, p, p, M_psi=M_psi)


def hy_ratio(T, f, p, M_hat=1.0):
    """Hausdorff-Young: ``||F f||_{p'}`` against ``M^{2/p - 1} ||f||_p``.

    Shares the ``b = p'`` code path of :func:`hyp_ratio` (there the weight
    exponent vanishes), then applies the kernel-bound constant.
    """
    from .symbols import MultiplierSymbol

    base = hyp_ratio(T, f, MultiplierSymbol.constant(1.0), p, conjugate(p), M_psi=1.0)
    rhs = M_hat ** (2 / p - 1) * base.rhs_core
    return RatioResult(base.lhs, rhs, _ratio(base.lhs, rhs))


def hormander_bound(h, p, q, params, rule=None):
    """``H = sup_{s>0} s mu{|h| >= s}^{1/p - 1/q}``, ``inf`` when unbounded.

    Closed forms for power, indicator and constant symbols; the shared
    log-grid supremum otherwise.
    """
    exps = Exponents(p, q=q)
    inv_r = exps.inv_r
    D = params.D
    omega = params.sphere_factor
    c = abs(h.coef)
    if h.kind == "power":
        if c == 0:
            return 0.0
        # s * (omega (c/s)^{D/gamma} / D)^{1/r} is s-independent iff gamma = D / r
        if abs(h.gamma - D * inv_r) <= _EXP_TOL * max(1.0, h.gamma):
            return (omega / D) ** (h.gamma / D) * c
        return math.inf
    if h.kind == "indicator":
        return c * (omega * h.R**D / D) ** inv_r
    if h.kind == "constant":
        return 0.0 if c == 0 else math.inf

    def level(s):
        mu = superlevel_measure(h, s, params, rule)
        return math.inf if math.isinf(mu) else s * mu**inv_r

    return level_sup(level)


def suite_functions(T, n_functions=20, seed=0):
    """Named coefficient vectors of the default test suite.

    Ground state, low basis functions, oscillator eigenvectors, projected
    dilations of the ground state, and seeded random band-limited vectors.
    """
    basis = T.basis
    n = basis.n_basis
    a = T.params.a
    rng = np.random.default_rng(seed)
    nodes = basis.rule.nodes
    out = [("ground_state", np.eye(n)[0])]
    for j in range(1, min(5, n)):
        out.append((f"basis_{j}", np.eye(n)[j]))
    for j in range(1, min(4, n)):
        out.append((f"eigvec_{j}", basis.eigvecs[:, j].copy()))
    for s in (0.5, 0.75, 1.5, 2.0):
        g = np.exp(-(np.abs(nodes) / s) ** a / a)
        out.append((f"dilation_{s:g}", project(basis, g, max_residual=None)[0]))
    band = max(2, n // 4)
    while len(out) < n_functions:
        c = np.zeros(n, dtype=complex)
        c[:band] = rng.normal(size=band) + 1j * rng.normal(size=band)
        out.append((f"random_{len(out)}", basis.eigvecs @ c))
    return out[:n_functions]


def default_suite(T, seed=0):
    return suite_functions(T, 20, seed)
