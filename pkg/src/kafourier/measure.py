"""Integration against d mu_{k,a} = |x|^{2k+a-2} dx and level-set functionals."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import _orthopoly
from .exceptions import QuadratureFailure, SingularAtOrigin
from .params import Params

__all__ = [
    "QuadratureRule",
    "GridFunction",
    "weight_vka",
    "build_quadrature",
    "calibration_integral",
    "lp_norm",
    "superlevel_measure",
    "paley_functional",
    "level_sup",
    "T_GRID",
]

CALIBRATION_RTOL = 1e-8
T_GRID = np.logspace(-6, 6, 400)


def _exponent(params):
    # density exponent of |x| in 1D, of r in radial mode
    return 2 * params.k_eff + params.a - 2


def weight_vka(x, params):
    """Density of ``mu_{k,a}``: ``|x|^{2k+a-2}`` (radial: ``r^{2<k>+N+a-3}``)."""
    x = np.asarray(x, dtype=float)
    e = _exponent(params)
    if e < 0 and np.any(x == 0):
        raise SingularAtOrigin(f"density |x|^{e:g} is singular at the origin")
    with np.errstate(divide="ignore"):
        out = np.abs(x) ** e
    return out if out.ndim else float(out)


def calibration_integral(params):
    """Closed form of ``int exp(-(2/a)|x|^a) d mu_{k,a}``."""
    s = params.D / params.a
    a = params.a
    return params.sphere_factor / a * math.exp(s * math.log(a / 2) + math.lgamma(s))


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for ``int g d mu_{k,a}``.

    Exact for ``polynomial * exp(-(2/a)|x|^a)`` up to polynomial degree
    ``2 * n_nodes - 1`` (before truncation at ``R_max``).  In radial mode only
    the positive half-line is kept.
    """

    nodes: np.ndarray
    weights: np.ndarray
    R_max: float
    params: Params
    n_gauss: int
    truncated: bool = False
    calibration_error: float = 0.0

    def __len__(self):
        return len(self.nodes)

    def integrate(self, values):
        return np.sum(self.weights * np.asarray(values), axis=-1)


def build_quadrature(params, n_nodes=192, R_max=None):
    """Gauss-type rule for ``mu_{k,a}`` with ``n_nodes`` nodes on the line.

    Parameters
    ----------
    params : Params
    n_nodes : int
        Number of Gauss nodes on the full line (rounded up to even so that
        ``0`` is never a node).  Radial rules keep the ``n_nodes / 2``
        positive nodes.
    R_max : float, optional
        Domain cut; nodes with ``|x| > R_max`` are dropped.  Must satisfy
        ``exp(-(2/a) R_max^a) < 1e-16``.  Default: no cut.

    Raises
    ------
    QuadratureFailure
        Too few nodes, ``R_max`` too small, or the calibration identity misses
        ``1e-8`` relative accuracy.
    """
    n_nodes = int(n_nodes)
    if n_nodes < 16:
        raise QuadratureFailure(f"n_nodes must be >= 16, got {n_nodes}")
    n_nodes += n_nodes % 2
    a = params.a
    if R_max is not None and (2 / a) * R_max**a <= math.log(1e16):
        raise QuadratureFailure(
            f"R_max={R_max:g} too small: exp(-(2/a) R_max^a) >= 1e-16"
        )
    try:
        nodes, weights = _orthopoly.gauss_rule(_exponent(params), a, n_nodes)
    except (ArithmeticError, ValueError) as exc:
        raise QuadratureFailure(str(exc)) from exc
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
        raise QuadratureFailure("non-finite or non-positive weights; use fewer nodes")
    truncated = False
    if R_max is not None:
        keep = np.abs(nodes) <= R_max
        truncated = not keep.all()
        nodes, weights = nodes[keep], weights[keep]
    else:
        R_max = float(np.abs(nodes).max())
    if params.radial:
        keep = nodes > 0
        nodes, weights = nodes[keep], weights[keep]

    exact = calibration_integral(params)
    approx = float(np.sum(weights * np.exp(-(2 / a) * np.abs(nodes) ** a)))
    err = abs(approx / exact - 1)
    if not err < CALIBRATION_RTOL:
        raise QuadratureFailure(f"calibration identity off by {err:.2e} (relative)")
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(
        nodes=nodes,
        weights=weights,
        R_max=float(R_max),
        params=params,
        n_gauss=n_nodes,
        truncated=truncated,
        calibration_error=err,
    )


@dataclass
class GridFunction:
    """Samples of a function on the nodes of a quadrature rule.

    ``source`` optionally keeps the generating object (a callable or a
    :class:`~kafourier.dunkl.BasisFunction`) so that operators can be applied
    exactly or by finite differences instead of from samples alone.
    ``residual`` records the relative projection residual when the samples
    came out of a basis projection.
    """

    values: np.ndarray
    rule: QuadratureRule
    source: object = field(default=None, repr=False)
    residual: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.shape[-1] != len(self.rule.nodes):
            raise ValueError(
                f"{self.values.shape[-1]} values for {len(self.rule.nodes)} nodes"
            )

    @classmethod
    def from_callable(cls, rule, func):
        return cls(np.asarray(func(rule.nodes)), rule, source=func)

    @property
    def nodes(self):
        return self.rule.nodes

    def __add__(self, other):
        other_vals = other.values if isinstance(other, GridFunction) else other
        return GridFunction(self.values + other_vals, self.rule)

    def __mul__(self, c):
        return GridFunction(self.values * c, self.rule)

    __rmul__ = __mul__


def lp_norm(f, p, rule=None):
    """Discrete ``L^p(mu_{k,a})`` norm; ``p = inf`` gives the max over nodes."""
    if isinstance(f, GridFunction):
        values, rule = f.values, f.rule
    else:
        if rule is None:
            raise ValueError("rule is required for raw sample arrays")
        values = np.asarray(f)
        if values.shape[-1] != len(rule.nodes):
            raise ValueError("sample array does not match the rule")
    mod = np.abs(values)
    if p == math.inf:
        return float(mod.max()) if mod.size else 0.0
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    peak = mod.max() if mod.size else 0.0
    if peak == 0:
        return 0.0
    # factor out the peak to keep |f|^p representable for large p
    return float(peak * np.sum(rule.weights * (mod / peak) ** p) ** (1.0 / p))


def superlevel_measure(psi, t, params, rule=None, full_output=False):
    """``mu_{k,a}{xi : |psi(xi)| >= t}``.

    Closed-form radial monotone symbols use the exact ball measure
    ``omega * rho^D / D``.  Sampled symbols sum the quadrature weights of the
    nodes in the set; the set is flagged *truncated* when it reaches the
    outermost node, since the rule cannot see beyond it.

    Returns ``inf`` for superlevel sets of infinite measure.  With
    ``full_output`` a ``(measure, truncated)`` pair is returned.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    truncated = False
    if psi.is_radial_monotone:
        rho = psi.radius(t)
        if math.isinf(rho):
            value = math.inf
        else:
            value = params.sphere_factor * rho**params.D / params.D
    else:
        if rule is not None:
            nodes, weights = rule.nodes, rule.weights
            vals = np.abs(psi(nodes))
        elif psi.kind == "sampled" and psi.weights is not None:
            nodes, weights, vals = psi.nodes, psi.weights, np.abs(psi.values)
        else:
            raise ValueError("a quadrature rule is needed for sampled symbols")
        mask = vals >= t
        value = float(np.sum(weights[mask]))
        if mask.any():
            outer = np.abs(nodes) == np.abs(nodes).max()
            truncated = bool(np.any(mask & outer))
    return (value, truncated) if full_output else value


def level_sup(func, grid=T_GRID, slope_tol=1e-3):
    """Numeric ``sup_{t > 0} func(t)`` on a log grid with divergence detection.

    ``func`` is evaluated on ``grid``; an infinite value, or a maximum at an
    end of the grid where ``log func`` still grows outwards, is reported as
    ``inf``.
    """
    vals = np.array([func(t) for t in grid], dtype=float)
    if np.any(np.isinf(vals)):
        return math.inf
    if not np.any(vals > 0):
        return 0.0
    i = int(np.argmax(vals))
    logt = np.log(grid)
    with np.errstate(divide="ignore"):
        logv = np.log(vals)
    if i == len(grid) - 1 and np.isfinite(logv[-2]):
        if (logv[-1] - logv[-2]) / (logt[-1] - logt[-2]) > slope_tol:
            return math.inf
    if i == 0 and np.isfinite(logv[1]):
        if (logv[1] - logv[0]) / (logt[1] - logt[0]) < -slope_tol:
            return math.inf
    best = float(vals[i])
    # the grid spacing (factor ~1.07) can miss a sharp peak; refine locally
    lo, hi = logt[max(i - 1, 0)], logt[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(lambda s: -func(math.exp(s)), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-10})
    if res.success and np.isfinite(res.fun):
        best = max(best, float(-res.fun))
    return best


def _power_exponent_matches(x, y):
    return abs(x - y) <= 1e-12 * max(1.0, abs(y))


def paley_functional(psi, params, rule=None):
    """``M_psi = sup_{t>0} t * mu{psi >= t}``; ``inf`` when unbounded."""
    D = params.D
    omega = params.sphere_factor
    c = abs(psi.coef)
    if psi.kind == "power":
        if c == 0:
            return 0.0
        # t * omega (c/t)^{D/gamma} / D is constant in t only when gamma == D
        if _power_exponent_matches(psi.gamma, D):
            return omega * c / D
        return math.inf
    if psi.kind == "indicator":
        return omega * c * psi.R**D / D
    if psi.kind == "constant":
        return 0.0 if c == 0 else math.inf
    return level_sup(lambda t: t * superlevel_measure(psi, t, params, rule))
