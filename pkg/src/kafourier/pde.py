"""Picard solvers for ``u_t = |Bu|^p`` and ``u_tt = b(t) |Bu|^p``.

Both problems are solved in their integrated (Volterra) form on a uniform
time grid.  States are basis coefficient vectors; the nonlinearity is taken
pointwise on the quadrature grid and projected back every iterate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import BeyondExistenceTime, NoConvergence, SymbolSpecError
from .measure import GridFunction
from .multiplier import multiplier_matrix
from .symbols import MultiplierSymbol, _kv
from .transform import MAX_RESIDUAL, project

__all__ = [
    "TimeCoefficient",
    "parse_time_coefficient",
    "parse_initial",
    "CauchyProblem",
    "SolutionPath",
    "heat_tstar",
    "wave_tstar",
    "solve_heat",
    "solve_wave",
    "wave_tstar_selfconsistent",
    "SmallDataReport",
    "global_smalldata_check",
]


@dataclass(frozen=True, eq=False)
class TimeCoefficient:
    """Time-dependent coefficient ``b(t)`` of the wave problem.

    ``const``: ``b = value``.  ``power``: ``b = value * t^{-gamma}`` with
    ``gamma < 1/2`` so that ``b`` is square integrable near 0.  ``sampled``:
    piecewise linear through ``(times, values)``, zero outside.
    """

    kind: str
    value: float = 0.0
    gamma: float = 0.0
    times: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("const", "power", "sampled"):
            raise SymbolSpecError(f"unknown time coefficient kind {self.kind!r}")
        if self.kind == "power" and not self.gamma < 0.5:
            raise SymbolSpecError("power coefficient needs gamma < 1/2 to be in L^2(0,T)")
        if self.kind == "sampled":
            t = np.asarray(self.times, dtype=float)
            if t.ndim != 1 or len(t) < 2 or np.any(np.diff(t) <= 0):
                raise SymbolSpecError("sampled coefficient needs increasing times")

    @classmethod
    def const(cls, value):
        return cls("const", value=float(value))

    @classmethod
    def power(cls, value, gamma):
        return cls("power", value=float(value), gamma=float(gamma))

    @classmethod
    def sampled(cls, times, values):
        return cls("sampled", times=np.asarray(times, float), values=np.asarray(values, float))

    @property
    def is_zero(self):
        if self.kind == "sampled":
            return not np.any(self.values)
        return self.value == 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "const":
            return np.full(t.shape, self.value)
        if self.kind == "power":
            with np.errstate(divide="ignore"):
                out = self.value * t ** (-self.gamma)
            return out
        return np.interp(t, self.times, self.values, left=0.0, right=0.0)

    def on_grid(self, times):
        """Values on a uniform grid; an integrable singularity at ``t = 0``
        is replaced by the value at half the first step."""
        vals = self(times)
        if self.kind == "power" and self.gamma > 0 and times[0] == 0:
            vals[0] = self(0.5 * times[1])
        return vals

    def l2_norm(self, T):
        """``||b||_{L^2(0,T)}``."""
        if self.kind == "const":
            return abs(self.value) * math.sqrt(T)
        if self.kind == "power":
            e = 1 - 2 * self.gamma
            return abs(self.value) * math.sqrt(T**e / e)
        t = np.linspace(0.0, T, 4097)
        return math.sqrt(np.trapezoid(self(t) ** 2, t))

    def describe(self):
        if self.kind == "const":
            return f"const:{self.value:g}"
        if self.kind == "power":
            return f"power:c={self.value:g},gamma={self.gamma:g}"
        return f"sampled[{len(self.times)}]"


def parse_time_coefficient(spec):
    """``const:1``, ``zero``, ``power:c=1,gamma=0.25`` or ``sampled:<csv t,b>``."""
    if isinstance(spec, TimeCoefficient):
        return spec
    s = str(spec).strip()
    if s in ("zero", "0"):
        return TimeCoefficient.const(0.0)
    head, _, body = s.partition(":")
    try:
        if head == "const":
            return TimeCoefficient.const(float(body))
        if head == "power":
            kv = _kv(body)
            return TimeCoefficient.power(kv.get("c", 1.0), kv["gamma"])
        if head == "sampled":
            data = np.genfromtxt(Path(body), delimiter=",", invalid_raise=True)
            data = data[~np.isnan(data).any(axis=1)]
            return TimeCoefficient.sampled(data[:, 0], data[:, 1])
    except (KeyError, ValueError, IndexError, OSError) as exc:
        raise SymbolSpecError(f"bad time coefficient {spec!r}: {exc}") from exc
    raise SymbolSpecError(f"unknown time coefficient {spec!r}")


def parse_initial(spec, basis):
    """Basis coefficients of initial data given as a spec string.

    ``zero``, ``groundstate:scale=0.1`` (``scale * exp(-|x|^a/a)``),
    ``basis:n=2,scale=1`` or ``sampled:<csv node,value>`` (interpolated onto
    the quadrature nodes, then projected).
    """
    s = str(spec).strip()
    n = basis.n_basis
    head, _, body = s.partition(":")
    try:
        kv = _kv(body) if body and head != "sampled" else {}
        if head == "zero":
            return np.zeros(n)
        if head == "groundstate":
            a = basis.params.a
            g = np.exp(-np.abs(basis.rule.nodes) ** a / a)
            return kv.get("scale", 1.0) * project(basis, g)[0]
        if head == "basis":
            c = np.zeros(n)
            c[int(kv.get("n", 0))] = kv.get("scale", 1.0)
            return c
        if head == "sampled":
            data = np.genfromtxt(Path(body), delimiter=",")
            data = data[~np.isnan(data).any(axis=1)]
            order = np.argsort(data[:, 0])
            vals = np.interp(basis.rule.nodes, data[order, 0], data[order, 1], left=0, right=0)
            return project(basis, vals)[0]
    except (KeyError, ValueError, IndexError, OSError) as exc:
        raise SymbolSpecError(f"bad initial data {spec!r}: {exc}") from exc
    raise SymbolSpecError(f"unknown initial data {spec!r}")


@dataclass(frozen=True, eq=False)
class CauchyProblem:
    """Data of a heat or wave problem on a fixed transform.

    ``u0`` and ``u1`` are coefficient vectors or grid functions (projected on
    use).  ``b`` is only read for the wave kind.
    """

    kind: str
    transform: object
    u0: object
    p_exp: float
    T: float
    c_set: float = math.sqrt(2.0)
    B_symbol: MultiplierSymbol = field(default_factory=lambda: MultiplierSymbol.constant(1.0))
    u1: object = None
    b: TimeCoefficient = field(default_factory=lambda: TimeCoefficient.const(1.0))

    def __post_init__(self):
        if self.kind not in ("heat", "wave"):
            raise ValueError(f"kind must be 'heat' or 'wave', got {self.kind!r}")
        if not self.p_exp > 1:
            raise ValueError("p_exp must be > 1")
        if not self.T > 0:
            raise ValueError("T must be positive")
        if not self.c_set >= 1:
            raise ValueError("c_set must be >= 1")
        if self.kind == "wave" and self.u1 is None:
            raise ValueError("wave problem needs u1")

    def coefficients(self, which):
        f = self.u0 if which == "u0" else self.u1
        if isinstance(f, GridFunction):
            return project(self.transform.basis, f)[0]
        return np.asarray(f)


@dataclass(frozen=True, eq=False)
class SolutionPath:
    """Converged Picard iterate on the time grid.

    ``states[j]`` holds the coefficients of ``u(times[j])``; coefficient
    2-norms are ``L^2(mu)`` norms.  ``residual`` is the fixed-point defect of
    the final iterate plus the projection error of the nonlinearity, both as
    sup-over-time ``L^2`` norms.
    """

    times: np.ndarray
    states: np.ndarray
    residual: float
    iterations: int
    in_Sc: bool
    T_star: float
    guaranteed: bool
    projection_residual: float
    contraction: np.ndarray
    kind: str

    def norms(self):
        return np.linalg.norm(self.states, axis=1)

    def sup_norm(self):
        return float(np.max(self.norms()))

    def grid(self, basis):
        return self.states @ basis.funcs

    def diagnostics(self):
        return {
            "kind": self.kind,
            "residual": self.residual,
            "projection_residual": self.projection_residual,
            "iterations": self.iterations,
            "in_Sc": self.in_Sc,
            "T_star": self.T_star,
            "guaranteed": self.guaranteed,
            "contraction_max": float(np.max(self.contraction)) if len(self.contraction) else 0.0,
        }


def heat_tstar(c, p_exp, norm_u0):
    """``sqrt(c^2 - 1) / (c^p ||u0||)``; ``inf`` for zero data."""
    if c < 1:
        raise ValueError("c must be >= 1")
    if norm_u0 == 0:
        return math.inf
    return math.sqrt(c * c - 1) / (c**p_exp * norm_u0)


def wave_tstar(c, p_exp, b_l2_norm, norm_u0, norm_u1):
    """Smaller of the two branches
    ``((c - 1) / (||b||^2 c^p ||u_i||^{2p-2}))^{1/3}``; a zero norm makes its
    branch infinite."""
    if c < 1:
        raise ValueError("c must be >= 1")

    def branch(n):
        den = b_l2_norm**2 * c**p_exp * n ** (2 * p_exp - 2)
        return math.inf if den == 0 else ((c - 1) / den) ** (1 / 3)

    return min(branch(norm_u0), branch(norm_u1))


def wave_tstar_selfconsistent(c, p_exp, b, norm_u0, norm_u1):
    """Largest ``T`` with ``T <= wave_tstar(c, p, ||b||_{L^2(0,T)}, ...)``.

    The right side is non-increasing in ``T``, so the crossing is found by
    bisection on ``log T``.  For ``b = beta`` constant the answer is
    ``((c-1) / (beta^2 c^p n^{2p-2}))^{1/4}``.
    """
    from scipy.optimize import brentq

    def gap(logT):
        T = math.exp(logT)
        return math.log(wave_tstar(c, p_exp, b.l2_norm(T), norm_u0, norm_u1)) - logT

    if b.is_zero or (norm_u0 == 0 and norm_u1 == 0):
        return math.inf
    lo, hi = -50.0, 50.0
    if gap(hi) > 0:
        return math.inf
    return math.exp(brentq(gap, lo, hi, xtol=1e-14, rtol=1e-15))


def _volterra_matrix(times, kernel):
    """Trapezoid weights ``W[j, i]`` with ``sum_i W[j, i] g(t_i)`` approximating
    ``int_0^{t_j} kernel(t_j, tau) g(tau) dtau``."""
    n = len(times)
    dt = times[1] - times[0]
    W = np.zeros((n, n))
    for j in range(1, n):
        w = np.full(j + 1, dt)
        w[0] = w[-1] = 0.5 * dt
        W[j, : j + 1] = w * kernel(times[j], times[: j + 1])
    return W


def _picard(prob, base, W, n_time, max_iter, tol, max_residual):
    T = prob.transform
    basis = T.basis
    A = multiplier_matrix(T, prob.B_symbol)
    p = prob.p_exp

    def nonlinearity(u):
        grid = (u @ A.T) @ basis.funcs
        vals = np.abs(grid) ** p
        coeffs, _ = project(basis, vals, max_residual)
        err = np.sqrt(basis.rule.weights @ (np.abs(vals - coeffs @ basis.funcs) ** 2).T)
        return coeffs, err

    u = base.copy()
    diffs = []
    for it in range(1, max_iter + 1):
        Nc, _ = nonlinearity(u)
        new = base + W @ Nc
        diff = float(np.max(np.linalg.norm(new - u, axis=1)))
        diffs.append(diff)
        u = new
        if not np.all(np.isfinite(u)):
            raise NoConvergence(it, math.inf)
        if diff < tol:
            break
    else:
        raise NoConvergence(max_iter, diffs[-1])

    Nc, err = nonlinearity(u)
    fixed = float(np.max(np.linalg.norm(u - (base + W @ Nc), axis=1)))
    proj = float(np.max(np.abs(W) @ err))
    d = np.asarray(diffs)
    with np.errstate(divide="ignore", invalid="ignore"):
        contraction = d[1:] / d[:-1] if len(d) > 1 else np.zeros(0)
    contraction = contraction[np.isfinite(contraction)]
    return u, it, fixed + proj, proj, contraction


def _check_horizon(prob, T_star, override):
    guaranteed = prob.T <= T_star * (1 + 1e-12)
    if not guaranteed and not override:
        raise BeyondExistenceTime(
            f"T = {prob.T:g} exceeds T* = {T_star:g}; pass override=True to run anyway"
        )
    return guaranteed


def solve_heat(prob, n_time=128, max_iter=100, tol=1e-12, override=False,
               max_residual=MAX_RESIDUAL):
    """Picard iteration for ``u(t) = u0 + int_0^t |B u|^p``.

    Parameters
    ----------
    prob : CauchyProblem
        Heat problem.
    n_time : int
        Number of uniform time steps on ``[0, T]``.
    max_iter, tol : int, float
        Stop when successive iterates differ by less than ``tol`` in
        sup-over-time ``L^2``.
    override : bool
        Allow ``T > T*``; the result then carries ``guaranteed=False``.

    Raises
    ------
    NoConvergence
        After ``max_iter`` iterations or on overflow.
    BeyondExistenceTime
        If ``T > T*`` without ``override``.
    """
    if prob.kind != "heat":
        raise ValueError("solve_heat needs a heat problem")
    u0 = prob.coefficients("u0")
    n0 = float(np.linalg.norm(u0))
    T_star = heat_tstar(prob.c_set, prob.p_exp, n0)
    guaranteed = _check_horizon(prob, T_star, override)
    times = np.linspace(0.0, prob.T, n_time + 1)
    W = _volterra_matrix(times, lambda t, tau: np.ones_like(tau))
    base = np.tile(u0.astype(complex if np.iscomplexobj(u0) else float), (len(times), 1))
    u, it, res, proj, contr = _picard(prob, base, W, n_time, max_iter, tol, max_residual)
    sup = float(np.max(np.linalg.norm(u, axis=1)))
    in_sc = sup <= prob.c_set * n0 * (1 + 1e-12)
    return SolutionPath(times, u, res, it, bool(in_sc), T_star, bool(guaranteed), proj, contr, "heat")


def solve_wave(prob, n_time=128, max_iter=100, tol=1e-12, override=False,
               max_residual=MAX_RESIDUAL):
    """Picard iteration for ``u(t) = u0 + t u1 + int_0^t (t - tau) b |B u|^p``.

    The existence time is the self-consistent ``T*`` (``||b||`` is taken on
    ``(0, T)``).  Membership in ``S_c`` uses
    ``sup ||u||^2 <= c (||u0||^2 + T^2 ||u1||^2)``.  Parameters and errors as
    in :func:`solve_heat`.
    """
    if prob.kind != "wave":
        raise ValueError("solve_wave needs a wave problem")
    u0 = prob.coefficients("u0")
    u1 = prob.coefficients("u1")
    n0, n1 = float(np.linalg.norm(u0)), float(np.linalg.norm(u1))
    T_star = wave_tstar(prob.c_set, prob.p_exp, prob.b.l2_norm(prob.T), n0, n1)
    guaranteed = _check_horizon(prob, T_star, override)
    times = np.linspace(0.0, prob.T, n_time + 1)
    W = _volterra_matrix(times, lambda t, tau: t - tau) * prob.b.on_grid(times)[None, :]
    dtype = complex if np.iscomplexobj(u0) or np.iscomplexobj(u1) else float
    base = u0[None, :].astype(dtype) + times[:, None] * u1[None, :]
    u, it, res, proj, contr = _picard(prob, base, W, n_time, max_iter, tol, max_residual)
    sup2 = float(np.max(np.sum(np.abs(u) ** 2, axis=1)))
    in_sc = sup2 <= prob.c_set * (n0**2 + prob.T**2 * n1**2) * (1 + 1e-12)
    return SolutionPath(times, u, res, it, bool(in_sc), T_star, bool(guaranteed), proj, contr, "wave")


@dataclass(frozen=True)
class SmallDataReport:
    gamma: float
    gamma0: float
    p_exp: float
    gamma_tilde: float
    gamma_gt_3_2: bool
    gamma0_in_range: bool
    gamma_tilde_negative: bool
    smallness: bool
    max_norm_u0: float

    @property
    def structural(self):
        return self.gamma_gt_3_2 and self.gamma0_in_range and self.gamma_tilde_negative

    @property
    def passed(self):
        return self.structural and self.smallness

    def to_dict(self):
        d = dict(self.__dict__)
        d.update(structural=self.structural, passed=self.passed)
        return d


def global_smalldata_check(gamma, p_exp, gamma0, T, c, norm_u0):
    """Conditions of the global small-data statement for the wave problem.

    ``gamma_tilde = 3 - 2 gamma + gamma0 p``; checks ``gamma > 3/2``,
    ``0 < gamma0 < (2 gamma - 3) / p``, ``gamma_tilde < 0`` and
    ``c^p ||u0||^{2p-2} <= c T^{gamma0 - gamma_tilde}``.  ``max_norm_u0`` is
    the largest ``||u0||`` meeting the last inequality at this ``T``.
    """
    gt = 3 - 2 * gamma + gamma0 * p_exp
    rhs = c * T ** (gamma0 - gt)
    max_norm = (rhs / c**p_exp) ** (1 / (2 * p_exp - 2))
    return SmallDataReport(
        gamma=gamma,
        gamma0=gamma0,
        p_exp=p_exp,
        gamma_tilde=gt,
        gamma_gt_3_2=gamma > 1.5,
        gamma0_in_range=0 < gamma0 < (2 * gamma - 3) / p_exp,
        gamma_tilde_negative=gt < 0,
        smallness=c**p_exp * norm_u0 ** (2 * p_exp - 2) <= rhs,
        max_norm_u0=max_norm,
    )
