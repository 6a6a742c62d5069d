"""One-dimensional Dunkl operator, Dunkl Laplacian and deformed oscillator.

Functions of the basis family are kept exactly as finite sums

    f(x) = sum_j c_j |x|^{e_j} sgn(x)^{eps_j} exp(-|x|^a / a),

which is closed under the Dunkl operator ``T f = f' + k (f(x) - f(-x)) / x``
and under ``Delta_{k,a} = |x|^{2-a} T^2 - |x|^a``.  Polynomials are the
special case of integer ``e_j`` with ``eps_j = e_j mod 2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _orthopoly
from .exceptions import SelfAdjointnessDefect, SingularAtOrigin
from .measure import GridFunction

__all__ = [
    "BasisFunction",
    "dunkl_apply",
    "dunkl_laplacian_apply",
    "delta_ka_apply",
    "build_operator_matrix",
    "oscillator_matrix",
    "FD_STEP",
    "FD_STEP_SECOND",
]

FD_STEP = 1e-5
FD_STEP_SECOND = 1e-3
SYMMETRY_TOL = 1e-6

_ROUND = 12


def _key(e, eps):
    return (round(float(e), _ROUND) + 0.0, int(eps) % 2)


@dataclass(frozen=True)
class BasisFunction:
    """Exact sum of terms ``c |x|^e sgn(x)^eps`` times ``exp(-|x|^a / a)``.

    ``terms`` maps ``(e, eps)`` to the coefficient ``c``.
    """

    terms: tuple
    a: float

    @classmethod
    def from_terms(cls, mapping, a):
        merged = {}
        for (e, eps), c in mapping.items():
            key = _key(e, eps)
            merged[key] = merged.get(key, 0.0) + c
        items = tuple(sorted((k, c) for k, c in merged.items() if c != 0))
        return cls(items, float(a))

    @classmethod
    def from_poly(cls, coeffs, a):
        """``(sum_m coeffs[m] x^m) exp(-|x|^a / a)``."""
        return cls.from_terms({(m, m % 2): c for m, c in enumerate(coeffs)}, a)

    @classmethod
    def monomial(cls, m, a):
        return cls.from_terms({(m, m % 2): 1.0}, a)

    @classmethod
    def ground_state(cls, a):
        return cls.from_terms({(0, 0): 1.0}, a)

    @property
    def mapping(self):
        return dict(self.terms)

    @property
    def parity(self):
        """``'even'``, ``'odd'``, or ``None`` for mixed parity (zero is even)."""
        eps = {k[1] for k, _ in self.terms}
        if not eps:
            return "even"
        if len(eps) > 1:
            return None
        return "odd" if eps.pop() else "even"

    @property
    def poly_coeffs(self):
        """Ascending polynomial coefficients, or ``None`` if not a polynomial."""
        if not self.terms:
            return np.zeros(1)
        degs = []
        for (e, eps), _ in self.terms:
            if e < 0 or e != int(e) or int(e) % 2 != eps:
                return None
            degs.append(int(e))
        out = np.zeros(max(degs) + 1)
        for (e, _), c in self.terms:
            out[int(e)] += c
        return out

    def __add__(self, other):
        m = self.mapping
        for k, c in other.terms:
            m[k] = m.get(k, 0.0) + c
        return BasisFunction.from_terms(m, self.a)

    def __mul__(self, c):
        return BasisFunction.from_terms({k: c * v for k, v in self.terms}, self.a)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (-1.0) * other

    def shift(self, de):
        """Multiply by ``|x|^de``."""
        return BasisFunction.from_terms(
            {(e + de, eps): c for (e, eps), c in self.terms}, self.a
        )

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = np.abs(x)
        sgn = np.sign(x)
        out = np.zeros(x.shape)
        for (e, eps), c in self.terms:
            if e < 0 and np.any(r == 0):
                raise SingularAtOrigin(f"term |x|^{e:g} is singular at 0")
            with np.errstate(divide="ignore", invalid="ignore"):
                term = np.where(r == 0, 1.0 if e == 0 else 0.0, r ** e)
            if eps:
                term = term * sgn
            out = out + c * term
        return out * _orthopoly.envelope(x, self.a)

    def close_to(self, other, tol=1e-12):
        diff = (self - other).mapping
        return all(abs(c) <= tol for c in diff.values())


def _dunkl_exact(f, k):
    out = {}
    for (e, eps), c in f.terms:
        # derivative of |x|^e sgn^eps plus the reflection quotient (odd part)
        coef = e + 2 * k * eps
        if coef:
            key = _key(e - 1, 1 - eps)
            out[key] = out.get(key, 0.0) + c * coef
        # derivative of the envelope
        key = _key(e + f.a - 1, 1 - eps)
        out[key] = out.get(key, 0.0) - c
    return BasisFunction.from_terms(out, f.a)


def _node_scale(x):
    return np.maximum(1.0, np.abs(x))


def _fd_dunkl(func, k, h=FD_STEP):
    def tf(x):
        x = np.asarray(x, dtype=float)
        step = h * _node_scale(x)
        deriv = (func(x + step) - func(x - step)) / (2 * step)
        with np.errstate(divide="ignore", invalid="ignore"):
            quot = (func(x) - func(-x)) / x
        # limit at the origin: k (f(x)-f(-x))/x -> 2k f'(0)
        quot = np.where(x == 0, 2 * deriv, quot)
        return deriv + k * quot

    return tf


def _fd_derivatives(func, x, h):
    step = h * _node_scale(x)
    f = [func(x + j * step) for j in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * step)
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * step**2)
    return d1, d2


def _fd_dunkl_laplacian(func, k, h=FD_STEP_SECOND):
    def lap(x):
        x = np.asarray(x, dtype=float)
        if np.any(x == 0):
            raise SingularAtOrigin("finite-difference Dunkl Laplacian needs x != 0")
        d1, d2 = _fd_derivatives(func, x, h)
        return d2 + 2 * k * d1 / x - k * (func(x) - func(-x)) / x**2

    return lap


def _dispatch(f, exact, fd):
    if isinstance(f, BasisFunction):
        return exact(f)
    if isinstance(f, GridFunction):
        if isinstance(f.source, BasisFunction):
            g = exact(f.source)
            return GridFunction(g(f.rule.nodes), f.rule, source=g)
        if callable(f.source):
            g = fd(f.source)
            return GridFunction(g(f.rule.nodes), f.rule, source=g)
        raise ValueError(
            "GridFunction has no source; samples alone cannot be differentiated"
        )
    if callable(f):
        return fd(f)
    raise TypeError(f"cannot apply operator to {type(f).__name__}")


def dunkl_apply(f, k):
    """Dunkl operator ``T f = f' + k (f(x) - f(-x)) / x`` in one dimension.

    Exact on :class:`BasisFunction` (and on grid functions that carry one);
    callables are differentiated with centred differences of relative step
    ``FD_STEP``.
    """
    return _dispatch(f, lambda g: _dunkl_exact(g, k), lambda g: _fd_dunkl(g, k))


def dunkl_laplacian_apply(f, k):
    """``Delta_k f = T(T f)``."""
    return _dispatch(
        f,
        lambda g: _dunkl_exact(_dunkl_exact(g, k), k),
        lambda g: _fd_dunkl_laplacian(g, k),
    )


def delta_ka_apply(f, params):
    """Deformed oscillator ``|x|^{2-a} Delta_k f - |x|^a f``."""
    k, a = params.k_eff, params.a

    def exact(g):
        lap = _dunkl_exact(_dunkl_exact(g, k), k)
        return lap.shift(2 - a) - g.shift(a)

    def fd(g):
        lap = _fd_dunkl_laplacian(g, k)

        def out(x):
            x = np.asarray(x, dtype=float)
            r = np.abs(x)
            if a > 2 and np.any(r == 0):
                raise SingularAtOrigin("|x|^{2-a} is singular at 0 for a > 2")
            return r ** (2 - a) * lap(x) - r**a * g(x)

        return out

    return _dispatch(f, exact, fd)


def oscillator_matrix(sqrt_b, degrees, k, a):
    """Galerkin matrix of ``Delta_{k,a}`` on ``p_j(x) exp(-|x|^a/a)``.

    ``p_j`` are the orthonormal polynomials of ``|x|^{2k+a-2} exp(-(2/a)|x|^a)``
    given by ``sqrt_b``; ``degrees`` selects which of them span the space.
    With ``Delta_{k,a}(p e) = (|x|^{2-a} Delta_k p - 2 x p' - (2k+a-1) p) e``
    both pieces are polynomial against a Gauss weight, so two exact Gauss
    rules (for ``|x|^{2k}`` and ``|x|^{2k+a-2}``) assemble the matrix without
    evaluating at the origin.

    Returns the unsymmetrised matrix.
    """
    degrees = np.asarray(degrees)
    n = int(degrees.max()) + 1
    m = n + 2 + (n % 2)
    s = 2 * k + a - 1

    # rule for |x|^{2k}: the |x|^{2-a} factor folded into the weight
    y, wy = _orthopoly.gauss_rule(2 * k, a, m)
    vals = _orthopoly.evaluate(sqrt_b, n, y, derivatives=2,
                               scale=_orthopoly.envelope(y, a))
    p, dp, d2p = vals[:, degrees]
    odd = (degrees % 2)[:, None]
    lap = d2p + 2 * k * dp / y - 2 * k * odd * p / y**2
    first = (lap * wy) @ p.T

    x, wx = _orthopoly.gauss_rule(2 * k + a - 2, a, m)
    vals = _orthopoly.evaluate(sqrt_b, n, x, derivatives=1,
                               scale=_orthopoly.envelope(x, a))
    p, dp = vals[:, degrees]
    second = ((2 * x * dp + s * p) * wx) @ p.T

    # D[row, col] = <Delta phi_col, phi_row>
    mat = (first - second).T
    same = (degrees[:, None] - degrees[None, :]) % 2 == 0
    return np.where(same, mat, 0.0)


def build_operator_matrix(basis, params=None):
    """Symmetric matrix ``D[m, n] = <Delta_{k,a} phi_n, phi_m>`` on a basis.

    Returns ``(D, defect)`` where ``defect`` is the largest entry of
    ``|D - D^T|`` before symmetrisation.

    Raises
    ------
    SelfAdjointnessDefect
        If the defect exceeds ``1e-6``.
    """
    params = basis.params if params is None else params
    raw = oscillator_matrix(basis.sqrt_b, basis.degrees, params.k_eff, params.a)
    defect = float(np.max(np.abs(raw - raw.T)))
    if defect > SYMMETRY_TOL:
        raise SelfAdjointnessDefect(f"max |D - D^T| = {defect:.3e}")
    return 0.5 * (raw + raw.T), defect
