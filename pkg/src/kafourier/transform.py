"""Spectral construction of the (k, a)-generalised Fourier transform.

The transform is ``exp(i pi D / (2a)) exp(i pi Delta_{k,a} / (2a))`` with
``D = 2<k> + N + a - 2``.  ``Delta_{k,a}`` is compressed onto the span of
``p_j(x) exp(-|x|^a / a)`` (orthonormal polynomials ``p_j``), diagonalised
parity block by parity block, and exponentiated through its eigenvalues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _orthopoly
from .dunkl import build_operator_matrix
from .exceptions import GramFailure, KAFourierError, ProjectionResidualTooLarge
from .measure import GridFunction, QuadratureRule, build_quadrature
from .params import Params

__all__ = [
    "SpectralBasis",
    "TransformOperator",
    "build_basis",
    "build_transform",
    "project",
    "synthesize",
    "forward",
    "inverse",
    "kernel_eval",
    "kernel_matrix",
    "kernel_sup_estimate",
    "richardson_filter",
]

GRAM_TOL = 1e-8
ORTHO_TOL = 1e-8
EIG_TOL = 1e-6
MAX_RESIDUAL = 1e-4


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Orthonormal basis samples, oscillator matrix and its eigensystem.

    Attributes
    ----------
    funcs : ndarray, shape (n_basis, n_nodes)
        Basis functions sampled on ``rule.nodes``.
    D : ndarray, shape (n_basis, n_basis)
        Symmetric Galerkin matrix of ``Delta_{k,a}``.
    eigvals, eigvecs : ndarray
        Eigenpairs of ``D``, eigenvalues in decreasing order (ground state
        first).  Columns of ``eigvecs`` are basis coordinates.
    parity : ndarray of {0, 1}
        Parity of each basis function.
    """

    params: Params
    rule: QuadratureRule
    funcs: np.ndarray
    gram_defect: float
    D: np.ndarray
    symmetry_defect: float
    eigvals: np.ndarray
    eigvecs: np.ndarray
    parity: np.ndarray
    eig_parity: np.ndarray
    sqrt_b: np.ndarray = field(repr=False)
    degrees: np.ndarray = field(repr=False)
    norm: float = 1.0

    @property
    def n_basis(self):
        return len(self.degrees)

    def evaluate(self, x):
        """Basis functions at arbitrary points, shape ``(n_basis,) + x.shape``."""
        x = np.asarray(x, dtype=float)
        if self.params.radial:
            x = np.abs(x)
        a = self.params.a
        n = int(self.degrees.max()) + 1
        vals = _orthopoly.evaluate(self.sqrt_b, n, x, scale=_orthopoly.envelope(x, a))[0]
        return self.norm * vals[self.degrees]

    def eigenfunctions(self, x):
        """Eigenfunctions of the compressed oscillator at ``x``."""
        vals = self.evaluate(x)
        return np.tensordot(self.eigvecs.T, vals, axes=1)


def _sign_fix(vecs):
    idx = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[idx, np.arange(vecs.shape[1])])
    signs[signs == 0] = 1.0
    return vecs * signs


def build_basis(params, n_basis=48, rule=None):
    """Orthonormal basis of ``L^2(mu_{k,a})`` plus the oscillator eigensystem.

    Parameters
    ----------
    params : Params
    n_basis : int
        Number of basis functions (radial mode: even functions only).
    rule : QuadratureRule, optional
        Defaults to a rule with ``4 * n_basis`` usable nodes.

    Raises
    ------
    GramFailure
        If the sampled basis is not orthonormal to ``1e-8`` or the
        eigensystem fails its checks.
    """
    n_basis = int(n_basis)
    if n_basis < 1:
        raise ValueError("n_basis must be positive")
    if rule is None:
        factor = 8 if params.radial else 4
        rule = build_quadrature(params, max(16, factor * n_basis))
    if n_basis > len(rule.nodes) / 4:
        raise GramFailure(
            f"n_basis={n_basis} exceeds a quarter of the {len(rule.nodes)} nodes"
        )
    if params.radial:
        degrees = 2 * np.arange(n_basis)
        norm = math.sqrt(2.0)
    else:
        degrees = np.arange(n_basis)
        norm = 1.0
    n_poly = int(degrees.max()) + 1
    sqrt_b = _orthopoly.recurrence(2 * params.k_eff + params.a - 2, params.a, n_poly)
    nodes = rule.nodes
    vals = _orthopoly.evaluate(sqrt_b, n_poly, nodes,
                               scale=_orthopoly.envelope(nodes, params.a))[0]
    funcs = norm * vals[degrees]
    gram = (funcs * rule.weights) @ funcs.T
    gram_defect = float(np.max(np.abs(gram - np.eye(n_basis))))
    if not gram_defect < GRAM_TOL:
        raise GramFailure(f"Gram defect {gram_defect:.2e}; reduce n_basis")
    funcs.setflags(write=False)

    parity = degrees % 2
    proto = _Proto(params, sqrt_b, degrees)
    D, sym_defect = build_operator_matrix(proto, params)

    vals_all = np.empty(n_basis)
    vecs_all = np.zeros((n_basis, n_basis))
    eig_parity = np.empty(n_basis, dtype=int)
    col = 0
    for par in (0, 1):
        idx = np.flatnonzero(parity == par)
        if not len(idx):
            continue
        w, v = np.linalg.eigh(D[np.ix_(idx, idx)])
        sl = slice(col, col + len(idx))
        vals_all[sl] = w
        vecs_all[np.ix_(idx, np.arange(col, col + len(idx)))] = v
        eig_parity[sl] = par
        col += len(idx)
    order = np.argsort(-vals_all, kind="stable")
    eigvals = vals_all[order]
    eigvecs = _sign_fix(vecs_all[:, order])
    eig_parity = eig_parity[order]

    ortho = float(np.max(np.abs(eigvecs.T @ eigvecs - np.eye(n_basis))))
    resid = float(np.max(np.abs(D @ eigvecs - eigvecs * eigvals)))
    if ortho > ORTHO_TOL or resid > EIG_TOL:
        raise GramFailure(
            f"eigensystem check failed (orthogonality {ortho:.1e}, residual {resid:.1e})"
        )
    for arr in (D, eigvals, eigvecs):
        arr.setflags(write=False)
    return SpectralBasis(
        params=params,
        rule=rule,
        funcs=funcs,
        gram_defect=gram_defect,
        D=D,
        symmetry_defect=sym_defect,
        eigvals=eigvals,
        eigvecs=eigvecs,
        parity=parity,
        eig_parity=eig_parity,
        sqrt_b=sqrt_b,
        degrees=degrees,
        norm=norm,
    )


@dataclass(frozen=True)
class _Proto:
    # the pieces of a basis that the oscillator assembly needs
    params: Params
    sqrt_b: np.ndarray
    degrees: np.ndarray


@dataclass(frozen=True, eq=False)
class TransformOperator:
    """Unitary matrix of ``F_{k,a}`` in basis coordinates.

    ``eigphases[n] = phase * exp(i pi eigvals[n] / (2a))`` are the
    eigenvalues of ``U`` on the oscillator eigenvectors.
    """

    params: Params
    basis: SpectralBasis
    phase: complex
    eigphases: np.ndarray
    U: np.ndarray
    unitarity_defect: float

    @property
    def n_basis(self):
        return self.basis.n_basis

    @property
    def rule(self):
        return self.basis.rule


def build_transform(basis, params=None):
    """``U = phase * V diag(exp(i pi lambda / (2a))) V^T``."""
    params = basis.params if params is None else params
    a = params.a
    phase = params.phase
    eigphases = phase * np.exp(1j * math.pi * basis.eigvals / (2 * a))
    V = basis.eigvecs
    U = (V * eigphases) @ V.T
    defect = float(np.max(np.abs(U @ U.conj().T - np.eye(len(V)))))
    if defect > 1e-8:
        raise KAFourierError(f"transform matrix not unitary (defect {defect:.1e})")
    U.setflags(write=False)
    return TransformOperator(
        params=params,
        basis=basis,
        phase=phase,
        eigphases=eigphases,
        U=U,
        unitarity_defect=defect,
    )


def project(basis, f, max_residual=MAX_RESIDUAL):
    """Basis coefficients of a grid function and the relative residual.

    ``max_residual=None`` disables the check.
    """
    values = f.values if isinstance(f, GridFunction) else np.asarray(f)
    w = basis.rule.weights
    coeffs = (values * w) @ basis.funcs.T
    recon = coeffs @ basis.funcs
    norm2 = np.sum(w * np.abs(values) ** 2, axis=-1)
    err2 = np.sum(w * np.abs(values - recon) ** 2, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        residual = np.where(norm2 > 0, np.sqrt(err2 / norm2), 0.0)
    worst = float(np.max(residual)) if np.size(residual) else 0.0
    if max_residual is not None and worst > max_residual:
        raise ProjectionResidualTooLarge(worst, max_residual)
    return coeffs, worst


def synthesize(basis, coeffs, residual=0.0):
    return GridFunction(np.asarray(coeffs) @ basis.funcs, basis.rule, residual=residual)


def _apply(T, f, matrix, max_residual):
    if isinstance(f, GridFunction):
        coeffs, res = project(T.basis, f, max_residual)
        return synthesize(T.basis, coeffs @ matrix.T, residual=res)
    c = np.asarray(f)
    if c.shape[-1] != T.n_basis:
        raise ValueError(f"expected {T.n_basis} coefficients, got {c.shape[-1]}")
    return c @ matrix.T


def forward(T, f, max_residual=MAX_RESIDUAL):
    """Apply ``F_{k,a}`` to coefficient vectors (last axis) or a grid function.

    Grid functions are projected onto the basis first; the projection
    residual is stored on the returned grid function.

    Raises
    ------
    ProjectionResidualTooLarge
        If the relative residual exceeds ``max_residual``.
    """
    return _apply(T, f, T.U, max_residual)


def inverse(T, f, max_residual=MAX_RESIDUAL):
    """Apply ``F_{k,a}^{-1} = U^*``."""
    return _apply(T, f, T.U.conj().T, max_residual)


def richardson_filter(T, eps_lo=None, degree=10, spread=5.0):
    """Spectral weights of the Abel-regularised kernel extrapolated to eps=0.

    The kernel is evaluated at the Chebyshev points of
    ``[eps_lo, spread * eps_lo]`` and extrapolated by the Lagrange polynomial
    of ``degree``; by linearity this is a fixed filter on the eigenmodes.
    ``eps_lo`` defaults to ``12 / (|lambda|_max - |lambda|_min)`` so the
    highest modes are damped below ``exp(-12)`` at every ladder point.
    """
    lam = np.abs(T.basis.eigvals)
    if eps_lo is None:
        eps_lo = 12.0 / max(lam.max() - lam.min(), 1e-12)
    hi = spread * eps_lo
    j = np.arange(degree + 1)
    ladder = 0.5 * (eps_lo + hi) + 0.5 * (hi - eps_lo) * np.cos(np.pi * (j + 0.5) / (degree + 1))
    lagrange = np.array([
        np.prod([-ladder[m] / (ladder[i] - ladder[m]) for m in j if m != i]) for i in j
    ])
    damp = np.exp(-np.outer(ladder, lam))
    return lagrange @ damp


def _spectral_weights(T, eps, extrapolate, degree=10):
    if extrapolate:
        return T.eigphases * richardson_filter(T, degree=degree)
    return T.eigphases * np.exp(-eps * np.abs(T.basis.eigvals))


def kernel_matrix(T, xi, x, eps=1e-3, extrapolate=False, normalized=False):
    """Kernel density ``K(xi_i, x_j)`` of ``F_{k,a}`` against ``mu_{k,a}``.

    ``K = sum_n e^{i pi lambda_n/(2a)} phase * damping_n * psi_n(xi) psi_n(x)``
    with Abel damping ``exp(-eps |lambda_n|)`` or, with ``extrapolate``, the
    Richardson-extrapolated ``eps -> 0`` limit.  ``normalized`` divides by
    ``K(0, x_j)`` so that the result is the kernel ``B`` with ``B(0, x) = 1``.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    weights = _spectral_weights(T, eps, extrapolate)
    psi_xi = T.basis.eigenfunctions(xi)
    psi_x = T.basis.eigenfunctions(x)
    K = (psi_xi.T * weights) @ psi_x
    if normalized:
        psi_0 = T.basis.eigenfunctions(np.zeros(1))
        K0 = (psi_0.T * weights) @ psi_x
        K = K / K0
    return K


def kernel_eval(T, xi, x, eps=1e-3, extrapolate=False, normalized=False):
    """Kernel at points ``(xi, x)`` (broadcast) with a truncation estimate.

    Returns ``(value, truncation_error)``.  The error estimate is the size of
    the contribution of the top eighth of the spectrum (Abel mode) or the
    change between extrapolation degrees 10 and 8 (Richardson mode).
    """
    xi, x = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(x, dtype=float))
    psi_xi = T.basis.eigenfunctions(xi)
    psi_x = T.basis.eigenfunctions(x)
    psi_0 = T.basis.eigenfunctions(np.zeros_like(x))

    def evaluate(weights):
        val = np.tensordot(weights, psi_xi * psi_x, axes=1)
        if normalized:
            val = val / np.tensordot(weights, psi_0 * psi_x, axes=1)
        return val

    weights = _spectral_weights(T, eps, extrapolate)
    value = evaluate(weights)
    if extrapolate:
        err = np.abs(value - evaluate(_spectral_weights(T, eps, True, degree=8)))
    else:
        top = np.zeros_like(weights)
        cut = T.n_basis - max(1, T.n_basis // 8)
        top[cut:] = weights[cut:]
        err = np.abs(np.tensordot(top, psi_xi * psi_x, axes=1))
        if normalized:
            err = err / np.abs(np.tensordot(weights, psi_0 * psi_x, axes=1))
    if value.ndim == 0:
        return complex(value), float(err)
    return value, err


def kernel_sup_estimate(T, extent=2.0, n_grid=41, extrapolate=True, eps=1e-3):
    """``max |B(xi, x)|`` of the normalised kernel over a uniform grid.

    The grid is ``[-extent, extent]^2`` (``[0, extent]^2`` in radial mode).
    Grid estimates can under-approximate the true supremum.
    """
    lo = 0.0 if T.params.radial else -extent
    grid = np.linspace(lo, extent, n_grid)
    B = kernel_matrix(T, grid, grid, eps=eps, extrapolate=extrapolate, normalized=True)
    return float(np.max(np.abs(B)))
