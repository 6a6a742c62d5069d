import logging

import numpy as np
import pytest

from kafourier import (
    GramFailure,
    GridFunction,
    ProjectionResidualTooLarge,
    build_basis,
    build_quadrature,
    build_transform,
    forward,
    inverse,
    kernel_eval,
    kernel_sup_estimate,
    project,
)
from kafourier.params import Params, validate
from kafourier.transform import kernel_matrix

import oracles

log = logging.getLogger(__name__)


def test_classical_basis_is_hermite():
    basis = build_basis(Params(1, 0.0, 2.0), 16)
    ref = oracles.hermite_functions(16, basis.rule.nodes)
    signs = np.sign(np.sum(basis.funcs * ref, axis=1))
    dev = np.max(np.abs(basis.funcs - signs[:, None] * ref), axis=1)
    assert np.all(dev < 1e-6)
    assert basis.gram_defect < 1e-8


def test_nonclassical_regression():
    basis = build_basis(Params(1, 0.7, 1.5), 32)
    assert basis.gram_defect < 1e-8
    for par in (0, 1):
        ev = basis.eigvals[basis.eig_parity == par]
        assert np.all(np.diff(ev) < 0)


@pytest.mark.parametrize("k", [0.0, 0.5, 1.5])
def test_spectrum_at_a_equal_2(k):
    # the compression is exact at a = 2: -(2n + 2k + 1)
    basis = build_basis(Params(1, k, 2.0), 24)
    np.testing.assert_allclose(basis.eigvals, -(2 * np.arange(24) + 2 * k + 1), atol=1e-8)


def test_basis_size_limit():
    rule = build_quadrature(Params(1, 0.0, 2.0), 32)
    with pytest.raises(GramFailure):
        build_basis(Params(1, 0.0, 2.0), 9, rule)


def test_classical_phases(operator):
    T = operator(1, 0.0, 2.0, 32)
    n = np.arange(32)
    np.testing.assert_allclose(np.diag(T.U), (-1j) ** n, atol=1e-6)
    np.testing.assert_allclose(T.U, np.diag((-1j) ** n), atol=1e-6)


@pytest.mark.parametrize("N,k,a", [(1, 0.0, 2.0), (1, 0.5, 2.0), (2, 0.0, 1.0), (1, 0.7, 1.5),
                                   (1, 0.5, 1.0), (1, 0.0, 3.0), (1, 0.5, 0.5)])
def test_operator_invariants(operator, N, k, a):
    T = operator(N, k, a)
    n = T.n_basis
    np.testing.assert_allclose(T.U @ T.U.conj().T, np.eye(n), atol=1e-8)
    assert np.all(np.abs(np.abs(np.linalg.eigvals(T.U)) - 1) < 1e-10)
    e0 = np.eye(n)[0]
    np.testing.assert_allclose(forward(T, e0), e0, atol=1e-8)
    rng = np.random.default_rng(7)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    assert np.linalg.norm(forward(T, v)) == pytest.approx(np.linalg.norm(v), rel=1e-8)
    np.testing.assert_allclose(inverse(T, forward(T, v)), v, atol=1e-8)


@pytest.mark.parametrize("k", [0.0, 0.5, 2.0])
def test_fourth_power_identity_at_a_2(operator, k):
    T = operator(1, k, 2.0)
    U4 = np.linalg.matrix_power(T.U, 4)
    np.testing.assert_allclose(U4, np.eye(T.n_basis), atol=1e-6)


def test_grid_function_roundtrip(operator):
    T = operator(1, 0.5, 2.0)
    x = T.rule.nodes
    f = GridFunction(x**3 * np.exp(-(x**2) / 2) + 0.2 * np.exp(-(x**2) / 2), T.rule)
    Ff = forward(T, f)
    assert Ff.residual < 1e-10
    back = inverse(T, Ff)
    np.testing.assert_allclose(back.values, f.values, atol=1e-10)


def test_projection_residual_error(operator):
    T = operator(1, 0.5, 2.0)
    x = T.rule.nodes
    rough = GridFunction(np.where(np.abs(x) < 1, 1.0, 0.0), T.rule)
    with pytest.raises(ProjectionResidualTooLarge):
        forward(T, rough)
    _, res = project(T.basis, rough, max_residual=None)
    assert res > 1e-4


def test_kernel_symmetry_and_normalisation(operator):
    T = operator(1, 0.5, 2.0)
    pts = np.linspace(-1.5, 1.5, 7)
    K = kernel_matrix(T, pts, pts)
    np.testing.assert_allclose(K, K.T, rtol=0, atol=1e-13)
    xi, x = np.meshgrid(pts, pts, indexing="ij")
    # pointwise sums run over the spectrum in a fixed order: exactly symmetric
    np.testing.assert_array_equal(kernel_eval(T, xi, x)[0], kernel_eval(T, x, xi)[0])
    B0 = kernel_matrix(T, np.zeros(1), pts, normalized=True)
    np.testing.assert_allclose(B0, 1.0, rtol=1e-12)
    val, err = kernel_eval(T, 0.0, 0.8, normalized=True)
    assert val == pytest.approx(1.0)
    assert err >= 0


def test_classical_kernel():
    T = build_transform(build_basis(Params(1, 0.0, 2.0), 64))
    grid = np.linspace(-2, 2, 21)
    B = kernel_matrix(T, grid, grid, extrapolate=True, normalized=True)
    assert np.max(np.abs(B - np.exp(-1j * np.outer(grid, grid)))) < 5e-3
    val, err = kernel_eval(T, 1.2, -0.4, extrapolate=True, normalized=True)
    assert abs(val - np.exp(0.48j)) < 5e-3
    assert err < 5e-3


def test_kernel_sup_classical(operator):
    M = kernel_sup_estimate(operator(1, 0.0, 2.0))
    assert M == pytest.approx(1.0, abs=1e-2)


@pytest.mark.parametrize("N,k,a", [(1, 0.5, 2.0), (2, 0.0, 1.0), (1, 0.7, 1.5), (1, 0.5, 1.0),
                                   (1, 0.0, 3.0), (1, 0.5, 0.5)])
def test_kernel_sup_lower_bound(operator, N, k, a):
    T = operator(N, k, a)
    M = kernel_sup_estimate(T)
    assert M >= 1 - 1e-2
    if validate(N, k, a).conjecture_regime and M > 1 + 5e-2:
        # observation only: the conjectured bound |B| <= 1 is not asserted
        log.warning("kernel sup estimate %.3f exceeds 1.05 at (N,k,a)=(%s,%s,%s)", M, N, k, a)
