import numpy as np
import pytest
from numpy.testing import assert_allclose
from sklearn.base import clone

from kafourier import GeneralizedFourierTransform


def test_fit_attributes():
    est = GeneralizedFourierTransform(k=0.5, a=2.0, n_basis=24).fit()
    assert est.n_features_in_ == 24
    assert est.operator_.U.shape == (24, 24)
    assert est.params_.D == pytest.approx(2.0)


def test_round_trip_and_unitarity():
    est = GeneralizedFourierTransform(k=0.7, a=1.5, n_basis=32).fit()
    rng = np.random.default_rng(0)
    X = rng.normal(size=(5, 32)) + 1j * rng.normal(size=(5, 32))
    Y = est.transform(X)
    assert_allclose(np.linalg.norm(Y, axis=1), np.linalg.norm(X, axis=1), rtol=1e-10)
    assert_allclose(est.inverse_transform(Y), X, atol=1e-10)


def test_hermite_case_eigenvalues():
    # a=2, k=0: basis vector j is an eigenfunction with eigenvalue (-i)^j
    est = GeneralizedFourierTransform(k=0.0, a=2.0, n_basis=8).fit()
    Y = est.transform(np.eye(8))
    assert_allclose(np.diag(Y), (-1j) ** np.arange(8), atol=1e-10)


def test_single_sample_1d_input():
    est = GeneralizedFourierTransform(n_basis=8).fit()
    e1 = np.eye(8)[1]
    assert_allclose(est.transform(e1)[0, 1], -1j, atol=1e-10)


def test_clone_and_params():
    est = GeneralizedFourierTransform(k=0.25, a=1.0, n_basis=16)
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    twin.set_params(n_basis=20)
    assert twin.fit().n_features_in_ == 20


def test_grid_representation():
    est = GeneralizedFourierTransform(k=0.5, a=2.0, n_basis=24, representation="grid").fit()
    funcs = est.basis_.funcs
    Y = est.transform(funcs[:3])
    assert Y.shape == (3, len(est.nodes_))
    assert_allclose(est.inverse_transform(Y), funcs[:3], atol=1e-8)
    assert est.last_residual_ < 1e-8


def test_errors():
    with pytest.raises(ValueError):
        GeneralizedFourierTransform(representation="bogus").fit()
    est = GeneralizedFourierTransform(n_basis=8).fit()
    with pytest.raises(ValueError):
        est.transform(np.zeros((2, 9)))
