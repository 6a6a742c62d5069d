import math

import numpy as np
import pytest
from scipy import integrate

from kafourier import (
    ExponentOutOfRange,
    InfinitePaleyFunctional,
    MultiplierSymbol,
    default_suite,
    hormander_bound,
    hy_ratio,
    hyp_ratio,
    paley_ratio,
)
from kafourier.inequalities import Exponents, conjugate
from kafourier.params import Params


@pytest.mark.parametrize("kwargs", [dict(p=1.0), dict(p=2.5), dict(p=1.5, b=1.2), dict(p=1.5, b=3.5),
                                    dict(p=1.5, q=1.9), dict(p=1.5, q=math.inf)])
def test_exponent_validation(kwargs):
    with pytest.raises(ExponentOutOfRange):
        Exponents(**kwargs)


def test_exponent_conjugates():
    e = Exponents(1.5, q=4.0, b=2.0)
    assert e.p_conj == pytest.approx(3.0)
    assert e.q_conj == pytest.approx(4 / 3)
    assert e.inv_r == pytest.approx(1 / 1.5 - 1 / 4)
    assert 1 / e.p + 1 / e.p_conj == pytest.approx(1.0, abs=1e-15)
    assert conjugate(2.0) == 2.0


def _lhs_by_quad(T, coeffs, weight, expo, b):
    """(int (|F f| w^expo)^b d mu)^{1/b} with adaptive quadrature."""
    Fc = coeffs @ T.U.T
    k, a = T.params.k, T.params.a

    def integrand(x):
        val = abs(Fc @ T.basis.evaluate(np.array([x]))[:, 0])
        return (val * weight(x) ** expo) ** b * abs(x) ** (2 * k + a - 2)

    total = sum(integrate.quad(integrand, lo, hi, limit=400, epsabs=1e-14, epsrel=1e-11)[0]
                for lo, hi in [(-14, -1), (-1, 0), (0, 1), (1, 14)])
    return total ** (1 / b)


def test_paley_endpoint_p2(operator):
    T = operator(1, 0.5, 2.0)
    psi = MultiplierSymbol.power(T.params.D)
    for _, c in default_suite(T):
        assert paley_ratio(T, c, psi, 2.0).ratio == pytest.approx(1.0, abs=1e-8)


def test_zero_function(operator):
    T = operator(1, 0.5, 2.0)
    psi = MultiplierSymbol.power(T.params.D)
    r = paley_ratio(T, np.zeros(T.n_basis), psi, 1.5)
    assert r.lhs == 0 and r.ratio == 0


def test_paley_ground_state_against_quad(operator):
    T = operator(1, 0.5, 2.0)
    D = T.params.D
    psi = MultiplierSymbol.power(D)
    e0 = np.eye(T.n_basis)[0]
    r = paley_ratio(T, e0, psi, 1.5)
    ref = _lhs_by_quad(T, e0, lambda x: abs(x) ** -D, (2 - 1.5) / 1.5, 1.5)
    assert r.lhs == pytest.approx(ref, rel=1e-7)
    assert math.isfinite(r.ratio) and r.ratio > 0


def test_hyp_random_against_quad(operator):
    T = operator(1, 0.5, 2.0)
    D = T.params.D
    psi = MultiplierSymbol.power(D)
    _, c = default_suite(T, seed=3)[-1]
    p, b = 1.5, 2.0
    r = hyp_ratio(T, c, psi, p, b)
    expo = 1 / b - 1 / conjugate(p)
    ref = _lhs_by_quad(T, c, lambda x: abs(x) ** -D, expo, b)
    assert r.lhs == pytest.approx(ref, rel=1e-7)
    assert math.isfinite(r.ratio)


def test_hyp_collapses_to_hy_and_paley(operator):
    T = operator(1, 0.7, 1.5)
    psi = MultiplierSymbol.power(T.params.D)
    for _, c in default_suite(T)[:6]:
        for p in (1.25, 1.5, 1.8):
            assert hyp_ratio(T, c, psi, p, conjugate(p)) == hy_ratio(T, c, p)
            assert hyp_ratio(T, c, psi, p, p) == paley_ratio(T, c, psi, p)


def test_infinite_paley_functional(operator):
    T = operator(1, 0.5, 2.0)
    c = np.eye(T.n_basis)[1]
    with pytest.raises(InfinitePaleyFunctional):
        paley_ratio(T, c, MultiplierSymbol.power(1.0), 1.5)
    # at b = p' the weight drops out and M_psi is irrelevant
    hyp_ratio(T, c, MultiplierSymbol.power(1.0), 1.5, 3.0)


def test_hausdorff_young_suite(operator):
    T = operator(1, 0.5, 1.0)
    for p in (1.25, 1.5):
        ratios = [hy_ratio(T, c, p).ratio for _, c in default_suite(T)]
        assert max(ratios) <= 1 + 1e-2


@pytest.mark.parametrize("k,a", [(0.5, 2.0), (0.0, 2.0), (0.7, 1.5)])
@pytest.mark.parametrize("p,q", [(2.0, 4.0), (1.5, 3.0), (1.25, 2.0)])
def test_hormander_power(k, a, p, q):
    params = Params(1, k, a)
    D = 2 * k + a - 1
    gamma = D * (1 / p - 1 / q)
    H = hormander_bound(MultiplierSymbol.power(gamma), p, q, params)
    assert H == pytest.approx((2 / D) ** (gamma / D), rel=1e-12)
    assert math.isinf(hormander_bound(MultiplierSymbol.power(0.9 * gamma), p, q, params))
    # scaling with 1/p - 1/q held fixed
    H3 = hormander_bound(MultiplierSymbol.power(gamma, coef=3.0), p, q, params)
    assert H3 == pytest.approx(3 * H, rel=1e-10)


def test_hormander_indicator_and_monotonicity():
    params = Params(1, 0.7, 1.5)
    D = params.D
    H1 = hormander_bound(MultiplierSymbol.indicator(1.0), 1.5, 3.0, params)
    assert H1 == pytest.approx((2 / D) ** (1 / 1.5 - 1 / 3))
    H2 = hormander_bound(MultiplierSymbol.indicator(2.0), 1.5, 3.0, params)
    assert H2 >= H1
    assert math.isinf(hormander_bound(MultiplierSymbol.constant(1.0), 2.0, 2.0, params))
