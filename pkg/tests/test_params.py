import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kafourier import InadmissibleParams, validate
from kafourier.params import Params


def test_classical_case():
    rep = validate(1, 0.0, 2.0)
    assert rep.admissible
    assert rep.bounded_kernel_cases == {"N1_any_a", "a_eq_2", "k0_a_2_over_m"}
    assert rep.conjecture_regime


def test_boundary_is_inadmissible():
    # a + 2k + N - 2 = 0
    with pytest.raises(InadmissibleParams):
        validate(1, 0.0, 1.0)


def test_conjecture_only():
    rep = validate(2, 0.0, 3.0)
    assert rep.admissible
    assert rep.conjecture_regime
    assert rep.bounded_kernel_cases == frozenset()


@pytest.mark.parametrize("N,k,a", [(1, 0.0, -1.0), (1, -0.1, 2.0), (1, 0.0, 0.0), (1, 0.1, 0.5)])
def test_rejects(N, k, a):
    with pytest.raises(InadmissibleParams):
        validate(N, k, a)


def test_a_eq_1_needs_nonnegative_index():
    assert "a_eq_1" in validate(2, 0.0, 1.0).bounded_kernel_cases
    assert "a_eq_1" in validate(1, 0.5, 1.0).bounded_kernel_cases


@pytest.mark.parametrize("m", [1, 2, 3, 7, 64])
def test_two_over_m(m):
    assert "k0_a_2_over_m" in validate(2, 0.0, 2.0 / m).bounded_kernel_cases


def test_two_over_m_requires_k_zero_and_integer_m():
    assert "k0_a_2_over_m" not in validate(1, 0.5, 1.0).bounded_kernel_cases
    assert "k0_a_2_over_m" not in validate(2, 0.0, 0.8).bounded_kernel_cases
    assert "k0_a_2_over_m" not in validate(2, 0.0, 2.0 / 65).bounded_kernel_cases


def test_derived_quantities():
    p = Params(1, 0.5, 2.0)
    assert p.k_index == 0.5
    assert p.D == 2.0
    assert not p.radial
    q = Params(3, 0.25, 1.0)
    assert q.radial
    assert q.D == pytest.approx(2 * 0.25 + 3 + 1 - 2)
    assert q.k_eff == pytest.approx(0.25 + 1.0)


def test_report_json_roundtrip():
    rep = validate(1, 0.5, 2.0)
    d = json.loads(rep.to_json())
    assert d["admissible"] is True
    assert sorted(d["bounded_kernel_cases"]) == sorted(rep.bounded_kernel_cases)


@settings(max_examples=60, deadline=None)
@given(
    N=st.integers(1, 4),
    k=st.floats(0, 3, allow_nan=False),
    a=st.floats(0.05, 4, allow_nan=False),
)
def test_validate_properties(N, k, a):
    try:
        r1 = validate(N, k, a)
    except InadmissibleParams:
        assert a + 2 * k + N - 2 <= 0
        return
    r2 = validate(N, k, a)
    assert r1.to_dict() == r2.to_dict()
    assert r1.params.D > 0
    assert r1.admissible == (bool(r1.bounded_kernel_cases) or r1.conjecture_regime)
    if abs(a - 2) < 1e-13:
        assert "a_eq_2" in r1.bounded_kernel_cases
