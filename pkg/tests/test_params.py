import math

import pytest
from hypothesis import given, settings, strategies as st

from cornell_lab.params import SystemParams, effective_potential, lambda_param


def test_lambda_trivia():
    assert lambda_param(3, 0) == 0.0
    assert lambda_param(4, 0) == 0.5
    assert lambda_param(3, 2) == 2.0


def test_lambda_matches_ell_in_three_dimensions():
    for ell in range(21):
        assert lambda_param(3, ell) == ell


def test_lambda_rejects_bad_inputs():
    with pytest.raises(ValueError):
        lambda_param(2, 0)
    with pytest.raises(ValueError):
        lambda_param(3, -1)


def test_lambda_is_exact_dyadic():
    # (N + 2l - 3)/2 is a half-integer; float division by two is exact
    for n_dim in range(3, 12):
        for ell in range(0, 8):
            lam = lambda_param(n_dim, ell)
            assert lam == (n_dim + 2 * ell - 3) / 2
            assert 2 * lam == n_dim + 2 * ell - 3


def test_effective_potential_examples():
    assert effective_potential(SystemParams(a=1, b=1), 1.0) == pytest.approx(0.0, abs=1e-15)
    assert effective_potential(SystemParams(a=0, b=1), 2.0) == pytest.approx(2.0)
    p = SystemParams(a=1, b=1, ell=1)  # lambda = 1
    assert effective_potential(p, 1.0) == pytest.approx(2.0, rel=1e-14)


def test_effective_potential_rejects_bad_radius():
    p = SystemParams(a=1, b=1)
    for r in (0.0, -1.0):
        with pytest.raises(ValueError):
            effective_potential(p, r)


@given(r=st.floats(0.01, 50), b1=st.floats(0.01, 50), b2=st.floats(0.01, 50))
@settings(derandomize=True, max_examples=100)
def test_effective_potential_increases_with_b(r, b1, b2):
    lo, hi = sorted((b1, b2))
    if hi - lo < 1e-9 * hi:
        return
    v_lo = effective_potential(SystemParams(a=1, b=lo), r)
    v_hi = effective_potential(SystemParams(a=1, b=hi), r)
    assert v_hi > v_lo


@given(r=st.floats(0.01, 50), a1=st.floats(0, 10), a2=st.floats(0, 10))
@settings(derandomize=True, max_examples=100)
def test_effective_potential_decreases_with_a(r, a1, a2):
    lo, hi = sorted((a1, a2))
    if hi - lo < 1e-9 * max(hi, 1.0):
        return
    v_lo = effective_potential(SystemParams(a=lo, b=1), r)
    v_hi = effective_potential(SystemParams(a=hi, b=1), r)
    assert v_hi < v_lo


def test_origin_behaviour():
    diverging_up = SystemParams(a=1, b=1, ell=1)
    diverging_down = SystemParams(a=1, b=1, ell=0)
    assert effective_potential(diverging_up, 1e-9) > 1e15
    assert effective_potential(diverging_down, 1e-9) < -1e8


def test_invariants_enforced():
    with pytest.raises(ValueError):
        SystemParams(a=-0.1, b=1)
    with pytest.raises(ValueError):
        SystemParams(a=1, b=0.0)
    with pytest.raises(ValueError):
        SystemParams(a=1, b=1, m=0.0)
    with pytest.raises(ValueError):
        SystemParams(a=1, b=1, n_dim=2)
    with pytest.raises(ValueError):
        SystemParams(a=1, b=1, ell=-1)


def test_params_hashable_and_frozen():
    p = SystemParams(a=1, b=1)
    assert hash(p) == hash(SystemParams(a=1, b=1))
    with pytest.raises(Exception):
        p.a = 2.0
    assert math.isclose(p.lam, 0.0)
