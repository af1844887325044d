"""Exactly solvable sector: closed forms, identities, and oracles."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from cornell_lab.coulomb import (
    big_r_of_g,
    coulomb_energy,
    coulomb_peak_radius,
    coulomb_state,
    coulomb_wavefunction,
    g_map,
    r_of_g,
)
from cornell_lab.params import SystemParams

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_argmax(f, lo, hi, tol=1e-12):
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    while b - a > tol:
        if f(c) > f(d):
            b, d = d, c
            c = b - GOLDEN * (b - a)
        else:
            a, c = c, d
            d = a + GOLDEN * (b - a)
    return 0.5 * (a + b)


def test_energy_examples():
    assert coulomb_energy(SystemParams(a=1, b=1), 0) == pytest.approx(-0.25, rel=1e-15)
    assert coulomb_energy(SystemParams(a=1, b=1, ell=1), 0) == pytest.approx(-0.0625, rel=1e-15)
    assert coulomb_energy(SystemParams(a=0, b=1), 0) == 0.0


def test_energy_monotone_in_n_and_lambda():
    p = SystemParams(a=1, b=1)
    energies = [coulomb_energy(p, n) for n in range(6)]
    assert all(b > a for a, b in zip(energies, energies[1:]))
    by_lam = [coulomb_energy(SystemParams(a=1, b=1, ell=l), 0) for l in range(6)]
    assert all(b > a for a, b in zip(by_lam, by_lam[1:]))


def test_g_map_examples():
    assert g_map(SystemParams(a=1, b=1), 0, 2.0) == pytest.approx(2.0, rel=1e-15)
    assert g_map(SystemParams(a=1, b=1, ell=1), 0, 2.0) == pytest.approx(1.0, rel=1e-15)
    assert g_map(SystemParams(a=2, b=1), 1, 1.0) == pytest.approx(1.0, rel=1e-15)


def test_g_map_rejects_degenerate():
    with pytest.raises(ValueError):
        g_map(SystemParams(a=0, b=1), 0, 1.0)
    with pytest.raises(ValueError):
        g_map(SystemParams(a=1, b=1), 0, 0.0)


def test_r_of_g_inverts_g_map():
    p = SystemParams(a=1, b=1)
    assert r_of_g(p, 0, 1.0) == pytest.approx(1.0, rel=1e-15)


@given(
    a=st.floats(0.05, 5.0),
    ell=st.integers(0, 4),
    n=st.integers(0, 3),
    r=st.floats(1e-3, 50.0),
)
@settings(derandomize=True, max_examples=200)
def test_g_map_round_trip(a, ell, n, r):
    p = SystemParams(a=a, b=1.0, ell=ell)
    g = g_map(p, n, r)
    assert r_of_g(p, n, g) == pytest.approx(r, rel=1e-14)


def test_big_r_examples():
    assert big_r_of_g(0, 0.0, 4.0) == pytest.approx(0.0, abs=1e-15)
    assert big_r_of_g(0, 0.0, 2.0) == pytest.approx(0.25, rel=1e-15)
    assert big_r_of_g(1, 1.0, 1.0) == pytest.approx(0.75, rel=1e-15)


def test_wavefunction_shape():
    p = SystemParams(a=1, b=1)
    # nodeless ground state, maximum where g = 2; derivative-free argmax
    # of a flat extremum resolves to ~sqrt(eps) at best
    r_peak = _golden_argmax(lambda r: coulomb_wavefunction(p, 0, r), 0.05, 20.0)
    assert g_map(p, 0, r_peak) == pytest.approx(2.0, abs=5e-7)
    rs = [0.01 + i * 0.2 for i in range(100)]
    assert all(coulomb_wavefunction(p, 0, r) > 0.0 for r in rs)
    # first excited state: exactly one interior node, at g = alpha + 1 = 2
    signs = [coulomb_wavefunction(p, 1, r) > 0.0 for r in rs]
    flips = sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)
    assert flips == 1
    r_node = r_of_g(p, 1, 2.0)
    assert coulomb_wavefunction(p, 1, r_node * (1 - 1e-9)) > 0.0
    assert coulomb_wavefunction(p, 1, r_node * (1 + 1e-9)) < 0.0


def test_peak_radius_examples():
    assert coulomb_peak_radius(SystemParams(a=1, b=1)) == pytest.approx(2.0, rel=1e-15)
    assert coulomb_peak_radius(SystemParams(a=1, b=1, ell=1)) == pytest.approx(8.0, rel=1e-15)
    with pytest.raises(ValueError):
        coulomb_peak_radius(SystemParams(a=0, b=1))


@pytest.mark.parametrize("a,ell", [(1.0, 0), (0.7, 1), (2.0, 2)])
def test_peak_radius_matches_argmax(a, ell):
    p = SystemParams(a=a, b=1.0, ell=ell)
    expected = coulomb_peak_radius(p)
    found = _golden_argmax(lambda r: coulomb_wavefunction(p, 0, r),
                           0.05 * expected, 5.0 * expected)
    assert found == pytest.approx(expected, rel=1e-6)


def test_coulomb_state_invariants():
    p = SystemParams(a=1.2, b=1.0, ell=1)
    st_ = coulomb_state(p, 2)
    assert st_.energy == pytest.approx(-p.m * p.a ** 2 / (2 * (2 + 1 + 1) ** 2), rel=1e-15)
    assert st_.alpha == 2 * p.lam + 1
    assert st_.g_slope > 0


LAMBDA_CASES = [(3, 0), (4, 0), (3, 1), (3, 2)]  # lambda = 0, 1/2, 1, 2


@pytest.mark.parametrize("n_dim,ell", LAMBDA_CASES)
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_sector_identity_pointwise(n_dim, ell, n):
    # E_c - (-a/r + L(L+1)/(2 m r^2)) == g'^2/(2m) R(g) on a log grid
    p = SystemParams(a=1.3, b=1.0, m=0.5, n_dim=n_dim, ell=ell)
    lam = p.lam
    e_c = coulomb_energy(p, n)
    slope = 2.0 * p.m * p.a / (n + lam + 1.0)
    for i in range(200):
        r = 1e-3 * (50.0 / 1e-3) ** (i / 199.0)
        g = g_map(p, n, r)
        lhs = e_c - (-p.a / r + lam * (lam + 1.0) / (2.0 * p.m * r * r))
        rhs = slope * slope / (2.0 * p.m) * big_r_of_g(n, lam, g)
        scale = max(abs(lhs), abs(rhs), abs(e_c))
        assert abs(lhs - rhs) <= 1e-12 * scale


@pytest.mark.parametrize("n_dim,ell", LAMBDA_CASES)
def test_superpotential_riccati_identity(n_dim, ell):
    # W^2 - W'/sqrt(2m) reconstructs the Coulomb sector potential minus E
    p = SystemParams(a=0.9, b=1.0, m=0.5, n_dim=n_dim, ell=ell)
    lam = p.lam
    e_c = coulomb_energy(p, 0)
    slope = 2.0 * p.m * p.a / (lam + 1.0)
    sq2m = math.sqrt(2.0 * p.m)
    for i in range(60):
        r = 0.05 * (40.0 / 0.05) ** (i / 59.0)
        g = slope * r
        w = (slope / sq2m) * (0.5 - (lam + 1.0) / g)
        w_prime = (slope / sq2m) * (lam + 1.0) * slope / (g * g)
        lhs = w * w - w_prime / sq2m
        rhs = -p.a / r + lam * (lam + 1.0) / (2.0 * p.m * r * r) - e_c
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


@pytest.mark.parametrize("n_dim,ell,n", [(3, 0, 0), (3, 1, 0), (4, 0, 0), (3, 0, 1)])
def test_wavefunction_satisfies_radial_equation(n_dim, ell, n):
    # u''/u == 2m(V_eff - E) with V = -a/r, via central differences
    p = SystemParams(a=1.0, b=1.0, m=0.5, n_dim=n_dim, ell=ell)
    lam = p.lam
    e_c = coulomb_energy(p, n)
    h = 1e-4
    for i in range(40):
        r = 0.4 + i * 0.25
        u = coulomb_wavefunction(p, n, r)
        if abs(u) < 1e-6:
            continue
        upp = (coulomb_wavefunction(p, n, r - h) - 2.0 * u
               + coulomb_wavefunction(p, n, r + h)) / (h * h)
        lhs = upp / u
        rhs = 2.0 * p.m * (-p.a / r + lam * (lam + 1.0) / (2.0 * p.m * r * r) - e_c)
        assert abs(lhs - rhs) <= 1e-6 * max(1.0, abs(rhs))
