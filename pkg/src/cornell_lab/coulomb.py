"""Exactly solvable Coulomb sector of the Cornell problem.

Closed forms for the bound energies and (unnormalized) radial
wavefunctions u_n(r) ~ e^{-g/2} g^{L+1} L_n^{2L+1}(g) with the linear map
g(r) = 2 m a r / (n + L + 1). Everything is evaluated in g-space where
possible; wavefunctions are deliberately unnormalized since every
downstream quantity, peak radii and log-derivatives and energy
corrections, is normalization free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import SystemParams, check_radius
from .specfun import laguerre


def _check_state(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"radial quantum number must be a non-negative integer, got {n}")
    return int(n)


def _check_coulomb(p: SystemParams) -> None:
    if p.a == 0.0:
        raise ValueError("Coulomb strength a = 0: the Coulomb sector degenerates "
                         "(no bound states, peak radius escapes to infinity)")


def coulomb_energy(p: SystemParams, n: int = 0) -> float:
    """E_n = -m a^2 / (2 (n + L + 1)^2); 0 at a = 0 (continuum threshold)."""
    _check_state(n)
    if p.a == 0.0:
        return 0.0
    nu = n + p.lam + 1.0
    return -p.m * p.a * p.a / (2.0 * nu * nu)


def g_map(p: SystemParams, n: int, r: float) -> float:
    """Dimensionless argument g = 2 m a r / (n + L + 1), strictly increasing in r."""
    _check_state(n)
    _check_coulomb(p)
    check_radius(r)
    return 2.0 * p.m * p.a * r / (n + p.lam + 1.0)


def r_of_g(p: SystemParams, n: int, g: float) -> float:
    """Inverse of g_map; exact up to one rounding each way."""
    _check_state(n)
    _check_coulomb(p)
    if not (g > 0.0):
        raise ValueError(f"g must be > 0, got {g}")
    return g * (n + p.lam + 1.0) / (2.0 * p.m * p.a)


def big_r_of_g(n: int, lam: float, g: float) -> float:
    """R(g) = (n + L + 1)/g - L(L+1)/g^2 - 1/4, the ODE coefficient of the sector."""
    _check_state(n)
    if not (g > 0.0):
        raise ValueError(f"g must be > 0, got {g}")
    return (n + lam + 1.0) / g - lam * (lam + 1.0) / (g * g) - 0.25


@dataclass(frozen=True)
class CoulombState:
    """One bound Coulomb level: energy, Laguerre order, and g-map slope."""

    n: int
    energy: float
    alpha: float
    g_slope: float


def coulomb_state(p: SystemParams, n: int = 0) -> CoulombState:
    _check_state(n)
    _check_coulomb(p)
    return CoulombState(
        n=int(n),
        energy=coulomb_energy(p, n),
        alpha=2.0 * p.lam + 1.0,
        g_slope=2.0 * p.m * p.a / (n + p.lam + 1.0),
    )


def coulomb_wavefunction(p: SystemParams, n: int, r: float) -> float:
    """Unnormalized reduced radial wavefunction e^{-g/2} g^{L+1} L_n^{2L+1}(g)."""
    g = g_map(p, n, r)
    lam = p.lam
    return math.exp(-0.5 * g) * g ** (lam + 1.0) * laguerre(int(n), 2.0 * lam + 1.0, g)


def coulomb_peak_radius(p: SystemParams) -> float:
    """Maximum of the ground-state Coulomb wavefunction, (L+1)^2/(m a).

    The asymptotic energy-correction profile vanishes identically at this
    radius, so every critical radius with a positive correction lies below it.
    """
    _check_coulomb(p)
    lam = p.lam
    return (lam + 1.0) * (lam + 1.0) / (p.m * p.a)
