"""Airy moderating function and the critical-radius machinery.

At large radius the linear term owns the wavefunction and the
(unnormalized) solution is f(r) = Ai(c r) with c = (2 m b)^{1/3}. The full
asymptotic ground state behaves like r^{L+1} f(r); its maximum r0 is the
reference radius of the whole analysis. The r-dependent energy-correction
profile

    dE(r) = (a/(L+1) - (L+1)/(m r)) * f'(r)/f(r)

vanishes identically at the Coulomb peak radius (L+1)^2/(m a), is positive
below it, and equating it to the true correction E_exact - E_coulomb
defines the critical radius r_dE. The same profile follows from the
superpotential split W = W_coulomb + dW with dW = -f'/(sqrt(2m) f); both
routes are implemented and must agree to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, NoRootError
from .params import SystemParams, check_radius
from .specfun import airy, airy_log_deriv
from . import coulomb

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class RootBracket:
    """Interval plus tolerance bundle handed to the bracketed root solves."""

    lo: float
    hi: float
    tol_abs: float = 1e-13
    max_iter: int = 128

    def __post_init__(self):
        if not (0.0 < self.lo < self.hi):
            raise ValueError(f"need 0 < lo < hi, got ({self.lo}, {self.hi})")
        if not (self.tol_abs > 0.0):
            raise ValueError("tol_abs must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass(frozen=True)
class AsymptoticModel:
    """Large-radius model data: Airy scale c = (2 m b)^{1/3} plus carried params."""

    scale: float
    lam: float
    a: float
    m: float

    def __post_init__(self):
        if not (self.scale > 0.0):
            raise ValueError("scale must be > 0")
        if not (self.m > 0.0):
            raise ValueError("mass must be > 0")

    @classmethod
    def from_params(cls, p: SystemParams) -> "AsymptoticModel":
        return cls(scale=(2.0 * p.m * p.b) ** (1.0 / 3.0), lam=p.lam, a=p.a, m=p.m)

    @property
    def b(self) -> float:
        return self.scale ** 3 / (2.0 * self.m)


@dataclass(frozen=True)
class CriticalRadius:
    """A solved critical radius plus the root-multiplicity diagnosis."""

    r: float
    multiple_roots: bool
    n_crossings: int


def brent(f, lo: float, hi: float, tol_abs: float = 1e-13, max_iter: int = 128) -> float:
    """Root of f on [lo, hi] by Brent's bisection/secant/inverse-quadratic hybrid.

    f(lo) and f(hi) must have opposite signs. Terminates when the bracket
    shrinks below 2*eps*|x| + tol_abs.
    """
    a, b = lo, hi
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"root not bracketed on [{lo}, {hi}]: f gives ({fa}, {fb})")
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * _EPS * abs(b) + tol_abs
        mid = 0.5 * (c - b)
        if abs(mid) <= tol or fb == 0.0:
            return b
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = mid
        else:
            s = fb / fa
            if a == c:
                pp = 2.0 * mid * s
                qq = 1.0 - s
            else:
                qq = fa / fc
                rr = fb / fc
                pp = s * (2.0 * mid * qq * (qq - rr) - (b - a) * (rr - 1.0))
                qq = (qq - 1.0) * (rr - 1.0) * (s - 1.0)
            if pp > 0.0:
                qq = -qq
            else:
                pp = -pp
            s, e = e, d
            if 2.0 * pp < 3.0 * mid * qq - abs(tol * qq) and pp < abs(0.5 * s * qq):
                d = pp / qq
            else:
                d = e = mid
        a, fa = b, fb
        if abs(d) > tol:
            b += d
        elif mid > 0.0:
            b += tol
        else:
            b -= tol
        fb = f(b)
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
    raise ConvergenceError(f"root not localized after {max_iter} iterations")


def f_value(model: AsymptoticModel, r: float) -> float:
    """Moderating function f(r) = Ai(c r)."""
    check_radius(r)
    return airy(model.scale * r).ai


def f_log_deriv(model: AsymptoticModel, r: float) -> float:
    """f'(r)/f(r) = c * Ai'(cr)/Ai(cr); strictly negative for r > 0 (GeV)."""
    check_radius(r)
    return model.scale * airy_log_deriv(model.scale * r)


def airy_ode_residual(model: AsymptoticModel, r: float) -> float:
    """f''/(2 m f) - b r evaluated through the ODE itself.

    With f'' = c^2 (cr) f this collapses to r*(c^3/(2m) - b), zero up to
    the rounding of the cube root; kept as an explicit identity check.
    """
    check_radius(r)
    c = model.scale
    return r * (c * c * c / (2.0 * model.m) - model.b)


def airy_ode_residual_fd(model: AsymptoticModel, r: float, step: float | None = None) -> float:
    """Finite-difference variant of the ODE residual, for validation.

    Five-point fourth-order second derivative with a scale-free default
    step h = 4e-3/c: the wide stencil keeps the kernel's ~1e-13 rounding
    from being amplified by 1/h^2, leaving a residual well under 1e-7 of
    b*r everywhere on the primary domain.
    """
    check_radius(r)
    h = step if step is not None else 4e-3 / model.scale
    if r - 2.0 * h <= 0.0:
        h = 0.25 * r
    f0 = f_value(model, r)
    fpp = (-f_value(model, r - 2.0 * h) + 16.0 * f_value(model, r - h)
           - 30.0 * f0 + 16.0 * f_value(model, r + h)
           - f_value(model, r + 2.0 * h)) / (12.0 * h * h)
    return fpp / (2.0 * model.m * f0) - model.b * r


def _expand_down(f, hi, floor=1e-14):
    """Geometric march toward 0 until f > 0; f must diverge to +inf there."""
    lo = hi
    for _ in range(200):
        lo *= 0.5
        if lo < floor:
            break
        if f(lo) > 0.0:
            return lo
    raise NoRootError("no sign change found marching toward the origin")


def asymptotic_peak_radius(model: AsymptoticModel, bracket: RootBracket | None = None) -> float:
    """Maximum r0 of the asymptotic ground state r^{L+1} f(r).

    Unique root of (L+1)/r + f'/f = 0: the first term falls from +inf to 0
    while -f'/f rises monotonically from 0.729*c. Independent of the
    Coulomb strength by construction.
    """
    lamp1 = model.lam + 1.0
    c = model.scale

    def h(r):
        return lamp1 / r + c * airy_log_deriv(c * r)

    if bracket is None:
        hi = 2.0 * (lamp1 + 0.3) / c
        for _ in range(60):
            if h(hi) < 0.0:
                break
            hi *= 2.0
        else:
            raise ConvergenceError("peak bracket expansion failed")
        lo = _expand_down(h, hi)
        bracket = RootBracket(lo, hi, tol_abs=1e-13, max_iter=200)
    return brent(h, bracket.lo, bracket.hi, bracket.tol_abs, bracket.max_iter)


def _check_pair(p: SystemParams, model: AsymptoticModel) -> None:
    if (p.lam != model.lam or p.a != model.a or p.m != model.m
            or abs(model.scale ** 3 - 2.0 * p.m * p.b) > 1e-12 * model.scale ** 3):
        raise ValueError("params and model describe different configurations")


def delta_e_profile(p: SystemParams, model: AsymptoticModel, r: float) -> float:
    """Ground-state energy-correction profile dE(r), in GeV.

    Zero exactly at the Coulomb peak radius (prefactor vanishes), positive
    below it whenever a > 0, positive everywhere for a = 0.
    """
    _check_pair(p, model)
    check_radius(r)
    lamp1 = model.lam + 1.0
    prefactor = model.a / lamp1 - lamp1 / (model.m * r)
    return prefactor * f_log_deriv(model, r)


def susy_delta_e(p: SystemParams, model: AsymptoticModel, r: float) -> float:
    """Same correction through the superpotential route, -2 W_coulomb dW.

    W_coulomb = (g'/sqrt(2m)) (1/2 - (L+1)/g) for the nodeless state and
    dW = -f'/(sqrt(2m) f); their cross term carries the whole correction.
    Written with g'/g = 1/r so the a -> 0 limit stays finite.
    """
    _check_pair(p, model)
    check_radius(r)
    gp = 2.0 * p.m * p.a / (p.lam + 1.0)
    sq2m = math.sqrt(2.0 * p.m)
    w_es = (0.5 * gp - (p.lam + 1.0) / r) / sq2m
    d_w = -f_log_deriv(model, r) / sq2m
    return -2.0 * w_es * d_w


def solve_r_delta_e(p: SystemParams, model: AsymptoticModel, e_exact: float,
                    bracket: RootBracket | None = None) -> CriticalRadius:
    """Critical radius where the correction profile meets e_exact - E_coulomb.

    For a > 0 the default bracket is (1e-6, coulomb peak radius), where the
    profile falls from +inf to 0; for a = 0 an expanding bracket around the
    asymptotic peak is used. If several crossings exist inside the bracket
    the one nearest the asymptotic peak is returned and flagged.

    Raises NoRootError when the target correction exceeds the profile's
    range on the bracket (inconsistent e_exact or mass convention).
    """
    _check_pair(p, model)
    e_es = coulomb.coulomb_energy(p, 0)
    target = e_exact - e_es
    if p.a > 0.0:
        r_peak = coulomb.coulomb_peak_radius(p)
        if target == 0.0:
            return CriticalRadius(r=r_peak, multiple_roots=False, n_crossings=1)
        if target < 0.0:
            raise ValueError(
                f"e_exact = {e_exact} lies below the Coulomb level {e_es}; "
                "the correction must be positive")
    elif not (target > 0.0):
        raise ValueError(f"for a = 0 the energy must be positive, got {e_exact}")

    def h(r):
        return delta_e_profile(p, model, r) - target

    if bracket is None:
        if p.a > 0.0:
            hi = coulomb.coulomb_peak_radius(p) * (1.0 - 1e-12)
            lo = 1e-6
            if h(lo) < 0.0:
                raise NoRootError(
                    f"target correction {target} GeV above the profile range; "
                    "inconsistent exact energy or mass convention")
        else:
            r0 = asymptotic_peak_radius(model)
            hi = r0
            for _ in range(200):
                if h(hi) < 0.0:
                    break
                hi *= 2.0
            else:
                raise NoRootError("profile never falls below the target correction")
            lo = _expand_down(h, min(r0, hi))
        bracket = RootBracket(lo, hi)
    lo, hi = bracket.lo, bracket.hi

    # Scan for every crossing so silent multiplicity cannot slip through.
    npts = 256
    ratio = (hi / lo) ** (1.0 / (npts - 1))
    rs = [lo * ratio ** i for i in range(npts)]
    hs = [h(r) for r in rs]
    roots = []
    for i in range(npts - 1):
        if hs[i] == 0.0:
            roots.append(rs[i])
        elif (hs[i] > 0.0) != (hs[i + 1] > 0.0):
            roots.append(brent(h, rs[i], rs[i + 1], bracket.tol_abs, bracket.max_iter))
    if hs[-1] == 0.0:
        roots.append(rs[-1])
    if not roots:
        raise NoRootError(
            f"no crossing of the correction profile with {target} GeV in "
            f"[{lo}, {hi}]")
    r0_asym = asymptotic_peak_radius(model)
    best = min(roots, key=lambda r: abs(r - r0_asym))
    return CriticalRadius(r=best, multiple_roots=len(roots) > 1, n_crossings=len(roots))
