"""Independent eigenvalue engine for the full Cornell Hamiltonian.

Two deliberately different routes to the same spectrum:

  matrix    central-difference discretization of the reduced radial
            problem with Dirichlet ends; the k-th eigenvalue of the
            symmetric tridiagonal matrix is located by bisection on the
            Sturm inertia count and Richardson-extrapolated over a
            three-level grid ladder (h, h/2 pairs), so the returned
            energy carries an h^4 residual and a conservative error
            estimate from the two extrapolants.

  shooting  Numerov integration outward from the r^{L+1} series behavior
            at the origin and inward from an exponentially decaying tail
            start, bisecting on the log-derivative mismatch at the outer
            turning point (node counts validate the energy bracket).

The grid policy puts the boundary one decaying-tail length past the outer
turning point (ten Airy lengths, capped by the WKB distance at which the
tail has fallen below ~1e-10) and keeps the spacing at or below a
two-thousandth of the turning radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BracketInvalid, ConvergenceError, DomainTooSmall, GridTooCoarse
from .params import SystemParams, effective_potential

_TAIL_WKB_TARGET = 25.0   # integrated decay exponent the domain must allow
_TAIL_WKB_FLOOR = 20.0    # below this the boundary is declared too close


@dataclass(frozen=True)
class RadialGrid:
    """Uniform Dirichlet grid on (0, r_max] with `points` subintervals."""

    r_max: float
    points: int

    def __post_init__(self):
        if not (self.r_max > 0.0):
            raise ValueError("r_max must be > 0")
        if self.points < 500:
            raise ValueError(f"grids below 500 points are not trusted, got {self.points}")

    @property
    def spacing(self) -> float:
        return self.r_max / self.points


@dataclass(frozen=True)
class EigenResult:
    """One converged level: energy, node count, grid, error estimate, route."""

    energy: float
    node_count: int
    grid: RadialGrid
    est_error: float
    method: str


def _check_state(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"radial quantum number must be a non-negative integer, got {n}")
    return int(n)


def _veff_array(p: SystemParams, r: np.ndarray) -> np.ndarray:
    lam = p.lam
    return -p.a / r + lam * (lam + 1.0) / (2.0 * p.m * r * r) + p.b * r


def _veff_slope(p, r):
    lam = p.lam
    return p.a / (r * r) - lam * (lam + 1.0) / (p.m * r ** 3) + p.b


def outer_turning_radius(p: SystemParams, energy: float) -> float:
    """Outermost radius where the effective potential crosses the energy.

    Bisects on the predicate "V > E on the rising branch", which is false
    below the outer crossing and true beyond it; the linear term guarantees
    such a radius exists for any energy.
    """
    hi = 1.0
    for _ in range(400):
        if effective_potential(p, hi) > energy and _veff_slope(p, hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise ConvergenceError("no rising branch above the energy found")
    lo = hi
    for _ in range(400):
        lo *= 0.5
        if lo < 1e-12:
            return lo
        if not (effective_potential(p, lo) > energy and _veff_slope(p, lo) > 0.0):
            break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if effective_potential(p, mid) > energy and _veff_slope(p, mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-12 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def _sturm_count(diag, offsq, x):
    """Number of eigenvalues of the tridiagonal matrix strictly below x."""
    it = iter(diag)
    q = next(it) - x
    count = 1 if q < 0.0 else 0
    for d in it:
        if q == 0.0:
            q = -1e-300
        q = d - x - offsq / q
        if q < 0.0:
            count += 1
    return count


def _bisect_sturm(diag, offsq, k, lo, hi, tol):
    """k-th smallest eigenvalue (0-based) by Sturm bisection on [lo, hi]."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _sturm_count(diag, offsq, mid) >= k + 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _grid_level(p, r_max, points, k, e_center=None, width=None):
    """Solve one discretization level, expanding the bracket if it misses."""
    h = r_max / points
    r = np.arange(1, points) * h
    diag = (_veff_array(p, r) + 1.0 / (p.m * h * h)).tolist()
    off = -1.0 / (2.0 * p.m * h * h)
    offsq = off * off
    if e_center is None:
        lo = min(diag) + 2.0 * off
        hi = max(effective_potential(p, r_max), 0.0) + 1.0
        for _ in range(60):
            if _sturm_count(diag, offsq, hi) >= k + 1:
                break
            hi = 2.0 * hi + 10.0
        else:
            raise ConvergenceError("upper energy bound expansion failed")
    else:
        w = width if width is not None else 0.02 * max(1.0, abs(e_center))
        lo, hi = e_center - w, e_center + w
        for _ in range(60):
            ok_lo = _sturm_count(diag, offsq, lo) <= k
            ok_hi = _sturm_count(diag, offsq, hi) >= k + 1
            if ok_lo and ok_hi:
                break
            if not ok_lo:
                lo -= 4.0 * (hi - lo)
            if not ok_hi:
                hi += 4.0 * (hi - lo)
        else:
            raise ConvergenceError("could not re-bracket the eigenvalue on a finer grid")
    tol = 1e-12 * max(1.0, abs(lo) + abs(hi))
    return _bisect_sturm(diag, offsq, k, lo, hi, tol)


def _tail_exponent(p, energy, r_from, r_to, steps=400):
    """Integrated WKB decay exponent between two radii."""
    if r_to <= r_from:
        return 0.0
    r = np.linspace(r_from, r_to, steps)
    kappa = np.sqrt(np.maximum(2.0 * p.m * (_veff_array(p, r) - energy), 0.0))
    trapz = getattr(np, "trapezoid", None) or np.trapz
    return float(trapz(kappa, r))


def _tail_padding(p, energy, r_tp):
    """Domain padding past the turning point: ten Airy lengths, WKB-capped."""
    c = (2.0 * p.m * p.b) ** (1.0 / 3.0)
    pad_airy = 10.0 / c
    pad = pad_airy
    # if the Airy padding is absurdly long (b -> 0 Coulomb limit), stop once
    # the integrated decay exponent alone guarantees a dead tail
    lo, hi = 0.0, pad_airy
    if _tail_exponent(p, energy, r_tp, r_tp + pad_airy) > 2.0 * _TAIL_WKB_TARGET:
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if _tail_exponent(p, energy, r_tp, r_tp + mid) >= _TAIL_WKB_TARGET:
                hi = mid
            else:
                lo = mid
            if hi - lo < 1e-3 * hi:
                break
        pad = hi
    return pad


def _energy_estimate(p, n):
    """Cheap level estimate used only to seed the grid search.

    Two variational-flavoured upper bounds: the Coulomb level plus the
    first-order linear shift b<r>, and the Airy scale with empirical
    level/centrifugal growth. The smaller of the applicable ones wins;
    the refinement loop in auto_grid absorbs the remaining slack.
    """
    lam = p.lam
    c = (2.0 * p.m * p.b) ** (1.0 / 3.0)
    e_linear = (c * c / (2.0 * p.m)) * (2.4 + 3.3 * n + 1.9 * lam)
    if p.a > 0.0:
        nu = n + lam + 1.0
        e_c = -p.m * p.a * p.a / (2.0 * nu * nu)
        shift = p.b * (3.0 * nu * nu - lam * (lam + 1.0)) / (2.0 * p.m * p.a)
        return min(e_c + shift, e_linear)
    return e_linear


def auto_grid(p: SystemParams, n: int = 0) -> RadialGrid:
    """Grid sized from a cheap pre-solve: spacing <= r_turn/2000, dead tail."""
    _check_state(n)
    e_est = _energy_estimate(p, n)
    r_tp = outer_turning_radius(p, e_est)
    r_max = r_tp + _tail_padding(p, e_est, r_tp)
    for _ in range(5):
        e_coarse = _grid_level(p, r_max, 640, n)
        r_tp = outer_turning_radius(p, e_coarse)
        need = r_tp + _tail_padding(p, e_coarse, r_tp)
        if need <= r_max <= 1.6 * need:
            break
        r_max = 1.15 * need
    points = max(500, int(math.ceil(2000.0 * r_max / r_tp)))
    return RadialGrid(r_max=r_max, points=points)


def solve_eigenvalue_matrix(p: SystemParams, n: int = 0,
                            grid: RadialGrid | None = None, *,
                            tol: float = 1e-6) -> EigenResult:
    """n-th level of the Cornell Hamiltonian by tridiagonal Sturm bisection.

    Solves on points/2, points, and 2*points, forms the two h^2 Richardson
    extrapolants, returns the finer one with est_error = their difference.

    Raises GridTooCoarse when the extrapolants disagree beyond 10*tol and
    DomainTooSmall when the boundary sits closer than ~20 WKB decay lengths.
    """
    _check_state(n)
    if grid is None:
        grid = auto_grid(p, n)
    n0 = grid.points
    e_half = _grid_level(p, grid.r_max, n0 // 2, n)
    e_base = _grid_level(p, grid.r_max, n0, n, e_center=e_half)
    width = max(8.0 * abs(e_base - e_half), 1e-9 * max(1.0, abs(e_base)))
    e_fine = _grid_level(p, grid.r_max, 2 * n0, n, e_center=e_base, width=width)
    rich1 = (4.0 * e_base - e_half) / 3.0
    rich2 = (4.0 * e_fine - e_base) / 3.0
    est = abs(rich2 - rich1) + 1e-11 * max(1.0, abs(rich2))
    if est > 10.0 * tol:
        raise GridTooCoarse(
            f"Richardson extrapolants disagree by {est:.3e} GeV (limit {10.0 * tol:.1e})")
    r_tp = outer_turning_radius(p, rich2)
    if _tail_exponent(p, rich2, r_tp, grid.r_max) < _TAIL_WKB_FLOOR:
        raise DomainTooSmall(
            f"boundary at {grid.r_max} leaves a live tail beyond the turning "
            f"point {r_tp:.3f}")
    return EigenResult(energy=rich2, node_count=n, grid=grid, est_error=est,
                       method="matrix")


@lru_cache(maxsize=512)
def cached_matrix_solve(p: SystemParams, n: int = 0, tol: float = 1e-6) -> EigenResult:
    """Memoized solve_eigenvalue_matrix with the automatic grid policy."""
    return solve_eigenvalue_matrix(p, n, tol=tol)


def _origin_series(p, energy, r):
    """First four Frobenius terms of u ~ r^{L+1}(1 + a1 r + a2 r^2 + a3 r^3)."""
    lam = p.lam
    tm = 2.0 * p.m
    a1 = -tm * p.a / (2.0 * lam + 2.0)
    a2 = (-tm * p.a * a1 - tm * energy) / (2.0 * (2.0 * lam + 3.0))
    a3 = (-tm * p.a * a2 - tm * energy * a1 + tm * p.b) / (3.0 * (2.0 * lam + 4.0))
    return r ** (lam + 1.0) * (1.0 + r * (a1 + r * (a2 + r * a3)))


def _numerov_t(p, energy, h, n_pts):
    """h^2 w/12 at every node (index 0 is the singular origin, never used)."""
    r = np.arange(1, n_pts + 1) * h
    w = 2.0 * p.m * (_veff_array(p, r) - energy)
    return [0.0] + ((h * h / 12.0) * w).tolist()


def _numerov_outward(p, energy, h, n_pts, stop, t=None):
    """Sweep from the origin series up to index `stop`.

    Returns (u[im-1], u[im], u[im+1]) with im = stop-1, and the count of
    interior sign changes seen along the way.
    """
    if t is None:
        t = _numerov_t(p, energy, h, n_pts)
    u_prev = _origin_series(p, energy, h)
    u_cur = _origin_series(p, energy, 2.0 * h)
    nodes = 1 if (u_prev > 0.0 > u_cur or u_prev < 0.0 < u_cur) else 0
    trail = [0.0, u_prev, u_cur]
    for i in range(2, stop):
        u_next = ((2.0 + 10.0 * t[i]) * u_cur
                  - (1.0 - t[i - 1]) * u_prev) / (1.0 - t[i + 1])
        if (u_next < 0.0 < u_cur) or (u_cur < 0.0 < u_next):
            nodes += 1
        u_prev, u_cur = u_cur, u_next
        if abs(u_cur) > 1e250:
            s = 1.0 / abs(u_cur)
            u_prev *= s
            u_cur *= s
            trail[0] *= s
            trail[1] *= s
            trail[2] *= s
        trail[0], trail[1], trail[2] = trail[1], u_prev, u_cur
    return (trail[0], trail[1], trail[2]), nodes


def _count_nodes_full(p, energy, h, n_pts, t=None):
    _, nodes = _numerov_outward(p, energy, h, n_pts, n_pts, t)
    return nodes


def _numerov_inward(p, energy, h, n_pts, stop, t=None):
    """Sweep from a decaying tail start down to index `stop`.

    Returns (u[stop], u[stop+1], u[stop+2]).
    """
    if t is None:
        t = _numerov_t(p, energy, h, n_pts)
    kap_n = math.sqrt(max(12.0 * t[n_pts] / (h * h), 0.0))
    kap_nm1 = math.sqrt(max(12.0 * t[n_pts - 1] / (h * h), 0.0))
    u_outer = 1e-250
    u_cur = u_outer * math.exp(0.5 * h * (kap_n + kap_nm1))
    trail = [u_cur, u_outer, 0.0]
    for i in range(n_pts - 1, stop, -1):
        u_inner = ((2.0 + 10.0 * t[i]) * u_cur
                   - (1.0 - t[i + 1]) * u_outer) / (1.0 - t[i - 1])
        u_outer, u_cur = u_cur, u_inner
        if abs(u_cur) > 1e250:
            s = 1.0 / abs(u_cur)
            u_outer *= s
            u_cur *= s
            trail[0] *= s
            trail[1] *= s
            trail[2] *= s
        trail[0], trail[1], trail[2] = u_cur, u_outer, trail[1]
    return (trail[0], trail[1], trail[2])


def _match_mismatch(p, energy, h, n_pts, im):
    t = _numerov_t(p, energy, h, n_pts)
    (o_m1, o_0, o_p1), _ = _numerov_outward(p, energy, h, n_pts, im + 1, t)
    i_m1, i_0, i_p1 = _numerov_inward(p, energy, h, n_pts, im - 1, t)
    so = max(abs(o_m1), abs(o_0), abs(o_p1), 1e-300)
    si = max(abs(i_m1), abs(i_0), abs(i_p1), 1e-300)
    a_m1, a_0, a_p1 = o_m1 / so, o_0 / so, o_p1 / so
    b_m1, b_0, b_p1 = i_m1 / si, i_0 / si, i_p1 / si
    # central-difference Wronskian; vanishes exactly at proportionality
    return (a_p1 - a_m1) * b_0 - (b_p1 - b_m1) * a_0


def _shooting_once(p, n, lo, hi, r_max, n_pts):
    h = r_max / n_pts
    nodes_lo = _count_nodes_full(p, lo, h, n_pts)
    nodes_hi = _count_nodes_full(p, hi, h, n_pts)
    if nodes_lo != n or nodes_hi != n + 1:
        raise BracketInvalid(
            f"bracket [{lo}, {hi}] spans node counts {nodes_lo}..{nodes_hi}, "
            f"need exactly {n}..{n + 1}")
    e_mid = 0.5 * (lo + hi)
    im = max(5, min(n_pts - 5, int(round(outer_turning_radius(p, e_mid) / h))))

    def mism(e):
        return _match_mismatch(p, e, h, n_pts, im)

    f_lo, f_hi = mism(lo), mism(hi)
    tol = 1e-12 * max(1.0, abs(lo), abs(hi))
    if (f_lo > 0.0) != (f_hi > 0.0):
        a, b, fa = lo, hi, f_lo
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            fm = mism(mid)
            if fm == 0.0:
                return mid
            if (fm > 0.0) == (fa > 0.0):
                a, fa = mid, fm
            else:
                b = mid
        return 0.5 * (a + b)
    # mismatch did not change sign (node slipping through the match point);
    # fall back to bisection on the node count, which is always monotone
    a, b = lo, hi
    while b - a > tol:
        mid = 0.5 * (a + b)
        if mid == a or mid == b:
            break
        if _count_nodes_full(p, mid, h, n_pts) >= n + 1:
            b = mid
        else:
            a = mid
    return 0.5 * (a + b)


def solve_eigenvalue_shooting(p: SystemParams, n: int = 0,
                              e_bracket: tuple[float, float] | None = None,
                              grid: RadialGrid | None = None) -> EigenResult:
    """n-th level by Numerov shooting with log-derivative matching.

    The bracket must straddle exactly that level (checked by node counts at
    both ends, BracketInvalid otherwise). With e_bracket=None a bracket is
    taken around a coarse matrix estimate. The result is cross-validated
    internally by a half-resolution solve, whose Richardson distance feeds
    est_error.
    """
    _check_state(n)
    if grid is None:
        grid = auto_grid(p, n)
    auto_bracket = e_bracket is None
    if auto_bracket:
        e0 = _grid_level(p, grid.r_max, max(640, grid.points // 8), n)
        w = 0.01 * max(1.0, abs(e0))
        e_bracket = (e0 - w, e0 + w)
    lo, hi = e_bracket
    if not (lo < hi):
        raise ValueError(f"empty energy bracket ({lo}, {hi})")
    r_tp = outer_turning_radius(p, 0.5 * (lo + hi))
    n_pts = max(1500, int(math.ceil(900.0 * grid.r_max / r_tp)))
    if auto_bracket:
        h = grid.r_max / n_pts
        for _ in range(6):
            mid = 0.5 * (lo + hi)
            w = hi - mid
            if (_count_nodes_full(p, lo, h, n_pts) == n
                    and _count_nodes_full(p, hi, h, n_pts) == n + 1):
                break
            lo, hi = mid - 4.0 * w, mid + 4.0 * w
    e_fine = _shooting_once(p, n, lo, hi, grid.r_max, n_pts)
    e_half = _shooting_once(p, n, lo, hi, grid.r_max, n_pts // 2)
    est = abs(e_fine - e_half) / 15.0 + 1e-11 * max(1.0, abs(e_fine))
    h = grid.r_max / n_pts
    nodes = _count_nodes_full(p, e_fine - 1e-9 * max(1.0, abs(e_fine)), h, n_pts)
    return EigenResult(energy=e_fine, node_count=nodes, grid=grid,
                       est_error=est, method="shooting")
