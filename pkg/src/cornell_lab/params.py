"""Physical parameters and the dimensional reduction to a 3-D radial problem.

Natural units throughout: energies in GeV, lengths in 1/GeV, hbar = 1.
A radial problem in N >= 3 spatial dimensions with orbital quantum number
l maps onto the familiar three-dimensional form with the effective angular
momentum L = (N + 2l - 3)/2, which is an exact half-integer and therefore
exactly representable as a binary float.
"""

from __future__ import annotations

from dataclasses import dataclass


def lambda_param(n_dim: int, ell: int) -> float:
    """Effective angular momentum (N + 2l - 3)/2 of the reduced radial problem."""
    if int(n_dim) != n_dim or int(ell) != ell:
        raise ValueError("n_dim and ell must be integers")
    if n_dim < 3:
        raise ValueError(f"dimension must be >= 3, got {n_dim}")
    if ell < 0:
        raise ValueError(f"orbital quantum number must be >= 0, got {ell}")
    return (n_dim + 2 * ell - 3) / 2


@dataclass(frozen=True)
class SystemParams:
    """Inputs of one Cornell-potential configuration V(r) = -a/r + b*r.

    a: Coulomb strength (>= 0), b: linear strength (> 0, GeV^2),
    m: mass parameter (> 0, GeV), n_dim: spatial dimension (>= 3),
    ell: orbital quantum number (>= 0).

    The default m = 0.5 puts the Hamiltonian in 2m = 1 convention, the one
    the built-in reference tables are quoted in.
    """

    a: float
    b: float
    m: float = 0.5
    n_dim: int = 3
    ell: int = 0

    def __post_init__(self):
        if not (self.a >= 0.0):
            raise ValueError(f"Coulomb strength a must be >= 0, got {self.a}")
        if not (self.b > 0.0):
            raise ValueError(f"linear strength b must be > 0, got {self.b}")
        if not (self.m > 0.0):
            raise ValueError(f"mass m must be > 0, got {self.m}")
        lambda_param(self.n_dim, self.ell)  # validates n_dim, ell

    @property
    def lam(self) -> float:
        """Effective angular momentum, recomputed so it can never drift."""
        return lambda_param(self.n_dim, self.ell)


def check_radius(r: float) -> float:
    """Radii are strictly positive; the origin is a coordinate singularity."""
    if not (r > 0.0):
        raise ValueError(f"radius must be > 0, got {r}")
    return r


def effective_potential(p: SystemParams, r: float) -> float:
    """-a/r + L(L+1)/(2 m r^2) + b*r at radius r (1/GeV), in GeV."""
    check_radius(r)
    lam = p.lam
    return -p.a / r + lam * (lam + 1.0) / (2.0 * p.m * r * r) + p.b * r
