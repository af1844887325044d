"""Solver failure types shared across modules.

Domain violations (bad parameters, out-of-range radii) raise plain
ValueError; everything below signals a numerical procedure that could
not complete, which the CLI maps to a distinct exit code.
"""


class SolverError(RuntimeError):
    """A numerical solve failed; inputs were structurally valid."""


class NoRootError(SolverError):
    """Target value lies outside the range of the profile on the bracket."""


class ConvergenceError(SolverError):
    """Iteration budget exhausted before reaching tolerance."""


class GridTooCoarse(SolverError):
    """Richardson levels disagree beyond the accepted threshold."""


class DomainTooSmall(SolverError):
    """Wavefunction tail is not negligible at the grid boundary."""


class BracketInvalid(SolverError):
    """Energy bracket does not straddle exactly one eigenvalue."""
