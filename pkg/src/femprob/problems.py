"""Manufactured 1D Poisson problems with homogeneous Dirichlet conditions.

Each problem packages an exact solution u on [0, 1] with u(0) = u(1) = 0,
its derivative, and the source f = -u'' that reproduces it, so that
discretization errors are computable exactly.  Library problems also
register closed-form Sobolev seminorms of u, used to document fitted
error constants.

Callables must accept numpy arrays (all library problems do).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial

from .errors import ParameterError, UnsupportedProblemError

__all__ = ["Problem1D", "get_problem", "available_problems", "seminorm_reference"]

_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class Problem1D:
    """An exact solution / source pair for -u'' = f, u(0) = u(1) = 0.

    `seminorm_fn`, when provided, maps an integer s >= 1 to the analytic
    H^s seminorm of u (the L2 norm of the s-th derivative).  Problems
    without it are still solvable; they just cannot document constants.
    """

    name: str
    exact_solution: Callable[[np.ndarray], np.ndarray]
    exact_derivative: Callable[[np.ndarray], np.ndarray]
    source: Callable[[np.ndarray], np.ndarray]
    seminorm_fn: Callable[[int], float] | None = None

    def __post_init__(self):
        for endpoint in (0.0, 1.0):
            value = float(self.exact_solution(np.asarray(endpoint)))
            if abs(value) > _BOUNDARY_TOL:
                raise ParameterError(
                    f"problem {self.name!r}: exact_solution({endpoint}) = {value!r}"
                    " violates the homogeneous Dirichlet condition"
                )


def seminorm_reference(problem: Problem1D, s: int) -> float:
    """Analytic H^s seminorm of the exact solution, for library problems."""
    if s < 1:
        raise ParameterError(f"seminorm order must be >= 1, got {s}")
    if problem.seminorm_fn is None:
        raise UnsupportedProblemError(
            f"problem {problem.name!r} has no registered closed-form seminorms"
        )
    return problem.seminorm_fn(s)


def _make_sine(frequency: int) -> Problem1D:
    """u = sin(q*pi*x): infinitely smooth, |u|_s = (q*pi)**s / sqrt(2)."""
    q_pi = frequency * math.pi

    def seminorm(s: int) -> float:
        # every derivative is +-(q*pi)**s times a sine or cosine of q*pi*x,
        # whose squared integral over [0, 1] is 1/2 for integer q
        return q_pi**s / math.sqrt(2.0)

    return Problem1D(
        name="sine" if frequency == 1 else f"sine{frequency}",
        exact_solution=lambda x: np.sin(q_pi * x),
        exact_derivative=lambda x: q_pi * np.cos(q_pi * x),
        source=lambda x: q_pi**2 * np.sin(q_pi * x),
        seminorm_fn=seminorm,
    )


def _make_poly(alpha: int) -> Problem1D:
    """u = x**alpha * (1 - x): a degree alpha+1 polynomial, alpha >= 1."""
    u = Polynomial([0.0, 1.0]) ** alpha * Polynomial([1.0, -1.0])
    du = u.deriv()
    f = -u.deriv(2)

    def seminorm(s: int) -> float:
        d = u.deriv(s) if s <= u.degree() else Polynomial([0.0])
        square_integral = (d * d).integ()
        return math.sqrt(square_integral(1.0) - square_integral(0.0))

    return Problem1D(
        name=f"poly{alpha + 1}",
        exact_solution=u,
        exact_derivative=du,
        source=f,
        seminorm_fn=seminorm,
    )


_FIXED = {p.name: p for p in [_make_sine(1), _make_poly(1), _make_poly(2), _make_poly(3)]}
_SINE_PATTERN = re.compile(r"^sine(\d+)$")


def available_problems() -> tuple[str, ...]:
    """Names accepted by `get_problem` (sineN is accepted for any N >= 1)."""
    return ("sine", "sine2", "sine3", "...", "poly2", "poly3", "poly4")


def get_problem(name: str) -> Problem1D:
    """Look up a library problem by name.

    `sine` and `sineN` give u = sin(N*pi*x); `poly2`..`poly4` give
    u = x**(a)*(1-x) for a = 1..3.
    """
    if name in _FIXED:
        return _FIXED[name]
    match = _SINE_PATTERN.match(name)
    if match:
        frequency = int(match.group(1))
        if frequency >= 1:
            return _make_sine(frequency)
    raise UnsupportedProblemError(
        f"unknown problem {name!r}; available: {', '.join(available_problems())}"
    )
