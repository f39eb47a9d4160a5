"""Randomized convergence studies, constant fitting, and superiority runs.

This is the experimental side of the package: it produces real H1 errors on
jittered meshes, recovers each family's lumped error constant by log-log
least squares, and measures how often the high-order family actually beats
the low-order one, trial by trial, as the mesh size varies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InsufficientDataError, ParameterError
from .fem import assemble_solve, h1_error
from .mesh import build_mesh
from .oracle import McEstimate
from .problems import Problem1D
from .rng import derive_key

__all__ = [
    "ConvergenceRecord",
    "FittedLaw",
    "SweepPoint",
    "convergence_study",
    "fit_constant",
    "empirical_superiority",
    "superiority_sweep",
    "records_to_csv",
    "estimate_half_crossing",
]

RECORD_CSV_HEADER = "order,n_elements,h_max,error_h1,error_h1_semi,seed"

# sub-stream tags for per-trial seed derivation
_STREAM_STUDY = 11
_STREAM_SUPERIORITY = 12

# below this level errors are dominated by rounding, not discretization
_NOISE_FLOOR = 1e-12


@dataclass(frozen=True)
class ConvergenceRecord:
    """One (mesh, solve) outcome: the raw material for fits and counts."""

    order: int
    n_elements: int
    h_max: float
    error_h1: float
    error_h1_semi: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.error_h1_semi <= self.error_h1:
            raise ParameterError(
                "error_h1 must dominate error_h1_semi and both must be >= 0"
            )


@dataclass(frozen=True)
class FittedLaw:
    """Least-squares power law error ~ constant * h**rate for one family."""

    order: int
    constant: float
    rate: float
    residual: float

    def rate_consistent(self, window: float = 0.5) -> bool:
        """Whether the fitted rate sits within `window` of the theory order."""
        return abs(self.rate - self.order) <= window


def convergence_study(
    problem: Problem1D,
    order: int,
    n_list: Sequence[int],
    jitter: float,
    trials_per_n: int,
    seed: int,
) -> list[ConvergenceRecord]:
    """Solve on `trials_per_n` jittered meshes for each element count.

    Per-trial seeds are derived from (seed, n, trial), so the record list
    is reproducible and independent of evaluation order.
    """
    if not n_list:
        raise ParameterError("n_list must be non-empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ParameterError("n_list must be strictly increasing")
    if trials_per_n < 1:
        raise ParameterError("trials_per_n must be >= 1")
    records = []
    for n in n_list:
        for trial in range(trials_per_n):
            trial_seed = derive_key(seed, _STREAM_STUDY, n, trial)
            mesh = build_mesh(n, jitter, trial_seed)
            solution = assemble_solve(mesh, order, problem)
            full, semi = h1_error(solution, problem)
            records.append(
                ConvergenceRecord(
                    order=order,
                    n_elements=n,
                    h_max=mesh.h_max,
                    error_h1=full,
                    error_h1_semi=semi,
                    seed=trial_seed,
                )
            )
    return records


def fit_constant(
    records: Iterable[ConvergenceRecord], order: int, fix_rate: bool = False
) -> FittedLaw:
    """Fit ln(error) = ln C + r * ln h over the records of one family.

    With `fix_rate` the exponent is pinned to the theoretical order and only
    the constant is estimated.  Refuses to fit when there are fewer than
    three distinct mesh sizes or when every error sits at the rounding floor
    (no dynamic range: the data carries no rate information).
    """
    subset = [r for r in records if r.order == order]
    h = np.array([r.h_max for r in subset])
    err = np.array([r.error_h1 for r in subset])
    if np.unique(h).size < 3:
        raise InsufficientDataError(
            f"need >= 3 distinct mesh sizes for order {order}, got {np.unique(h).size}"
        )
    if np.all(err <= _NOISE_FLOOR):
        raise InsufficientDataError(
            f"order {order}: errors are at machine-noise level"
            " (insufficient dynamic range for a power-law fit)"
        )
    if np.any(err <= 0.0):
        raise InsufficientDataError(
            f"order {order}: nonpositive errors cannot enter a log-log fit"
        )
    log_h = np.log(h)
    log_e = np.log(err)
    if fix_rate:
        rate = float(order)
        log_c = float(np.mean(log_e - rate * log_h))
    else:
        rate, log_c = np.polyfit(log_h, log_e, 1)
        rate, log_c = float(rate), float(log_c)
    misfit = log_e - (log_c + rate * log_h)
    return FittedLaw(
        order=order,
        constant=float(np.exp(log_c)),
        rate=rate,
        residual=float(np.sqrt(np.mean(misfit**2))),
    )


def _superiority_trial(
    problem: Problem1D,
    order_low: int,
    order_high: int,
    n_elements: int,
    jitter: float,
    seed: int,
    trial: int,
) -> tuple[ConvergenceRecord, ConvergenceRecord]:
    """One independent mesh pair, one record per family."""
    pair_records = []
    for role, order in enumerate((order_low, order_high)):
        trial_seed = derive_key(seed, _STREAM_SUPERIORITY, n_elements, trial, role)
        mesh = build_mesh(n_elements, jitter, trial_seed)
        solution = assemble_solve(mesh, order, problem)
        full, semi = h1_error(solution, problem)
        pair_records.append(
            ConvergenceRecord(
                order=order,
                n_elements=n_elements,
                h_max=mesh.h_max,
                error_h1=full,
                error_h1_semi=semi,
                seed=trial_seed,
            )
        )
    return pair_records[0], pair_records[1]


def _superiority_records(
    problem: Problem1D,
    order_low: int,
    order_high: int,
    n_elements: int,
    trials: int,
    jitter: float,
    seed: int,
) -> list[tuple[ConvergenceRecord, ConvergenceRecord]]:
    if order_low >= order_high:
        raise ParameterError(
            f"order_low must be < order_high, got {order_low} >= {order_high}"
        )
    if trials < 1:
        raise InsufficientDataError("trials must be >= 1")
    return [
        _superiority_trial(problem, order_low, order_high, n_elements, jitter, seed, t)
        for t in range(trials)
    ]


def empirical_superiority(
    problem: Problem1D,
    order_low: int,
    order_high: int,
    n_elements: int,
    trials: int,
    jitter: float,
    seed: int,
) -> McEstimate:
    """Frequency of "high-order error <= low-order error" over mesh pairs.

    Each trial draws one independent jittered mesh per family (fresh seeds
    for both), solves both problems, and compares full H1 errors.
    """
    pairs = _superiority_records(
        problem, order_low, order_high, n_elements, trials, jitter, seed
    )
    wins = sum(1 for lo, hi in pairs if hi.error_h1 <= lo.error_h1)
    return McEstimate(p_hat=wins / trials, n_trials=trials, seed=seed)


@dataclass(frozen=True)
class SweepPoint:
    """Superiority estimate at one element count, with the mean mesh size."""

    n_elements: int
    h_mean: float
    estimate: McEstimate


def superiority_sweep(
    problem: Problem1D,
    order_low: int,
    order_high: int,
    n_list: Sequence[int],
    trials: int,
    jitter: float,
    seed: int,
) -> tuple[list[SweepPoint], list[ConvergenceRecord]]:
    """Run the superiority experiment across an element-count sweep.

    Returns one point per n plus every underlying record (both families),
    so callers can fit constants from exactly the data that produced the
    frequencies.
    """
    if not n_list:
        raise ParameterError("n_list must be non-empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ParameterError("n_list must be strictly increasing")
    points = []
    all_records = []
    for n in n_list:
        pairs = _superiority_records(
            problem, order_low, order_high, n, trials, jitter, seed
        )
        wins = sum(1 for lo, hi in pairs if hi.error_h1 <= lo.error_h1)
        h_values = [r.h_max for pair in pairs for r in pair]
        points.append(
            SweepPoint(
                n_elements=n,
                h_mean=float(np.mean(h_values)),
                estimate=McEstimate(p_hat=wins / trials, n_trials=trials, seed=seed),
            )
        )
        for lo, hi in pairs:
            all_records.extend((lo, hi))
    return points, all_records


def estimate_half_crossing(
    h_values: Sequence[float], p_values: Sequence[float]
) -> float | None:
    """Mesh size where an empirical probability curve crosses 1/2.

    Scans consecutive grid points for sign changes of p - 1/2 and
    interpolates linearly in log h; with Monte Carlo noise several
    crossings can appear, so their geometric mean is returned.  None when
    the curve never crosses.
    """
    if len(h_values) != len(p_values):
        raise ParameterError("h_values and p_values must have equal length")
    order = np.argsort(h_values)
    h = np.asarray(h_values, dtype=np.float64)[order]
    p = np.asarray(p_values, dtype=np.float64)[order]
    crossings = []
    for i in range(len(h) - 1):
        d0, d1 = p[i] - 0.5, p[i + 1] - 0.5
        if d0 == 0.0:
            crossings.append(math.log(h[i]))
        elif d0 * d1 < 0.0:
            frac = d0 / (d0 - d1)
            crossings.append(math.log(h[i]) + frac * (math.log(h[i + 1]) - math.log(h[i])))
    if p[-1] == 0.5:
        crossings.append(math.log(h[-1]))
    if not crossings:
        return None
    return float(math.exp(np.mean(crossings)))


def records_to_csv(records: Iterable[ConvergenceRecord]) -> str:
    """Render records as CSV rows under the canonical header."""
    lines = [RECORD_CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.order},{r.n_elements},{r.h_max:.17g},"
            f"{r.error_h1:.17g},{r.error_h1_semi:.17g},{r.seed}"
        )
    return "\n".join(lines) + "\n"
