"""Independent re-derivations of the sigmoid law, used as cross-checks.

Three routes to the same probability, none of which shares code with
`laws.prob_sigmoid`:

* `trapezium_ratio` - exact plane geometry.  For h at or below the
  crossover, the event "high-order error <= low-order error" is the part of
  the rectangle [0, a] x [0, b] (a = high bound, b = low bound, a <= b)
  lying on or above the diagonal, a trapezium of area a*(b - a) + a**2/2.
* `numeric_area_oracle` - deterministic midpoint-rule integration of the
  indicator over the same rectangle; works on both sides of the crossover.
* `mc_estimate` - direct Monte Carlo sampling of the two uniform error
  variables on a counter-based stream, reproducible under any trial split.

`conditional_identity_check` verifies the conditional-probability identity

    P{high wins} = P{low in band} / P{low in band | high wins}

("high wins" = high-order error <= low-order error; "low in band" = the
low-order error falls between the two bounds) from three independent
sample batches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, ParameterError
from .laws import ElementPair, _checked_h
from .rng import derive_key, uniform_at, uniforms

__all__ = [
    "UniformErrorSample",
    "McEstimate",
    "ConditionalIdentityReport",
    "draw_sample",
    "draw_error_samples",
    "trapezium_ratio",
    "mc_estimate",
    "conditional_identity_check",
    "numeric_area_oracle",
]

# sub-stream tags keeping the low/high draws and the three identity batches apart
_STREAM_LOW = 0
_STREAM_HIGH = 1
_STREAM_WIN = 2
_STREAM_BAND = 3
_STREAM_CONDITIONAL = 4


@dataclass(frozen=True)
class UniformErrorSample:
    """One joint draw of the two modeled errors for a fixed (pair, h)."""

    x_low: float
    x_high: float

    def __post_init__(self):
        if self.x_low < 0.0 or self.x_high < 0.0:
            raise ParameterError("error samples must be nonnegative")


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo event frequency with its binomial standard error."""

    p_hat: float
    n_trials: int
    seed: int
    std_error: float = field(init=False)

    def __post_init__(self):
        if self.n_trials < 1:
            raise ParameterError("n_trials must be >= 1")
        if not 0.0 <= self.p_hat <= 1.0:
            raise ParameterError("p_hat must lie in [0, 1]")
        object.__setattr__(
            self,
            "std_error",
            float(np.sqrt(self.p_hat * (1.0 - self.p_hat) / self.n_trials)),
        )


@dataclass(frozen=True)
class ConditionalIdentityReport:
    """Empirical check of P{win} = P{band} / P{band | win}.

    `identity_residual` is |prob_high_wins - prob_low_in_band / prob_band_given_win|,
    each probability estimated on its own independent batch.
    """

    prob_high_wins: float
    prob_low_in_band: float
    prob_band_given_win: float
    identity_residual: float


def _intervals(pair: ElementPair, h: float) -> tuple[float, float]:
    """Upper endpoints (low family, high family) of the two error intervals."""
    h = _checked_h(h)
    return pair.low.bound(h), pair.high.bound(h)


def draw_sample(pair: ElementPair, h: float, seed: int, index: int) -> UniformErrorSample:
    """Joint sample number `index` of the stream defined by `seed`.

    A pure function of (seed, index): inspecting one trial never requires
    generating its predecessors.  Consistent with `draw_error_samples`.
    """
    top_low, top_high = _intervals(pair, h)
    return UniformErrorSample(
        x_low=uniform_at(derive_key(seed, _STREAM_LOW), index) * top_low,
        x_high=uniform_at(derive_key(seed, _STREAM_HIGH), index) * top_high,
    )


def draw_error_samples(
    pair: ElementPair, h: float, n_trials: int, seed: int, offset: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized draws (x_low, x_high) for trials offset..offset+n_trials-1."""
    if n_trials < 1:
        raise ParameterError("n_trials must be >= 1")
    top_low, top_high = _intervals(pair, h)
    x_low = uniforms(derive_key(seed, _STREAM_LOW), n_trials, offset) * top_low
    x_high = uniforms(derive_key(seed, _STREAM_HIGH), n_trials, offset) * top_high
    return x_low, x_high


def trapezium_ratio(pair: ElementPair, h: float) -> float:
    """Winning-region area over rectangle area, valid for h <= crossover.

    Surfaces are computed literally: trapezium a*(b - a) + a**2/2 against
    rectangle a*b, with a the high-order bound and b the low-order bound.
    Above the crossover the roles of the two families swap; callers must
    use the complementary geometry there, so such h are rejected.
    """
    h = _checked_h(h)
    if h > pair.h_star:
        raise ParameterError(
            f"trapezium geometry requires h <= h_star ({pair.h_star!r}), got {h!r};"
            " swap the two families for the other branch"
        )
    b, a = _intervals(pair, h)
    rectangle = a * b
    if rectangle == 0.0:
        raise ParameterError("bound intervals underflowed to zero; h too extreme")
    trapezium = a * (b - a) + 0.5 * a * a
    return trapezium / rectangle


def mc_estimate(
    pair: ElementPair,
    h: float,
    n_trials: int,
    seed: int,
    chunk_size: int | None = None,
) -> McEstimate:
    """Monte Carlo frequency of "high-order error <= low-order error".

    `chunk_size` only bounds memory: the counter-based stream makes any
    chunking (or a parallel split along trial indices) return bit-identical
    results.  Ties count as a win for the high-order family, matching the
    non-strict event definition.
    """
    if n_trials < 1:
        raise ParameterError("n_trials must be >= 1")
    if chunk_size is not None and chunk_size < 1:
        raise ParameterError("chunk_size must be >= 1 when given")
    step = n_trials if chunk_size is None else chunk_size
    hits = 0
    done = 0
    while done < n_trials:
        count = min(step, n_trials - done)
        x_low, x_high = draw_error_samples(pair, h, count, seed, offset=done)
        hits += int(np.count_nonzero(x_high <= x_low))
        done += count
    return McEstimate(p_hat=hits / n_trials, n_trials=n_trials, seed=seed)


def conditional_identity_check(
    pair: ElementPair, h: float, n_trials: int, seed: int
) -> ConditionalIdentityReport:
    """Estimate both sides of P{win} = P{band}/P{band|win}; report the residual.

    Each probability comes from its own independent batch of `n_trials`
    draws.  (On a single shared batch the identity holds exactly by
    counting, because every in-band sample is also a winning sample;
    independent batches make the residual a real n**-1/2 statistical
    quantity.)  Stated for h below the crossover, where the band
    [high bound, low bound] is nonempty.
    """
    h = _checked_h(h)
    if h >= pair.h_star:
        raise ParameterError(
            f"the identity is stated for h < h_star ({pair.h_star!r}), got {h!r}"
        )
    if n_trials < 1:
        raise ParameterError("n_trials must be >= 1")
    top_low, top_high = _intervals(pair, h)

    def batch(tag: int) -> tuple[np.ndarray, np.ndarray]:
        key = derive_key(seed, tag)
        x_low = uniforms(derive_key(key, _STREAM_LOW), n_trials) * top_low
        x_high = uniforms(derive_key(key, _STREAM_HIGH), n_trials) * top_high
        return x_low, x_high

    x_low, x_high = batch(_STREAM_WIN)
    n_wins_direct = int(np.count_nonzero(x_high <= x_low))
    if n_wins_direct == 0:
        raise InsufficientDataError(
            "the winning event never occurred; increase n_trials to estimate it"
        )
    prob_win = n_wins_direct / n_trials

    x_low, _ = batch(_STREAM_BAND)
    in_band = (x_low >= top_high) & (x_low <= top_low)
    prob_band = np.count_nonzero(in_band) / n_trials

    x_low, x_high = batch(_STREAM_CONDITIONAL)
    wins = x_high <= x_low
    n_wins = int(np.count_nonzero(wins))
    if n_wins == 0:
        raise InsufficientDataError(
            "the winning event never occurred; increase n_trials to condition on it"
        )
    in_band = (x_low >= top_high) & (x_low <= top_low)
    prob_band_given_win = np.count_nonzero(in_band & wins) / n_wins
    if prob_band_given_win == 0.0:
        raise InsufficientDataError(
            "the conditional band event never occurred; increase n_trials"
        )

    return ConditionalIdentityReport(
        prob_high_wins=float(prob_win),
        prob_low_in_band=float(prob_band),
        prob_band_given_win=float(prob_band_given_win),
        identity_residual=float(abs(prob_win - prob_band / prob_band_given_win)),
    )


def numeric_area_oracle(pair: ElementPair, h: float, grid_n: int) -> float:
    """Midpoint-rule fraction of the rectangle where the high family wins.

    Counts cell centers of a grid_n x grid_n grid on [0, a] x [0, b]
    satisfying x_high <= x_low; deterministic, independent of both the
    closed form and the Monte Carlo path, and valid on both branches.
    The abscissa count per column is a sorted-array rank, which reproduces
    the midpoint-rule sum exactly in O(n log n).
    """
    h = _checked_h(h)
    if grid_n < 2:
        raise ParameterError(f"grid_n must be >= 2, got {grid_n}")
    top_low, top_high = _intervals(pair, h)
    centers = (np.arange(grid_n) + 0.5) / grid_n
    x_high = centers * top_high
    x_low = centers * top_low
    wins = np.searchsorted(x_high, x_low, side="right").sum()
    return float(wins) / (grid_n * grid_n)
