"""Classical continuous-time random walk on the two-link hypercube.

The walker lives on ``{1,2,3}**d``, starts at the all-ones corner, holds at
each vertex for an exponential time of unit mean, then jumps to a uniformly
random neighbor.  Because holding times have unit mean, the mean hitting time
of the opposite corner equals the mean jump count of the embedded jump chain.
Monte Carlo estimates, the jump-chain fixed-point analysis, the closed-form
mean, and exact first-passage solves live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .exceptions import DomainError, InvalidSizeError

__all__ = [
    "WalkEstimate",
    "TwoStepWeights",
    "ctrw_hitting_mc",
    "jump_chain_stationary",
    "two_step_transition_weights",
    "two_step_fixed_point_residual",
    "analytic_mean_hitting",
    "exact_mean_hitting",
    "full_jump_matrix",
    "full_first_passage_mean",
    "full_stationary_vector",
]


@dataclass(frozen=True)
class WalkEstimate:
    """Monte Carlo hitting-time statistics.

    ``mean`` and ``stderr`` are in time units (unit-rate holding);
    ``analytic`` carries the closed-form value ``2d - 2 + (4/3) 3^d`` for
    comparison.  Note the closed form rests on treating the two-step return
    probability as already stationary, so it undershoots the exact
    first-passage mean for ``d >= 2``; see :func:`exact_mean_hitting`.
    """

    d: int
    samples: int
    mean: float
    stderr: float
    analytic: float

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "samples": self.samples,
            "mean": self.mean,
            "stderr": self.stderr,
            "analytic": self.analytic,
        }


def ctrw_hitting_mc(d: int, samples: int, seed) -> WalkEstimate:
    """Monte Carlo mean hitting time of the far corner.

    Coordinates are exchangeable and the target is the unique all-threes
    state, so the simulation tracks only the coordinate-value counts
    ``(n1, n2, n3)``; jump proposals are uniform over the ``d + n2``
    neighbors.  Deterministic under a fixed seed.
    """
    if d < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {d}")
    if samples < 1:
        raise InvalidSizeError(f"samples must be >= 1, got {samples}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    n1 = np.full(samples, d, dtype=np.int64)
    n2 = np.zeros(samples, dtype=np.int64)
    times = np.zeros(samples)
    active = np.arange(samples)

    while active.size:
        a1 = n1[active]
        a2 = n2[active]
        deg = d + a2
        times[active] += rng.exponential(size=active.size)
        u = rng.random(active.size) * deg
        move_12 = u < a1
        move_21 = (u >= a1) & (u < a1 + a2)
        move_23 = (u >= a1 + a2) & (u < a1 + 2 * a2)
        # remaining probability mass is a 3 -> 2 move
        move_32 = ~(move_12 | move_21 | move_23)
        n1[active] += move_21.astype(np.int64) - move_12.astype(np.int64)
        n2[active] += (
            move_12.astype(np.int64)
            + move_32.astype(np.int64)
            - move_21.astype(np.int64)
            - move_23.astype(np.int64)
        )
        still = (n1[active] > 0) | (n2[active] > 0)
        active = active[still]

    mean = float(times.mean())
    stderr = float(times.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return WalkEstimate(
        d=d, samples=samples, mean=mean, stderr=stderr, analytic=analytic_mean_hitting(d)
    )


def jump_chain_stationary(d: int, k: int) -> float:
    """Fixed-point weight ``a_{2k} = (d + 2k) / (2 d 3^(d-1))``.

    ``a`` is the stationary row vector of the two-step jump chain restricted
    to the even-parity sublattice, indexed by the (even) number ``2k`` of
    middle-valued coordinates.  The weights normalize over the
    ``2^(d-2k) C(d, 2k)`` equivalent states per class.
    """
    if d < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {d}")
    if k < 0 or 2 * k > d:
        raise DomainError(f"need 0 <= 2k <= d, got k={k}, d={d}")
    return (d + 2 * k) / (2 * d * 3 ** (d - 1))


@dataclass(frozen=True)
class TwoStepWeights:
    """The five ways of reaching a fixed even-class state in two jumps.

    Each entry is ``(multiplicity, per-path probability)``: a return trip,
    arrivals from the classes below (``2k-2``) and above (``2k+2``), a trip
    around two sides of a square, and a traverse along one full chain.
    """

    d: int
    k: int
    return_trip: tuple
    from_below: tuple
    from_above: tuple
    square: tuple
    chain_traverse: tuple

    def incoming_same_class(self) -> float:
        """Total two-step probability weight multiplying ``a_{2k}`` itself."""
        return (
            self.return_trip[0] * self.return_trip[1]
            + self.square[0] * self.square[1]
            + self.chain_traverse[0] * self.chain_traverse[1]
        )


def _safe_ratio(num: float, den: float) -> float:
    # several case weights have zero multiplicity at the boundary classes,
    # where their denominators also vanish; treat those as exact zeros
    return 0.0 if num == 0.0 else num / den


def two_step_transition_weights(d: int, k: int) -> TwoStepWeights:
    """Multiplicities and probabilities of the five two-jump arrival cases."""
    if d < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {d}")
    if k < 0 or 2 * k > d:
        raise DomainError(f"need 0 <= 2k <= d, got k={k}, d={d}")
    m = d + 2 * k
    ret = (1.0 / m) * (
        _safe_ratio(d - 2 * k, m + 1) + _safe_ratio(4 * k, m - 1)
    )
    below_count = 4 * comb(2 * k, 2)
    below_p = 2.0 / ((m - 2) * (m - 1)) if below_count else 0.0
    above_count = comb(d - 2 * k, 2)
    above_p = 2.0 / ((m + 2) * (m + 1)) if above_count else 0.0
    square_count = 4 * k * (d - 2 * k)
    square_p = (1.0 / m) * (1.0 / (m + 1) + 1.0 / (m - 1)) if square_count else 0.0
    chain_count = d - 2 * k
    chain_p = 1.0 / (m * (m + 1)) if chain_count else 0.0
    return TwoStepWeights(
        d=d,
        k=k,
        return_trip=(1, ret),
        from_below=(below_count, below_p),
        from_above=(above_count, above_p),
        square=(square_count, square_p),
        chain_traverse=(chain_count, chain_p),
    )


def two_step_fixed_point_residual(d: int) -> float:
    """Residual of the class-level fixed-point equation assembled from the five cases.

    For every even class the incoming weights applied to the stationary
    values must reproduce ``a_{2k}``; returns the maximum absolute violation.
    """
    worst = 0.0
    for k in range(d // 2 + 1):
        w = two_step_transition_weights(d, k)
        total = w.incoming_same_class() * jump_chain_stationary(d, k)
        if k >= 1:
            total += w.from_below[0] * w.from_below[1] * jump_chain_stationary(d, k - 1)
        if 2 * (k + 1) <= d:
            total += w.from_above[0] * w.from_above[1] * jump_chain_stationary(d, k + 1)
        worst = max(worst, abs(total - jump_chain_stationary(d, k)))
    return worst


def analytic_mean_hitting(d: int) -> float:
    """Closed-form mean hitting time ``2d - 2 + 2/a_0 = 2d - 2 + 4 * 3^(d-1)``.

    Derived under the approximation that the two-step arrival probability at
    the target sits at its stationary value from the first admissible step;
    exact for ``d = 1`` and an underestimate for larger ``d``.
    """
    if d < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {d}")
    return float(2 * d - 2 + 4 * 3 ** (d - 1))


def _lumped_jump_matrix(d: int):
    """Jump chain lumped over coordinate-value counts ``(n1, n2)``."""
    states = [(i, j) for i in range(d + 1) for j in range(d + 1 - i)]
    index = {s: i for i, s in enumerate(states)}
    p = np.zeros((len(states), len(states)))
    for (i1, i2), row in ((s, index[s]) for s in states):
        i3 = d - i1 - i2
        deg = d + i2
        if i1 == 0 and i2 == 0:
            continue  # absorbing target handled by the solver
        if i1:
            p[row, index[(i1 - 1, i2 + 1)]] += i1 / deg
        if i2:
            p[row, index[(i1 + 1, i2 - 1)]] += i2 / deg
            p[row, index[(i1, i2 - 1)]] += i2 / deg
        if i3:
            p[row, index[(i1, i2 + 1)]] += i3 / deg
    return states, index, p


def exact_mean_hitting(d: int) -> float:
    """Exact mean hitting time by a first-passage linear solve.

    Uses the lumped chain over coordinate-value counts, which is exact for
    the corner-to-corner hitting problem and stays small for any ``d``.
    """
    if d < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {d}")
    states, index, p = _lumped_jump_matrix(d)
    n = len(states)
    target = index[(0, 0)]
    m = np.eye(n) - p
    m[target, :] = 0.0
    m[target, target] = 1.0
    rhs = np.ones(n)
    rhs[target] = 0.0
    mean_jumps = np.linalg.solve(m, rhs)
    return float(mean_jumps[index[(d, 0)]])


def _full_states(d: int) -> list:
    return list(itertools.product((1, 2, 3), repeat=d))


def full_jump_matrix(d: int) -> np.ndarray:
    """Dense ``3^d x 3^d`` jump-chain transition matrix (brute force)."""
    if d < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {d}")
    if d > 8:
        raise DomainError(f"full state space is impractical beyond d=8, got {d}")
    states = _full_states(d)
    index = {s: i for i, s in enumerate(states)}
    n = len(states)
    p = np.zeros((n, n))
    for s in states:
        nbrs = []
        for i in range(d):
            for delta in (-1, 1):
                x = s[i] + delta
                if 1 <= x <= 3:
                    nbrs.append(s[:i] + (x,) + s[i + 1 :])
        for t in nbrs:
            p[index[s], index[t]] += 1.0 / len(nbrs)
    return p


def full_first_passage_mean(d: int) -> float:
    """Exact mean hitting time solved over the full ``3^d`` state space.

    Independent brute-force check of :func:`exact_mean_hitting`.
    """
    p = full_jump_matrix(d)
    n = p.shape[0]
    target = n - 1  # all-threes corner under lexicographic state order
    m = np.eye(n) - p
    m[target, :] = 0.0
    m[target, target] = 1.0
    rhs = np.ones(n)
    rhs[target] = 0.0
    return float(np.linalg.solve(m, rhs)[0])


def full_stationary_vector(d: int) -> np.ndarray:
    """Two-step fixed-point vector over the full state space.

    Carries ``a_{2k}`` on the even-parity states (even count of
    middle-valued coordinates) and zero elsewhere; a left fixed point of the
    squared jump matrix, normalized over its support.
    """
    states = _full_states(d)
    a = np.zeros(len(states))
    for i, s in enumerate(states):
        n2 = sum(1 for x in s if x == 2)
        if n2 % 2 == 0:
            a[i] = jump_chain_stationary(d, n2 // 2)
    return a
