"""
Winner decision rule.

Each sensor fires after a delay 1/|Z_i| (+ its clock offset U_i); the first
transmission carries the sign bit of the winner statistic M. The fusion
center decides H1 iff M >= threshold.

Conventions:
    - Ties on equal firing time: the lowest sensor index wins.
    - Censored sensors (Z = 0) never fire, whatever their offset.
    - A network with no firing sensor (empty or all censored) reports
      M = 0, winner_index None, firing_time inf, and applies the same rule.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..dists.laws import Hypothesis
from ..errors import InvalidInputError


@dataclass
class DetectionOutcome:
    """Result of one network decision."""
    decision: Hypothesis
    winner_index: Optional[int]     # 1-based, None when nothing fired
    winner_statistic: float         # M
    firing_time: float              # inf when all censored
    n_active: int
    all_censored: bool

    def to_dict(self) -> Dict:
        return {
            'decision': self.decision.label,
            'winner_index': self.winner_index,
            'winner_statistic': self.winner_statistic,
            'firing_time': self.firing_time,
            'n_active': self.n_active,
            'all_censored': self.all_censored,
        }


@dataclass
class BatchDecisions:
    """Decisions for a block of independent networks."""
    decide_h1: np.ndarray           # bool per network
    winner_statistic: np.ndarray    # M per network (0 when nothing fired)
    winner_index: np.ndarray        # 1-based, 0 when nothing fired
    all_censored: np.ndarray        # bool per network

    @property
    def trials(self) -> int:
        return len(self.decide_h1)


def _check_offsets(z: np.ndarray, offsets) -> Optional[np.ndarray]:
    if offsets is None:
        return None
    offsets = np.asarray(offsets, dtype=float)
    if offsets.shape != z.shape:
        raise InvalidInputError(
            f"clock offsets length {offsets.size} does not match {z.size} samples"
        )
    return offsets


def firing_times(z_samples: Sequence[float], clock_offsets: Optional[Sequence[float]] = None) -> np.ndarray:
    """Firing time 1/|Z_i| + U_i per sensor; inf for censored sensors."""
    z = np.asarray(z_samples, dtype=float)
    offsets = _check_offsets(z, clock_offsets)
    modulus = np.abs(z)
    with np.errstate(divide='ignore'):
        times = np.where(modulus > 0, 1.0 / modulus, np.inf)
    if offsets is not None:
        times = np.where(modulus > 0, times + offsets, np.inf)
    return times


def firing_order(z_samples: Sequence[float], clock_offsets: Optional[Sequence[float]] = None) -> List[int]:
    """
    1-based sensor indices in the order they fire. Censored sensors are left out.

    Example:
        firing_order([0.5, -2.0, 1.0]) -> [2, 3, 1]
    """
    times = firing_times(z_samples, clock_offsets)
    order = np.argsort(times, kind='stable')
    return [int(i) + 1 for i in order if np.isfinite(times[i])]


def decide(
    z_samples: Sequence[float],
    threshold: float,
    clock_offsets: Optional[Sequence[float]] = None,
) -> DetectionOutcome:
    """
    Decide on one network.

    Args:
        z_samples: Transformed statistics Z_1..Z_n (may be empty)
        threshold: Decision threshold; H1 iff M >= threshold
        clock_offsets: Optional per-sensor offsets U_i added to 1/|Z_i|

    Returns:
        DetectionOutcome

    Raises:
        InvalidInputError: Offsets length differs from z_samples
    """
    z = np.asarray(z_samples, dtype=float).reshape(-1)
    times = firing_times(z, clock_offsets)

    if not np.isfinite(times).any():
        return DetectionOutcome(
            decision=Hypothesis.H1 if 0.0 >= threshold else Hypothesis.H0,
            winner_index=None,
            winner_statistic=0.0,
            firing_time=np.inf,
            n_active=int(z.size),
            all_censored=True,
        )

    if clock_offsets is None:
        # argmax returns the first maximum: lowest index on ties
        winner = int(np.argmax(np.abs(z)))
    else:
        winner = int(np.argmin(times))

    statistic = float(z[winner])
    return DetectionOutcome(
        decision=Hypothesis.H1 if statistic >= threshold else Hypothesis.H0,
        winner_index=winner + 1,
        winner_statistic=statistic,
        firing_time=float(times[winner]),
        n_active=int(z.size),
        all_censored=False,
    )


def decide_batch(
    z_samples: np.ndarray,
    sizes: np.ndarray,
    threshold: float,
    clock_offsets: Optional[np.ndarray] = None,
) -> BatchDecisions:
    """
    Vectorized decide over many networks stored back to back.

    Network t owns z_samples[start_t : start_t + sizes[t]]. Tie, censoring
    and offset rules match decide().
    """
    z = np.asarray(z_samples, dtype=float).reshape(-1)
    sizes = np.asarray(sizes, dtype=np.int64).reshape(-1)
    if int(sizes.sum()) != z.size:
        raise InvalidInputError(f"sizes sum to {int(sizes.sum())} but {z.size} samples were given")
    offsets = _check_offsets(z, clock_offsets)

    trials = sizes.size
    statistic = np.zeros(trials)
    winner_index = np.zeros(trials, dtype=np.int64)

    # larger key fires first; censored sensors get the lowest possible key
    modulus = np.abs(z)
    if offsets is None:
        key = modulus
        silent = 0.0
    else:
        with np.errstate(divide='ignore'):
            key = np.where(modulus > 0, -(1.0 / modulus + offsets), -np.inf)
        silent = -np.inf

    starts = np.concatenate(([0], np.cumsum(sizes)[:-1])) if trials else np.zeros(0, dtype=np.int64)
    nonempty = sizes > 0
    fired = np.zeros(trials, dtype=bool)

    if nonempty.any():
        seg_starts = starts[nonempty]
        seg_best = np.maximum.reduceat(key, seg_starts)
        hits = np.flatnonzero(key == np.repeat(seg_best, sizes[nonempty]))
        # first hit at or after each segment start lies inside that segment
        winners = hits[np.searchsorted(hits, seg_starts)]

        fired_here = seg_best > silent
        statistic[nonempty] = np.where(fired_here, z[winners], 0.0)
        winner_index[nonempty] = np.where(fired_here, winners - seg_starts + 1, 0)
        fired[nonempty] = fired_here

    return BatchDecisions(
        decide_h1=statistic >= threshold,
        winner_statistic=statistic,
        winner_index=winner_index,
        all_censored=~fired,
    )
