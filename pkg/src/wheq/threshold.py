"""Entropy-of-PDF threshold search.

For a candidate split t the score is

    e(t) = r * ln(r + beta),   r = (U - Lo + alpha) / (U + Lo + alpha)

with Lo and U the probability mass at or below / above t. The chosen
threshold maximizes e(t) over all candidates whose two segments each hold at
least min_segment_mass of the pixels; without that floor the score blows up
at maximally unbalanced splits (r -> -1 makes ln(r + 1) -> -inf and the
product large positive), which would starve one segment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NoValidThresholdError


@dataclass(frozen=True)
class EntropyParams:
    """Constants of the entropy score and the admissibility floor.

    alpha is a pure division guard; beta >= 1 keeps the log argument
    positive for every ratio r in (-1, 1]. min_segment_mass is the minimum
    pixel fraction each segment must keep to be a valid split.
    """

    alpha: float = 1e-6
    beta: float = 1.0
    min_segment_mass: float = 0.01

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        if self.beta < 1:
            raise ValueError("beta must be >= 1")
        if not 0 <= self.min_segment_mass < 0.5:
            raise ValueError("min_segment_mass must lie in [0, 0.5)")


@dataclass(frozen=True, eq=False)
class ThresholdResult:
    """Chosen threshold plus the full score scan.

    scores[t] holds e(t) for every t in [0, L-2]; candidates lists the
    thresholds that passed the segment-mass floors. The chosen t attains the
    maximum score among candidates (smallest t on ties).
    """

    t: int
    scores: np.ndarray
    candidates: np.ndarray


def entropy_score(hist: np.ndarray, t: int, params: EntropyParams = EntropyParams()) -> float:
    """Entropy score e(t) of splitting hist at threshold t."""
    hist = np.asarray(hist, dtype=np.int64)
    levels = hist.size
    if not 0 <= t <= levels - 2:
        raise ValueError(f"threshold {t} out of range [0, {levels - 2}]")
    total = int(hist.sum())
    below = int(hist[: t + 1].sum()) / total
    above = int(hist[t + 1:].sum()) / total
    r = (above - below + params.alpha) / (above + below + params.alpha)
    return r * math.log(r + params.beta)


def find_threshold(hist: np.ndarray, params: EntropyParams = EntropyParams()) -> ThresholdResult:
    """Pick the admissible threshold with the maximum entropy score.

    Candidates are the t in [0, L-2] whose lower and upper segments each
    hold at least params.min_segment_mass of the total pixels. Ties break
    toward the smallest t, so the result is deterministic. All-integer
    prefix sums make the result invariant to scaling every count by the
    same factor.

    Raises NoValidThresholdError when no split passes the floors (for
    example a constant or near-constant image).
    """
    hist = np.asarray(hist, dtype=np.int64)
    levels = hist.size
    total = int(hist.sum())
    if total == 0:
        raise ValueError("histogram is empty")

    cum = np.cumsum(hist)[: levels - 1]
    below = cum / total
    above = (total - cum) / total
    r = (above - below + params.alpha) / (above + below + params.alpha)
    scores = r * np.log(r + params.beta)

    admissible = (below >= params.min_segment_mass) & (above >= params.min_segment_mass)
    candidates = np.flatnonzero(admissible)
    if candidates.size == 0:
        raise NoValidThresholdError(
            f"no threshold keeps both segments above mass {params.min_segment_mass}"
        )
    best = int(candidates[np.argmax(scores[candidates])])
    return ThresholdResult(t=best, scores=scores, candidates=candidates)
