import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wheq import EntropyParams, NoValidThresholdError, entropy_score, find_threshold


def scan_best_t(counts, params):
    """Independent exhaustive evaluation of the split score over all t."""
    counts = [int(c) for c in counts]
    total = sum(counts)
    best_t = None
    best_score = None
    for t in range(len(counts) - 1):
        below = sum(counts[: t + 1]) / total
        above = sum(counts[t + 1:]) / total
        if below < params.min_segment_mass or above < params.min_segment_mass:
            continue
        r = (above - below + params.alpha) / (above + below + params.alpha)
        score = r * math.log(r + params.beta)
        if best_score is None or score > best_score:
            best_t, best_score = t, score
    return best_t


class TestEntropyScore:
    def test_symmetric_masses_cancel(self):
        hist = np.zeros(256, dtype=np.int64)
        hist[10], hist[200] = 5, 5
        score = entropy_score(hist, 100, EntropyParams(alpha=1e-6, beta=1.0))
        assert abs(score) < 1e-11

    def test_quarter_three_quarter_split(self):
        hist = np.zeros(256, dtype=np.int64)
        hist[0], hist[200] = 1, 3
        score = entropy_score(hist, 100, EntropyParams(alpha=1e-6, beta=1.0))
        r = (0.75 - 0.25 + 1e-6) / (0.75 + 0.25 + 1e-6)
        assert score == pytest.approx(r * math.log(r + 1.0), abs=1e-15)
        assert score == pytest.approx(0.5 * math.log(1.5), abs=1e-4)  # ~0.2027

    def test_degenerate_split_blows_up(self):
        # All mass below t: the signed ratio hits -1 + eps and the score
        # explodes, which is exactly why the candidate floor exists.
        hist = np.zeros(256, dtype=np.int64)
        hist[0] = 4
        score = entropy_score(hist, 0, EntropyParams(alpha=1e-6, beta=1.0))
        assert score == pytest.approx(13.1, abs=0.1)

    def test_out_of_range_t(self):
        hist = np.ones(256, dtype=np.int64)
        with pytest.raises(ValueError):
            entropy_score(hist, 255)


class TestFindThreshold:
    def test_single_spike_has_no_valid_split(self):
        hist = np.zeros(256, dtype=np.int64)
        hist[128] = 1000
        with pytest.raises(NoValidThresholdError):
            find_threshold(hist)

    def test_two_spikes_tie_breaks_low(self):
        hist = np.zeros(256, dtype=np.int64)
        hist[50], hist[200] = 100, 100
        res = find_threshold(hist, EntropyParams(min_segment_mass=0.01))
        assert res.t == 50
        assert res.candidates.min() == 50 and res.candidates.max() == 199

    def test_matches_exhaustive_scan(self, rng):
        params = EntropyParams()
        for _ in range(200):
            hist = rng.integers(0, 100, 256)
            hist[int(rng.integers(0, 128))] += 50
            hist[int(rng.integers(128, 256))] += 50
            assert find_threshold(hist, params).t == scan_best_t(hist, params)

    def test_result_respects_mass_floors(self, rng):
        params = EntropyParams(min_segment_mass=0.05)
        for _ in range(100):
            hist = rng.integers(0, 100, 256)
            hist[0] += 1
            hist[255] += 1
            res = find_threshold(hist, params)
            total = hist.sum()
            assert hist[: res.t + 1].sum() / total >= params.min_segment_mass
            assert hist[res.t + 1:].sum() / total >= params.min_segment_mass

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=2, max_value=9), st.integers(min_value=0, max_value=2 ** 32))
    def test_scale_invariant(self, factor, seed):
        rng = np.random.default_rng(seed)
        hist = rng.integers(0, 100, 256)
        hist[0] += 1
        hist[255] += 1
        base = find_threshold(hist)
        scaled = find_threshold(hist * factor)
        assert base.t == scaled.t

    def test_scores_always_finite(self, rng):
        for _ in range(100):
            hist = np.zeros(256, dtype=np.int64)
            occupied = rng.integers(0, 256, size=int(rng.integers(2, 20)))
            hist[occupied] = rng.integers(1, 10 ** 6, size=occupied.size)
            try:
                res = find_threshold(hist)
            except NoValidThresholdError:
                continue
            assert np.all(np.isfinite(res.scores))

    def test_param_validation(self):
        with pytest.raises(ValueError):
            EntropyParams(alpha=0.0)
        with pytest.raises(ValueError):
            EntropyParams(beta=0.5)
        with pytest.raises(ValueError):
            EntropyParams(min_segment_mass=0.5)
