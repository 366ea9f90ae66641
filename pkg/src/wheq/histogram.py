"""Histograms and threshold-split segment PDFs / CDFs.

A histogram is a plain int64 array of bin counts; a split at threshold t
produces a lower segment over levels [0, t] and an upper segment over
[t+1, L-1]. Segment PDFs keep the global normalization (count / N), so the
two segment masses always sum to 1. Segment CDFs are renormalized by their
own segment mass so each one ends at exactly 1, which is what lets the tone
maps span their full target ranges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySegmentError


def compute_histogram(plane: np.ndarray, levels: int = 256) -> np.ndarray:
    """Count pixels per intensity level. Returns an int64 array of length levels."""
    plane = np.asarray(plane)
    if plane.size == 0:
        raise ValueError("plane is empty")
    flat = plane.ravel().astype(np.int64)
    if flat.min() < 0 or flat.max() >= levels:
        raise ValueError(f"plane values must lie in [0, {levels - 1}]")
    return np.bincount(flat, minlength=levels)


@dataclass(frozen=True, eq=False)
class SegmentPdf:
    """Probability mass of one histogram segment, normalized by the full N.

    counts carries the raw integer bin counts for the segment; downstream
    code prefers them over the float mass so prefix sums stay exact.
    """

    lo: int
    hi: int
    mass: np.ndarray
    segment_mass: float
    counts: np.ndarray


@dataclass(frozen=True, eq=False)
class SegmentCdf:
    """Cumulative distribution over one segment; non-decreasing, ends at 1."""

    lo: int
    hi: int
    cum: np.ndarray


def split_pdf(hist: np.ndarray, t: int) -> tuple[SegmentPdf, SegmentPdf]:
    """Split a histogram at threshold t into lower [0..t] and upper [t+1..L-1] PDFs.

    Both segments are normalized by the total pixel count N, so
    lower.segment_mass + upper.segment_mass == 1.
    """
    hist = np.asarray(hist, dtype=np.int64)
    levels = hist.size
    if not 0 <= t <= levels - 2:
        raise ValueError(f"threshold {t} out of range [0, {levels - 2}]")
    total = int(hist.sum())
    if total == 0:
        raise ValueError("histogram is empty")

    lo_counts = hist[: t + 1].copy()
    up_counts = hist[t + 1:].copy()
    lower = SegmentPdf(
        lo=0,
        hi=t,
        mass=lo_counts / total,
        segment_mass=float(int(lo_counts.sum()) / total),
        counts=lo_counts,
    )
    upper = SegmentPdf(
        lo=t + 1,
        hi=levels - 1,
        mass=up_counts / total,
        segment_mass=float(int(up_counts.sum()) / total),
        counts=up_counts,
    )
    return lower, upper


def segment_cdf(pdf: SegmentPdf) -> SegmentCdf:
    """Cumulative distribution of one segment, renormalized to end at 1.

    Left-to-right prefix sum over the integer counts, one division by the
    segment total, final bin pinned to exactly 1 to kill rounding drift.
    Raises EmptySegmentError when the segment holds no mass.
    """
    seg_total = int(pdf.counts.sum())
    if seg_total == 0:
        raise EmptySegmentError(f"segment [{pdf.lo}, {pdf.hi}] holds no pixels")
    cum = np.cumsum(pdf.counts, dtype=np.int64) / seg_total
    cum[-1] = 1.0
    return SegmentCdf(lo=pdf.lo, hi=pdf.hi, cum=cum)
