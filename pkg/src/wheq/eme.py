"""Block-contrast quality score (EME).

The plane is tiled into blocks of block_w x block_h pixels (edge blocks may
be partial but never empty) and each block contributes

    f = (max - min + a) / (max + min + a),      score = f * ln(b + f)

The EME value is the mean block score. With a = b = 1 on 8-bit data, f stays
in (0, 1] and the value is bounded by ln 2. Note the a = 1 guard makes an
all-black block score f = 1, the same as a full-range block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EmeParams:
    block_w: int = 8
    block_h: int = 8
    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if self.block_w < 1 or self.block_h < 1:
            raise ValueError("block dimensions must be >= 1")
        if self.a <= 0 or self.b <= 0:
            raise ValueError("guards a and b must be > 0")


@dataclass(frozen=True)
class EmeScore:
    value: float
    blocks_scored: int


def block_contrast(block: np.ndarray, a: float = 1.0) -> float:
    """Michelson-style contrast of one block with additive guard a."""
    block = np.asarray(block)
    if block.size == 0:
        raise ValueError("block is empty")
    hi = float(block.max())
    lo = float(block.min())
    return (hi - lo + a) / (hi + lo + a)


def compute_eme(plane: np.ndarray, params: EmeParams = EmeParams()) -> EmeScore:
    """Mean f * ln(b + f) over the block tiling of the plane.

    Block extrema come from a two-pass reduceat over row then column starts,
    which scores partial edge blocks exactly and keeps the reduction order
    fixed, so repeated calls are bit-identical.
    """
    plane = np.asarray(plane)
    if plane.ndim != 2 or plane.size == 0:
        raise ValueError("plane must be a non-empty 2-D array")
    height, width = plane.shape
    row_starts = np.arange(0, height, params.block_h)
    col_starts = np.arange(0, width, params.block_w)

    data = plane.astype(np.int64, copy=False)
    bmax = np.maximum.reduceat(np.maximum.reduceat(data, row_starts, axis=0), col_starts, axis=1)
    bmin = np.minimum.reduceat(np.minimum.reduceat(data, row_starts, axis=0), col_starts, axis=1)

    f = (bmax - bmin + params.a) / (bmax + bmin + params.a)
    scores = f * np.log(params.b + f)
    return EmeScore(value=float(scores.mean()), blocks_scored=scores.size)
