"""Gray-mapped 16-QAM modulation and hard-decision demapping.

Per-dimension levels are {-3, -1, +1, +3} / sqrt(10) * sqrt(Es) with the
reflected Gray code 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.  A symbol
carries 4 bits: the first two select the in-phase level, the last two the
quadrature level.
"""

from __future__ import annotations

import numpy as np

BITS_PER_SYMBOL = 4

# bit pair (as integer b0*2 + b1) -> unnormalized level
_GRAY_TO_LEVEL = np.array([-3.0, -1.0, 3.0, 1.0])  # 00, 01, 10, 11
_LEVEL_INDEX_TO_GRAY = np.array([0b00, 0b01, 0b11, 0b10])  # levels -3,-1,1,3


def _norm(Es: float) -> float:
    return np.sqrt(Es / 10.0)


def map_bits(bits: np.ndarray, Es: float = 1.0) -> np.ndarray:
    """Map bits (..., 4) to 16-QAM symbols of shape (...)."""
    bits = np.asarray(bits)
    if bits.shape[-1] != BITS_PER_SYMBOL:
        raise ValueError(f"last axis must have {BITS_PER_SYMBOL} bits")
    i_idx = bits[..., 0] * 2 + bits[..., 1]
    q_idx = bits[..., 2] * 2 + bits[..., 3]
    return (_GRAY_TO_LEVEL[i_idx] + 1j * _GRAY_TO_LEVEL[q_idx]) * _norm(Es)


def _slice_dim(x: np.ndarray) -> np.ndarray:
    """Level index 0..3 for levels -3,-1,+1,+3 with thresholds at -2, 0, +2.

    Values exactly on a threshold round toward the lower-magnitude level
    (0.0 resolves to +1, matching the quantizer's sign-of-zero rule).
    """
    idx = np.zeros(x.shape, dtype=np.int64)
    idx = np.where(x >= 0.0, 2, 1)
    idx = np.where(x > 2.0, 3, idx)
    idx = np.where(x < -2.0, 0, idx)
    return idx


def demap_hard(symbols: np.ndarray, Es: float = 1.0) -> np.ndarray:
    """Nearest-point hard decisions: symbols (...) -> bits (..., 4)."""
    s = np.asarray(symbols) / _norm(Es)
    gi = _LEVEL_INDEX_TO_GRAY[_slice_dim(s.real)]
    gq = _LEVEL_INDEX_TO_GRAY[_slice_dim(s.imag)]
    bits = np.empty(s.shape + (BITS_PER_SYMBOL,), dtype=np.int64)
    bits[..., 0] = gi >> 1
    bits[..., 1] = gi & 1
    bits[..., 2] = gq >> 1
    bits[..., 3] = gq & 1
    return bits
