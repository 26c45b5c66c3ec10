"""Fixed-point arithmetic emulation and shared complex linear algebra.

All fixed-point values are two's-complement codes with a format (W, F):
W total bits including sign, F fractional bits.  The real value of a code
c is c * 2**-F.  Conversion rounds to nearest with ties away from zero and
saturates to the format extremes instead of wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


class DecompositionError(Exception):
    """Cholesky factorization failed (input not positive definite)."""


@dataclass(frozen=True)
class FixedFormat:
    """Two's-complement fixed-point format: W total bits, F fractional bits."""

    width: int
    frac: int

    def __post_init__(self):
        if self.width < 2:
            raise ValueError(f"width must be >= 2, got {self.width}")
        if self.frac < 0:
            raise ValueError(f"frac must be >= 0, got {self.frac}")

    @property
    def lsb(self) -> float:
        return 2.0 ** -self.frac

    @property
    def min_code(self) -> int:
        return -(1 << (self.width - 1))

    @property
    def max_code(self) -> int:
        return (1 << (self.width - 1)) - 1

    @property
    def min_value(self) -> float:
        return self.min_code * self.lsb

    @property
    def max_value(self) -> float:
        return self.max_code * self.lsb


# Formats from the equalizer fixed-point parameter table.
ANTENNA_Y_FMT = FixedFormat(7, 1)       # ADC outputs, step-normalized
ANTENNA_W_FMT = FixedFormat(11, 10)     # antenna-domain filter entries
BEAMSPACE_Y_FMT = FixedFormat(9, 1)     # beamspace received vector
BEAMSPACE_W_FMT = FixedFormat(12, 11)   # beamspace filter entries
ESTIMATE_FMT = FixedFormat(13, 8)       # symbol estimates


def round_ties_away(x):
    """Round to nearest integer, ties away from zero (elementwise)."""
    x = np.asarray(x, dtype=float)
    return np.trunc(x + np.copysign(0.5, x))


def to_fixed(x, fmt: FixedFormat):
    """Convert real values to fixed-point codes.

    Returns ``(codes, saturated)`` where codes is int64 and saturated marks
    entries clipped to the format extremes.  Saturation is symmetric
    (+/- max_code), so |value| never exceeds max_code * lsb.  Works
    elementwise on arrays.
    """
    raw = round_ties_away(np.asarray(x, dtype=float) * 2.0 ** fmt.frac)
    codes = np.clip(raw, -fmt.max_code, fmt.max_code)
    saturated = raw != codes
    return codes.astype(np.int64), saturated


def fx_value(codes, fmt: FixedFormat):
    """Real value represented by fixed-point codes."""
    return np.asarray(codes, dtype=float) * fmt.lsb


def fx_requantize(codes, src: FixedFormat, dst: FixedFormat):
    """Re-quantize codes from one format to another.

    Equivalent to ``to_fixed(fx_value(codes, src), dst)``; widening with
    dst.frac >= src.frac is exact.
    """
    return to_fixed(fx_value(codes, src), dst)


@dataclass
class FxComplexArray:
    """Complex fixed-point array: separate re/im code arrays, shared format."""

    re: np.ndarray
    im: np.ndarray
    fmt: FixedFormat

    @property
    def value(self) -> np.ndarray:
        return fx_value(self.re, self.fmt) + 1j * fx_value(self.im, self.fmt)


def to_fixed_complex(z, fmt: FixedFormat) -> FxComplexArray:
    z = np.asarray(z, dtype=complex)
    re, _ = to_fixed(z.real, fmt)
    im, _ = to_fixed(z.imag, fmt)
    return FxComplexArray(re, im, fmt)


def solve_hermitian_pd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A X = B for Hermitian positive-definite A via Cholesky.

    Raises DecompositionError if the factorization encounters a
    non-positive pivot.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    try:
        factor = scipy.linalg.cho_factor(a, lower=True)
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(str(exc)) from exc
    return scipy.linalg.cho_solve(factor, b)
