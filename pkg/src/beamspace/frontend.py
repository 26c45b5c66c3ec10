"""Receiver front end: ADC quantization, beamspace DFT, channel estimation.

The ADC is a mid-rise uniform symmetric quantizer with 2^m levels per real
dimension at +/-(k + 1/2) * step.  Outputs are stored divided by the step
("step-normalized"), so they are exact half-integers representable in the
(7, 1) antenna-domain format.  The beamspace transform is an exact unitary
DFT followed by output quantization to the (9, 1) format.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import erf

from .numerics import ANTENNA_Y_FMT, BEAMSPACE_Y_FMT, FixedFormat, to_fixed


@dataclass(frozen=True)
class AdcConfig:
    """ADC resolution and step sizes for one coherence block."""

    bits: int
    unit_step: float   # MSE-optimal step for a standard Gaussian input
    step: float        # unified step shared by all antennas / both rails

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("bits must be >= 1")
        if self.unit_step <= 0 or self.step <= 0:
            raise ValueError("step sizes must be positive")


@dataclass
class ReceiveVector:
    """Received samples tagged with their domain and fixed-point format.

    values are step-normalized when fmt is set (exact on the format grid);
    fmt None means unquantized floating-point samples in physical units.
    """

    domain: str                 # 'antenna' | 'beamspace'
    values: np.ndarray          # complex, shape (B,) or (B, T)
    fmt: FixedFormat | None


def _phi(x):
    return np.exp(-0.5 * x * x) / np.sqrt(2.0 * np.pi)


def _Phi(x):
    return 0.5 * (1.0 + erf(x / np.sqrt(2.0)))


def quantizer_mse(step: float, bits: int) -> float:
    """E[(Q_m(z, step) - z)^2] for z ~ N(0,1), via exact per-cell Gaussian integrals."""
    half_levels = 1 << (bits - 1)
    k = np.arange(half_levels)
    a = k * step
    b = np.where(k == half_levels - 1, np.inf, (k + 1) * step)
    level = (k + 0.5) * step
    b_fin = np.where(np.isinf(b), 0.0, b)
    pa, pb = _phi(a), np.where(np.isinf(b), 0.0, _phi(b_fin))
    Pa, Pb = _Phi(a), np.where(np.isinf(b), 1.0, _Phi(b_fin))
    bpb = b_fin * pb
    cell = (1.0 + level ** 2) * (Pb - Pa) - 2.0 * level * (pa - pb) - (bpb - a * pa)
    return 2.0 * float(cell.sum())


@lru_cache(maxsize=None)
def optimal_unit_step(bits: int) -> float:
    """MSE-optimal mid-rise step size for a standard Gaussian input."""
    if not 1 <= bits <= 8:
        raise ValueError(f"bits must be in 1..8, got {bits}")
    res = minimize_scalar(lambda d: quantizer_mse(d, bits),
                          bounds=(1e-3, 4.0), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x)


def unified_step(H: np.ndarray, Es: float, N0: float, bits: int) -> float:
    """Worst-antenna step size: max_b step1 * sqrt((Es ||h_b^r||^2 + N0) / 2)."""
    H = np.asarray(H)
    row_var = Es * np.sum(np.abs(H) ** 2, axis=1) + N0
    return optimal_unit_step(bits) * float(np.sqrt(row_var.max() / 2.0))


def quantize_adc(z: np.ndarray, step: float, bits: int) -> np.ndarray:
    """Mid-rise quantization, returned step-normalized (half-integer levels).

    Operates independently on real and imaginary parts.  Inputs at exactly
    zero map to the positive level +1/2.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    half_levels = 1 << (bits - 1)

    def _q(x):
        idx = np.clip(np.floor(np.asarray(x, dtype=float) / step),
                      -half_levels, half_levels - 1)
        return idx + 0.5

    z = np.asarray(z)
    return _q(z.real) + 1j * _q(z.imag)


def dft_unitary(x: np.ndarray) -> np.ndarray:
    """Unitary DFT along the first axis (F F^H = I)."""
    x = np.asarray(x, dtype=complex)
    return np.fft.fft(x, axis=0) / np.sqrt(x.shape[0])


def idft_unitary(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    return np.fft.ifft(x, axis=0) * np.sqrt(x.shape[0])


def draw_noise(shape, N0: float, rng: np.random.Generator) -> np.ndarray:
    """Circularly-symmetric complex Gaussian noise with per-entry variance N0."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * np.sqrt(N0 / 2.0)


def receive(H: np.ndarray, s: np.ndarray, N0: float,
            adc: AdcConfig | None, rng: np.random.Generator):
    """One (possibly batched) receive operation.

    Returns (antenna ReceiveVector, beamspace ReceiveVector).  With an ADC,
    antenna values are step-normalized mid-rise levels in the (7, 1) format
    and beamspace values are the exact unitary DFT of those, re-quantized
    to the (9, 1) format with saturation.  With adc=None both are exact
    floating-point samples in physical units.
    """
    z = H @ s + draw_noise((H.shape[0],) + np.shape(s)[1:], N0, rng)
    if adc is None:
        return (ReceiveVector("antenna", z, None),
                ReceiveVector("beamspace", dft_unitary(z), None))
    ybar = quantize_adc(z, adc.step, adc.bits)
    yb = dft_unitary(ybar)
    re, _ = to_fixed(yb.real, BEAMSPACE_Y_FMT)
    im, _ = to_fixed(yb.imag, BEAMSPACE_Y_FMT)
    yb_q = (re + 1j * im) * BEAMSPACE_Y_FMT.lsb
    return (ReceiveVector("antenna", ybar, ANTENNA_Y_FMT),
            ReceiveVector("beamspace", yb_q, BEAMSPACE_Y_FMT))


def dft_pilots(num_ues: int, Es: float) -> np.ndarray:
    """Orthogonal pilot matrix: sqrt(Es) times the unitary U x U DFT."""
    F = np.fft.fft(np.eye(num_ues)) / np.sqrt(num_ues)
    return np.sqrt(Es) * F


def ls_estimate(y_pilot_values: np.ndarray, pilots: np.ndarray, Es: float) -> np.ndarray:
    """Least-squares channel estimate from U pilot-slot observations.

    y_pilot_values has shape (B, U) with slot u carrying pilots[:, u]; the
    estimate lives in the same domain and normalization as the observations.
    Noiseless unquantized observations recover the channel exactly.
    """
    y = np.asarray(y_pilot_values)
    if y.shape[1] != pilots.shape[0]:
        raise ValueError("pilot observation count does not match pilot length")
    return y @ pilots.conj().T / Es


def perfect_csi(H: np.ndarray, step: float) -> np.ndarray:
    """Genie estimate: true channel, step-normalized like the data path."""
    return np.asarray(H, dtype=complex) / step
