"""Sparsity-adaptive fixed-point matrix-vector products.

exact_mvm_fixed is the bit-exact integer MVM kernel shared by all
fixed-point equalizers.  adaptive_mvm applies the SPADE (per real
multiplication) or CSPADE (per complex multiplication) skip rules and
counts executed real multiplications; skipped products contribute exact
zero.  masked_reference is a deliberately independent mask-then-multiply
oracle for adaptive_mvm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .equalize import EqualizerMatrix
from .frontend import ReceiveVector
from .numerics import ESTIMATE_FMT, FixedFormat, round_ties_away


@dataclass(frozen=True)
class ThresholdPair:
    """Skip thresholds in quantized-operand units: tau_w for weights, tau_y for data."""

    tau_w: float
    tau_y: float

    def __post_init__(self):
        if self.tau_w < 0 or self.tau_y < 0:
            raise ValueError("thresholds must be nonnegative")


@dataclass
class ActivityReport:
    """Executed-multiplication accounting for one or more matrix-vector products."""

    executed_real_mults: int
    total_real_mults: int
    scheme: str = "exact"

    @property
    def alpha(self) -> float:
        if self.total_real_mults == 0:
            return 0.0
        return self.executed_real_mults / self.total_real_mults

    def __add__(self, other: "ActivityReport") -> "ActivityReport":
        return ActivityReport(self.executed_real_mults + other.executed_real_mults,
                              self.total_real_mults + other.total_real_mults,
                              self.scheme)


@dataclass
class EstimateVector:
    """Symbol estimates in the (13, 8) output format after 2^-k compensation."""

    codes_re: np.ndarray
    codes_im: np.ndarray
    fmt: FixedFormat

    @property
    def values(self) -> np.ndarray:
        return (self.codes_re + 1j * self.codes_im) * self.fmt.lsb


def linf_tilde(x) -> np.ndarray:
    """max(|Re x|, |Im x|), elementwise."""
    x = np.asarray(x)
    return np.maximum(np.abs(x.real), np.abs(x.imag))


def _operand_codes(eq: EqualizerMatrix, y: ReceiveVector):
    if eq.fx is None:
        raise ValueError("equalizer has no fixed-point view; call quantize_filter first")
    if y.fmt is None:
        raise ValueError("received vector is not quantized")
    if eq.domain != y.domain:
        raise ValueError(f"domain mismatch: filter {eq.domain!r} vs data {y.domain!r}")
    wr = eq.fx.re.astype(np.int64)
    wi = eq.fx.im.astype(np.int64)
    vals = np.asarray(y.values)
    yr = np.round(vals.real * 2.0 ** y.fmt.frac).astype(np.int64)
    yi = np.round(vals.imag * 2.0 ** y.fmt.frac).astype(np.int64)
    return wr, wi, yr, yi


def _requantize_acc(acc_re, acc_im, frac_in: int, scale_exp: int,
                    out_fmt: FixedFormat) -> EstimateVector:
    # acc carries frac_in fractional bits and an extra 2^scale_exp gain.
    shift = 2.0 ** (out_fmt.frac - frac_in - scale_exp)
    cr = np.clip(round_ties_away(acc_re * shift), -out_fmt.max_code, out_fmt.max_code)
    ci = np.clip(round_ties_away(acc_im * shift), -out_fmt.max_code, out_fmt.max_code)
    return EstimateVector(cr.astype(np.int64), ci.astype(np.int64), out_fmt)


def exact_mvm_fixed(eq: EqualizerMatrix, y: ReceiveVector,
                    out_fmt: FixedFormat = ESTIMATE_FMT) -> EstimateVector:
    """Bit-exact fixed-point MVM: integer partial products, wide accumulator,
    2^-k compensation, saturating requantization to out_fmt."""
    wr, wi, yr, yi = _operand_codes(eq, y)
    acc_re = wr @ yr - wi @ yi
    acc_im = wr @ yi + wi @ yr
    frac_in = eq.fx.fmt.frac + y.fmt.frac
    return _requantize_acc(acc_re, acc_im, frac_in, eq.scale_exp, out_fmt)


def _quantize_threshold(tau: float, fmt: FixedFormat) -> float:
    """Snap a threshold onto the operand format grid (infinity passes through)."""
    if math.isinf(tau):
        return tau
    return float(round_ties_away(tau * 2.0 ** fmt.frac)) * fmt.lsb


def adaptive_mvm(eq: EqualizerMatrix, y: ReceiveVector, thr: ThresholdPair,
                 scheme: str, out_fmt: FixedFormat = ESTIMATE_FMT):
    """SPADE/CSPADE MVM: skip products whose operands both fall strictly below
    their thresholds.  Returns (EstimateVector, ActivityReport)."""
    wr, wi, yr, yi = _operand_codes(eq, y)
    tw = _quantize_threshold(thr.tau_w, eq.fx.fmt) * 2.0 ** eq.fx.fmt.frac
    ty = _quantize_threshold(thr.tau_y, y.fmt) * 2.0 ** y.fmt.frac
    # tw/ty are now in code units, matching the integer operand arrays.

    batched = yr.ndim == 2
    yr2 = yr if batched else yr[:, None]
    yi2 = yi if batched else yi[:, None]

    if scheme == "spade":
        awr = np.abs(wr) >= tw          # (U, B)
        awi = np.abs(wi) >= tw
        ayr = np.abs(yr2) >= ty         # (B, T)
        ayi = np.abs(yi2) >= ty
        e_rr = awr[:, :, None] | ayr[None, :, :]
        e_ii = awi[:, :, None] | ayi[None, :, :]
        e_ri = awr[:, :, None] | ayi[None, :, :]
        e_ir = awi[:, :, None] | ayr[None, :, :]
        acc_re = (np.einsum("ub,bt,ubt->ut", wr, yr2, e_rr)
                  - np.einsum("ub,bt,ubt->ut", wi, yi2, e_ii))
        acc_im = (np.einsum("ub,bt,ubt->ut", wr, yi2, e_ri)
                  + np.einsum("ub,bt,ubt->ut", wi, yr2, e_ir))
        executed = int(e_rr.sum() + e_ii.sum() + e_ri.sum() + e_ir.sum())
    elif scheme == "cspade":
        aw = (np.abs(wr) >= tw) | (np.abs(wi) >= tw)    # linf_tilde(W) >= tau_w
        ay = (np.abs(yr2) >= ty) | (np.abs(yi2) >= ty)  # linf_tilde(y) >= tau_y
        e = aw[:, :, None] | ay[None, :, :]
        acc_re = (np.einsum("ub,bt,ubt->ut", wr, yr2, e)
                  - np.einsum("ub,bt,ubt->ut", wi, yi2, e))
        acc_im = (np.einsum("ub,bt,ubt->ut", wr, yi2, e)
                  + np.einsum("ub,bt,ubt->ut", wi, yr2, e))
        executed = 4 * int(e.sum())
    else:
        raise ValueError(f"unknown scheme {scheme!r}")

    if not batched:
        acc_re = acc_re[:, 0]
        acc_im = acc_im[:, 0]
    total = 4 * wr.shape[0] * wr.shape[1] * yr2.shape[1]
    frac_in = eq.fx.fmt.frac + y.fmt.frac
    est = _requantize_acc(acc_re, acc_im, frac_in, eq.scale_exp, out_fmt)
    return est, ActivityReport(executed, total, scheme)


def masked_reference(eq: EqualizerMatrix, y: ReceiveVector, thr: ThresholdPair,
                     scheme: str, out_fmt: FixedFormat = ESTIMATE_FMT) -> EstimateVector:
    """Independent oracle: materialize skip masks, then run exact Python-integer
    arithmetic on the masked operands.  Must match adaptive_mvm bit-exactly."""
    wr, wi, yr, yi = _operand_codes(eq, y)
    tw = _quantize_threshold(thr.tau_w, eq.fx.fmt) * 2.0 ** eq.fx.fmt.frac
    ty = _quantize_threshold(thr.tau_y, y.fmt) * 2.0 ** y.fmt.frac
    batched = yr.ndim == 2
    yr2 = yr if batched else yr[:, None]
    yi2 = yi if batched else yi[:, None]
    U, B = wr.shape
    T = yr2.shape[1]
    acc_re = np.zeros((U, T), dtype=np.int64)
    acc_im = np.zeros((U, T), dtype=np.int64)
    for t in range(T):
        for u in range(U):
            sr = 0
            si = 0
            for b in range(B):
                a, c = int(wr[u, b]), int(wi[u, b])
                p, q = int(yr2[b, t]), int(yi2[b, t])
                if scheme == "spade":
                    keep_w_re = abs(a) >= tw
                    keep_w_im = abs(c) >= tw
                    keep_y_re = abs(p) >= ty
                    keep_y_im = abs(q) >= ty
                    if keep_w_re or keep_y_re:
                        sr += a * p
                    if keep_w_im or keep_y_im:
                        sr -= c * q
                    if keep_w_re or keep_y_im:
                        si += a * q
                    if keep_w_im or keep_y_re:
                        si += c * p
                elif scheme == "cspade":
                    if max(abs(a), abs(c)) >= tw or max(abs(p), abs(q)) >= ty:
                        sr += a * p - c * q
                        si += a * q + c * p
                else:
                    raise ValueError(f"unknown scheme {scheme!r}")
            acc_re[u, t] = sr
            acc_im[u, t] = si
    if not batched:
        acc_re = acc_re[:, 0]
        acc_im = acc_im[:, 0]
    frac_in = eq.fx.fmt.frac + y.fmt.frac
    return _requantize_acc(acc_re, acc_im, frac_in, eq.scale_exp, out_fmt)
