"""Monte-Carlo experiment engine: BER points, SNR operating points, sweeps.

Coherence blocks are independent trials; each block derives its own RNG
stream from (seed, SNR key, block index) so serial and parallel schedules
produce byte-identical results.  Results merge by associative accumulation
in canonical block order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from .channel import ScenarioConfig, draw_scenario
from .equalize import lmmse_filter, omp_filter, quantize_filter
from .frontend import (AdcConfig, dft_pilots, dft_unitary, ls_estimate,
                       optimal_unit_step, perfect_csi, receive, unified_step)
from .modem import BITS_PER_SYMBOL, demap_hard, map_bits
from .numerics import ANTENNA_W_FMT, BEAMSPACE_W_FMT
from .spade import ThresholdPair, adaptive_mvm, exact_mvm_fixed

ALGORITHMS = ("almmse", "blmmse", "eomp", "comp", "spade", "cspade")


class ConfigError(Exception):
    """Invalid simulation configuration."""


class UnreachableError(Exception):
    """The target BER is not bracketed by the SNR search interval."""


@dataclass
class SimConfig:
    """Complete description of one Monte-Carlo experiment."""

    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)
    algorithm: str = "almmse"
    delta: float | None = None          # density for eomp/comp
    tau_w: float | None = None          # thresholds for spade/cspade
    tau_y: float | None = None
    adc_bits: int | None = 6            # None disables the ADC model
    coherence_len: int = 128
    csi_mode: str = "ls"                # 'perfect' | 'ls'
    snr_lo_db: float = -10.0
    snr_hi_db: float = 30.0
    min_bits_per_point: int = 1_000_000
    min_errors_per_point: int = 100
    max_bits_per_point: int | None = None   # defaults to 4x min_bits_per_point
    Es: float = 1.0
    seed: int = 0
    arithmetic: str = "fixed"           # 'float' | 'fixed'
    workers: int = 1

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        if self.algorithm in ("eomp", "comp"):
            if self.delta is None or not 0.0 < self.delta <= 1.0:
                raise ConfigError(f"{self.algorithm} requires delta in (0, 1]")
        if self.algorithm in ("spade", "cspade"):
            if self.tau_w is None or self.tau_y is None:
                raise ConfigError(f"{self.algorithm} requires tau_w and tau_y")
            if self.tau_w < 0 or self.tau_y < 0:
                raise ConfigError("thresholds must be nonnegative")
        if self.arithmetic not in ("float", "fixed"):
            raise ConfigError(f"unknown arithmetic {self.arithmetic!r}")
        if self.arithmetic == "fixed" and self.adc_bits is None:
            raise ConfigError("fixed-point arithmetic requires an ADC (adc_bits)")
        if self.csi_mode not in ("perfect", "ls"):
            raise ConfigError(f"unknown csi_mode {self.csi_mode!r}")
        if self.coherence_len < 1:
            raise ConfigError("coherence_len must be >= 1")
        if self.adc_bits is not None and not 1 <= self.adc_bits <= 8:
            raise ConfigError("adc_bits must be in 1..8")


@dataclass
class BlockResult:
    bit_errors: int
    bits: int
    executed_real_mults: int
    total_real_mults: int


@dataclass
class BerPoint:
    snr_db: float
    ber: float
    bits: int
    errors: int
    mean_alpha: float


@dataclass
class ParetoPoint:
    alpha: float
    snr_op_db: float
    tau_w: float | None = None
    tau_y: float | None = None
    delta: float | None = None


def _block_rng(cfg: SimConfig, snr_db: float, block_index: int) -> np.random.Generator:
    snr_key = int(round(snr_db * 1000.0)) + 10_000_000
    return np.random.default_rng([cfg.seed, snr_key, block_index])


def _sim_block(cfg: SimConfig, snr_db: float, block_index: int) -> BlockResult:
    rng = _block_rng(cfg, snr_db, block_index)
    scen = draw_scenario(cfg.scenario, rng)
    H = scen.H
    B, U = H.shape
    Es = cfg.Es
    N0 = Es * 10.0 ** (-snr_db / 10.0)

    if cfg.adc_bits is None:
        adc = None
        step = 1.0
    else:
        unit = optimal_unit_step(cfg.adc_bits)
        adc = AdcConfig(cfg.adc_bits, unit, unified_step(H, Es, N0, cfg.adc_bits))
        step = adc.step
    rho = N0 / (Es * step ** 2)

    pilots = dft_pilots(U, Es)
    if cfg.csi_mode == "perfect":
        Ha = perfect_csi(H, step)
        Hb = dft_unitary(Ha)
    else:
        ybar_p, yb_p = receive(H, pilots, N0, adc, rng)
        Ha = ls_estimate(ybar_p.values, pilots, Es)
        Hb = ls_estimate(yb_p.values, pilots, Es)

    alg = cfg.algorithm
    if alg == "almmse":
        eq = lmmse_filter(Ha, rho, domain="antenna")
        wfmt = ANTENNA_W_FMT
    elif alg in ("blmmse", "spade", "cspade"):
        eq = lmmse_filter(Hb, rho, domain="beamspace")
        wfmt = BEAMSPACE_W_FMT
    else:  # eomp / comp
        K = max(1, round(cfg.delta * B))
        mode = "entrywise" if alg == "eomp" else "columnwise"
        eq = omp_filter(Hb, rho, K, mode, domain="beamspace")
        wfmt = BEAMSPACE_W_FMT

    if cfg.arithmetic == "fixed":
        eq = quantize_filter(eq, wfmt)

    T = cfg.coherence_len
    tx_bits = rng.integers(0, 2, size=(T, U, BITS_PER_SYMBOL))
    S = map_bits(tx_bits, Es).T  # (U, T)
    ybar, yb = receive(H, S, N0, adc, rng)
    yvec = ybar if alg == "almmse" else yb

    total_mults = 4 * U * B * T
    if cfg.arithmetic == "float":
        shat = eq.W @ yvec.values
        executed = total_mults if alg in ("almmse", "blmmse", "spade", "cspade") \
            else 4 * max(1, round(cfg.delta * B)) * U * T
    elif alg in ("spade", "cspade"):
        est, rep = adaptive_mvm(eq, yvec, ThresholdPair(cfg.tau_w, cfg.tau_y), alg)
        shat = est.values
        executed = rep.executed_real_mults
    else:
        est = exact_mvm_fixed(eq, yvec)
        shat = est.values
        if alg in ("eomp", "comp"):
            executed = 4 * max(1, round(cfg.delta * B)) * U * T
        else:
            executed = total_mults

    rx_bits = demap_hard(shat.T, Es)  # (T, U, 4)
    errors = int(np.sum(rx_bits != tx_bits))
    return BlockResult(errors, tx_bits.size, executed, total_mults)


def _map_blocks(cfg: SimConfig, snr_db: float, indices) -> list[BlockResult]:
    indices = list(indices)
    if cfg.workers <= 1 or len(indices) <= 1:
        return [_sim_block(cfg, snr_db, i) for i in indices]
    fn = partial(_sim_block, cfg, snr_db)
    chunk = max(1, len(indices) // (4 * cfg.workers))
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(fn, indices, chunksize=chunk))


def run_ber_point(cfg: SimConfig, snr_db: float) -> BerPoint:
    """Accumulate coherence blocks until the bit and error budgets are met."""
    cfg.validate()
    bits_per_block = cfg.scenario.num_ues * BITS_PER_SYMBOL * cfg.coherence_len
    blocks_per_round = max(1, math.ceil(cfg.min_bits_per_point / bits_per_block))
    max_bits = cfg.max_bits_per_point or 4 * cfg.min_bits_per_point

    errors = bits = executed = total = 0
    next_index = 0
    while True:
        indices = range(next_index, next_index + blocks_per_round)
        next_index += blocks_per_round
        for res in _map_blocks(cfg, snr_db, indices):
            errors += res.bit_errors
            bits += res.bits
            executed += res.executed_real_mults
            total += res.total_real_mults
        if bits >= cfg.min_bits_per_point and (
                errors >= cfg.min_errors_per_point or bits >= max_bits):
            break
    return BerPoint(snr_db, errors / bits, bits, errors, executed / total)


def run_ber_curve(cfg: SimConfig, snr_grid_db) -> list[BerPoint]:
    return [run_ber_point(cfg, s) for s in snr_grid_db]


def activity_samples(cfg: SimConfig, snr_db: float, num_blocks: int) -> np.ndarray:
    """Per-block multiplier activity rates at a fixed SNR."""
    cfg.validate()
    res = _map_blocks(cfg, snr_db, range(num_blocks))
    return np.array([r.executed_real_mults / r.total_real_mults for r in res])


def snr_operating_point(cfg: SimConfig, target_ber: float = 1e-3,
                        resolution_db: float = 0.25) -> float:
    """Minimum SNR (on a resolution_db grid) reaching the target BER.

    Bisection between cfg.snr_lo_db and cfg.snr_hi_db, assuming BER is
    non-increasing in SNR.  Raises UnreachableError if the extremes do not
    bracket the target.
    """
    lo, hi = cfg.snr_lo_db, cfg.snr_hi_db
    if run_ber_point(cfg, lo).ber <= target_ber:
        raise UnreachableError(f"BER already at target at the lower extreme {lo} dB")
    if run_ber_point(cfg, hi).ber > target_ber:
        raise UnreachableError(f"BER above target at the upper extreme {hi} dB")
    while hi - lo > resolution_db + 1e-9:
        steps = round((hi - lo) / resolution_db)
        mid = lo + (steps // 2) * resolution_db
        if mid <= lo or mid >= hi:
            break
        if run_ber_point(cfg, mid).ber <= target_ber:
            hi = mid
        else:
            lo = mid
    return hi


def pareto_sweep(cfg: SimConfig, candidates, target_ber: float = 1e-3) -> list[ParetoPoint]:
    """Evaluate (alpha, SNR operating point) per candidate; keep the Pareto set.

    Candidates are ThresholdPair instances (spade/cspade) or densities
    (eomp/comp).  Candidates whose target BER is unreachable are dropped.
    """
    points = []
    for cand in candidates:
        if isinstance(cand, ThresholdPair):
            sub = replace(cfg, tau_w=cand.tau_w, tau_y=cand.tau_y)
            tag = {"tau_w": cand.tau_w, "tau_y": cand.tau_y}
        else:
            sub = replace(cfg, delta=float(cand))
            tag = {"delta": float(cand)}
        try:
            snr_op = snr_operating_point(sub, target_ber)
        except UnreachableError:
            continue
        alpha = run_ber_point(sub, snr_op).mean_alpha
        points.append(ParetoPoint(alpha=alpha, snr_op_db=snr_op, **tag))

    pareto = []
    for p in points:
        dominated = any(
            (q.alpha <= p.alpha and q.snr_op_db <= p.snr_op_db)
            and (q.alpha < p.alpha or q.snr_op_db < p.snr_op_db)
            for q in points)
        if not dominated:
            pareto.append(p)
    pareto.sort(key=lambda p: (p.alpha, p.snr_op_db))
    return pareto
