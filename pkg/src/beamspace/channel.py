"""Plane-wave channel synthesis for a half-wavelength ULA basestation.

Each UE channel is a superposition of complex sinusoids (one per
propagation path).  LoS scenarios have one dominant unit-power path plus a
few weak scattered paths; non-LoS scenarios have many i.i.d. Gaussian
paths with a per-path power decay.  Receive power control rescales each
UE column into a +/- power_ctrl_db window around ||h||^2 = B.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np


class PlacementError(Exception):
    """UE angle rejection sampling failed to satisfy the separation constraint."""


@dataclass
class PathSet:
    """Per-UE propagation paths: complex gains and spatial frequencies."""

    gains: np.ndarray          # complex, shape (L,)
    spatial_freqs: np.ndarray  # radians in [-pi, pi), shape (L,)

    def __post_init__(self):
        self.gains = np.asarray(self.gains, dtype=complex)
        self.spatial_freqs = np.asarray(self.spatial_freqs, dtype=float)
        if self.gains.shape != self.spatial_freqs.shape or self.gains.ndim != 1:
            raise ValueError("gains and spatial_freqs must be 1-D with equal length")
        if self.gains.size < 1:
            raise ValueError("at least one path is required")


@dataclass
class ScenarioConfig:
    """System geometry and UE drop statistics for one simulation scenario."""

    num_antennas: int = 64
    num_ues: int = 8
    los: bool = True
    sector_deg: float = 120.0
    min_sep_deg: float = 1.0
    power_ctrl_db: float = 3.0
    num_paths_los: int = 3
    num_paths_nlos: int = 12
    los_scatter_db: float = -13.0       # mean power of each LoS scattered path
    decay_db_per_path: float = 1.5      # non-LoS per-path power decay
    max_placement_tries: int = 1000

    def __post_init__(self):
        if self.num_ues > self.num_antennas:
            raise ValueError("num_ues must not exceed num_antennas")
        if self.min_sep_deg * self.num_ues > self.sector_deg:
            raise ValueError("UEs with the required separation do not fit the sector")


@dataclass
class ChannelMatrix:
    """Antenna-domain channel with per-UE drop metadata."""

    H: np.ndarray                      # complex, shape (B, U)
    angles_deg: np.ndarray = field(default=None)
    paths: list = field(default_factory=list)

    @property
    def num_antennas(self) -> int:
        return self.H.shape[0]

    @property
    def num_ues(self) -> int:
        return self.H.shape[1]


def steering_vector(phi: float, num_antennas: int) -> np.ndarray:
    """ULA array response [1, e^{j phi}, ..., e^{j (B-1) phi}]."""
    if num_antennas < 1:
        raise ValueError("num_antennas must be >= 1")
    return np.exp(1j * phi * np.arange(num_antennas))


def synth_ue_channel(paths: PathSet, num_antennas: int) -> np.ndarray:
    """Superpose path steering vectors: h = sum_l alpha_l a(phi_l)."""
    basis = np.exp(1j * np.outer(np.arange(num_antennas), paths.spatial_freqs))
    return basis @ paths.gains


def _draw_angles(cfg: ScenarioConfig, rng: np.random.Generator) -> np.ndarray:
    half = cfg.sector_deg / 2.0
    for _ in range(cfg.max_placement_tries):
        az = rng.uniform(-half, half, size=cfg.num_ues)
        if cfg.num_ues == 1:
            return az
        gaps = np.abs(az[:, None] - az[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() >= cfg.min_sep_deg:
            return az
    raise PlacementError(
        f"could not place {cfg.num_ues} UEs with {cfg.min_sep_deg} deg separation "
        f"in {cfg.max_placement_tries} tries"
    )


def _draw_paths(cfg: ScenarioConfig, rng: np.random.Generator,
                azimuth_deg: float) -> PathSet:
    half = cfg.sector_deg / 2.0
    if cfg.los:
        num = cfg.num_paths_los
        # Dominant path: fixed unit power, uniform phase, at the UE azimuth.
        gains = [np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))]
        freqs = [np.pi * np.sin(np.deg2rad(azimuth_deg))]
        scatter_pow = 10.0 ** (cfg.los_scatter_db / 10.0)
        for _ in range(num - 1):
            g = (rng.standard_normal() + 1j * rng.standard_normal()) * np.sqrt(scatter_pow / 2.0)
            gains.append(g)
            freqs.append(np.pi * np.sin(np.deg2rad(rng.uniform(-half, half))))
    else:
        num = cfg.num_paths_nlos
        powers = 10.0 ** (-cfg.decay_db_per_path * np.arange(num) / 10.0)
        powers /= powers.sum()
        gains = []
        freqs = []
        for p in powers:
            g = (rng.standard_normal() + 1j * rng.standard_normal()) * np.sqrt(p / 2.0)
            gains.append(g)
            freqs.append(np.pi * np.sin(np.deg2rad(rng.uniform(-half, half))))
    return PathSet(np.array(gains), np.array(freqs))


def apply_power_control(H: np.ndarray, range_db: float, target: float,
                        rng: np.random.Generator) -> np.ndarray:
    """Rescale each column so its power sits uniformly within +/- range_db of target."""
    H = np.asarray(H, dtype=complex)
    out = H.copy()
    for u in range(H.shape[1]):
        p = np.linalg.norm(H[:, u]) ** 2
        if p == 0.0:
            raise ValueError(f"column {u} has zero power")
        offset_db = rng.uniform(-range_db, range_db)
        out[:, u] *= np.sqrt(target * 10.0 ** (offset_db / 10.0) / p)
    return out


def draw_scenario(cfg: ScenarioConfig, rng: np.random.Generator) -> ChannelMatrix:
    """Draw UE placements and path gains, returning a power-controlled channel."""
    angles = _draw_angles(cfg, rng)
    paths = [_draw_paths(cfg, rng, a) for a in angles]
    H = np.column_stack([synth_ue_channel(p, cfg.num_antennas) for p in paths])
    H = apply_power_control(H, cfg.power_ctrl_db, float(cfg.num_antennas), rng)
    return ChannelMatrix(H=H, angles_deg=angles, paths=paths)


def dump_channel_csv(H: np.ndarray, path) -> None:
    """Write an antenna-domain channel as CSV rows ``b,u,re,im``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["b", "u", "re", "im"])
        for b in range(H.shape[0]):
            for u in range(H.shape[1]):
                writer.writerow([b, u, repr(float(H[b, u].real)),
                                 repr(float(H[b, u].imag))])


def load_channel_csv(path) -> ChannelMatrix:
    """Read a channel dumped by :func:`dump_channel_csv` (or an external tool)."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            rows.append((int(rec["b"]), int(rec["u"]),
                         float(rec["re"]), float(rec["im"])))
    if not rows:
        raise ValueError(f"no channel entries in {path}")
    B = max(r[0] for r in rows) + 1
    U = max(r[1] for r in rows) + 1
    H = np.zeros((B, U), dtype=complex)
    for b, u, re, im in rows:
        H[b, u] = re + 1j * im
    return ChannelMatrix(H=H)
