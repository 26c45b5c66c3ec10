"""Linear equalizer construction: dense LMMSE and sparse OMP variants.

Filter math runs in double precision; quantize_filter produces the
fixed-point view used by the equalization kernels, with a power-of-two
rescale 2^k chosen so the largest entry component lands in [0.25, 0.5).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .numerics import FixedFormat, FxComplexArray, solve_hermitian_pd, to_fixed


@dataclass
class EqualizerMatrix:
    """U x B filter with a sparsity-structure tag and optional fixed-point view."""

    W: np.ndarray                      # complex, shape (U, B)
    structure: str = "dense"           # 'dense' | 'entrywise' | 'columnwise'
    domain: str = "beamspace"          # 'antenna' | 'beamspace'
    support: object = None             # entrywise: list of per-row index arrays
                                       # columnwise: shared index array
    fx: FxComplexArray | None = None
    scale_exp: int = 0                 # stored codes represent W * 2^scale_exp

    @property
    def num_ues(self) -> int:
        return self.W.shape[0]

    @property
    def num_beams(self) -> int:
        return self.W.shape[1]


def lmmse_filter(H: np.ndarray, rho: float, domain: str = "beamspace") -> EqualizerMatrix:
    """Regularized LMMSE filter W = (H^H H + rho I)^-1 H^H via the U x U Gram."""
    H = np.asarray(H, dtype=complex)
    U = H.shape[1]
    gram = H.conj().T @ H + rho * np.eye(U)
    W = solve_hermitian_pd(gram, H.conj().T)
    return EqualizerMatrix(W=W, structure="dense", domain=domain)


def residual_objective(eq: EqualizerMatrix, H: np.ndarray, rho: float) -> float:
    """||I - W H||_F^2 + rho ||W||_F^2."""
    H = np.asarray(H)
    U = eq.num_ues
    r = np.eye(U) - eq.W @ H
    return float(np.linalg.norm(r, "fro") ** 2 + rho * np.linalg.norm(eq.W, "fro") ** 2)


def _restricted_row_solve(H_S: np.ndarray, rho: float, u: int) -> np.ndarray:
    """Row-u restricted LS: w = e_u^T H_S^H (H_S H_S^H + rho I)^-1."""
    k = H_S.shape[0]
    A = H_S @ H_S.conj().T + rho * np.eye(k)
    # w A = e_u^T H_S^H with A Hermitian, so w^H = A^-1 [H_S]_{:,u}.
    return np.conj(solve_hermitian_pd(A, H_S[:, u]))


def _restricted_solve(H_S: np.ndarray, rho: float) -> np.ndarray:
    """Shared-support restricted solution W_S = H_S^H (H_S H_S^H + rho I)^-1."""
    k = H_S.shape[0]
    A = H_S @ H_S.conj().T + rho * np.eye(k)
    # W_S^H = A^-1 H_S since A Hermitian.
    return solve_hermitian_pd(A, H_S).conj().T


def omp_filter(H: np.ndarray, rho: float, K: int, mode: str,
               domain: str = "beamspace") -> EqualizerMatrix:
    """Strictly sparse filter via orthogonal matching pursuit over beam rows.

    mode 'entrywise': per UE, greedily pick K beams maximizing the residual
    correlation |r (h_b^r)^H| and re-solve the support-restricted
    regularized LS each iteration.  mode 'columnwise': one shared support
    picked by the residual-matrix column norm ||R (h_b^r)^H||_2.
    Ties break toward the smallest beam index.
    """
    H = np.asarray(H, dtype=complex)
    B, U = H.shape
    if not 1 <= K <= B:
        raise ValueError(f"K must be in 1..{B}, got {K}")
    W = np.zeros((U, B), dtype=complex)

    if mode == "entrywise":
        supports = []
        for u in range(U):
            r = np.zeros(U, dtype=complex)
            r[u] = 1.0
            S: list[int] = []
            w_S = np.zeros(0, dtype=complex)
            for _ in range(K):
                corr = np.abs(H.conj() @ r)  # |r (h_b^r)^H| per beam b
                corr[S] = -1.0
                b_star = int(np.argmax(corr))  # argmax takes the first (smallest) index
                S.append(b_star)
                H_S = H[S, :]
                w_S = _restricted_row_solve(H_S, rho, u)
                r = np.zeros(U, dtype=complex)
                r[u] = 1.0
                r -= w_S @ H_S
            W[u, S] = w_S
            supports.append(np.array(sorted(S)))
        return EqualizerMatrix(W=W, structure="entrywise", domain=domain,
                               support=supports)

    if mode == "columnwise":
        R = np.eye(U, dtype=complex)
        S = []
        W_S = np.zeros((U, 0), dtype=complex)
        for _ in range(K):
            score = np.linalg.norm(R @ H.conj().T, axis=0)  # ||R (h_b^r)^H||_2
            score[S] = -1.0
            b_star = int(np.argmax(score))
            S.append(b_star)
            H_S = H[S, :]
            W_S = _restricted_solve(H_S, rho)
            R = np.eye(U, dtype=complex) - W_S @ H_S
        W[:, S] = W_S
        return EqualizerMatrix(W=W, structure="columnwise", domain=domain,
                               support=np.array(sorted(S)))

    raise ValueError(f"unknown OMP mode {mode!r}")


def _scale_exponent(max_abs: float) -> int:
    """Power-of-two exponent k with max_abs * 2^k in [0.25, 0.5)."""
    import math
    mantissa, exp = math.frexp(max_abs)  # max_abs = mantissa * 2^exp, mantissa in [0.5, 1)
    return -exp - 1


def quantize_filter(eq: EqualizerMatrix, fmt: FixedFormat) -> EqualizerMatrix:
    """Attach a fixed-point view: scale by 2^k into [0.25, 0.5), then quantize."""
    W = eq.W
    max_abs = float(max(np.abs(W.real).max(), np.abs(W.imag).max(), 0.0))
    if max_abs == 0.0:
        k = 0
        scaled = W
    else:
        k = _scale_exponent(max_abs)
        scaled = W * 2.0 ** k
    re, _ = to_fixed(scaled.real, fmt)
    im, _ = to_fixed(scaled.imag, fmt)
    return EqualizerMatrix(W=W, structure=eq.structure, domain=eq.domain,
                           support=eq.support,
                           fx=FxComplexArray(re, im, fmt), scale_exp=k)


def dump_filter_csv(eq: EqualizerMatrix, path) -> None:
    """Write filter entries as CSV rows ``u,b,re,im,structure,k``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["u", "b", "re", "im", "structure", "k"])
        for u in range(eq.num_ues):
            for b in range(eq.num_beams):
                writer.writerow([u, b, repr(float(eq.W[u, b].real)),
                                 repr(float(eq.W[u, b].imag)),
                                 eq.structure, eq.scale_exp])
