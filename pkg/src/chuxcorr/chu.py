"""Chu sequences with exact phase bookkeeping and brute-force periodic correlation.

Phases are kept as integers modulo ``2N``: sample ``k`` of a sequence is
``exp(j*pi*e_k/N)``.  A correlation term then has the integer exponent
``e_r(k) - e_s(k + tau) mod 2N`` and only one complex exponential (a table
lookup) is evaluated per term, so there is no floating phase drift.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .numtheory import gcd, unit_group


@dataclass(frozen=True, eq=False)
class ChuSequence:
    n: int
    root: int
    phase_exponents: np.ndarray = field(repr=False)

    def samples(self) -> np.ndarray:
        return _kernels.phase_table(self.n)[self.phase_exponents]

    def sample(self, k: int) -> complex:
        """Sample at index ``k``; indices wrap modulo ``n`` (periodic extension)."""
        return complex(np.exp(1j * np.pi * int(self.phase_exponents[k % self.n]) / self.n))

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChuSequence):
            return NotImplemented
        return self.n == other.n and self.root == other.root

    def __hash__(self) -> int:
        return hash((self.n, self.root))


@dataclass(frozen=True, eq=False)
class CorrelationVector:
    """``values[tau]`` is the periodic correlation at lag ``tau``, ``0 <= tau < n``."""

    n: int
    values: np.ndarray = field(repr=False)

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.values)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def __getitem__(self, tau: int) -> complex:
        return complex(self.values[tau % self.n])

    def __len__(self) -> int:
        return self.n


def phase_exponents(n: int, r: int) -> np.ndarray:
    """Integer exponents ``e_k`` in ``[0, 2n)`` with ``a_r(k) = exp(j*pi*e_k/n)``."""
    k = np.arange(n, dtype=np.int64)
    two_n = 2 * n
    # reduce before multiplying so nothing overflows int64
    if n % 2 == 0:
        q = (k * k) % two_n
    else:
        q = (k * (k + 1)) % two_n
    return (q * (r % two_n)) % two_n


def _check_root(n: int, r: int) -> None:
    if n < 2:
        raise ValueError(f"sequence length must be >= 2, got {n}")
    if not 0 < r < n:
        raise ValueError(f"root out of range: need 0 < r < N, got r={r}, N={n}")
    if gcd(r, n) != 1:
        raise ValueError(f"root not coprime with length: r={r}, N={n}")


def generate(n: int, r: int) -> ChuSequence:
    n, r = int(n), int(r)
    _check_root(n, r)
    e = phase_exponents(n, r)
    e.setflags(write=False)
    return ChuSequence(n, r, e)


def _normalize_lag(tau: int, n: int) -> int:
    # negative lags are accepted and reduced; anything else outside one period is an error
    tau = int(tau)
    if tau < 0:
        return tau % n
    if not 0 <= tau < n:
        raise ValueError(f"lag out of range for N={n}: {tau}")
    return tau


def cross_correlation(seq_r: ChuSequence, seq_s: ChuSequence, tau: int) -> complex:
    """``sum_k a_r(k) * conj(a_s(k + tau))`` with periodic wrap."""
    if seq_r.n != seq_s.n:
        raise ValueError(f"length mismatch: {seq_r.n} != {seq_s.n}")
    n = seq_r.n
    tau = _normalize_lag(tau, n)
    lags = np.array([tau], dtype=np.int64)
    out = _kernels.xcorr_lags(seq_r.phase_exponents, seq_s.phase_exponents, _kernels.phase_table(n), lags)
    return complex(out[0])


def autocorrelation(seq: ChuSequence, tau: int) -> complex:
    return cross_correlation(seq, seq, tau)


def cross_correlation_all_lags(seq_r: ChuSequence, seq_s: ChuSequence, method: str = "direct") -> CorrelationVector:
    """Correlation at every lag.

    ``method="direct"`` sums exact-phase terms (O(N^2)); ``method="fft"`` uses
    ``fft(fft(a_r) * conj(fft(a_s))) / N`` (O(N log N)).  Both agree to within
    round-off; the direct path is the reference.
    """
    if seq_r.n != seq_s.n:
        raise ValueError(f"length mismatch: {seq_r.n} != {seq_s.n}")
    n = seq_r.n
    if method == "direct":
        lags = np.arange(n, dtype=np.int64)
        values = _kernels.xcorr_lags(seq_r.phase_exponents, seq_s.phase_exponents, _kernels.phase_table(n), lags)
    elif method == "fft":
        fr = np.fft.fft(seq_r.samples())
        fs = np.fft.fft(seq_s.samples())
        values = np.fft.fft(fr * np.conj(fs)) / n
    else:
        raise ValueError(f"unknown method {method!r}")
    values = np.asarray(values, dtype=np.complex128)
    values.setflags(write=False)
    return CorrelationVector(n, values)


def all_pairs_cross_correlation(n: int) -> tuple[tuple[int, ...], np.ndarray]:
    """Direct correlation for every ordered root pair of length ``n``.

    Returns ``(roots, values)`` with ``values[i, j, tau]`` the correlation of
    roots ``roots[i]`` and ``roots[j]`` at lag ``tau``.
    """
    roots = unit_group(n).members
    exps = np.stack([phase_exponents(n, r) for r in roots])
    return roots, _kernels.xcorr_pairs(exps, _kernels.phase_table(n))


def sequence_rows(seq: ChuSequence) -> list[tuple[int, float, float]]:
    """Rows ``(k, re, im)`` for export."""
    s = seq.samples()
    return [(k, float(s[k].real), float(s[k].imag)) for k in range(seq.n)]
