"""Hot loops: correlation sums over exact phase exponents and gcd class counts.

Each kernel has a numba ``@njit`` version and a vectorized numpy version with
the same contract.  The numba path is used when numba imports cleanly and the
environment variable ``CHUXCORR_DISABLE_NUMBA`` is unset (or ``0``/``false``).
Both implementations stay importable so tests and benchmarks can compare them.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("CHUXCORR_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _DISABLE
BACKEND = "numba" if USE_NUMBA else "numpy"


def _jit_options():
    return dict(cache=True, nogil=True, fastmath=False, error_model="numpy")


def phase_table(n: int) -> np.ndarray:
    """``exp(j*pi*e/n)`` for every exponent ``e`` in ``[0, 2n)``."""
    return np.exp(1j * np.pi * np.arange(2 * n, dtype=np.float64) / n)


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def xcorr_lags_numpy(exp_r, exp_s, table, lags):
    n = exp_r.shape[0]
    k = np.arange(n, dtype=np.int64)
    idx = (k[None, :] + lags[:, None]) % n
    d = (exp_r[None, :] - exp_s[idx]) % (2 * n)
    return table[d].sum(axis=1)


def xcorr_pairs_numpy(exps, table):
    n_roots, n = exps.shape
    k = np.arange(n, dtype=np.int64)
    # shifted[s, tau, k] = exps[s, (k + tau) mod n]
    shift_idx = (k[None, :] + k[:, None]) % n
    shifted = exps[:, shift_idx]
    out = np.empty((n_roots, n_roots, n), dtype=np.complex128)
    for i in range(n_roots):
        d = (exps[i][None, None, :] - shifted) % (2 * n)
        out[i] = table[d].sum(axis=2)
    return out


def gcd_class_counts_numpy(units, n, divs):
    index_of = np.full(n + 1, -1, dtype=np.int64)
    index_of[divs] = np.arange(divs.shape[0])
    g = np.gcd(units[:, None] - units[None, :], n)
    cols = index_of[g]
    rows = np.broadcast_to(np.arange(units.shape[0])[:, None], cols.shape)
    counts = np.zeros((units.shape[0], divs.shape[0]), dtype=np.int64)
    np.add.at(counts, (rows.ravel(), cols.ravel()), 1)
    return counts


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def _xcorr_lags_nb(exp_r, exp_s, table, lags):
    n = exp_r.shape[0]
    two_n = 2 * n
    out = np.empty(lags.shape[0], dtype=np.complex128)
    for t in range(lags.shape[0]):
        tau = lags[t]
        acc = 0j
        for k in range(n):
            j = k + tau
            if j >= n:
                j -= n
            d = exp_r[k] - exp_s[j]
            if d < 0:
                d += two_n
            acc += table[d]
        out[t] = acc
    return out


def _xcorr_pairs_nb(exps, table):
    n_roots = exps.shape[0]
    n = exps.shape[1]
    two_n = 2 * n
    out = np.empty((n_roots, n_roots, n), dtype=np.complex128)
    for i in range(n_roots):
        for s in range(n_roots):
            for tau in range(n):
                acc = 0j
                for k in range(n):
                    j = k + tau
                    if j >= n:
                        j -= n
                    d = exps[i, k] - exps[s, j]
                    if d < 0:
                        d += two_n
                    acc += table[d]
                out[i, s, tau] = acc
    return out


def _gcd_class_counts_nb(units, n, divs):
    index_of = np.full(n + 1, -1, dtype=np.int64)
    for j in range(divs.shape[0]):
        index_of[divs[j]] = j
    m = units.shape[0]
    counts = np.zeros((m, divs.shape[0]), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            a = units[j] - units[i]
            if a < 0:
                a = -a
            b = n
            while a:
                a, b = b % a, a
            counts[i, index_of[b]] += 1
    return counts


if HAS_NUMBA:
    xcorr_lags_numba = njit(**_jit_options())(_xcorr_lags_nb)
    xcorr_pairs_numba = njit(**_jit_options())(_xcorr_pairs_nb)
    gcd_class_counts_numba = njit(**_jit_options())(_gcd_class_counts_nb)
else:  # pragma: no cover
    xcorr_lags_numba = _xcorr_lags_nb
    xcorr_pairs_numba = _xcorr_pairs_nb
    gcd_class_counts_numba = _gcd_class_counts_nb

if USE_NUMBA:
    xcorr_lags = xcorr_lags_numba
    xcorr_pairs = xcorr_pairs_numba
    gcd_class_counts = gcd_class_counts_numba
else:
    xcorr_lags = xcorr_lags_numpy
    xcorr_pairs = xcorr_pairs_numpy
    gcd_class_counts = gcd_class_counts_numpy
