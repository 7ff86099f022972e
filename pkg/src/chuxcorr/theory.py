"""Closed-form cross-correlation magnitudes of Chu sequence pairs.

For roots ``r, s`` of length ``N`` let ``g = gcd(N, r - s)``, ``u = N/g`` and
``v = (r - s)/g``.  The magnitude is ``sqrt(N*g)`` on exactly one residue
class of lags modulo ``g`` and zero elsewhere: the class ``d = 0``, except
when ``N`` is even and ``u*v`` is odd, where it is ``d = g/2``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .numtheory import is_unit


class ParityCase(enum.Enum):
    PEAK_AT_ZERO = "PeakAtZero"
    PEAK_AT_HALF_G = "PeakAtHalfG"
    AUTO = "Auto"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class LagDecomposition:
    tau: int
    i: int
    d: int


@dataclass(frozen=True)
class CrossCorrProfile:
    n: int
    r: int
    s: int
    g: int
    u: int
    v: int
    parity_case: ParityCase
    peak_offset: int

    @property
    def peak_magnitude_sq(self) -> int:
        return self.n * self.g

    @property
    def peak_magnitude(self) -> float:
        return math.sqrt(self.n * self.g)

    def decompose(self, tau: int) -> LagDecomposition:
        return decompose_lag(tau, self.g)

    def peak_lags(self) -> list[int]:
        return [i * self.g + self.peak_offset for i in range(self.u)]


def decompose_lag(tau: int, g: int) -> LagDecomposition:
    i, d = divmod(tau, g)
    return LagDecomposition(tau, i, d)


def _check_pair(n: int, r: int, s: int) -> None:
    if n < 2:
        raise ValueError(f"sequence length must be >= 2, got {n}")
    for name, root in (("r", r), ("s", s)):
        if not is_unit(root, n):
            raise ValueError(f"root not coprime with length: {name}={root}, N={n}")


def _check_lag(tau: int, n: int) -> int:
    if not 0 <= tau < n:
        raise ValueError(f"lag out of range for N={n}: {tau}")
    return tau


def pair_profile(n: int, r: int, s: int) -> CrossCorrProfile:
    n, r, s = int(n), int(r), int(s)
    _check_pair(n, r, s)
    diff = r - s
    g = math.gcd(n, diff)
    u = n // g
    v = diff // g  # signed; only its parity is used
    if diff == 0:
        case, offset = ParityCase.AUTO, 0
    elif n % 2 == 0 and (u * v) % 2 == 1:
        case, offset = ParityCase.PEAK_AT_HALF_G, g // 2
    else:
        case, offset = ParityCase.PEAK_AT_ZERO, 0
    return CrossCorrProfile(n, r, s, g, u, v, case, offset)


def magnitude_closed_form(profile: CrossCorrProfile, tau: int) -> float:
    tau = _check_lag(int(tau), profile.n)
    # for AUTO, g == N so d == tau and the delta fires only at tau == 0
    if tau % profile.g == profile.peak_offset:
        return profile.peak_magnitude
    return 0.0


def magnitude_closed_form_all_lags(profile: CrossCorrProfile) -> np.ndarray:
    out = np.zeros(profile.n)
    out[profile.peak_offset::profile.g] = profile.peak_magnitude
    return out


def max_magnitude(n: int, r: int, s: int) -> float:
    """Peak cross-correlation magnitude over all lags, ``sqrt(N * gcd(N, r - s))``."""
    _check_pair(int(n), int(r), int(s))
    return math.sqrt(n * math.gcd(n, r - s))


def _gsum_terms(n: int, r: int, s: int, d: np.ndarray, sign: int = -1) -> np.ndarray:
    """Sum over ``m < g`` of ``(-1)**kappa(m) * exp(sign * j*2*pi*s*m*d/g)`` for each ``d``.

    ``kappa(m) = u*v*m^2`` for even ``N`` and ``v*m*(u+1)`` for odd ``N``.  Each
    term is written as ``exp(j*pi*e/g)`` with the integer exponent
    ``e = g*kappa(m) + sign*2*s*m*d (mod 2g)``.
    """
    diff = r - s
    g = math.gcd(n, diff)
    u = n // g
    v = diff // g
    m = np.arange(g, dtype=np.int64)
    if n % 2 == 0:
        kappa = (u * v % 2) * (m * m % 2)
    else:
        kappa = (v * (u + 1) % 2) * (m % 2)
    two_g = 2 * g
    e = (g * kappa[None, :] + sign * 2 * (s % two_g) * ((m[None, :] * d[:, None]) % two_g)) % two_g
    return np.exp(1j * np.pi * e.astype(np.float64) / g).sum(axis=1)


def magnitude_squared_gsum(n: int, r: int, s: int, tau: int, return_residue: bool = False, sign: int = -1):
    """Squared cross-correlation magnitude from the ``g``-term sum.

    Evaluates ``u*g * sum_{m<g} (-1)**kappa(m) * exp(-j*2*pi*s*m*d/g)`` where
    ``d = tau mod g``.  The sum is real in exact arithmetic; with
    ``return_residue=True`` the absolute imaginary part is returned as well.
    ``sign=+1`` selects the conjugate exponential, which gives the same value.
    """
    n, r, s = int(n), int(r), int(s)
    _check_pair(n, r, s)
    tau = _check_lag(int(tau), n)
    g = math.gcd(n, r - s)
    total = (n // g) * g * complex(_gsum_terms(n, r, s, np.array([tau % g]), sign)[0])
    if return_residue:
        return total.real, abs(total.imag)
    return total.real


def magnitude_squared_gsum_all_lags(n: int, r: int, s: int, sign: int = -1) -> np.ndarray:
    """Complex ``g``-term sums for every lag ``0 <= tau < N``; ``.real`` is ``|theta|^2``."""
    n, r, s = int(n), int(r), int(s)
    _check_pair(n, r, s)
    g = math.gcd(n, r - s)
    per_class = n * _gsum_terms(n, r, s, np.arange(g, dtype=np.int64), sign)
    return per_class[np.arange(n) % g]
