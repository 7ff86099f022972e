"""How many roots sit at each maximum cross-correlation level.

For a reference root ``s`` of length ``N``, every root ``r`` has peak squared
magnitude ``N * x`` with ``x = gcd(r - s, N)``.  The distribution maps each
divisor ``x`` of ``N`` to the number of such roots.  It does not depend on the
reference root, and has a closed multiplicative form over the prime powers of
``N``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .numtheory import divisors, euler_phi, factorize, is_unit, unit_group


@dataclass(frozen=True)
class MaxCorrDistribution:
    n: int
    counts: dict[int, int] = field(compare=True)
    reference_root: int | None = field(default=None, compare=False)

    def count(self, x: int) -> int:
        return self.counts.get(x, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero(self) -> dict[int, int]:
        return {x: c for x, c in self.counts.items() if c}


@dataclass(frozen=True)
class DivisorCountTerm:
    """Per-prime factors of the closed-form count for one divisor ``x``.

    ``dividing`` maps each prime of ``x`` (exponent ``n_i`` in ``x``, ``c_i``
    in ``N``) to ``p^(c-n) - [c > n] * p^(c-n-1)``; ``coprime`` maps each
    remaining prime of ``N`` to ``p^c - 2*p^(c-1)``.
    """

    x: int
    exponents: dict[int, int]
    dividing: dict[int, int]
    coprime: dict[int, int]

    @property
    def count(self) -> int:
        return math.prod(self.dividing.values()) * math.prod(self.coprime.values())


def divisor_count_term(n: int, x: int) -> DivisorCountTerm:
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    if x < 1 or n % x:
        raise ValueError(f"{x} is not a divisor of {n}")
    exponents: dict[int, int] = {}
    dividing: dict[int, int] = {}
    coprime: dict[int, int] = {}
    for p, c in factorize(n).factors:
        k = 0
        y = x
        while y % p == 0:
            y //= p
            k += 1
        if k:
            exponents[p] = k
            rest = c - k
            dividing[p] = p**rest - (p ** (rest - 1) if rest > 0 else 0)
        else:
            coprime[p] = p**c - 2 * p ** (c - 1)
    return DivisorCountTerm(x, exponents, dividing, coprime)


def distribution_closed(n: int) -> MaxCorrDistribution:
    n = int(n)
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    return MaxCorrDistribution(n, {x: divisor_count_term(n, x).count for x in divisors(n)})


def distribution_bruteforce(n: int, s: int) -> MaxCorrDistribution:
    """Count ``gcd(r - s, N)`` over every root ``r``; ``r == s`` lands on ``x = N``."""
    n, s = int(n), int(s)
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    if not is_unit(s, n):
        raise ValueError(f"reference root not coprime with length: s={s}, N={n}")
    units = np.asarray(unit_group(n).members, dtype=np.int64)
    g = np.gcd(units - s, n)
    values, freq = np.unique(g, return_counts=True)
    counts = dict.fromkeys(divisors(n), 0)
    for x, c in zip(values.tolist(), freq.tolist()):
        # a non-divisor key here would break the divisor-lattice law; keep it visible
        counts[x] = counts.get(x, 0) + c
    return MaxCorrDistribution(n, counts, reference_root=s)


def bruteforce_count_matrix(n: int) -> tuple[tuple[int, ...], list[int], np.ndarray]:
    """Counts for every reference root at once: ``matrix[i, j]`` is the count at ``divs[j]`` for ``roots[i]``."""
    roots = unit_group(n).members
    divs = divisors(n)
    matrix = _kernels.gcd_class_counts(
        np.asarray(roots, dtype=np.int64), n, np.asarray(divs, dtype=np.int64)
    )
    return roots, divs, matrix


class UniformityResult(NamedTuple):
    ok: bool
    counterexample: tuple[int, int, int] | None  # (s, s', x) with differing counts


def verify_uniformity(n: int) -> UniformityResult:
    """Check that the brute-force distribution is identical for every reference root."""
    n = int(n)
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    roots, divs, matrix = bruteforce_count_matrix(n)
    differs = np.nonzero((matrix != matrix[0]).any(axis=1))[0]
    if differs.size == 0:
        return UniformityResult(True, None)
    i = int(differs[0])
    j = int(np.nonzero(matrix[i] != matrix[0])[0][0])
    return UniformityResult(False, (roots[0], roots[i], divs[j]))


def special_case_count(n: int, x: int) -> int:
    """Count at level ``x`` for prime, squarefree or prime-power ``N``."""
    n, x = int(n), int(x)
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    f = factorize(n)
    if x > n or n % x:
        if not (f.is_squarefree() or f.is_prime_power()):
            raise ValueError(f"N={n} is not prime, squarefree or a prime power")
        return 0
    if f.is_prime():
        return 1 if x == n else n - 2
    if f.is_squarefree():
        if x == n:
            return 1
        return math.prod(p - 2 for p in f.primes if x % p)
    if f.is_prime_power():
        p, c = f.factors[0]
        if x == 1:
            return p**c - 2 * p ** (c - 1)
        k = 0
        while x % p**(k + 1) == 0:
            k += 1
        rest = c - k
        return p**rest - (p ** (rest - 1) if rest > 0 else 0)
    raise ValueError(f"N={n} is not prime, squarefree or a prime power")


def totient_check(dist: MaxCorrDistribution) -> bool:
    return dist.total() == euler_phi(dist.n)
