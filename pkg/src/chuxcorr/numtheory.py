"""Integer arithmetic primitives: factorization, gcd, totient, divisors, unit group."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

MAX_N = 2**63 - 1


def _check_positive(n: int, name: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        n = int(n)
    if n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n}")
    if n > MAX_N:
        raise ValueError(f"{name} exceeds 2**63 - 1")
    return n


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition ``n = prod(p**c for p, c in factors)``."""

    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.factors)

    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def is_squarefree(self) -> bool:
        return all(c == 1 for _, c in self.factors)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def product(self) -> int:
        return reduce(lambda acc, pc: acc * pc[0] ** pc[1], self.factors, 1)

    def format(self, sep: str = "·") -> str:
        """Render as ``3·13^2``; exponent 1 is omitted, ``1`` for the empty product."""
        if not self.factors:
            return "1"
        return sep.join(str(p) if c == 1 else f"{p}^{c}" for p, c in self.factors)

    def __str__(self) -> str:
        return self.format()


def factorize(n: int) -> Factorization:
    """Factor ``n`` by trial division up to sqrt(n)."""
    n = _check_positive(n)
    factors = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            c = 0
            while m % p == 0:
                m //= p
                c += 1
            factors.append((p, c))
    # 6k +- 1 wheel
    p, step = 5, 2
    while p * p <= m:
        if m % p == 0:
            c = 0
            while m % p == 0:
                m //= p
                c += 1
            factors.append((p, c))
        p += step
        step = 6 - step
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def euler_phi(n: int) -> int:
    n = _check_positive(n)
    result = n
    for p, _ in factorize(n).factors:
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    n = _check_positive(n)
    divs = [1]
    for p, c in factorize(n).factors:
        divs = [d * p**e for d in divs for e in range(c + 1)]
    return sorted(divs)


def gcd(a: int, b: int) -> int:
    # math.gcd already works on absolute values; gcd(0, n) == |n|
    return math.gcd(int(a), int(b))


@dataclass(frozen=True)
class UnitGroup:
    """Residues ``0 < r < n`` coprime to ``n``; the admissible Chu roots for length ``n``."""

    n: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, r: object) -> bool:
        return isinstance(r, int) and 0 < r < self.n and math.gcd(r, self.n) == 1


def unit_group(n: int) -> UnitGroup:
    n = _check_positive(n)
    if n < 2:
        raise ValueError(f"unit group needs n >= 2, got {n}")
    return UnitGroup(n, tuple(r for r in range(1, n) if math.gcd(r, n) == 1))


def is_unit(r: int, n: int) -> bool:
    return 0 < r < n and math.gcd(r, n) == 1
