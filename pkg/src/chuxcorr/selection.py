"""Choosing root subsets whose pairwise cross-correlation stays under a budget.

Two roots ``r, s`` of length ``N`` have peak squared cross-correlation
``N * gcd(r - s, N)``, so a set of roots meets a squared budget ``theta_sq``
exactly when every pair satisfies ``gcd(r - s, N) * N <= theta_sq``.
"""
from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple

import numpy as np

from .numtheory import divisors, euler_phi, is_unit, unit_group

log = logging.getLogger(__name__)

DEFAULT_VISIT_BUDGET = 10**6
EXHAUSTIVE_MAX_N = 200

STATUS_BOUNDS_ONLY = "bounds-only"
STATUS_OPTIMAL = "optimal"  # reached the upper bound
STATUS_SEARCH_COMPLETE = "search-complete"  # whole tree searched, upper bound not reached
STATUS_BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SelectionPlan:
    n: int
    theta_sq: float
    divisor_set: tuple[int, ...]
    x_min: int
    x_phi_min: int
    lower_bound: int
    upper_bound: int
    selected: tuple[int, ...] = ()
    status: str = STATUS_BOUNDS_ONLY
    visits: int = 0

    @property
    def achieved(self) -> int:
        return len(self.selected)

    @property
    def consistent(self) -> bool:
        """Bounds sandwich the achieved size (budget-exhausted runs are exempt)."""
        if self.status == STATUS_BUDGET_EXHAUSTED:
            return self.lower_bound <= self.upper_bound and self.achieved <= self.upper_bound
        return self.lower_bound <= self.achieved <= self.upper_bound


class VerifyResult(NamedTuple):
    ok: bool
    violation: tuple[int, ...] | None = None  # (a,) for a non-unit, (a, b) for a bad pair
    reason: str = ""


def _check_budget(n: int, theta_sq: float) -> None:
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    if not n <= theta_sq <= n * n:
        raise ValueError(f"budget theta_sq={theta_sq} outside [N, N^2] = [{n}, {n * n}]")


def admissible_pair(n: int, r: int, s: int, theta_sq: float) -> bool:
    for root in (r, s):
        if not is_unit(root, n):
            raise ValueError(f"root not coprime with length: {root}, N={n}")
    return math.gcd(r - s, n) * n <= theta_sq


def plan(n: int, theta_sq: float) -> SelectionPlan:
    n = int(n)
    _check_budget(n, theta_sq)
    xs = tuple(x for x in divisors(n) if x * n > theta_sq)
    if not xs:
        # theta_sq == N^2 admits every pair; N itself still caps the set at phi(N)
        xs = (n,)
    x_min = xs[0]
    x_phi_min = min(xs, key=lambda x: (euler_phi(x), x))
    lower = sum(1 for k in range(1, x_min) if math.gcd(k, n) == 1)
    upper = euler_phi(x_phi_min)
    return SelectionPlan(n, theta_sq, xs, x_min, x_phi_min, lower, upper)


def _conflict_table(n: int, theta_sq: float) -> np.ndarray:
    """``bad[d]`` is True when two roots differing by ``d (mod N)`` are not admissible."""
    d = np.arange(n, dtype=np.int64)
    return np.gcd(d, n) * n > theta_sq


def class_search(cands: list[list[int]], bad: np.ndarray, target: int, budget: int = DEFAULT_VISIT_BUDGET):
    """Largest conflict-free pick of at most one candidate per class.

    ``bad`` is a boolean table over residues mod ``N``: candidates ``a`` and
    ``c`` clash when ``bad[(c - a) % N]``.  Candidates are tried in list order,
    so the first leaf reached is the greedy choice.  Returns
    ``(best, status, visits)``; the search stops early once ``target`` picks
    are made.
    """
    n = bad.shape[0]
    # bad2[n - a + c] == bad[(c - a) % n] for 0 <= a, c < n
    bad2 = np.concatenate([bad, bad]).astype(np.int32)
    levels = len(cands)

    conflicts = np.zeros(n, dtype=np.int32)
    chosen: list[int | None] = [None] * (levels + 1)
    pos = [0] * (levels + 1)
    best: list[int] = []
    size = 0
    visits = 0
    status = STATUS_SEARCH_COMPLETE
    i = 0

    def take(a: int) -> None:
        # conflicts[c] counts selected roots that c clashes with
        conflicts[:] += bad2[n - a:2 * n - a]

    def drop(a: int) -> None:
        conflicts[:] -= bad2[n - a:2 * n - a]

    def current() -> list[int]:
        return [c for c in chosen[:i] if c is not None]

    while True:
        if i == levels:
            if size > len(best):
                best = [c for c in chosen[:levels] if c is not None]
                if len(best) >= target:
                    status = STATUS_OPTIMAL
                    break
            i -= 1
            if chosen[i] is not None:
                drop(chosen[i])
                size -= 1
            continue
        if i < 0:
            break
        if visits >= budget:
            status = STATUS_BUDGET_EXHAUSTED
            if size > len(best):
                best = current()
            break
        advanced = False
        if size + (levels - i) > len(best):
            opts = cands[i]
            while pos[i] < len(opts):
                c = opts[pos[i]]
                pos[i] += 1
                visits += 1
                if conflicts[c] == 0:
                    take(c)
                    size += 1
                    chosen[i] = c
                    advanced = True
                    break
            # last option at every level: leave the class empty
            if not advanced and pos[i] == len(opts) and size + (levels - i - 1) > len(best):
                pos[i] += 1
                chosen[i] = None
                advanced = True
        if advanced:
            i += 1
            pos[i] = 0
            continue
        pos[i] = 0
        i -= 1
        if i < 0:
            break
        if chosen[i] is not None:
            drop(chosen[i])
            size -= 1

    return best, status, visits


def construct_set(n: int, theta_sq: float, budget: int = DEFAULT_VISIT_BUDGET) -> SelectionPlan:
    """Build a budget-respecting root set with one root per unit residue class mod ``x_phi_min``.

    Classes are visited in ascending order and each takes its smallest
    admissible root ``m * x_phi_min + n``.  When that greedy pass falls short of
    the upper bound, a depth-first search over earlier choices (including
    leaving a class empty) continues until the bound is met, the tree is
    exhausted, or ``budget`` candidate visits have been spent.
    """
    p = plan(n, theta_sq)
    n = p.n
    x = p.x_phi_min
    classes = [c for c in range(1, x) if math.gcd(c, x) == 1]
    cands = [[m * x + c for m in range(n // x) if math.gcd(m * x + c, n) == 1] for c in classes]
    bad = _conflict_table(n, theta_sq)
    best, status, visits = class_search(cands, bad, p.upper_bound, budget)

    if len(best) < p.upper_bound:
        log.info("N=%d theta_sq=%s: reached %d of upper bound %d (%s)", n, theta_sq, len(best), p.upper_bound, status)
    return replace(p, selected=tuple(sorted(best)), status=status, visits=visits)


def _color_bound(cand: int, adj: list[int], limit: int) -> int:
    """Greedy colouring size of the candidate bitset, stopping once it exceeds ``limit``."""
    colors = 0
    uncolored = cand
    while uncolored:
        colors += 1
        if colors > limit:
            return colors
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            uncolored &= ~low
            avail &= ~adj[v] & ~low
    return colors


def max_set_exhaustive(n: int, theta_sq: float) -> tuple[int, ...]:
    """Maximum budget-respecting root set by branch and bound.

    Vertices are the roots of length ``N`` and edges join admissible pairs.
    Branching follows ascending root order with a greedy colouring bound, so
    the first maximum clique found is the lexicographically smallest one.
    """
    n = int(n)
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive search is capped at N <= {EXHAUSTIVE_MAX_N}, got {n}")
    _check_budget(n, theta_sq)
    roots = unit_group(n).members
    k = len(roots)
    adj = [0] * k
    for a in range(k):
        mask = 0
        for b in range(k):
            if a != b and math.gcd(roots[a] - roots[b], n) * n <= theta_sq:
                mask |= 1 << b
        adj[a] = mask

    best: list[int] = []
    current: list[int] = []

    def expand(cand: int) -> None:
        nonlocal best
        if len(current) > len(best):
            best = current.copy()
        while cand:
            need = len(best) - len(current)
            if cand.bit_count() <= need or _color_bound(cand, adj, need) <= need:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            current.append(v)
            expand(cand & adj[v])
            current.pop()
            cand &= ~low

    limit = sys.getrecursionlimit()
    if k + 50 > limit:
        sys.setrecursionlimit(k + 100)
    expand((1 << k) - 1)
    return tuple(roots[v] for v in best)


def verify_set(n: int, selected: Iterable[int], theta_sq: float) -> VerifyResult:
    """Check every unordered pair; report the first non-unit or the lexicographically first bad pair."""
    items = sorted(set(int(a) for a in selected))
    for a in items:
        if not is_unit(a, n):
            return VerifyResult(False, (a,), "non-unit")
    arr = np.asarray(items, dtype=np.int64)
    bad = np.triu(_conflict_table(n, theta_sq)[(arr[None, :] - arr[:, None]) % n], k=1)
    hits = np.argwhere(bad)  # row-major, so the first hit is the lexicographically first pair
    if hits.size:
        i, j = hits[0]
        return VerifyResult(False, (items[i], items[j]), "pair")
    return VerifyResult(True)
