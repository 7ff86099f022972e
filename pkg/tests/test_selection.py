import itertools
import logging
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chuxcorr.numtheory import divisors, factorize, unit_group
from chuxcorr.selection import (
    STATUS_BUDGET_EXHAUSTED,
    STATUS_OPTIMAL,
    STATUS_SEARCH_COMPLETE,
    admissible_pair,
    class_search,
    construct_set,
    max_set_exhaustive,
    plan,
    verify_set,
)

from oracles import naive_max_set_size


def test_admissible_pair_examples():
    assert admissible_pair(143, 5, 2, 1430)
    assert not admissible_pair(143, 12, 1, 1430)
    assert not admissible_pair(143, 7, 7, 143 * 143 - 1)
    assert admissible_pair(143, 7, 7, 143 * 143)
    with pytest.raises(ValueError):
        admissible_pair(143, 11, 1, 1430)


def test_plan_example_1():
    p = plan(143, 1430)
    assert p.divisor_set == (11, 13, 143)
    assert (p.x_min, p.x_phi_min, p.lower_bound, p.upper_bound) == (11, 11, 10, 10)
    assert p.selected == ()


def test_plan_example_2():
    p = plan(154, 1540)
    assert (p.x_min, p.x_phi_min, p.upper_bound) == (11, 14, 6)
    assert p.lower_bound == 4  # {1, 3, 5, 9}


def test_plan_prime_floor():
    p = plan(509, 509)
    assert p.divisor_set == (509,) and p.upper_bound == 508


def test_plan_full_budget_falls_back_to_n():
    p = plan(12, 144)
    assert p.divisor_set == (12,) and p.lower_bound == p.upper_bound == 4


def test_plan_rejects_budget_out_of_range():
    with pytest.raises(ValueError):
        plan(143, 142)
    with pytest.raises(ValueError):
        plan(143, 143 * 143 + 1)


def test_construct_example_1():
    p = construct_set(143, 1430)
    assert p.selected == tuple(range(1, 11)) and p.status == STATUS_OPTIMAL


def test_construct_example_2():
    p = construct_set(154, 1540)
    assert p.selected == (1, 3, 5, 9, 13, 39)


def test_construct_full_budget_takes_everything():
    assert construct_set(509, 509 * 509).selected == unit_group(509).members


def test_exhaustive_examples():
    assert len(max_set_exhaustive(143, 1430)) == 10
    assert len(max_set_exhaustive(154, 1540)) == 6
    m = max_set_exhaustive(12, 24)
    p = plan(12, 24)
    assert len(m) == naive_max_set_size(12, 24)
    assert p.lower_bound <= len(m) <= p.upper_bound
    with pytest.raises(ValueError):
        max_set_exhaustive(201, 201 * 10)


@pytest.mark.parametrize("n", range(3, 31))
def test_exhaustive_matches_naive_and_is_lexicographically_first(n):
    units = unit_group(n).members
    for x in divisors(n):
        q = n * x
        m = max_set_exhaustive(n, q)
        assert verify_set(n, m, q).ok
        size = naive_max_set_size(n, q)
        assert len(m) == size
        first = next(
            c for c in itertools.combinations(units, size)
            if all(math.gcd(a - b, n) * n <= q for a, b in itertools.combinations(c, 2))
        )
        assert m == first


def test_verify_set_examples():
    assert verify_set(143, range(1, 11), 1430).ok
    r = verify_set(154, [1, 3, 5, 9, 11, 13], 1540)
    assert not r.ok and r.violation == (11,) and r.reason == "non-unit"
    assert verify_set(154, [1, 3, 5, 9, 13, 39], 1540).ok
    assert verify_set(143, [1, 12], 1430) == (False, (1, 12), "pair")


def _brute_class_search(cands, bad):
    n = len(bad)
    best = 0
    for pick in itertools.product(*[opts + [None] for opts in cands]):
        chosen = [c for c in pick if c is not None]
        if all(not bad[(b - a) % n] for a, b in itertools.combinations(chosen, 2)):
            best = max(best, len(chosen))
    return best


def test_class_search_against_brute_force():
    rng = random.Random(1234)
    greedy_short = 0
    for _ in range(300):
        n = rng.randint(6, 24)
        bad = np.zeros(n, dtype=bool)
        bad[0] = True
        for d in range(1, n // 2 + 1):
            if rng.random() < 0.35:
                bad[d] = bad[-d % n] = True
        pool = list(range(n))
        rng.shuffle(pool)
        k = rng.randint(1, 5)
        cands = [sorted(pool[i::k][: rng.randint(1, 3)]) for i in range(k)]
        cands = [c for c in cands if c]
        best, status, _ = class_search(cands, bad, target=len(cands))
        assert all(not bad[(b - a) % n] for a, b in itertools.combinations(best, 2))
        assert len(best) == _brute_class_search(cands, bad)
        assert status == (STATUS_OPTIMAL if len(best) == len(cands) else STATUS_SEARCH_COMPLETE)
        greedy, _, _ = class_search(cands, bad, target=len(cands), budget=sum(map(len, cands)))
        greedy_short += len(greedy) < len(best)
    # the random instances must exercise backtracking beyond the greedy pass
    assert greedy_short > 0


def test_class_search_budget_exhaustion_is_reported():
    n = 12
    bad = np.ones(n, dtype=bool)  # nothing may coexist
    cands = [[0, 1, 2], [3, 4, 5], [6, 7, 8]]
    best, status, visits = class_search(cands, bad, target=3, budget=4)
    assert status == STATUS_BUDGET_EXHAUSTED and len(best) == 1 and visits >= 4
    best, status, _ = class_search(cands, bad, target=3)
    assert status == STATUS_SEARCH_COMPLETE and len(best) == 1


@given(st.integers(2, 400), st.data())
def test_construct_set_is_valid_and_within_bounds(n, data):
    x = data.draw(st.sampled_from(divisors(n)))
    q = n * x
    p = construct_set(n, q)
    assert verify_set(n, p.selected, q).ok
    assert p.achieved <= p.upper_bound
    if p.status != STATUS_BUDGET_EXHAUSTED:
        assert p.lower_bound <= p.achieved
    assert p.consistent


@given(st.integers(2, 300), st.data())
def test_monotone_in_budget(n, data):
    q1 = data.draw(st.integers(n, n * n))
    q2 = data.draw(st.integers(q1, n * n))
    p1, p2 = construct_set(n, q1), construct_set(n, q2)
    assert p2.upper_bound >= p1.upper_bound
    assert verify_set(n, p1.selected, q2).ok


def test_budget_floor_for_primes():
    for n in [p for p in range(2, 200) if factorize(p).is_prime()]:
        units = unit_group(n).members
        assert all(admissible_pair(n, a, b, n) for a, b in itertools.combinations(units, 2))
        assert construct_set(n, n).achieved == n - 1
        assert len(max_set_exhaustive(n, n)) == n - 1
    assert construct_set(2053, 2053).achieved == 2052


def test_constructive_attainment_sampled(caplog):
    """Conjecture check: the construction reaches the upper bound. Misses are logged, not fatal."""
    rng = random.Random(2024)
    ns = rng.sample(range(2, 2001), 150)
    misses = []
    with caplog.at_level(logging.INFO, logger="chuxcorr.selection"):
        for n in ns:
            for x in divisors(n):
                p = construct_set(n, n * x)
                assert verify_set(n, p.selected, n * x).ok
                if p.achieved < p.upper_bound:
                    misses.append((n, x, p.achieved, p.upper_bound, p.status))
    if misses:
        logging.getLogger(__name__).warning("upper bound not reached for %d cases: %s", len(misses), misses[:10])
    assert len(misses) == len([r for r in caplog.records if "reached" in r.getMessage()])
