import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chuxcorr.chu import (
    all_pairs_cross_correlation,
    autocorrelation,
    cross_correlation,
    cross_correlation_all_lags,
    generate,
    sequence_rows,
)
from chuxcorr.numtheory import unit_group

from oracles import naive_sample, naive_xcorr


@st.composite
def length_and_roots(draw, max_n=120, count=2):
    n = draw(st.integers(2, max_n))
    units = unit_group(n).members
    return (n, *[draw(st.sampled_from(units)) for _ in range(count)])


def test_generate_n2():
    seq = generate(2, 1)
    np.testing.assert_allclose(seq.samples(), [1, 1j], atol=1e-15)


def test_generate_n4_even_branch():
    seq = generate(4, 1)
    assert seq.phase_exponents.tolist() == [0, 1, 4, 1]
    w = cmath.exp(1j * math.pi / 4)
    np.testing.assert_allclose(seq.samples(), [1, w, -1, w], atol=1e-15)


def test_generate_n3_odd_branch():
    assert generate(3, 1).phase_exponents.tolist() == [0, 2, 0]


@pytest.mark.parametrize("n, r", [(4, 2), (4, 0), (4, 4), (10, 5), (1, 1)])
def test_generate_rejects_bad_roots(n, r):
    with pytest.raises(ValueError):
        generate(n, r)


def test_generate_immutable():
    seq = generate(7, 3)
    with pytest.raises(ValueError):
        seq.phase_exponents[0] = 1


@given(length_and_roots(max_n=300, count=1))
def test_samples_unit_modulus_and_match_float_oracle(args):
    n, r = args
    seq = generate(n, r)
    s = seq.samples()
    assert np.max(np.abs(np.abs(s) - 1)) < 1e-12
    ref = np.array([naive_sample(n, r, k) for k in range(n)])
    assert np.max(np.abs(s - ref)) < 1e-9
    # periodic extension
    for k in (0, 1, n - 1):
        assert abs(seq.sample(k + n) - seq.sample(k)) < 1e-12
        assert abs(naive_sample(n, r, k + n) - naive_sample(n, r, k)) < 1e-9


def test_autocorrelation_examples():
    seq = generate(143, 5)
    assert abs(autocorrelation(seq, 0) - 143) < 1e-9 * 143
    assert abs(autocorrelation(seq, 7)) < 1e-9 * 143
    assert abs(autocorrelation(generate(4, 3), 2)) < 1e-9 * 4


def test_cross_correlation_examples():
    a = generate(143, 2)
    b = generate(143, 1)
    assert abs(cross_correlation(a, a, 0) - 143) < 1e-9
    for tau in (0, 1, 57, 142):
        assert abs(abs(cross_correlation(a, b, tau)) - math.sqrt(143)) < 1e-6
    assert abs(cross_correlation(generate(10, 3), generate(10, 1), 0)) < 1e-6


def test_lag_validation():
    a, b = generate(10, 3), generate(10, 1)
    assert cross_correlation(a, b, -1) == cross_correlation(a, b, 9)
    with pytest.raises(ValueError):
        cross_correlation(a, b, 10)
    with pytest.raises(ValueError):
        cross_correlation(a, generate(11, 1), 0)
    with pytest.raises(ValueError):
        cross_correlation_all_lags(a, generate(11, 1))


@given(length_and_roots(max_n=60), st.integers(0, 10**6))
def test_cross_correlation_matches_float_oracle(args, lag_seed):
    n, r, s = args
    tau = lag_seed % n
    got = cross_correlation(generate(n, r), generate(n, s), tau)
    assert abs(got - naive_xcorr(n, r, s, tau)) < 1e-9 * n


def test_all_lags_examples():
    v = cross_correlation_all_lags(generate(4, 1), generate(4, 3))
    assert abs(v.energy() - 16) < 1e-9
    v = cross_correlation_all_lags(generate(143, 2), generate(143, 1))
    assert np.max(np.abs(v.magnitudes() - math.sqrt(143))) < 1e-6
    v = cross_correlation_all_lags(generate(12, 1), generate(12, 5))
    mags = v.magnitudes()
    for tau in range(12):
        expected = math.sqrt(48) if tau % 4 == 2 else 0.0
        assert abs(mags[tau] - expected) < 1e-6


@given(length_and_roots(max_n=200))
def test_fft_path_agrees_with_direct(args):
    n, r, s = args
    a, b = generate(n, r), generate(n, s)
    direct = cross_correlation_all_lags(a, b).values
    fast = cross_correlation_all_lags(a, b, method="fft").values
    assert np.max(np.abs(direct - fast)) <= 1e-9 * n
    for tau in (0, n // 2, n - 1):
        assert abs(direct[tau] - cross_correlation(a, b, tau)) <= 1e-9 * n


@given(length_and_roots(max_n=200))
def test_conjugate_symmetry(args):
    n, r, s = args
    a, b = generate(n, r), generate(n, s)
    ab = cross_correlation_all_lags(a, b).values
    ba = cross_correlation_all_lags(b, a).values
    neg = (-np.arange(n)) % n
    assert np.max(np.abs(ab - np.conj(ba[neg]))) <= 1e-9 * n


def test_energy_identity_all_pairs_up_to_100():
    for n in range(2, 101):
        _, values = all_pairs_cross_correlation(n)
        energy = np.sum(np.abs(values) ** 2, axis=2)
        assert np.max(np.abs(energy - n * n)) <= 1e-6 * n * n, n


def test_autocorrelation_law_small():
    for n in range(2, 61):
        roots, values = all_pairs_cross_correlation(n)
        for i in range(len(roots)):
            auto = values[i, i]
            assert abs(auto[0] - n) <= 1e-9 * n
            assert np.max(np.abs(auto[1:]), initial=0.0) <= 1e-6 * n


def test_root_of_unity_sums_vanish():
    for h in range(2, 65):
        k = np.arange(h)
        for u in range(1, h):
            if math.gcd(u, h) != 1:
                continue
            for v in range(1, h):
                xi_v = np.exp(2j * np.pi * u * v / h)
                assert abs(xi_v - 1) > 1e-9
                for sign in (1, -1):
                    total = np.exp(sign * 2j * np.pi * u * v * k / h).sum()
                    assert abs(total) < 1e-9 * h


def test_sequence_rows():
    rows = sequence_rows(generate(4, 1))
    assert rows[2][0] == 2 and abs(rows[2][1] + 1) < 1e-15
