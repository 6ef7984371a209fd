import math

import numpy as np
import pytest

from gal import GaussianInt, build_sieve, count_annulus, is_gaussian_prime, pnt_ratio
from gal.errors import LimitTooLarge, OutOfRange, ZeroOrUnit
from gal.gaussian_primes import prime_class_reps


def test_sieve_small_tables():
    assert build_sieve(10).counts_by_norm == {2: 4, 5: 8, 9: 4}
    assert build_sieve(2).counts_by_norm == {2: 4}
    assert sum(build_sieve(25).counts_by_norm.values()) == 32


def test_counts_divisible_by_four(sieve_1e4):
    assert all(v % 4 == 0 for v in sieve_1e4.counts_by_norm.values())


def test_norm_classes(sieve_1e4):
    for n, c in sieve_1e4.counts_by_norm.items():
        if n == 2:
            assert c == 4
        elif c == 8:
            assert n % 4 == 1
        else:
            r = math.isqrt(n)
            assert r * r == n and r % 4 == 3


def test_annulus_counts(sieve_1e4):
    assert count_annulus(sieve_1e4, 10) == 4
    assert count_annulus(sieve_1e4, 2) == 4
    assert count_annulus(sieve_1e4, 4) == 0


def test_is_gaussian_prime_examples(sieve_1e4):
    assert is_gaussian_prime(GaussianInt(1, 1), sieve_1e4)
    assert is_gaussian_prime(GaussianInt(0, 3), sieve_1e4)
    assert not is_gaussian_prime(GaussianInt(3, 4), sieve_1e4)
    with pytest.raises(ZeroOrUnit):
        is_gaussian_prime(GaussianInt(0, 0))
    with pytest.raises(ZeroOrUnit):
        is_gaussian_prime(GaussianInt(0, -1))


def _trial_division_prime(g: GaussianInt) -> bool:
    # independent oracle: no divisor with 2 <= N(d) <= sqrt(N(g))
    n = g.norm
    r = math.isqrt(n)
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            d = GaussianInt(a, b)
            if d.norm < 2 or d.norm * d.norm > n:
                continue
            num = g * d.conj()
            if num.re % d.norm == 0 and num.im % d.norm == 0:
                return False
    return True


def test_classification_against_trial_division(sieve_1e4):
    for a in range(-9, 10):
        for b in range(-9, 10):
            g = GaussianInt(a, b)
            if g.is_zero() or g.is_unit():
                continue
            assert is_gaussian_prime(g, sieve_1e4) == _trial_division_prime(g)


def test_annulus_brute_force(sieve_1e4):
    for x in (10, 50, 100, 500, 1000, 10**4):
        r = math.isqrt(x)
        cnt = 0
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                n = a * a + b * b
                if x / 2 < n <= x:
                    g = GaussianInt(a, b)
                    if not (g.is_zero() or g.is_unit()) \
                            and is_gaussian_prime(g, sieve_1e4):
                        cnt += 1
        assert count_annulus(sieve_1e4, x) == cnt


def test_pnt_examples(sieve_1e4, sieve_1e6):
    assert pnt_ratio(sieve_1e4, 10**4) == count_annulus(sieve_1e4, 10**4) \
        * math.log(10**4) / (2 * 10**4)
    r6 = pnt_ratio(sieve_1e6, 10**6)
    assert 0.85 <= r6 <= 1.15
    r3 = pnt_ratio(sieve_1e6, 10**3)
    assert abs(r6 - 1) < abs(r3 - 1)


def test_pnt_domain(sieve_1e4):
    with pytest.raises(OutOfRange):
        pnt_ratio(sieve_1e4, 10)
    with pytest.raises(OutOfRange):
        count_annulus(sieve_1e4, 10**5)


def test_limit_budget():
    with pytest.raises(LimitTooLarge):
        build_sieve(10**7, limit_budget=10**6)
    with pytest.raises(OutOfRange):
        build_sieve(1)


def test_class_reps_scale_to_counts(sieve_1e4):
    re, im = prime_class_reps(sieve_1e4, 0, 10**4)
    assert 4 * len(re) == sum(sieve_1e4.counts_by_norm.values())
    re, im = prime_class_reps(sieve_1e4, 5000, 10**4)
    assert 4 * len(re) == count_annulus(sieve_1e4, 10**4)
    norms = re * re + im * im
    assert np.all((norms > 5000) & (norms <= 10**4))
    # every rep is itself a Gaussian prime
    for k in range(0, len(re), 97):
        assert is_gaussian_prime(GaussianInt(int(re[k]), int(im[k])), sieve_1e4)
