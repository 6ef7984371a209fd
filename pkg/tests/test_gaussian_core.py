import random
from fractions import Fraction

import pytest
from mpmath import mpf

from gal import GaussianInt, HPComplex, dist_sup, gi_gcd, nearest_gaussian_int
from gal.errors import BothZero, PrecisionExhausted
from gal.gaussian_core import ZERO, gi_divmod, norm


def test_norm_examples():
    assert norm(GaussianInt(3, 4)) == 25
    assert norm(GaussianInt(0, 0)) == 0
    assert norm(GaussianInt(-1, 1)) == 2


def test_norm_multiplicative():
    rng = random.Random(42)
    for _ in range(10**4):
        a = GaussianInt(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        b = GaussianInt(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        assert norm(a * b) == norm(a) * norm(b)


def test_dist_sup_examples():
    assert float(dist_sup(HPComplex.from_exact("0.3", "0.6"))) == pytest.approx(0.4, abs=0)
    assert float(dist_sup(HPComplex.from_exact(2, 5))) == 0.0
    assert float(dist_sup(HPComplex.from_exact("0.5", 0))) == 0.5


def test_dist_sup_periodicity():
    rng = random.Random(7)
    for _ in range(200):
        re = Fraction(rng.randint(-1000, 1000), 64)
        im = Fraction(rng.randint(-1000, 1000), 64)
        g = GaussianInt(rng.randint(-50, 50), rng.randint(-50, 50))
        z = HPComplex.from_exact(re, im)
        shifted = HPComplex.from_exact(re + g.re, im + g.im)
        assert dist_sup(z) == dist_sup(shifted)


def test_dist_sup_zero_iff_gaussian_integer():
    assert dist_sup(HPComplex.from_exact(-7, 3)) == 0
    assert dist_sup(HPComplex.from_exact(Fraction(1, 64), 0)) > 0


def test_dist_sup_tolerance_check():
    z = HPComplex(mpf("0.3"), mpf("0.3"), err=mpf("1e-3"))
    with pytest.raises(PrecisionExhausted):
        dist_sup(z, tol=1e-6)
    assert float(dist_sup(z, tol=1e-2)) == pytest.approx(0.3, abs=1e-12)


def test_nearest_examples():
    assert nearest_gaussian_int(HPComplex.from_exact("1.4", "2.6")) == GaussianInt(1, 3)
    # ties round half up in each coordinate
    assert nearest_gaussian_int(HPComplex.from_exact("0.5", "0.5")) == GaussianInt(1, 1)
    assert nearest_gaussian_int(HPComplex.from_exact("-0.5", "-2.5")) == GaussianInt(0, -2)


def test_nearest_uncertifiable_tie():
    z = HPComplex(mpf("0.5"), mpf(0), err=mpf("1e-30"))
    with pytest.raises(PrecisionExhausted):
        nearest_gaussian_int(z)


def test_gcd_examples():
    assert gi_gcd(GaussianInt(2, 0), GaussianInt(1, 1)) == GaussianInt(1, 1)
    assert gi_gcd(GaussianInt(5, 0), GaussianInt(3, 0)) == GaussianInt(1, 0)
    g = GaussianInt(-3, -4)
    assert gi_gcd(g, ZERO) == g.first_quadrant() == GaussianInt(3, 4)


def test_gcd_both_zero():
    with pytest.raises(BothZero):
        gi_gcd(ZERO, ZERO)


def _divides(d, a):
    if d.is_zero():
        return a.is_zero()
    num = a * d.conj()
    return num.re % d.norm == 0 and num.im % d.norm == 0


def test_gcd_exhaustive_small_grid():
    pts = [GaussianInt(x, y) for x in range(-6, 7) for y in range(-6, 7)]
    small = [d for d in pts if 2 <= d.norm <= 36]
    for a in pts:
        for b in pts:
            if a.is_zero() and b.is_zero():
                continue
            g = gi_gcd(a, b)
            assert _divides(g, a) and _divides(g, b)
            assert g.re > 0 and g.im >= 0
            for d in small:
                if _divides(d, a) and _divides(d, b):
                    assert _divides(d, g)


def test_divmod_remainder_small():
    rng = random.Random(3)
    for _ in range(500):
        a = GaussianInt(rng.randint(-999, 999), rng.randint(-999, 999))
        b = GaussianInt(rng.randint(-99, 99), rng.randint(-99, 99))
        if b.is_zero():
            continue
        q, r = gi_divmod(a, b)
        assert a == q * b + r
        assert 2 * r.norm <= b.norm


def _close_to_fraction(value: mpf, frac: Fraction, radius: mpf) -> bool:
    # compare at 400 bits; the reference rounding is far below any radius
    from mpmath import fdiv, fsub
    ref = fdiv(mpf(frac.numerator), mpf(frac.denominator), prec=400)
    return abs(fsub(value, ref, prec=400)) <= radius + mpf(2) ** (-320)


def test_ball_mul_encloses_exact():
    rng = random.Random(9)
    for _ in range(200):
        fr = [Fraction(rng.randint(-500, 500), rng.randint(1, 97)) for _ in range(4)]
        z = HPComplex.from_exact(fr[0], fr[1])
        w = HPComplex.from_exact(fr[2], fr[3])
        prod = z * w
        assert _close_to_fraction(prod.re, fr[0] * fr[2] - fr[1] * fr[3], prod.err)
        assert _close_to_fraction(prod.im, fr[0] * fr[3] + fr[1] * fr[2], prod.err)


def test_ball_reciprocal_encloses_exact():
    rng = random.Random(10)
    for _ in range(200):
        a = Fraction(rng.randint(1, 500), rng.randint(1, 97))
        b = Fraction(rng.randint(-500, 500), rng.randint(1, 97))
        z = HPComplex.from_exact(a, b)
        inv = z.reciprocal()
        d = a * a + b * b
        assert _close_to_fraction(inv.re, a / d, inv.err)
        assert _close_to_fraction(inv.im, -b / d, inv.err)


def test_unit_action_preserves_norm_and_dist():
    rng = random.Random(11)
    for _ in range(100):
        g = GaussianInt(rng.randint(-100, 100), rng.randint(-100, 100))
        for u in g.associates():
            assert u.norm == g.norm
        z = HPComplex.from_exact(Fraction(rng.randint(-99, 99), 64),
                                 Fraction(rng.randint(-99, 99), 64))
        # dist_sup is invariant under multiplication by i: (re,im) -> (-im,re)
        rot = HPComplex(-z.im, z.re, z.err, z.prec)
        assert dist_sup(z) == dist_sup(rot)
