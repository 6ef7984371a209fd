"""Exact arithmetic in Z[i] and certified high-precision complex balls.

``GaussianInt`` is an exact lattice point a+bi with Python integers as
coordinates (no overflow is possible, so ``norm`` is total).

``HPComplex`` is a complex ball: an mpmath center (re, im) at a stated
binary precision together with an error radius ``err`` such that the
exact value lies within Euclidean distance ``err`` of the center.  Every
operation propagates the radius conservatively, so any comparison that
the ball certifies is true of the exact value.  Decisions that a ball
cannot certify (a rounding tie, a threshold straddle) raise
``PrecisionExhausted`` instead of guessing.

``dist_sup`` is the distance to the nearest Gaussian integer in the
supremum norm: max of the two coordinate distances to the nearest
integers.  It is 1-Lipschitz, so a ball of radius e certifies the
distance to within e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf, fadd, fsub, fmul, fdiv

from .errors import BothZero, PrecisionExhausted

DEFAULT_PREC = 256

_HALF = mpf("0.5")
_ERR_PREC = 64  # bits used for radius bookkeeping (always rounded up)


def exact_mpf(n: int) -> mpf:
    """Lossless int -> mpf conversion (bare mpf(n) rounds at global prec)."""
    return fadd(n, 0, prec=0)


def _keep_mpf(x) -> mpf:
    # mpf(x) would re-round an existing mpf to the *global* precision
    if isinstance(x, mpf):
        return x
    if isinstance(x, int):
        return exact_mpf(x)
    return mpf(x)


# ---------------------------------------------------------------------------
# GaussianInt
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class GaussianInt:
    """Lattice point re + im*i of Z[i]."""

    re: int
    im: int

    def __post_init__(self) -> None:
        if not isinstance(self.re, int) or not isinstance(self.im, int):
            raise TypeError("GaussianInt coordinates must be int")

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt | int) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def times_i(self) -> GaussianInt:
        return GaussianInt(-self.im, self.re)

    @property
    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm == 1

    def associates(self) -> tuple[GaussianInt, GaussianInt, GaussianInt, GaussianInt]:
        g = self
        gi = g.times_i()
        return (g, gi, -g, -gi)

    def first_quadrant(self) -> GaussianInt:
        """The unique associate with re > 0, im >= 0 (zero maps to zero)."""
        if self.is_zero():
            return self
        g = self
        for _ in range(4):
            if g.re > 0 and g.im >= 0:
                return g
            g = g.times_i()
        raise AssertionError("unreachable: unit orbit must hit the first quadrant")

    def __str__(self) -> str:
        return f"{self.re}{self.im:+}i"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
UNITS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


def norm(g: GaussianInt) -> int:
    """N(g) = re^2 + im^2, exact for any coordinate size."""
    return g.norm


def _round_half_up_ratio(p: int, q: int) -> int:
    # nearest integer to p/q with ties toward +inf; q > 0
    return (2 * p + q) // (2 * q)


def gi_divmod(a: GaussianInt, b: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Nearest-lattice quotient and remainder; N(r) <= N(b)/2."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero Gaussian integer")
    num = a * b.conj()
    d = b.norm
    q = GaussianInt(_round_half_up_ratio(num.re, d), _round_half_up_ratio(num.im, d))
    return q, a - q * b


def gi_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Greatest common divisor, canonicalized to the first-quadrant associate."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero():
        _, r = gi_divmod(a, b)
        a, b = b, r
    return a.first_quadrant()


# ---------------------------------------------------------------------------
# HPComplex balls
# ---------------------------------------------------------------------------

def _err_add(*xs) -> mpf:
    acc = mpf(0)
    for x in xs:
        acc = fadd(acc, x, prec=_ERR_PREC, rounding="u")
    return acc


def _err_mul(x, y) -> mpf:
    return fmul(x, y, prec=_ERR_PREC, rounding="u")


def _ulp_term(prec: int, *centers) -> mpf:
    # conservative cover for the handful of roundings in one ball op
    mag = mpf(1)
    for c in centers:
        mag = fadd(mag, abs(c), prec=_ERR_PREC, rounding="u")
    return _err_mul(mag, mpf(2) ** (4 - prec))


class HPComplex:
    """Complex ball: center (re, im) at `prec` bits, radius `err`."""

    __slots__ = ("re", "im", "err", "prec")

    def __init__(self, re, im, err=0, prec: int = DEFAULT_PREC):
        self.re = _keep_mpf(re)
        self.im = _keep_mpf(im)
        self.err = _keep_mpf(err)
        self.prec = prec
        if self.err < 0:
            raise ValueError("err must be >= 0")

    @classmethod
    def from_exact(cls, re, im=0, prec: int = DEFAULT_PREC) -> HPComplex:
        """Ball around an exactly-evaluated rational point.

        Accepts ints, Fractions and decimal strings; the only rounding is
        the final conversion to `prec` bits, covered by a 2-ulp radius.
        """
        def conv(x):
            if isinstance(x, int):
                return exact_mpf(x), mpf(0)
            f = Fraction(x)
            v = fdiv(f.numerator, f.denominator, prec=prec)
            if fmul(v, f.denominator, prec=0) == exact_mpf(f.numerator):
                return v, mpf(0)  # exactly representable, no radius needed
            return v, _err_mul(abs(v) + 1, mpf(2) ** (1 - prec))
        vr, er = conv(re)
        vi, ei = conv(im)
        return cls(vr, vi, _err_add(er, ei), prec)

    @classmethod
    def from_gaussian(cls, g: GaussianInt, prec: int = DEFAULT_PREC) -> HPComplex:
        return cls(exact_mpf(g.re), exact_mpf(g.im), 0, prec)

    # -- magnitude bounds ---------------------------------------------------

    def abs_center_hi(self) -> mpf:
        with mpmath.workprec(_ERR_PREC + 16):
            m = mpmath.hypot(self.re, self.im)
        return fmul(m, 1 + mpf(2) ** (-_ERR_PREC), prec=_ERR_PREC, rounding="u")

    def abs_center_lo(self) -> mpf:
        with mpmath.workprec(_ERR_PREC + 16):
            m = mpmath.hypot(self.re, self.im)
        v = fmul(m, 1 - mpf(2) ** (-_ERR_PREC), prec=_ERR_PREC, rounding="d")
        return v if v > 0 else mpf(0)

    def abs_hi(self) -> mpf:
        return _err_add(self.abs_center_hi(), self.err)

    def abs_lo(self) -> mpf:
        v = fsub(self.abs_center_lo(), self.err, prec=_ERR_PREC, rounding="d")
        return v if v > 0 else mpf(0)

    def contains_zero(self) -> bool:
        return self.abs_center_lo() <= self.err

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: HPComplex) -> HPComplex:
        p = min(self.prec, other.prec)
        re = fadd(self.re, other.re, prec=p)
        im = fadd(self.im, other.im, prec=p)
        return HPComplex(re, im, _err_add(self.err, other.err, _ulp_term(p, re, im)), p)

    def __sub__(self, other: HPComplex) -> HPComplex:
        p = min(self.prec, other.prec)
        re = fsub(self.re, other.re, prec=p)
        im = fsub(self.im, other.im, prec=p)
        return HPComplex(re, im, _err_add(self.err, other.err, _ulp_term(p, re, im)), p)

    def __neg__(self) -> HPComplex:
        return HPComplex(-self.re, -self.im, self.err, self.prec)

    def __mul__(self, other: HPComplex) -> HPComplex:
        p = min(self.prec, other.prec)
        # exact cross products, one rounded combination each
        re = fsub(fmul(self.re, other.re, prec=0), fmul(self.im, other.im, prec=0), prec=p)
        im = fadd(fmul(self.re, other.im, prec=0), fmul(self.im, other.re, prec=0), prec=p)
        err = _err_add(
            _err_mul(self.abs_center_hi(), other.err),
            _err_mul(other.abs_center_hi(), self.err),
            _err_mul(self.err, other.err),
            _ulp_term(p, re, im),
        )
        return HPComplex(re, im, err, p)

    def sub_gaussian(self, g: GaussianInt) -> HPComplex:
        # lossless: integer subtraction cannot round
        return HPComplex(
            fsub(self.re, g.re, prec=0), fsub(self.im, g.im, prec=0), self.err, self.prec
        )

    def mul_gaussian(self, g: GaussianInt) -> HPComplex:
        p = self.prec
        re = fsub(fmul(self.re, g.re, prec=0), fmul(self.im, g.im, prec=0), prec=p)
        im = fadd(fmul(self.re, g.im, prec=0), fmul(self.im, g.re, prec=0), prec=p)
        with mpmath.workprec(_ERR_PREC):
            gabs = mpmath.sqrt(g.norm) * (1 + mpf(2) ** (-_ERR_PREC + 4))
        err = _err_add(_err_mul(self.err, gabs), _ulp_term(p, re, im))
        return HPComplex(re, im, err, p)

    def conjugate(self) -> HPComplex:
        return HPComplex(self.re, -self.im, self.err, self.prec)

    def reciprocal(self) -> HPComplex:
        if self.contains_zero():
            raise ZeroDivisionError("ball contains zero")
        p = self.prec
        d = fadd(fmul(self.re, self.re, prec=0), fmul(self.im, self.im, prec=0), prec=0)
        re = fdiv(self.re, d, prec=p)
        im = -fdiv(self.im, d, prec=p)
        clo = self.abs_center_lo()
        denom = fmul(clo, fsub(clo, self.err, prec=_ERR_PREC, rounding="d"),
                     prec=_ERR_PREC, rounding="d")
        if denom <= 0:
            raise ZeroDivisionError("ball too close to zero to invert")
        err = _err_add(fdiv(self.err, denom, prec=_ERR_PREC, rounding="u"),
                       _ulp_term(p, re, im))
        return HPComplex(re, im, err, p)

    def __repr__(self) -> str:
        return (f"HPComplex({mpmath.nstr(self.re, 20)}, {mpmath.nstr(self.im, 20)}, "
                f"err={mpmath.nstr(self.err, 5)}, prec={self.prec})")


# ---------------------------------------------------------------------------
# sup-norm distance and nearest lattice point
# ---------------------------------------------------------------------------

def _frac_dist(t: mpf) -> mpf:
    # distance of a real to the nearest integer; all steps are lossless
    f = fsub(t, mpmath.floor(t), prec=0)
    g = fsub(1, f, prec=0)
    return f if f < g else g


def dist_sup(z: HPComplex, tol=None) -> mpf:
    """Distance of z to the nearest Gaussian integer in the sup norm.

    The returned center value differs from the exact distance by at most
    z.err (the map is 1-Lipschitz).  When `tol` is given and the radius
    exceeds it, the enclosure cannot certify the distance to the
    requested tolerance and PrecisionExhausted is raised.
    """
    if tol is not None and z.err > mpf(tol):
        raise PrecisionExhausted(
            f"enclosure radius {mpmath.nstr(z.err, 5)} exceeds tolerance {tol}"
        )
    return max(_frac_dist(z.re), _frac_dist(z.im))


def dist_sup_bounds(z: HPComplex) -> tuple[mpf, mpf]:
    """(value, radius): the exact sup distance lies within radius of value."""
    return max(_frac_dist(z.re), _frac_dist(z.im)), z.err


def _round_half_up_certified(t: mpf, err: mpf) -> int:
    lo = mpmath.floor(fadd(fsub(t, err, prec=0), _HALF, prec=0))
    hi = mpmath.floor(fadd(fadd(t, err, prec=0), _HALF, prec=0))
    if lo != hi:
        raise PrecisionExhausted(f"rounding tie near {mpmath.nstr(t, 20)}")
    return int(lo)


def nearest_gaussian_int(z: HPComplex) -> GaussianInt:
    """Componentwise nearest lattice point; ties round half up.

    Certified: the whole ball must round to the same point, otherwise
    PrecisionExhausted is raised.
    """
    return GaussianInt(
        _round_half_up_certified(z.re, z.err),
        _round_half_up_certified(z.im, z.err),
    )
