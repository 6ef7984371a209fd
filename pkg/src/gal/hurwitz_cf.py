"""Hurwitz continued fractions over Z[i].

The expansion of a complex theta uses nearest-Gaussian-integer rounding:
a0 = nearest(theta), theta_{n+1} = 1/(theta_n - a_n).  Convergents
p_n/q_n follow the usual recurrence and satisfy, for every n,

    |theta - p_n/q_n| <= C / |q_n|^2,   C = 2 + sqrt(2),

which is the approximation quality this package relies on everywhere a
denominator q is needed.

Every emitted partial quotient is a certified rounding decision: the
whole enclosure of theta_n rounds to the same lattice point.  When a
decision cannot be certified the expansion retries at doubled precision
(up to `max_prec`) before giving up with the certified prefix.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf, fadd, fmul

from .errors import NoConvergentBelowTarget, PrecisionExhausted
from .gaussian_core import (
    DEFAULT_PREC,
    GaussianInt,
    HPComplex,
    gi_gcd,
    nearest_gaussian_int,
)
from .theta import ThetaLike, as_ball, as_spec

MAX_PREC = 4096

#: status values of CFExpansion
OK = "ok"
TERMINATED = "terminated"
PRECISION_EXHAUSTED = "precision_exhausted"


@dataclass(frozen=True)
class CFExpansion:
    theta: HPComplex
    partial_quotients: tuple[GaussianInt, ...]
    certified_terms: int
    status: str
    precision_bits: int
    theta_text: str | None = None

    def to_dict(self) -> dict:
        convs = convergents(self)
        return {
            "theta": self.theta_text,
            "precision_bits": self.precision_bits,
            "status": self.status,
            "certified_terms": self.certified_terms,
            "partial_quotients": [[a.re, a.im] for a in self.partial_quotients],
            "certified": [True] * self.certified_terms,
            "convergents": [
                {"index": c.index, "p": [c.p.re, c.p.im], "q": [c.q.re, c.q.im]}
                for c in convs
            ],
        }


@dataclass(frozen=True)
class Convergent:
    p: GaussianInt
    q: GaussianInt
    index: int


def _expand_once(ball: HPComplex, max_terms: int) -> tuple[list[GaussianInt], str]:
    quots: list[GaussianInt] = []
    t = ball
    while len(quots) < max_terms:
        try:
            a = nearest_gaussian_int(t)
        except PrecisionExhausted:
            return quots, PRECISION_EXHAUSTED
        quots.append(a)
        rem = t.sub_gaussian(a)
        if rem.contains_zero():
            return quots, TERMINATED
        if len(quots) == max_terms:
            break
        try:
            t = rem.reciprocal()
        except ZeroDivisionError:
            return quots, PRECISION_EXHAUSTED
    return quots, OK


def _round_half_up_fraction(f) -> int:
    import math
    from fractions import Fraction
    return math.floor(f + Fraction(1, 2))


def _expand_exact_rational(spec, max_terms: int) -> tuple[list[GaussianInt], str]:
    """Exact expansion for theta in Q(i): termination is decidable."""
    re, im = spec.exact_parts()
    quots: list[GaussianInt] = []
    while len(quots) < max_terms:
        a = GaussianInt(_round_half_up_fraction(re), _round_half_up_fraction(im))
        quots.append(a)
        rre, rim = re - a.re, im - a.im
        if rre == 0 and rim == 0:
            return quots, TERMINATED
        if len(quots) == max_terms:
            break
        d = rre * rre + rim * rim
        re, im = rre / d, -rim / d
    return quots, OK


def expand(theta: ThetaLike, max_terms: int, *,
           start_prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC) -> CFExpansion:
    """Hurwitz expansion with up to `max_terms` certified partial quotients.

    Re-evaluable inputs (strings / ThetaSpec) get automatic precision
    doubling; a bare HPComplex is expanded once at its own precision.
    Status `terminated` means the remainder encloses zero, the signature
    of theta in Q(i); all-literal specs take an exact rational path on
    which termination is decided exactly.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    spec = as_spec(theta)
    if spec is None:
        ball = as_ball(theta)
        quots, status = _expand_once(ball, max_terms)
        return CFExpansion(ball, tuple(quots), len(quots), status, ball.prec)

    if spec.is_exact_gaussian_rational():
        quots, status = _expand_exact_rational(spec, max_terms)
        ball = spec.eval(start_prec)
        return CFExpansion(ball, tuple(quots), len(quots), status, start_prec,
                           str(spec))

    prec = start_prec
    while True:
        ball = spec.eval(prec)
        quots, status = _expand_once(ball, max_terms)
        if status == OK or prec >= max_prec:
            break
        prec *= 2
    return CFExpansion(ball, tuple(quots), len(quots), status, prec, str(spec))


def convergents(exp: CFExpansion) -> list[Convergent]:
    """Convergents p_n/q_n of the certified prefix.

    The determinant identity p_n q_{n-1} - p_{n-1} q_n = unit and strict
    growth of |q_n| are verified exactly on the fly.
    """
    if exp.certified_terms < 1:
        raise ValueError("expansion has no certified terms")
    out: list[Convergent] = []
    p_prev, p = GaussianInt(1, 0), exp.partial_quotients[0]
    q_prev, q = GaussianInt(0, 0), GaussianInt(1, 0)
    out.append(Convergent(p, q, 0))
    for n in range(1, exp.certified_terms):
        a = exp.partial_quotients[n]
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        det = p * q_prev - p_prev * q
        if not det.is_unit():
            raise ArithmeticError(f"determinant invariant broken at index {n}")
        if q.norm <= q_prev.norm:
            raise ArithmeticError(f"|q| not strictly increasing at index {n}")
        out.append(Convergent(p, q, n))
    return out


def pick_denominator(exp: CFExpansion, target_norm: int) -> Convergent:
    """Convergent whose N(q) is closest to `target_norm` from below."""
    best: Convergent | None = None
    for c in convergents(exp):
        if c.q.norm <= target_norm:
            if best is None or c.q.norm > best.q.norm:
                best = c
    if best is None:
        raise NoConvergentBelowTarget(f"no convergent with N(q) <= {target_norm}")
    return best


def coprimality_witness(conv: Convergent) -> GaussianInt:
    """gcd(p, q), canonicalized; a unit for genuine convergents."""
    return gi_gcd(conv.p, conv.q)


def defect_times_qsq_upper(theta: HPComplex, conv: Convergent) -> mpf:
    """Certified upper bound for |theta - p/q| * |q|^2."""
    q_ball = HPComplex.from_gaussian(conv.q, theta.prec)
    pq = HPComplex.from_gaussian(conv.p, theta.prec) * q_ball.reciprocal()
    d = theta - pq
    return fmul(d.abs_hi(), conv.q.norm, prec=64, rounding="u")


def hurwitz_constant_upper(prec: int = 64) -> mpf:
    """Upper bound for 2 + sqrt(2)."""
    with mpmath.workprec(prec + 16):
        s = mpmath.sqrt(2)
    s_up = fmul(s, 1 + mpf(2) ** (-prec), prec=prec, rounding="u")
    return fadd(2, s_up, prec=prec, rounding="u")


HURWITZ_C = 2.0 + 2.0 ** 0.5
