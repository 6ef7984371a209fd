"""Vectorized lattice enumeration and certified sup-norm membership.

The fast path computes fractional-part distances of n*theta in float64
together with a per-point error bound; only points whose distance lands
within the error bound of a decision threshold are re-evaluated with
exact complex balls at escalating precision.  Counts produced this way
are exact, not approximate.
"""

from __future__ import annotations

import math

import numpy as np
from mpmath import fadd, fsub, mpf

from .errors import BudgetExceeded, PrecisionExhausted
from .gaussian_core import GaussianInt
from .theta import ThetaLike, as_ball, as_spec

DEFAULT_POINT_BUDGET = 10**8
MAX_ESCALATION_PREC = 4096


def lattice_points_in_annulus(lo: float, hi: float, *,
                              budget: int = DEFAULT_POINT_BUDGET
                              ) -> tuple[np.ndarray, np.ndarray]:
    """All (re, im) with lo < re^2+im^2 <= hi, in canonical order.

    Canonical order is (norm, re, im) ascending, which keeps seeded
    coefficient streams and CSV output deterministic.
    """
    if hi < 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    r = math.isqrt(int(math.floor(hi)))
    cells = (2 * r + 1) ** 2
    if cells > budget:
        raise BudgetExceeded(f"annulus enumeration needs {cells} grid cells "
                             f"(budget {budget})")
    a = np.arange(-r, r + 1, dtype=np.int64)
    re, im = np.meshgrid(a, a, indexing="ij")
    nn = re * re + im * im
    mask = (nn > lo) & (nn <= hi)
    re, im, nn = re[mask], im[mask], nn[mask]
    order = np.lexsort((im, re, nn))
    return re[order], im[order]


def gi_mul_arrays(are, aim, bre, bim):
    """Componentwise products of Gaussian integers held as int arrays."""
    return are * bre - aim * bim, are * bim + aim * bre


class ThetaF64:
    """float64 view of a theta ball with a per-unit-coefficient error bound.

    For integer (a, b), the computed Re/Im of (a+bi)*theta differ from
    the exact values by at most (|a|+|b|) * coeff_err, which also covers
    the float64 fractional-part arithmetic downstream.
    """

    __slots__ = ("re", "im", "coeff_err")

    def __init__(self, theta_ball):
        self.re = float(theta_ball.re)
        self.im = float(theta_ball.im)
        t = max(abs(self.re), abs(self.im)) + 1.0
        self.coeff_err = float(theta_ball.err) + 8e-16 * t


def frac_dists_f64(re, im, tf: ThetaF64):
    """Distances of Re/Im of (re+im*i)*theta to the nearest integers.

    Returns (d_re, d_im, err, u, v) where u, v are the unreduced Re/Im
    products (useful to callers building exponential-sum phases from the
    same values) and err bounds the error of both distances.
    """
    re = np.asarray(re, dtype=np.float64)
    im = np.asarray(im, dtype=np.float64)
    u = re * tf.re - im * tf.im
    v = re * tf.im + im * tf.re
    d_re = np.abs(u - np.rint(u))
    d_im = np.abs(v - np.rint(v))
    err = (np.abs(re) + np.abs(im)) * tf.coeff_err
    return d_re, d_im, err, u, v


def sup_dists_f64(re, im, tf: ThetaF64):
    """(dist, err): sup-norm distances of (re+im*i)*theta to Z[i]."""
    d_re, d_im, err, _, _ = frac_dists_f64(re, im, tf)
    return np.maximum(d_re, d_im), err


def _ball_dists(a: int, b: int, theta: ThetaLike, prec: int):
    spec = as_spec(theta)
    ball = as_ball(theta if spec is None else spec, prec)
    z = ball.mul_gaussian(GaussianInt(a, b))
    from .gaussian_core import _frac_dist  # lossless componentwise distances
    return _frac_dist(z.re), _frac_dist(z.im), z.err


def _resolve(a: int, b: int, theta: ThetaLike, decide, start_prec: int,
             max_prec: int) -> bool:
    """Escalate precision until `decide` returns a definite answer."""
    can_refine = as_spec(theta) is not None
    prec = start_prec
    while True:
        out = decide(*_ball_dists(a, b, theta, prec))
        if out is not None:
            return out
        if not can_refine or prec >= max_prec:
            raise PrecisionExhausted(
                f"membership decision for ({a},{b}) undecidable at {prec} bits")
        prec *= 2


def _hi(a, b):
    """a + b rounded toward +inf (bare mpf '+' rounds at global precision)."""
    return fadd(a, b, prec=64, rounding="u")


def _lo(a, b):
    """a - b rounded toward -inf."""
    return fsub(a, b, prec=64, rounding="d")


def _sup_leq(threshold):
    thr = mpf(threshold)

    def decide(d_re, d_im, err):
        d = max(d_re, d_im)
        if _hi(d, err) <= thr:
            return True
        if _lo(d, err) > thr:
            return False
        return None
    return decide


def _sup_geq(threshold):
    thr = mpf(threshold)

    def decide(d_re, d_im, err):
        d = max(d_re, d_im)
        if _lo(d, err) >= thr:
            return True
        if _hi(d, err) < thr:
            return False
        return None
    return decide


def _component_leq(thr_im_f, thr_re_f):
    thr_im, thr_re = mpf(thr_im_f), mpf(thr_re_f)

    def decide(d_re, d_im, err):
        if _hi(d_im, err) <= thr_im and _hi(d_re, err) <= thr_re:
            return True
        if _lo(d_im, err) > thr_im or _lo(d_re, err) > thr_re:
            return False
        return None
    return decide


def _escalate(mask, unsure, re, im, theta, make_decide, prec, max_prec):
    if not np.any(unsure):
        return mask
    re_arr, im_arr = np.asarray(re), np.asarray(im)
    mask = np.array(mask, copy=True)
    for i in np.nonzero(unsure)[0]:
        mask[i] = _resolve(int(re_arr[i]), int(im_arr[i]), theta,
                           make_decide(i), prec, max_prec)
    return mask


def leq_mask(re, im, theta: ThetaLike, thresholds, *,
             prec: int = 256, max_prec: int = MAX_ESCALATION_PREC) -> np.ndarray:
    """Certified mask: dist_sup(n*theta) <= threshold, per point.

    `thresholds` may be scalar or an array aligned with the points.
    """
    tf = ThetaF64(as_ball(theta, prec))
    d, err = sup_dists_f64(re, im, tf)
    thr = np.broadcast_to(np.asarray(thresholds, dtype=np.float64), d.shape)
    mask = d <= thr - err
    unsure = ~mask & (d <= thr + err)
    return _escalate(mask, unsure, re, im, theta,
                     lambda i: _sup_leq(float(thr[i])), prec, max_prec)


def geq_mask(re, im, theta: ThetaLike, thresholds, *,
             prec: int = 256, max_prec: int = MAX_ESCALATION_PREC) -> np.ndarray:
    """Certified mask: dist_sup(n*theta) >= threshold, per point."""
    tf = ThetaF64(as_ball(theta, prec))
    d, err = sup_dists_f64(re, im, tf)
    thr = np.broadcast_to(np.asarray(thresholds, dtype=np.float64), d.shape)
    mask = d - err >= thr
    unsure = ~mask & (d + err >= thr)
    return _escalate(mask, unsure, re, im, theta,
                     lambda i: _sup_geq(float(thr[i])), prec, max_prec)


def component_leq_mask(re, im, theta: ThetaLike, d_im_max: float, d_re_max: float, *,
                       prec: int = 256, max_prec: int = MAX_ESCALATION_PREC
                       ) -> np.ndarray:
    """Certified mask: ||Im(n theta)|| <= d_im_max and ||Re(n theta)|| <= d_re_max."""
    tf = ThetaF64(as_ball(theta, prec))
    d_re, d_im, err, _, _ = frac_dists_f64(re, im, tf)
    mask = (d_im <= d_im_max - err) & (d_re <= d_re_max - err)
    maybe = (d_im <= d_im_max + err) & (d_re <= d_re_max + err)
    unsure = ~mask & maybe
    return _escalate(mask, unsure, re, im, theta,
                     lambda i: _component_leq(d_im_max, d_re_max), prec, max_prec)


def count_leq(re, im, theta: ThetaLike, threshold: float, **kw) -> int:
    return int(np.count_nonzero(leq_mask(re, im, theta, threshold, **kw)))
