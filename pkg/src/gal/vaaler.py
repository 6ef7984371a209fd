"""Sawtooth function, Vaaler approximant and Fejer majorant.

Definitions (with e(x) = exp(2*pi*i*x) throughout):

    psi(x)    = x - floor(x) - 1/2                       [sawtooth]
    W(t)      = pi*t*(1-|t|)*cot(pi*t) + |t|,  0 < |t| < 1
    psi*(x)   = -sum_{1<=|j|<=J} (2*pi*i*j)^{-1} W(j/(J+1)) e(jx)
    sigma(x)  = (2J+2)^{-1} sum_{|j|<=J} (1 - |j|/(J+1)) e(jx)

sigma is a non-negative Fejer-type kernel and majorizes the pointwise
error: |psi*(x) - psi(x)| <= sigma(x) for every real x.  Harness use
requires the truncation level J to satisfy J >= 1/delta.

Accumulation is numpy pairwise summation over the symmetric j-range;
imaginary parts cancel by symmetry and are asserted below 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_IMAG_TOL = 1e-12


@dataclass(frozen=True)
class VaalerParams:
    """Truncation level J >= 1 of the trigonometric approximation."""

    J: int

    def __post_init__(self) -> None:
        if self.J < 1:
            raise DomainError("J must be a positive integer")

    def check_for_delta(self, delta: float) -> None:
        if self.J < 1.0 / delta:
            raise DomainError(f"J={self.J} violates J >= 1/delta for delta={delta}")


def psi(x):
    """Sawtooth psi(x) = x - floor(x) - 1/2, in [-1/2, 1/2), period 1."""
    x = np.asarray(x, dtype=np.float64)
    out = x - np.floor(x) - 0.5
    return out if out.ndim else float(out)


def weight_w(t):
    """Vaaler weight W(t) = pi*t*(1-|t|)*cot(pi*t) + |t| for 0 < |t| < 1."""
    t = np.asarray(t, dtype=np.float64)
    if np.any(t == 0.0) or np.any(np.abs(t) >= 1.0):
        raise DomainError("W(t) requires 0 < |t| < 1")
    out = np.pi * t * (1.0 - np.abs(t)) / np.tan(np.pi * t) + np.abs(t)
    return out if out.ndim else float(out)


def _e(x):
    return np.exp(2j * np.pi * x)


def psi_star(x, params: VaalerParams):
    """Degree-J trigonometric approximation to the sawtooth."""
    x = np.asarray(x, dtype=np.float64)
    j = np.arange(1, params.J + 1, dtype=np.float64)
    w = weight_w(j / (params.J + 1))
    coeff = -w / (2j * np.pi * j)
    # j and -j terms; W is even, so the pair shares one weight
    terms = coeff * _e(np.multiply.outer(x, j)) - coeff * _e(np.multiply.outer(x, -j))
    total = terms.sum(axis=-1)
    assert np.max(np.abs(total.imag)) < _IMAG_TOL, "psi* imaginary residue too large"
    out = total.real
    return out if out.ndim else float(out)


def sigma_majorant(x, params: VaalerParams):
    """Non-negative majorant of |psi* - psi| (Fejer-type kernel / (2J+2))."""
    x = np.asarray(x, dtype=np.float64)
    j = np.arange(1, params.J + 1, dtype=np.float64)
    w = 1.0 - j / (params.J + 1)
    terms = w * (_e(np.multiply.outer(x, j)) + _e(np.multiply.outer(x, -j)))
    total = 1.0 + terms.sum(axis=-1)
    assert np.max(np.abs(total.imag)) < _IMAG_TOL, "sigma imaginary residue too large"
    out = total.real / (2.0 * params.J + 2.0)
    return out if out.ndim else float(out)


def max_error_report(params: VaalerParams, grid_size: int) -> dict:
    """Grid sweep of the lemma's two inequalities for one J."""
    x = np.arange(grid_size, dtype=np.float64) / grid_size
    ps = psi_star(x, params)
    s = sigma_majorant(x, params)
    gap = np.abs(ps - psi(x)) - s
    return {
        "J": params.J,
        "grid": grid_size,
        "max_err_minus_sigma": float(np.max(gap)),
        "min_sigma": float(np.min(s)),
        "max_abs_err": float(np.max(np.abs(ps - psi(x)))),
    }
