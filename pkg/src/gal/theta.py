"""Mini-language for specifying complex targets exactly.

Experiments need irrational theta given symbolically, not as a rounded
double, so the spec can be re-evaluated at any working precision.

Grammar (whitespace ignored)::

    spec := term (('+' | '-') term)*
    term := ['i*'] atom
    atom := 'sqrt:' INT | 'e' | 'pi' | DECIMAL

Examples: ``sqrt:2+i*sqrt:3``, ``e-1.5+i*pi``, ``3+i*2``, ``0.25``.
Decimal literals are evaluated as exact rationals; a term prefixed with
``i*`` contributes to the imaginary part.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf, fadd, fdiv, fmul

from .gaussian_core import DEFAULT_PREC, HPComplex, _err_add, _err_mul, exact_mpf

_TERM_RE = _re.compile(r"([+-]?)(i\*)?(sqrt:\d+|pi|e|\d+\.\d*|\.\d+|\d+)")


@dataclass(frozen=True)
class _Atom:
    kind: str  # "sqrt" | "e" | "pi" | "lit"
    value: int | Fraction
    sign: int
    imag: bool


@dataclass(frozen=True)
class ThetaSpec:
    """Parsed theta expression, re-evaluable at any precision."""

    text: str
    atoms: tuple[_Atom, ...]

    def eval(self, prec: int = DEFAULT_PREC) -> HPComplex:
        re_c, im_c = mpf(0), mpf(0)
        err = mpf(0)
        for a in self.atoms:
            v, e = _eval_atom(a, prec)
            if a.sign < 0:
                v = -v
            # lossless accumulation: only the atom evaluations carry error
            if a.imag:
                im_c = fadd(im_c, v, prec=0)
            else:
                re_c = fadd(re_c, v, prec=0)
            err = _err_add(err, e)
        return HPComplex(re_c, im_c, err, prec)

    def exact_parts(self) -> tuple[Fraction, Fraction]:
        """(Re, Im) as exact rationals; only valid for all-literal specs."""
        if not self.is_exact_gaussian_rational():
            raise ValueError("theta is not an exact Gaussian rational")
        re_p, im_p = Fraction(0), Fraction(0)
        for a in self.atoms:
            v = a.value if a.sign > 0 else -a.value
            if a.imag:
                im_p += v
            else:
                re_p += v
        return re_p, im_p

    def is_exact_gaussian_rational(self) -> bool:
        """True when every atom is a literal (theta in Q(i) by construction)."""
        return all(a.kind == "lit" for a in self.atoms)

    def __str__(self) -> str:
        return self.text


def _eval_atom(a: _Atom, prec: int) -> tuple[mpf, mpf]:
    if a.kind == "lit":
        f = a.value
        if f.denominator == 1:
            return exact_mpf(f.numerator), mpf(0)
        v = fdiv(f.numerator, f.denominator, prec=prec)
        if fmul(v, f.denominator, prec=0) == exact_mpf(f.numerator):
            return v, mpf(0)
        return v, _err_mul(abs(v) + 1, mpf(2) ** (1 - prec))
    with mpmath.workprec(prec + 16):
        if a.kind == "sqrt":
            v = mpmath.sqrt(mpf(a.value))
        elif a.kind == "e":
            v = mpmath.e
        else:
            v = mpmath.pi
        v = mpf(v)
    return v, _err_mul(abs(v) + 1, mpf(2) ** (-prec - 8))


def parse_theta(text: str) -> ThetaSpec:
    """Parse a theta expression; raises ValueError on malformed input."""
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty theta expression")
    atoms = []
    pos = 0
    first = True
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if m is None or (not first and m.group(1) == ""):
            raise ValueError(f"cannot parse theta expression at: {compact[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        imag = m.group(2) is not None
        tok = m.group(3)
        if tok.startswith("sqrt:"):
            atoms.append(_Atom("sqrt", int(tok[5:]), sign, imag))
        elif tok == "e":
            atoms.append(_Atom("e", 0, sign, imag))
        elif tok == "pi":
            atoms.append(_Atom("pi", 0, sign, imag))
        else:
            atoms.append(_Atom("lit", Fraction(tok), sign, imag))
        pos = m.end()
        first = False
    return ThetaSpec(text.strip(), tuple(atoms))


ThetaLike = HPComplex | ThetaSpec | str


def as_ball(theta: ThetaLike, prec: int = DEFAULT_PREC) -> HPComplex:
    """Evaluate any theta-like input to a ball at the requested precision.

    A plain HPComplex is returned unchanged (it cannot be re-evaluated).
    """
    if isinstance(theta, HPComplex):
        return theta
    if isinstance(theta, str):
        theta = parse_theta(theta)
    return theta.eval(prec)


def as_spec(theta: ThetaLike) -> ThetaSpec | None:
    """The re-evaluable spec behind a theta-like input, if there is one."""
    if isinstance(theta, str):
        return parse_theta(theta)
    if isinstance(theta, ThetaSpec):
        return theta
    return None
