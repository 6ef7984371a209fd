import math

import pytest

from gal import GaussianInt, convergents, expand, pick_denominator
from gal.errors import NoConvergentBelowTarget
from gal.hurwitz_cf import (
    HURWITZ_C,
    TERMINATED,
    coprimality_witness,
    defect_times_qsq_upper,
    hurwitz_constant_upper,
)

from conftest import FIVE_THETAS


def quotients(exp):
    return [(a.re, a.im) for a in exp.partial_quotients]


def test_sqrt2_expansion():
    exp = expand("sqrt:2", 4)
    assert quotients(exp) == [(1, 0), (2, 0), (2, 0), (2, 0)]
    assert exp.status == "ok"


def test_gaussian_integer_terminates():
    exp = expand("3+i*2", 4)
    assert quotients(exp) == [(3, 2)]
    assert exp.status == TERMINATED


def test_gaussian_rational_terminates():
    exp = expand("0.5+i*0.25", 32)
    assert exp.status == TERMINATED
    assert exp.certified_terms >= 1


def test_quotient_norms_at_least_two():
    exp = expand("sqrt:2+i*sqrt:3", 10, start_prec=512)
    assert exp.certified_terms == 10
    assert all(a.norm >= 2 for a in exp.partial_quotients[1:])


def test_sqrt2_convergents():
    exp = expand("sqrt:2", 4)
    cs = convergents(exp)
    got = [((c.p.re, c.p.im), (c.q.re, c.q.im)) for c in cs]
    assert got == [((1, 0), (1, 0)), ((3, 0), (2, 0)), ((7, 0), (5, 0)),
                   ((17, 0), (12, 0))]
    assert cs[0].q == GaussianInt(1, 0)


def test_sqrt2_c_bound_value():
    # |sqrt(2) - 17/12| * 144 = 0.3529... well under 2 + sqrt(2)
    exp = expand("sqrt:2", 4)
    c = convergents(exp)[3]
    d = float(defect_times_qsq_upper(exp.theta, c))
    assert d == pytest.approx(abs(math.sqrt(2) - 17 / 12) * 144, abs=1e-12)
    assert d <= HURWITZ_C


def test_determinant_and_growth_exact():
    exp = expand("e+i*pi", 14, start_prec=512)
    cs = convergents(exp)
    for prev, cur in zip(cs, cs[1:]):
        det = cur.p * prev.q - prev.p * cur.q
        assert det.is_unit()
        assert cur.q.norm > prev.q.norm


def test_coprimality_witness_is_unit():
    exp = expand("sqrt:7+i*sqrt:3", 12, start_prec=512)
    for c in convergents(exp):
        assert coprimality_witness(c).norm == 1


def test_c_bound_seeded_sample():
    c_up = hurwitz_constant_upper()
    for spec in FIVE_THETAS:
        exp = expand(spec, 18, start_prec=512)
        for c in convergents(exp):
            if c.q.norm > 10**12:
                break
            assert defect_times_qsq_upper(exp.theta, c) <= c_up


def test_pick_denominator():
    exp = expand("sqrt:2", 8)
    assert pick_denominator(exp, 5).q == GaussianInt(2, 0)
    assert pick_denominator(exp, 1).q == GaussianInt(1, 0)
    assert pick_denominator(exp, 150).q == GaussianInt(12, 0)
    with pytest.raises(NoConvergentBelowTarget):
        pick_denominator(exp, 0)


def test_doubled_precision_reproduces_prefix():
    lo = expand("pi+i*sqrt:2", 12, start_prec=256)
    hi = expand("pi+i*sqrt:2", 12, start_prec=512)
    n = lo.certified_terms
    assert hi.partial_quotients[:n] == lo.partial_quotients


def test_export_shape():
    exp = expand("sqrt:2", 4)
    d = exp.to_dict()
    assert d["partial_quotients"] == [[1, 0], [2, 0], [2, 0], [2, 0]]
    assert d["certified"] == [True] * 4
    assert len(d["convergents"]) == 4
    assert d["convergents"][3]["q"] == [12, 0]


def test_expand_validates_terms():
    with pytest.raises(ValueError):
        expand("sqrt:2", 0)
