from fractions import Fraction as F

import pytest

from hahnexp import scalars
from hahnexp.errors import MiddleUnsupported, NotInfinitesimal, NotOnePlusInfinitesimal, NotPurelyInfinite
from hahnexp.exp_field import (
    ZERO_ONLY,
    ExpConfig,
    check_exp_log,
    check_exp_ode,
    check_GA,
    check_homomorphism,
    check_induced_h,
    check_log_exp,
    check_monotone,
    check_taylor,
    check_v_compatible,
    exp_full,
    exp_left,
    exp_right,
    left_label,
    log_full,
    log_left,
    log_right,
    taylor_bounds,
)
from hahnexp.exp_structure import GroupExponential
from hahnexp.hahn_group import HahnElement, e
from hahnexp.series_field import SeriesElement, equal_up_to, t, valuation_v

ONE = SeriesElement.one()
ZERO = SeriesElement.zero()


def mono(g, c=1):
    return SeriesElement.monomial(g, c)


def test_exp_right_examples():
    assert exp_right(ZERO, 4) == ONE
    r = exp_right(t(1), 4)
    assert r.exact_part() == 1 + t(1) + t(2, F(1, 2)) + t(3, F(1, 6))
    assert r.trunc == e(0, 4)
    with pytest.raises(NotInfinitesimal):
        exp_right(t(-1), 4)
    with pytest.raises(NotInfinitesimal):
        exp_right(ONE, 4)


def test_log_right_examples():
    assert log_right(ONE, 4) == ZERO
    r = log_right(1 + t(1), 4)
    assert r.exact_part() == t(1) - t(2, F(1, 2)) + t(3, F(1, 3))
    assert equal_up_to(log_right(exp_right(t(1), 8), 8), t(1), 8)
    with pytest.raises(NotOnePlusInfinitesimal):
        log_right(t(0, 2), 4)


def test_exp_left_examples():
    h = GroupExponential.reference()
    assert exp_left(ZERO, h) == ONE
    g0 = -e(2)
    h.pin(0, g0)
    assert exp_left(mono(g0), h) == mono(-e(0))
    a = mono(g0, 3) + mono(-e(5), -1)
    b = mono(-e(5), 2) + mono(-e(-1))
    assert exp_left(a + b, h) == exp_left(a, h) * exp_left(b, h)
    with pytest.raises(NotPurelyInfinite):
        exp_left(t(1), h)
    with pytest.raises(NotPurelyInfinite):
        exp_left(SeriesElement([(-e(0), 1)], e(0)), h)


def test_log_left_inverts_exp_left():
    h = GroupExponential.strong()
    a = mono(h.forward(1), 2) - mono(h.forward(3), F(1, 2))
    assert log_left(exp_left(a, h), h) == a
    assert left_label(a, h) == e(1, 2) - e(3, F(1, 2))
    with pytest.raises(ValueError):
        log_left(t(1, 2), h)


def test_exp_full_glue_example():
    h = GroupExponential.strong()
    cfg = ExpConfig(h, right_cutoff=e(0, 5))
    g0 = h.forward(0)
    x = mono(g0) + t(1)
    assert exp_full(ZERO, cfg) == ONE
    assert exp_full(x, cfg) == exp_left(mono(g0), h) * exp_right(t(1), e(0, 5))


def test_exp_full_middle_modes():
    h = GroupExponential.strong()
    sym = ExpConfig(h)
    assert exp_full(SeriesElement.constant(2), sym) == SeriesElement.constant(scalars.exp(2))
    zero = ExpConfig(h, middle_mode=ZERO_ONLY)
    with pytest.raises(MiddleUnsupported):
        exp_full(1 + t(1), zero)
    assert exp_full(t(1), zero) == exp_right(t(1), zero.right_cutoff)
    with pytest.raises(MiddleUnsupported):
        log_full(t(0, 2), zero)
    with pytest.raises(MiddleUnsupported):
        check_v_compatible(zero)


def test_config_validation():
    h = GroupExponential.strong()
    with pytest.raises(ValueError):
        ExpConfig(h, right_cutoff=-e(0))
    with pytest.raises(ValueError):
        ExpConfig(h, ga_max_n=0)
    with pytest.raises(ValueError):
        ExpConfig(h, middle_mode="other")


def test_ga_examples():
    h = GroupExponential.strong()
    cfg = ExpConfig(h, ga_max_n=2)
    x = mono(h.forward(F(-3)))
    report = check_GA(cfg, [x])
    assert report.ok and report.instances == 2
    assert report.rows[1][3] == "pass" and report.rows[1][2] == x * x
    ref = GroupExponential.reference()
    ref.pin(0, -e(0))
    bad = check_GA(ExpConfig(ref, ga_max_n=2), [mono(-e(0))])
    assert len(bad.failures) == 2 and bad.failures[0]["n"] == 1
    vac = check_GA(cfg, [SeriesElement.constant(F(1, 2))])
    assert vac.vacuous == 2 and vac.ok
    assert [row[3] for row in vac.rows] == ["vacuous", "vacuous"]


def test_v_compatible_examples():
    h = GroupExponential.strong()
    cfg = ExpConfig(h)
    report = check_v_compatible(cfg, [t(1), t(F(1, 3), 4) - t(2)])
    assert report.ok and report.instances == 3
    d = exp_full(ONE, cfg) - 1
    assert valuation_v(d) == HahnElement.zero()
    lo, hi = d.terms[0][1].interval(16)
    assert F(17, 10) < lo and hi < F(18, 10)
    y = exp_full(t(1), cfg) - 1
    assert valuation_v(y) == e(0)


def test_induced_h_examples():
    h = GroupExponential.strong()
    cfg = ExpConfig(h)
    assert check_induced_h(cfg, [e(F(3, 2))]).ok
    assert check_induced_h(cfg, [e(0, 2) - e(5) + e(-1, F(1, 2))]).ok
    with pytest.raises(ValueError):
        check_induced_h(cfg, [HahnElement.zero()])


def test_taylor_examples():
    assert taylor_bounds(3) == (F(1, 3), F(3, 8))
    assert taylor_bounds(1) == (F(0), F(1, 2))
    for n in (1, 3, 5, 7, 9):
        lo, hi = taylor_bounds(n)
        lo2, hi2 = taylor_bounds(n + 2)
        assert lo < lo2 < hi2 < hi
    with pytest.raises(ValueError):
        taylor_bounds(2)
    report = check_taylor()
    assert report.instances == 6 and report.ok


def test_homomorphism_order_and_inverse():
    h = GroupExponential.strong()
    cfg = ExpConfig(h)
    xs = [mono(h.forward(1), 2) + F(1, 3) + t(1),
          mono(h.forward(-2), -1) + t(F(1, 2), 5),
          SeriesElement.constant(-2) + t(3),
          t(2, F(-1, 4))]
    pairs = [(a, b) for a in xs for b in xs]
    assert check_homomorphism(cfg, pairs).ok
    assert check_monotone(cfg, pairs).ok
    assert check_log_exp(cfg, xs).ok
    assert check_exp_log(cfg, [exp_full(x, cfg) for x in xs] + [t(-3, 2) + 1]).ok
    a, b = xs[0], xs[1]
    assert (a < b) == (exp_full(a, cfg) < exp_full(b, cfg))


def test_exp_ode():
    assert check_exp_ode([t(1), t(3), t(F(1, 2), 2) - t(2)], 10).ok
