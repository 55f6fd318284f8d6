"""Acceptance criteria, one test each, with the stated sample sizes and time limits.

Run ``pytest tests/test_acceptance.py`` to get one PASS/FAIL line per criterion
in the terminal summary.
"""

from fractions import Fraction as F

import pytest

from hahnexp import exp_field, exp_structure, generators, scalars
from hahnexp.errors import NotPseudoCauchy
from hahnexp.exp_field import ExpConfig, exp_full, taylor_bounds
from hahnexp.exp_structure import LEMMA_CONSISTENT, PAPER_LITERAL, InducedContraction
from hahnexp.hahn_group import HahnElement, e, pseudo_limit, valuation_vG
from hahnexp.oracle import check_oracle
from hahnexp.series_field import SeriesElement, invert, nth_root_positive, valuation_v
from hahnexp.suites import SuiteConfig, _full_sample

CUTOFF = e(0, 6)
criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def instances():
    return generators.make_instances(seed=2024, count_each=25, samples=20)


@criterion(1, "Taylor bracketing of exp(-1)")
def test_taylor_bracketing(budget):
    with budget(1):
        lo, hi = scalars.exp_interval(-1, F(1, 10**6))
        for n in (1, 3, 5, 7, 9, 11):
            lower, upper = taylor_bounds(n)
            assert lower < lo and hi < upper
        assert taylor_bounds(3) == (F(1, 3), F(3, 8))
        assert exp_field.check_taylor().ok


@criterion(2, "v-compatibility of the assembled exponential")
def test_v_compatibility(budget):
    rng = generators.make_rng(2)
    samples = [generators.random_infinitesimal(rng) for _ in range(100)]
    cfg = ExpConfig(exp_structure.GroupExponential.strong())
    with budget(5):
        assert valuation_v(exp_full(SeriesElement.one(), cfg) - 1) == HahnElement.zero()
        report = exp_field.check_v_compatible(cfg, samples)
    assert report.ok and report.instances == 101


@criterion(3, "oracle equivalence on 1000 pairs")
def test_oracle_equivalence(budget):
    rng = generators.make_rng(3)
    pairs = []
    for _ in range(1000):
        points = generators.chain_points(rng, rng.randint(1, 4))
        pairs.append((generators.random_series(rng, points, cap=6), generators.random_series(rng, points, cap=6)))
    with budget(10):
        report = check_oracle(pairs)
    assert report.ok, report.failures[:3]
    assert report.instances == 1000


def _unit_draw(rng, positive=False):
    """``c t^g (1 + eps)`` with ``eps`` an infinitesimal at chain index 0."""
    g = generators.random_hahn(rng)
    c = generators.small_rational(rng, positive=positive)
    eps = generators.random_infinitesimal(rng) if rng.random() < 0.85 else SeriesElement.zero()
    return (1 + eps).scale(c).shift(g)


@criterion(4, "inversion and root contracts")
def test_inversion_and_roots(budget):
    rng = generators.make_rng(4)
    nonzero = [_unit_draw(rng) for _ in range(300)]
    positive = []
    for _ in range(300):
        n = rng.choice((2, 3))
        a = _unit_draw(rng, positive=True)
        q = generators.small_rational(rng, positive=True)
        positive.append((a.scale(q ** n / a.terms[0][1]), n))
    with budget(10):
        for a in nonzero:
            r = invert(a, CUTOFF - valuation_v(a))
            residual = a * r.exact_part() - 1
            if r.is_exact:
                assert not residual.terms
            else:
                assert r.trunc == CUTOFF - valuation_v(a)
                assert valuation_v(residual) >= valuation_v(a) + r.trunc
        for a, n in positive:
            r = nth_root_positive(a, n, CUTOFF + valuation_v(a) / n)
            residual = r.exact_part() ** n - a
            level = (r ** n).trunc
            if level is None:
                assert not residual.terms
            else:
                assert level >= valuation_v(a) + CUTOFF
                assert valuation_v(residual) >= level


@criterion(5, "exponential homomorphism, order and log inverse")
def test_homomorphism_and_order(budget):
    rng = generators.make_rng(5)
    h = exp_structure.GroupExponential.strong()
    cfg = ExpConfig(h, right_cutoff=CUTOFF)
    suite = SuiteConfig()
    pairs = [(_full_sample(rng, suite, h), _full_sample(rng, suite, h)) for _ in range(200)]
    comparable = []
    while len(comparable) < 200:
        x, y = _full_sample(rng, suite, h), _full_sample(rng, suite, h)
        if x != y:
            comparable.append((x, y))
    with budget(20):
        hom = exp_field.check_homomorphism(cfg, pairs)
        mono = exp_field.check_monotone(cfg, comparable)
        inverse = exp_field.check_log_exp(cfg, [x for x, _ in pairs])
    assert hom.ok and hom.instances == 200
    assert mono.ok and mono.instances == 200
    assert inverse.ok and inverse.instances == 200


@criterion(6, "growth axiom agrees with strength")
def test_ga_iff_strong(instances, budget):
    with budget(30):
        for inst in instances:
            strong = exp_structure.check_strong(inst.h, inst.strong_samples)
            ga = exp_field.check_GA(ExpConfig(inst.h, ga_max_n=5), inst.ga_samples)
            assert strong.ok == ga.ok == inst.expected_strong
            if not ga.ok:
                assert all(f for f in ga.failures) and all(f for f in strong.failures)
    assert sum(i.expected_strong for i in instances) == 25 and len(instances) == 50


@criterion(7, "strength agrees with centripetality")
def test_strong_iff_centripetal(instances, budget):
    with budget(10):
        for inst in instances:
            strong = exp_structure.check_strong(inst.h, inst.strong_samples)
            chi = InducedContraction(inst.h)
            cent = exp_structure.check_centripetal(chi, inst.centripetal_samples, LEMMA_CONSISTENT)
            assert strong.ok == cent.ok
            if inst.expected_strong:
                literal = exp_structure.check_centripetal(chi, inst.centripetal_samples, PAPER_LITERAL)
                assert not literal.ok and literal.notes


@criterion(8, "group exponential from its contraction")
def test_round_trip(budget):
    rng = generators.make_rng(8)
    insts = [generators.make_instance(rng, "strong", 20) for _ in range(20)]
    with budget(5):
        for inst in insts:
            report = exp_structure.check_round_trip(inst.h, inst.strong_samples)
            assert report.ok and report.instances == len(inst.h.pairs)


@criterion(9, "lifting of chain automorphisms")
def test_lifting(budget):
    rng = generators.make_rng(9)
    cases = []
    for _ in range(10):
        sigma = generators.random_pl_automorphism(rng)
        points = generators.chain_points(rng)
        cases.append((sigma, [generators.random_hahn(rng, points) for _ in range(100)]))
    with budget(5):
        for sigma, elements in cases:
            report = exp_structure.check_lifting(sigma, elements)
            assert report.ok, report.failures[:2]
            for s in elements[:10]:
                lifted = exp_structure.lift_chain_automorphism(sigma, s)
                if s:
                    assert valuation_vG(lifted) == sigma(valuation_vG(s))


@criterion(10, "induced exponential group")
def test_induced_h(budget):
    rng = generators.make_rng(10)
    cases = []
    for _ in range(10):
        pre = generators.random_pl_automorphism(rng) if rng.random() < 0.5 else None
        inst = generators.make_instance(rng, "strong", 5, precompose=pre)
        samples = [generators.random_nonzero_hahn(rng, generators.chain_points(rng)) for _ in range(200)]
        cases.append((ExpConfig(inst.h), samples))
    with budget(5):
        for cfg, samples in cases:
            report = exp_field.check_induced_h(cfg, samples)
            assert report.ok and report.instances == 200


@criterion(11, "pseudo-limits")
def test_pseudo_limits(budget):
    rng = generators.make_rng(11)
    good = [generators.pseudo_cauchy_sequence(rng, rng.randint(2, 64)) for _ in range(50)]
    bad = [generators.non_pseudo_cauchy_sequence(rng, rng.randint(3, 64)) for _ in range(20)]
    with budget(5):
        for seq in good:
            limit, report = pseudo_limit(seq)
            assert report.ok
            for k in range(len(seq) - 1):
                assert valuation_vG(seq[k] - limit) == valuation_vG(seq[k] - seq[k + 1])
        for seq in bad:
            with pytest.raises(NotPseudoCauchy):
                pseudo_limit(seq)


@criterion(12, "differential equation of the exponential")
def test_exp_ode(budget):
    rng = generators.make_rng(12)
    samples = [generators.random_infinitesimal(rng) for _ in range(50)]
    with budget(5):
        report = exp_field.check_exp_ode(samples, CUTOFF)
    assert report.ok and report.instances == 50
