import random
from fractions import Fraction as F

import pytest

from hahnexp import generators, oracle
from hahnexp.errors import NotPseudoCauchy
from hahnexp.hahn_group import HahnElement, check_pseudo_cauchy, e, pseudo_limit, valuation_vG
from hahnexp.series_field import SeriesElement, t

POINTS = (F(-1), F(0), F(2))


def test_vector_encoding():
    g = e(-1, 2) + e(2, F(1, 3))
    assert oracle.to_vector(g, POINTS) == (2, 0, F(1, 3))
    assert oracle.from_vector((2, 0, F(1, 3)), POINTS) == g
    with pytest.raises(ValueError):
        oracle.to_vector(e(5), POINTS)


def test_oracle_hand_cases():
    a = t(1) + 1
    b = 1 - t(1)
    pts = oracle.points_of(a, b)
    assert oracle.mul(oracle.to_poly(a, pts), oracle.to_poly(b, pts)) == oracle.to_poly(1 - t(2), pts)
    # lex order: e_{-1} dominates any multiple of e_0
    big = SeriesElement.monomial(-e(-1))
    small = SeriesElement.monomial(e(0, -1000))
    pts = oracle.points_of(big, small)
    assert oracle.cmp(oracle.to_poly(big, pts), oracle.to_poly(small, pts)) == 1
    assert oracle.valuation({}) is None
    with pytest.raises(ValueError):
        oracle.to_poly(SeriesElement((), e(0)), pts)


def test_compare_with_oracle_random():
    rng = random.Random(0)
    pairs = []
    for _ in range(200):
        pts = generators.chain_points(rng, rng.randint(1, 4))
        pairs.append((generators.random_series(rng, pts), generators.random_series(rng, pts)))
    assert oracle.check_oracle(pairs).ok


def test_generators_deterministic():
    a = generators.make_instances(3, count_each=2, samples=4)
    b = generators.make_instances(3, count_each=2, samples=4)
    assert [i.h.to_json() for i in a] == [i.h.to_json() for i in b]
    assert [i.kind for i in a] == ["strong", "strong", "violating", "violating"]


def test_instance_correspondence():
    rng = random.Random(4)
    inst = generators.make_instance(rng, "violating", samples=10)
    assert inst.classes[0] < 0
    for gamma, g, x in zip(inst.classes, inst.strong_samples, inst.ga_samples):
        assert valuation_vG(g) == gamma and g < HahnElement.zero()
        assert x.terms[0][0] == inst.h.forward(gamma) and x.terms[0][1] > 0
    assert len(inst.centripetal_samples) == 20
    with pytest.raises(ValueError):
        generators.make_instance(rng, "other")


def test_distributions():
    rng = random.Random(9)
    for _ in range(200):
        q = generators.small_rational(rng)
        assert q != 0 and abs(q.numerator) <= 9 and q.denominator <= 4
        assert 1 <= generators.geometric(rng, 6) <= 6
        eps = generators.random_infinitesimal(rng)
        assert eps.terms[0][0] > HahnElement.zero()
        assert generators.random_positive_series(rng) > 0
    sigma = generators.random_pl_automorphism(rng)
    assert sigma.apply_inverse(sigma(F(7, 3))) == F(7, 3)


def test_pseudo_cauchy_fixtures():
    rng = random.Random(2)
    for _ in range(20):
        seq = generators.pseudo_cauchy_sequence(rng, rng.randint(3, 30))
        check_pseudo_cauchy(seq)
        _, report = pseudo_limit(seq)
        assert report.ok
        bad = generators.non_pseudo_cauchy_sequence(rng, rng.randint(3, 30))
        with pytest.raises(NotPseudoCauchy):
            pseudo_limit(bad)
