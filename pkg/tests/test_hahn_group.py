import itertools
import random
from fractions import Fraction as F

import pytest

from hahnexp import generators, scalars
from hahnexp.errors import NotInComponentDomain, NotPseudoCauchy
from hahnexp.hahn_group import (
    INFINITY,
    HahnElement,
    check_pseudo_cauchy,
    cmp_group,
    component_residue,
    diff_valuation,
    e,
    group_arith,
    pseudo_limit,
    valuation_vG,
)
from hahnexp.scalars import Sign


def test_group_arith_examples():
    assert group_arith("add", e(0), -e(0)) == HahnElement.zero()
    assert group_arith("add", e(0, 2) + e(1), e(0, -2)) == e(1)
    assert group_arith("divide_by_n", e(0, 3), n=3) == e(0)
    assert group_arith("neg", e(2, 5)) == e(2, -5)
    assert group_arith("sub", e(1), e(1)) == 0


def test_normal_form():
    g = HahnElement([(2, 1), (0, 3), (2, -1), (1, 0)])
    assert g.terms == ((F(0), F(3)),)
    assert not HahnElement.zero()


def test_cmp_examples():
    assert cmp_group(e(0), e(1, 100)).outcome is Sign.POSITIVE
    assert cmp_group(-e(0) + e(2, 50), HahnElement.zero()).outcome is Sign.NEGATIVE
    a = e(0, 3) - e(5)
    assert cmp_group(a, a).outcome is Sign.ZERO
    assert e(0) > e(1, 100)


def test_symbolic_coefficients_order():
    g = e(0, scalars.exp(1) - 2)
    assert cmp_group(g, HahnElement.zero()).outcome is Sign.POSITIVE
    r = scalars.nth_root(2, 2, symbolic=True)
    assert cmp_group(e(0, r * r), e(0, 2)).outcome is Sign.UNDECIDED


def test_valuation_examples():
    assert valuation_vG(e(2) + e(7, 5)) == 2
    assert valuation_vG(HahnElement.zero()) is INFINITY
    assert valuation_vG((e(0) + e(1)) - e(0)) == 1
    assert diff_valuation(e(0) + e(1), e(0)) == 1
    assert diff_valuation(e(0), e(0)) is INFINITY


def test_infinity_sentinel():
    assert INFINITY > F(10**9)
    assert not INFINITY < F(0)
    assert INFINITY + 3 is INFINITY
    assert INFINITY.to_json() == "inf"


def test_component_residue_examples():
    assert component_residue(e(2, 3) + e(7, 5), 2) == 3
    assert component_residue(e(7, 5), 2) == 0
    with pytest.raises(NotInComponentDomain):
        component_residue(e(2, 3), 7)


def test_pseudo_limit_example():
    seq = [sum((e(k) for k in range(n + 1)), HahnElement.zero()) for n in range(4)]
    limit, report = pseudo_limit(seq)
    assert report.ok and report.instances == 3
    for rho in range(3):
        assert diff_valuation(seq[rho], limit) == rho + 1
    assert limit not in seq
    assert report.notes


def test_pseudo_limit_rejections():
    a = e(0) + e(3)
    with pytest.raises(NotPseudoCauchy) as info:
        pseudo_limit([a, a, a])
    assert info.value.triple == (0, 1, 2)
    with pytest.raises(NotPseudoCauchy):
        pseudo_limit([e(0, 1 - F(1, 2 ** n)) for n in range(4)])
    with pytest.raises(NotPseudoCauchy):
        pseudo_limit([e(0), e(0) + e(1), e(0) + e(1)])
    with pytest.raises(NotPseudoCauchy):
        pseudo_limit([a, a])
    with pytest.raises(ValueError):
        pseudo_limit([a])


def test_pseudo_limit_of_two_terms():
    limit, report = pseudo_limit([e(0), e(1)])
    assert report.ok and diff_valuation(e(0), limit) == 0


def test_pseudo_cauchy_matrix():
    seq = [HahnElement.zero(), e(0), e(0) + e(1)]
    vals = check_pseudo_cauchy(seq)
    assert vals[0][1] == 0 and vals[1][2] == 1 and vals[0][2] == 0


def test_json_round_trip():
    g = e(F(-1, 2), F(3, 4)) + e(2, -1)
    assert HahnElement.from_json(g.to_json()) == g
    assert g.to_json() == {"terms": [{"idx": "-1/2", "coef": "3/4"}, {"idx": "2", "coef": "-1"}]}


def test_accessors():
    g = e(1, 2) + e(3, -1)
    assert g.support == [1, 3]
    assert g.leading == (1, 2)
    assert g.coefficient(3) == -1 and g.coefficient(2) == 0
    assert e(0, 5).is_rational_multiple(0) and not g.is_rational_multiple(1)
    with pytest.raises(ValueError):
        g.divide_by_n(0)


def test_pseudo_cauchy_matches_triple_definition():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(2, 7)
        if rng.random() < 0.5:
            seq = generators.pseudo_cauchy_sequence(rng, n)
        else:
            seq = generators.non_pseudo_cauchy_sequence(rng, n)
        brute = all(a != b for a, b in itertools.combinations(seq, 2)) and all(
            diff_valuation(seq[r], seq[s]) < diff_valuation(seq[s], seq[t])
            for r, s, t in itertools.combinations(range(len(seq)), 3))
        try:
            vals = check_pseudo_cauchy(seq)
        except NotPseudoCauchy:
            assert not brute
        else:
            assert brute
            for r, s in itertools.combinations(range(len(seq)), 2):
                assert vals[r][s] == diff_valuation(seq[r], seq[s])
