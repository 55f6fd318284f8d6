from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from hahnexp.chains import PLAutomorphism
from hahnexp.exp_field import exp_right, log_right
from hahnexp.hahn_group import INFINITY, HahnElement, valuation_vG
from hahnexp.series_field import (
    SeriesElement,
    additive_decompose,
    equal_up_to,
    formal_derivative,
    multiplicative_decompose,
    residue,
    valuation_v,
)

settings.register_profile("hahnexp", max_examples=60, deadline=None)
settings.load_profile("hahnexp")

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero = rationals.filter(bool)
points = st.sampled_from([F(-1), F(0), F(1, 2), F(2)])

hahn = st.lists(st.tuples(points, rationals), max_size=4).map(HahnElement)
exponents = st.lists(st.tuples(st.just(F(0)), rationals), max_size=1).map(HahnElement)
series = st.lists(st.tuples(hahn, rationals), max_size=4).map(SeriesElement)
rational_series = st.lists(st.tuples(exponents, rationals), max_size=4).map(SeriesElement)
nonzero_series = series.filter(lambda a: a.terms)


@given(hahn, hahn, hahn)
def test_group_axioms(a, b, c):
    z = HahnElement.zero()
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + z == a and a - a == z
    assert (a < b) == (a + c < b + c)


@given(hahn, hahn)
def test_group_valuation_ultrametric(a, b):
    assert valuation_vG(a + b) >= min(valuation_vG(a), valuation_vG(b))


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == SeriesElement.zero()


@given(series, series)
def test_valuation_ultrametric_and_multiplicative(a, b):
    v = valuation_v(a + b)
    assert v is INFINITY or v >= min(valuation_v(a), valuation_v(b))
    if a.terms and b.terms:
        assert valuation_v(a * b) == valuation_v(a) + valuation_v(b)


@given(series, series)
def test_order_compatible(a, b):
    if a > 0 and b > 0:
        assert a * b > 0 and a + b > 0
    assert (a < b) == (b - a > 0)


@given(series, series)
def test_residue_homomorphism(a, b):
    z = HahnElement.zero()
    a = SeriesElement([(g, c) for g, c in a.terms if g >= z])
    b = SeriesElement([(g, c) for g, c in b.terms if g >= z])
    assert residue(a + b) == residue(a) + residue(b)
    assert residue(a * b) == residue(a) * residue(b)


@given(series)
def test_decompositions_recombine(a):
    assert additive_decompose(a).recombine() == a
    if a.terms:
        m = multiplicative_decompose(a * a)
        assert m.recombine() == a * a


@given(rational_series, rational_series)
def test_leibniz(a, b):
    lhs = formal_derivative(a * b)
    assert lhs == formal_derivative(a) * b + a * formal_derivative(b)


single_class = st.builds(
    lambda p, terms: SeriesElement([(HahnElement.monomial(p, q), c) for q, c in terms]),
    points,
    st.lists(st.tuples(st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4), nonzero), max_size=3))


@given(single_class)
def test_exp_log_right_inverse(eps):
    cutoff = HahnElement.monomial(eps.terms[0][0].terms[0][0], 6) if eps.terms else 6
    assert equal_up_to(log_right(exp_right(eps, cutoff), cutoff), eps, cutoff)


@given(st.lists(st.tuples(rationals, st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4)),
                min_size=1, max_size=3, unique_by=lambda p: p[0]), rationals)
def test_pl_inverse_and_compose(nodes, x):
    nodes.sort()
    xs, ys = [p[0] for p in nodes], []
    acc = F(0)
    for _, slope in nodes:
        acc += slope
        ys.append(acc)
    sigma = PLAutomorphism.from_nodes(list(zip(xs, ys)))
    assert sigma.apply_inverse(sigma(x)) == x
    assert sigma.compose(sigma.inverse())(x) == x
    assert sigma.compose(PLAutomorphism.shift(1))(x) == sigma(x + 1)
