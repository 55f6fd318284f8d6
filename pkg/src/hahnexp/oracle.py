"""Naive reference arithmetic for series with exponents over a few chain points.

Given sorted chain points ``p_1 < ... < p_k`` an exponent supported on them
becomes the vector ``(g(p_1), ..., g(p_k))``, and the lexicographic order on
the Hahn sum is plain tuple comparison.  A series becomes a dict from such
vectors to rational coefficients, i.e. a sparse Laurent polynomial in ``k``
variables with rational exponents.  Nothing here shares code with
:mod:`hahnexp.series_field`; it exists to cross-check it.
"""

from __future__ import annotations

from fractions import Fraction

from .hahn_group import INFINITY, HahnElement
from .reports import Report
from .series_field import SeriesElement, cmp_series, valuation_v


def to_vector(g, points):
    coords = dict(g.terms)
    extra = set(coords) - set(points)
    if extra:
        raise ValueError(f"exponent uses points {sorted(extra)} outside the chosen chain points")
    return tuple(Fraction(coords.get(p, 0)) for p in points)


def from_vector(vec, points):
    return HahnElement(zip(points, vec))


def to_poly(a, points):
    if a.trunc is not None:
        raise ValueError("the oracle only handles exact series")
    return {to_vector(g, points): Fraction(c) for g, c in a.terms}


def from_poly(poly, points):
    return SeriesElement((from_vector(v, points), c) for v, c in poly.items())


def _clean(poly):
    return {k: c for k, c in poly.items() if c != 0}


def add(p, q):
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return _clean(out)


def neg(p):
    return {k: -c for k, c in p.items()}


def mul(p, q):
    out = {}
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + c1 * c2
    return _clean(out)


def valuation(p):
    """Smallest exponent vector, ``None`` for the zero polynomial."""
    return min(p) if p else None


def cmp(p, q):
    d = add(p, neg(q))
    if not d:
        return 0
    return 1 if d[min(d)] > 0 else -1


def points_of(*elements):
    pts = set()
    for a in elements:
        for g, _ in a.terms:
            pts.update(i for i, _ in g.terms)
    return sorted(pts)


def compare_with_oracle(a, b, points=None):
    """Return a list of mismatching operation names for the pair ``(a, b)``."""
    points = points if points is not None else points_of(a, b)
    pa, pb = to_poly(a, points), to_poly(b, points)
    bad = []
    if to_poly(a + b, points) != add(pa, pb):
        bad.append("add")
    if to_poly(a * b, points) != mul(pa, pb):
        bad.append("mul")
    if cmp_series(a, b).outcome.value != cmp(pa, pb):
        bad.append("cmp")
    for name, x, px in (("valuation_a", a, pa), ("valuation_b", b, pb)):
        v = valuation_v(x)
        ov = valuation(px)
        if (v is INFINITY) != (ov is None) or (ov is not None and to_vector(v, points) != ov):
            bad.append(name)
    return bad


def check_oracle(pairs):
    report = Report("oracle")
    for a, b in pairs:
        bad = compare_with_oracle(a, b)
        report.record(not bad, {"a": a.to_json(), "b": b.to_json(), "mismatch": bad})
    return report
