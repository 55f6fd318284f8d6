"""Seeded random instances for the randomized checks.

All draws go through a caller-supplied :class:`random.Random`, so a seed
fixes every instance.  Distributions:

* small rationals: numerator uniform in ``[-9, 9]`` without 0, denominator
  uniform in ``{1, 2, 3, 4}``;
* support sizes: geometric with success probability 1/2, capped;
* Hahn exponents: indices drawn from at most four pinned chain points;
* infinitesimals (Q-exponent mode): exponents ``k/2`` with ``k`` uniform in
  ``[1, 8]`` at chain index 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import PLAutomorphism
from .exp_structure import GroupExponential
from .hahn_group import HahnElement, e, valuation_vG
from .series_field import SeriesElement, t

DEFAULT_POINTS = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(2))


def make_rng(seed):
    return random.Random(seed)


def small_rational(rng, nonzero=True, positive=False):
    while True:
        num = rng.randint(1 if positive else -9, 9)
        if num or not nonzero:
            return Fraction(num, rng.randint(1, 4))


def geometric(rng, cap, p=0.5):
    """Number of trials up to the first success, capped at ``cap``."""
    n = 1
    while n < cap and rng.random() >= p:
        n += 1
    return n


def chain_points(rng, k=4):
    pts = set()
    while len(pts) < k:
        pts.add(Fraction(rng.randint(-12, 12), rng.randint(1, 3)))
    return tuple(sorted(pts))


def random_hahn(rng, points=DEFAULT_POINTS, cap=4):
    size = min(geometric(rng, cap), len(points))
    return HahnElement((i, small_rational(rng)) for i in rng.sample(list(points), size))


def random_nonzero_hahn(rng, points=DEFAULT_POINTS, cap=4):
    while True:
        g = random_hahn(rng, points, cap)
        if g:
            return g


def random_series(rng, points=DEFAULT_POINTS, cap=6):
    """Up to ``cap`` terms; exponents over ``points`` (zero exponent allowed)."""
    size = geometric(rng, cap)
    terms = []
    for _ in range(size):
        g = random_hahn(rng, points, cap=3) if rng.random() < 0.85 else HahnElement.zero()
        terms.append((g, small_rational(rng)))
    return SeriesElement(terms)


def random_nonzero_series(rng, points=DEFAULT_POINTS, cap=6):
    while True:
        a = random_series(rng, points, cap)
        if a:
            return a


def random_positive_series(rng, points=DEFAULT_POINTS, cap=6):
    a = random_nonzero_series(rng, points, cap)
    return -a if a.terms[0][1] < 0 else a


def random_q_series(rng, cap=4, lo=-4, hi=8):
    """Q-exponent mode: exponents ``k/2`` at index 0 with ``lo <= k <= hi``."""
    return SeriesElement((t(Fraction(rng.randint(lo, hi), 2)).terms[0][0], small_rational(rng))
                         for _ in range(geometric(rng, cap)))


def random_infinitesimal(rng, cap=3):
    while True:
        eps = random_q_series(rng, cap, lo=1, hi=8)
        if eps:
            return eps


def random_pl_automorphism(rng, nodes=3):
    xs = sorted(set(Fraction(rng.randint(-20, 20), rng.randint(1, 3)) for _ in range(nodes)))
    ys = sorted(set(Fraction(rng.randint(-20, 20), rng.randint(1, 3)) for _ in range(len(xs))))
    while len(ys) < len(xs):
        ys.append(ys[-1] + 1 if ys else Fraction(0))
    return PLAutomorphism.from_nodes(list(zip(xs, ys)), rng.randint(1, 4) / Fraction(rng.randint(1, 4)),
                                     rng.randint(1, 4) / Fraction(rng.randint(1, 4)))


def random_class(rng, avoid=None):
    while True:
        gamma = Fraction(rng.randint(-30, 30), rng.randint(1, 4))
        if gamma != avoid:
            return gamma


# --------------------------------------------------------------------------
# group exponential fixtures
# --------------------------------------------------------------------------


@dataclass
class ExponentialInstance:
    """A group exponential together with per-class samples.

    ``classes[i]`` is the valuation class of ``strong_samples[i]``;
    ``ga_samples[i]`` has leading exponent ``h(classes[i])``.
    """

    h: GroupExponential
    kind: str
    classes: list = field(default_factory=list)
    strong_samples: list = field(default_factory=list)
    ga_samples: list = field(default_factory=list)

    @property
    def centripetal_samples(self):
        return self.strong_samples + [-g for g in self.strong_samples]

    @property
    def expected_strong(self):
        return self.kind == "strong"


def _warm_up(rng, h, queries, threshold=None):
    for _ in range(queries):
        if rng.random() < 0.6:
            h.forward(random_class(rng, threshold))
        else:
            g = -random_nonzero_hahn(rng, chain_points(rng, 2))
            if g > HahnElement.zero():
                g = -g
            h.backward(g)


def _negative_in_class(rng, gamma):
    g = e(gamma, -small_rational(rng, positive=True))
    if rng.random() < 0.5:
        g = g + e(gamma + rng.randint(1, 5), small_rational(rng))
    return g


def _ga_sample(rng, h, gamma):
    lead = h.forward(gamma)
    x = SeriesElement.monomial(lead, small_rational(rng, positive=True))
    if rng.random() < 0.5:
        x = x + SeriesElement.monomial(lead / 2, small_rational(rng))
    return x


def make_instance(rng, kind="strong", samples=20, warm_up=8, precompose=None):
    """A strength-constrained (``kind='strong'``) or deliberately violating exponential.

    Violating instances are anti-strong below the threshold 0; at least one
    sampled class is drawn below it.
    """
    if kind == "strong":
        h = GroupExponential.strong(precompose)
        threshold = None
    elif kind == "violating":
        threshold = Fraction(0)
        h = GroupExponential.violating(threshold, precompose)
    else:
        raise ValueError(f"unknown fixture kind {kind!r}")
    _warm_up(rng, h, warm_up, threshold)
    inst = ExponentialInstance(h, kind)
    for i in range(samples):
        gamma = random_class(rng, threshold)
        if kind == "violating" and i == 0 and gamma > 0:
            gamma = -gamma
        inst.classes.append(gamma)
        inst.strong_samples.append(_negative_in_class(rng, gamma))
        inst.ga_samples.append(_ga_sample(rng, h, gamma))
    return inst


def make_instances(seed, count_each=25, samples=20):
    rng = make_rng(seed)
    out = []
    for kind in ("strong", "violating"):
        for _ in range(count_each):
            pre = random_pl_automorphism(rng) if rng.random() < 0.5 else None
            out.append(make_instance(rng, kind, samples, precompose=pre))
    return out


# --------------------------------------------------------------------------
# pseudo-Cauchy fixtures
# --------------------------------------------------------------------------


def pseudo_cauchy_sequence(rng, length):
    """``a_k = sum_{j<k} c_j e_{mu_j}`` with strictly increasing ``mu``."""
    mu = Fraction(rng.randint(-10, 10), rng.randint(1, 3))
    base = random_hahn(rng, (mu - 1, mu - 2))
    seq = [base]
    for _ in range(length - 1):
        seq.append(seq[-1] + e(mu, small_rational(rng)))
        mu += Fraction(rng.randint(1, 6), rng.randint(1, 3))
    return seq


def non_pseudo_cauchy_sequence(rng, length):
    """A sequence with a repeated or decreasing difference valuation."""
    length = max(length, 3)
    seq = pseudo_cauchy_sequence(rng, length)
    kind = rng.choice(("repeat", "swap", "constant"))
    k = rng.randint(0, length - 3)
    if kind == "constant":
        seq[k + 1] = seq[k]
        seq[k + 2] = seq[k]
        return seq
    d1 = seq[k + 1] - seq[k]
    mu = valuation_vG(d1)
    if kind == "repeat":
        seq[k + 2] = seq[k + 1] + e(mu, small_rational(rng))
    else:
        seq[k + 2] = seq[k + 1] + e(mu - 1, small_rational(rng))
    return seq
