"""Small worked constructions, replayed by ``hahnexp demo <name>``.

Each demo emits JSON objects through a callback and returns the reports it
produced, so the command line can derive an exit code.
"""

from __future__ import annotations

from fractions import Fraction

from . import exp_field, exp_structure
from .chains import PLAutomorphism
from .exp_field import ExpConfig
from .exp_structure import GroupExponential, InducedContraction
from .hahn_group import e
from .series_field import SeriesElement, t


def demo_lifting(emit):
    sigma = PLAutomorphism.shift(1)
    s = e(0, 3) + e(1)
    lifted = exp_structure.lift_chain_automorphism(sigma, s)
    emit({"sigma": sigma.to_json(), "s": s.to_json(), "tau(s)": lifted.to_json()})
    bent = PLAutomorphism.from_nodes([(0, 0), (1, 3)], left_slope=Fraction(1, 2), right_slope=2)
    samples = [e(0, 3) + e(1), e(-2) - e(Fraction(1, 2), 5), -e(4, 2) + e(7), e(Fraction(1, 3))]
    report = exp_structure.check_lifting(bent, samples)
    emit(report.to_dict())
    return [report]


def demo_round_trip(emit):
    h = GroupExponential.strong()
    for gamma in (Fraction(-2), Fraction(0), Fraction(3, 2)):
        h.forward(gamma)
    chi = InducedContraction(h)
    sample = [-e(gamma) for gamma in h.classes()] + [-e(0, 5) + e(2)]
    table = exp_structure.h_from_chi(chi, sample)
    emit({"h": h.to_json()["pairs"],
          "h_chi": [[str(gamma), table[gamma].to_json()] for gamma in table.classes()]})
    report = exp_structure.check_round_trip(h, sample)
    emit(report.to_dict())
    return [report]


def demo_taylor(emit):
    for n in (1, 3, 5, 7, 9, 11):
        lower, upper = exp_field.taylor_bounds(n)
        emit({"n": n, "lower": str(lower), "upper": str(upper)})
    report = exp_field.check_taylor()
    emit(report.to_dict())
    return [report]


def demo_glue(emit):
    h = GroupExponential.strong()
    cfg = ExpConfig(h, right_cutoff=e(0, 5))
    g0 = h.forward(0)
    x = SeriesElement.monomial(g0) + t(1)
    left = exp_field.exp_left(SeriesElement.monomial(g0), h)
    right = exp_field.exp_right(t(1), cfg.right_cutoff)
    full = exp_field.exp_full(x, cfg)
    emit({"x": x.to_json(), "exp_left": left.to_json(), "exp_right": right.to_json(),
          "exp_full": full.to_json(), "product_matches": full == left * right})
    report = exp_field.check_v_compatible(cfg, [t(1), t(Fraction(1, 2), 3) - t(2)])
    emit(report.to_dict())
    return [report]


def demo_ga_counterexample(emit):
    h = GroupExponential.reference()
    h.pin(0, -e(0))
    strong = exp_structure.check_strong(h, [-e(0, Fraction(1, 2))])
    ga = exp_field.check_GA(ExpConfig(h, ga_max_n=2), [SeriesElement.monomial(-e(0))])
    emit(strong.to_dict())
    emit(ga.to_dict())
    return [strong, ga]


DEMOS = {
    "lifting": demo_lifting,
    "round-trip": demo_round_trip,
    "taylor": demo_taylor,
    "glue": demo_glue,
    "ga-counterexample": demo_ga_counterexample,
}


def run(name, emit):
    return DEMOS[name](emit)
