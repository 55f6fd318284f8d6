"""Named randomized check suites, shared by the command line and the demos.

Each suite takes a :class:`SuiteConfig` and returns a :class:`Report`.
Instances are drawn from :mod:`hahnexp.generators` with a fresh
``random.Random(seed)`` per suite, so a suite's report depends only on
its configuration.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import exp_field, exp_structure, generators
from .errors import NotPseudoCauchy
from .exp_field import ExpConfig
from .hahn_group import e, pseudo_limit
from .oracle import check_oracle
from .reports import Report
from .series_field import SeriesElement


@dataclass
class SuiteConfig:
    seed: int = 0
    samples: int = 20
    cutoff: object = field(default_factory=lambda: e(0, 6))
    middle: str = exp_field.SYMBOLIC
    fixture: str = "strong"
    direction: str = exp_structure.LEMMA_CONSISTENT
    precision: Fraction = Fraction(1, 2**64)

    def echo(self):
        return {"seed": self.seed, "samples": self.samples, "cutoff": self.cutoff.to_json(),
                "middle": self.middle, "fixture": self.fixture, "direction": self.direction,
                "precision": str(self.precision)}


def _instance(cfg, rng):
    return generators.make_instance(rng, cfg.fixture, cfg.samples)


def _exp_config(cfg, h):
    return ExpConfig(h, middle_mode=cfg.middle, right_cutoff=cfg.cutoff)


def suite_strong(cfg):
    inst = _instance(cfg, generators.make_rng(cfg.seed))
    return exp_structure.check_strong(inst.h, inst.strong_samples)


def suite_centripetal(cfg):
    inst = _instance(cfg, generators.make_rng(cfg.seed))
    chi = exp_structure.InducedContraction(inst.h)
    return exp_structure.check_centripetal(chi, inst.centripetal_samples, cfg.direction)


def suite_contraction_axioms(cfg):
    inst = _instance(cfg, generators.make_rng(cfg.seed))
    chi = exp_structure.InducedContraction(inst.h)
    return exp_structure.check_contraction_axioms(chi, inst.centripetal_samples)


def suite_ga(cfg):
    inst = _instance(cfg, generators.make_rng(cfg.seed))
    return exp_field.check_GA(_exp_config(cfg, inst.h), inst.ga_samples)


def _infinitesimals(rng, n):
    return [generators.random_infinitesimal(rng) for _ in range(n)]


def suite_vcompat(cfg):
    rng = generators.make_rng(cfg.seed)
    h = exp_structure.GroupExponential.strong()
    return exp_field.check_v_compatible(_exp_config(cfg, h), _infinitesimals(rng, cfg.samples))


def suite_induced_h(cfg):
    rng = generators.make_rng(cfg.seed)
    inst = _instance(cfg, rng)
    samples = [generators.random_nonzero_hahn(rng, generators.chain_points(rng))
               for _ in range(cfg.samples)]
    return exp_field.check_induced_h(_exp_config(cfg, inst.h), samples)


def suite_lifting(cfg):
    rng = generators.make_rng(cfg.seed)
    sigma = generators.random_pl_automorphism(rng)
    points = generators.chain_points(rng)
    elements = [generators.random_hahn(rng, points) for _ in range(cfg.samples)]
    report = exp_structure.check_lifting(sigma, elements)
    report.config["sigma"] = sigma.to_json()
    return report


def suite_pseudo_limit(cfg):
    rng = generators.make_rng(cfg.seed)
    report = Report("pseudo-limit")
    for _ in range(cfg.samples):
        seq = generators.pseudo_cauchy_sequence(rng, rng.randint(3, 64))
        _, sub = pseudo_limit(seq)
        report.record(sub.ok, {"sequence": [a.to_json() for a in seq]})
    for _ in range(max(1, cfg.samples // 2)):
        seq = generators.non_pseudo_cauchy_sequence(rng, rng.randint(3, 16))
        try:
            pseudo_limit(seq)
        except NotPseudoCauchy:
            report.record(True)
        else:
            report.record(False, {"accepted": [a.to_json() for a in seq]})
    report.note("the returned limit is one admissible representative, not a canonical choice")
    return report


def suite_taylor(cfg):
    return exp_field.check_taylor()


def suite_oracle(cfg):
    rng = generators.make_rng(cfg.seed)
    pairs = []
    for _ in range(cfg.samples):
        points = generators.chain_points(rng, rng.randint(1, 4))
        pairs.append((generators.random_series(rng, points), generators.random_series(rng, points)))
    return check_oracle(pairs)


def _full_sample(rng, cfg, h):
    """Purely infinite part over pinned images, a constant and an infinitesimal."""
    x = SeriesElement.zero()
    for _ in range(rng.randint(0, 2)):
        lead = h.forward(generators.random_class(rng))
        x = x + SeriesElement.monomial(lead, generators.small_rational(rng))
    if cfg.middle == exp_field.SYMBOLIC and rng.random() < 0.7:
        x = x + generators.small_rational(rng)
    if rng.random() < 0.8:
        x = x + generators.random_infinitesimal(rng)
    return x


def suite_homomorphism(cfg):
    rng = generators.make_rng(cfg.seed)
    h = exp_structure.GroupExponential.strong()
    pairs = [(_full_sample(rng, cfg, h), _full_sample(rng, cfg, h)) for _ in range(cfg.samples)]
    return exp_field.check_homomorphism(_exp_config(cfg, h), pairs)


def suite_exp_ode(cfg):
    rng = generators.make_rng(cfg.seed)
    return exp_field.check_exp_ode(_infinitesimals(rng, cfg.samples), cfg.cutoff)


def suite_round_trip(cfg):
    inst = _instance(cfg, generators.make_rng(cfg.seed))
    return exp_structure.check_round_trip(inst.h, inst.strong_samples)


SUITES = {
    "strong": suite_strong,
    "centripetal": suite_centripetal,
    "contraction-axioms": suite_contraction_axioms,
    "ga": suite_ga,
    "vcompat": suite_vcompat,
    "induced-h": suite_induced_h,
    "lifting": suite_lifting,
    "pseudo-limit": suite_pseudo_limit,
    "taylor": suite_taylor,
    "oracle": suite_oracle,
    "homomorphism": suite_homomorphism,
    "exp-ode": suite_exp_ode,
    "round-trip": suite_round_trip,
}


def run_suite(name, cfg):
    start = time.perf_counter()
    report = SUITES[name](cfg)
    report.config = {**cfg.echo(), **report.config}
    report.wall_time_ms = int((time.perf_counter() - start) * 1000)
    return report
