"""
The exponential on the series field
===================================

exp relabels the purely infinite part of its argument through the group
exponential. The constant and the infinitesimal part go through the usual
exponential series.
"""

from hahnexp import generators
from hahnexp.exp_field import (
    ExpConfig,
    check_GA,
    check_v_compatible,
    exp_full,
    log_full,
    taylor_bounds,
)
from hahnexp.exp_structure import GroupExponential
from hahnexp.hahn_group import e
from hahnexp.series_field import SeriesElement, equal_up_to, t

h = GroupExponential.strong()
cfg = ExpConfig(h, right_cutoff=e(0, 5))

x = SeriesElement.monomial(h.forward(0)) + 1 + t(1)
y = exp_full(x, cfg)
print("exp(x) =", y)
print("log(exp(x)) = x:", equal_up_to(log_full(y, cfg), x, cfg.right_cutoff))

# partial sums of exp(-1) bracket the true value from both sides
for n in (1, 3, 5):
    print(f"n={n}:", taylor_bounds(n))

# exp(1) - 1 is a unit, and exp maps infinitesimals into 1 + infinitesimals
rng = generators.make_rng(0)
print("v-compatible:", check_v_compatible(cfg, [generators.random_infinitesimal(rng) for _ in range(5)]).ok)

# the growth axiom holds for strong exponentials and fails for violating ones
for kind in ("strong", "violating"):
    inst = generators.make_instance(rng, kind, samples=6)
    report = check_GA(ExpConfig(inst.h), inst.ga_samples)
    print(f"GA on {kind}: {report.passes} pass, {len(report.failures)} fail, {report.vacuous} vacuous")
