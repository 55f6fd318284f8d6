"""
Hahn groups over the rational chain
===================================

Elements of the Hahn sum are finite maps from chain points to rationals,
ordered by the sign of the coefficient at the smallest point of support.
"""

from fractions import Fraction

from hahnexp.chains import PLAutomorphism
from hahnexp.exp_structure import check_lifting, lift_chain_automorphism
from hahnexp.hahn_group import e, pseudo_limit, valuation_vG

# e(i, c) is the element with coefficient c at chain point i
g = e(0, 3) + e(1)
h = e(0, 3) - e(5, 100)
print("g =", g, " h =", h)
print("g > h:", g > h, " v_G(g - h) =", valuation_vG(g - h))

# one unit at a smaller point dominates any multiple at a larger one
print("e[-1] > 1000*e[0]:", e(-1) > e(0, 1000))

# a piecewise-linear automorphism of the chain lifts to the group
sigma = PLAutomorphism.from_nodes([(0, 0), (1, 3)], Fraction(1, 2), 2)
print("sigma(1/2) =", sigma(Fraction(1, 2)))
print("tau(g) =", lift_chain_automorphism(sigma, g))
report = check_lifting(sigma, [g, h, -e(-2), e(Fraction(1, 2), 5) - e(7)])
print("lifting:", report.passes, "/", report.instances, "checks pass")

# a pseudo-Cauchy sequence has strictly increasing difference valuations
seq = [e(-3), e(-3) + e(0, 2), e(-3) + e(0, 2) + e(1, -1), e(-3) + e(0, 2) + e(1, -1) + e(4)]
limit, report = pseudo_limit(seq)
print("pseudo-limit:", limit, " defining equation holds:", report.ok)
