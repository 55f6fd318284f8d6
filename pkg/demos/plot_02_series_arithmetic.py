"""
Series arithmetic with truncation certificates
==============================================

A series carries its known terms and an optional certificate: every term
below the certificate exponent is exact.
"""

from fractions import Fraction

from hahnexp.hahn_group import e
from hahnexp.series_field import (
    additive_decompose,
    invert,
    multiplicative_decompose,
    nth_root_positive,
    residue,
    t,
    valuation_v,
)

a = 1 + t(1)
b = 1 - t(1)
print("(1 + t)(1 - t) =", a * b)

# inversion is a geometric series, cut at the requested exponent
r = invert(b, 4)
print("1/(1 - t) =", r)
print("certificate:", r.trunc)

# t^(-1) is infinitely large, so it beats every rational
print("t^-1 > 1000:", t(-1) > 1000)

# roots of positive series
s = nth_root_positive(1 + t(1), 2, 3)
print("sqrt(1 + t) =", s)

# the three additive parts and the multiplicative normal form
x = t(-3, 2) + 5 + t(Fraction(1, 2), 7)
d = additive_decompose(x)
print("infinite:", d.infinite_part, " constant:", d.constant, " infinitesimal:", d.infinitesimal)
m = multiplicative_decompose(t(-3, 2) + t(-1))
print("monomial exponent:", m.monomial_exponent, " unit:", m.unit_constant, " 1+eps:", m.one_plus_eps)
print("v(x) =", valuation_v(x), " residue(5 + t) =", residue(5 + t(1)))

# exponents may live in several archimedean classes; large expansions are capped
u = 1 + t(1, 1, index=1)
print("certificate of 1/(1 + t^e[1]) at cutoff e[0]:", invert(u, e(0)).trunc)
