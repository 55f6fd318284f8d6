"""A full exponential on the series field, glued from three pieces.

Every series splits additively as ``x = a + c + eps`` (purely infinite,
constant, infinitesimal) and every positive series multiplicatively as
``t^m * c * (1 + eps)``.  The exponential is assembled factor by factor::

    exp(a + c + eps) = exp_left(a) * exp_middle(c) * exp_right(eps)

* ``exp_left`` relabels the support of ``a`` through ``h^-1`` to get a group
  element ``l(a) = sum a_i e_{h^-1(g_i)}`` and returns the monomial
  ``t^(-l(a))``;
* ``exp_middle`` is the symbolic scalar exponential (or, in ``zero_only``
  mode, defined only at 0);
* ``exp_right`` is the Taylor series, cut off at ``right_cutoff``.

Truncated results carry certificates relative to their leading monomial:
``exp_full(x)`` is exact below ``v(exp_full(x)) + right_cutoff``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import scalars
from .errors import (
    MiddleUnsupported,
    NotInfinitesimal,
    NotOnePlusInfinitesimal,
    NotPurelyInfinite,
)
from .exp_structure import GroupExponential
from .hahn_group import INFINITY, HahnElement, e, valuation_vG
from .reports import Report
from .scalars import Sign
from .series_field import (
    DEFAULT_MAX_TERMS,
    SeriesElement,
    _power_series,
    additive_decompose,
    cmp_series,
    equal_up_to,
    formal_derivative,
    multiplicative_decompose,
    valuation_v,
)

SYMBOLIC = "symbolic"
ZERO_ONLY = "zero_only"
MIDDLE_MODES = (SYMBOLIC, ZERO_ONLY)

_ZERO = HahnElement.zero()

EXP_LEFT_NOTE = (
    "exp_left relabels support through h^-1 and returns the monomial t^(-l(a)); the displayed "
    "composite in the source applies a map on G to an argument in A, so the induced "
    "isomorphism direction is used instead")


def _as_cutoff(cutoff):
    if isinstance(cutoff, HahnElement):
        return cutoff
    return e(0, cutoff) if cutoff != 0 else _ZERO


@dataclass
class ExpConfig:
    h: GroupExponential
    middle_mode: str = SYMBOLIC
    right_cutoff: HahnElement = field(default_factory=lambda: e(0, 6))
    ga_max_n: int = 5
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if self.middle_mode not in MIDDLE_MODES:
            raise ValueError(f"middle_mode must be one of {MIDDLE_MODES}")
        self.right_cutoff = _as_cutoff(self.right_cutoff)
        if not self.right_cutoff > _ZERO:
            raise ValueError("right_cutoff must be positive")
        if not isinstance(self.ga_max_n, int) or self.ga_max_n < 1:
            raise ValueError("ga_max_n must be a positive integer")

    def describe(self):
        return {"middle": self.middle_mode, "cutoff": self.right_cutoff.to_json(),
                "ga_max_n": self.ga_max_n, "max_terms": self.max_terms}


# --------------------------------------------------------------------------
# the three factors
# --------------------------------------------------------------------------


def _infinitesimal(eps):
    v = eps.valuation_lower_bound()
    return v is INFINITY or v > _ZERO


def exp_right(eps, cutoff, max_terms=DEFAULT_MAX_TERMS):
    """Taylor series ``sum eps^k / k!`` for ``v(eps) > 0``, exact below ``cutoff``."""
    if not _infinitesimal(eps):
        raise NotInfinitesimal(f"v({eps}) is not positive")
    return _power_series(eps, lambda k: Fraction(1, factorial(k)), _as_cutoff(cutoff), max_terms)


def log_right(u, cutoff, max_terms=DEFAULT_MAX_TERMS):
    """Mercator series ``eps - eps^2/2 + eps^3/3 - ...`` for ``u = 1 + eps``."""
    eps = u - 1
    if not _infinitesimal(eps):
        raise NotOnePlusInfinitesimal(f"{u} is not 1 + infinitesimal")
    return _power_series(eps, lambda k: Fraction((-1) ** (k + 1), k) if k else Fraction(0),
                         _as_cutoff(cutoff), max_terms)


def left_label(a, h):
    """``l(a) = sum a_i e_{h^-1(g_i)}`` for ``a`` purely infinite."""
    if a.trunc is not None:
        raise NotPurelyInfinite("a purely infinite element must be exact")
    for g, _ in a.terms:
        if not g < _ZERO:
            raise NotPurelyInfinite(f"exponent {g} is not negative")
    return HahnElement((h.backward(g), c) for g, c in a.terms)


def exp_left(a, h):
    return SeriesElement.monomial(-left_label(a, h))


def log_left(u, h):
    """Inverse of :func:`exp_left` on monomials ``t^m``: returns ``sum c_j t^{h(gamma_j)}`` for ``-m = sum c_j e_{gamma_j}``."""
    if isinstance(u, SeriesElement):
        if len(u.terms) != 1 or u.trunc is not None or u.terms[0][1] != 1:
            raise ValueError(f"{u} is not a monic monomial")
        m = u.terms[0][0]
    else:
        m = u
    return SeriesElement((h.forward(gamma), c) for gamma, c in (-m).terms)


def exp_middle(c, mode=SYMBOLIC):
    if mode == ZERO_ONLY:
        if not scalars.is_zero(c):
            raise MiddleUnsupported("zero_only mode has no exponential at a nonzero constant")
        return Fraction(1)
    return scalars.exp(c)


def log_middle(c, mode=SYMBOLIC):
    if mode == ZERO_ONLY:
        if not (isinstance(c, Fraction) and c == 1):
            raise MiddleUnsupported("zero_only mode has no logarithm away from 1")
        return Fraction(0)
    return scalars.log(c)


def exp_full(x, cfg):
    d = additive_decompose(x)
    middle = exp_middle(d.constant, cfg.middle_mode)
    right = exp_right(d.infinitesimal, cfg.right_cutoff, cfg.max_terms)
    left = exp_left(d.infinite_part, cfg.h)
    return right.scale(middle).shift(left.terms[0][0] if left.terms else _ZERO)


def log_full(u, cfg):
    d = multiplicative_decompose(u)
    left = log_left(d.monomial_exponent, cfg.h)
    middle = log_middle(d.unit_constant, cfg.middle_mode)
    right = log_right(d.one_plus_eps, cfg.right_cutoff, cfg.max_terms)
    return left + middle + right


def certified_level(y):
    """Level below which a value from :func:`exp_full` is exact (``None`` when exact)."""
    return y.trunc


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------


def _decided(decision, want):
    if decision.outcome is Sign.UNDECIDED:
        return None
    return decision.outcome is want


class GAReport(Report):
    """Growth-axiom report; ``rows`` keeps ``(x, exp(x), x^n, verdict)`` per test."""

    def __init__(self, n):
        super().__init__("ga")
        self.n = n
        self.rows = []
        self.vacuous = 0

    def to_dict(self):
        out = super().to_dict()
        out["vacuous"] = self.vacuous
        return out


def check_GA(cfg, samples):
    """``x >= n^2  ->  exp(x) > x^n`` for ``1 <= n <= ga_max_n`` by explicit series comparison.

    Rows whose antecedent is false are recorded as vacuous passes.
    """
    report = GAReport(cfg.ga_max_n)
    report.config.update(cfg.describe())
    for x in samples:
        ex = exp_full(x, cfg)
        power = SeriesElement.one()
        for n in range(1, cfg.ga_max_n + 1):
            power = power * x
            if cmp_series(x, Fraction(n * n)).outcome is Sign.NEGATIVE:
                report.vacuous += 1
                report.rows.append((x, ex, power, "vacuous"))
                report.record(True)
                continue
            outcome = _decided(cmp_series(ex, power), Sign.POSITIVE)
            verdict = {True: "pass", False: "fail", None: "undecided"}[outcome]
            report.rows.append((x, ex, power, verdict))
            report.record(outcome, {"n": n, "x": x.to_json(), "exp(x)": ex.to_json(),
                                    "x^n": power.to_json()})
    return report


def check_v_compatible(cfg, samples=()):
    """``v(exp(1) - 1) = 0`` and ``exp(eps) in 1 + I_v`` for infinitesimal samples."""
    if cfg.middle_mode != SYMBOLIC:
        raise MiddleUnsupported("v-compatibility needs the symbolic middle exponential")
    report = Report("vcompat")
    report.config.update(cfg.describe())
    d = exp_full(SeriesElement.one(), cfg) - 1
    if d.terms and d.terms[0][0] == _ZERO:
        s = scalars.sign(d.terms[0][1])
        outcome = None if s.outcome is Sign.UNDECIDED else s.outcome is not Sign.ZERO
    else:
        outcome = False
    report.record(outcome, {"x": "1", "exp(1)-1": d.to_json()})
    for eps in samples:
        y = exp_full(eps, cfg) - 1
        v = y.valuation_lower_bound()
        report.record(v is INFINITY or v > _ZERO, {"eps": eps.to_json(), "exp(eps)-1": y.to_json()})
    return report


def induced_h_tilde(cfg, g):
    """``h_tilde(g) = l^-1(g) = sum g(gamma) t^{h(gamma)}``."""
    return SeriesElement((cfg.h.forward(gamma), c) for gamma, c in g.terms)


def check_induced_h(cfg, samples):
    """``v(h_tilde(g)) = h(v_G(g))`` for nonzero ``g``."""
    report = Report("induced-h")
    report.config.update(cfg.describe())
    for g in samples:
        if not g:
            raise ValueError("induced-h samples must be nonzero")
        lhs = valuation_v(induced_h_tilde(cfg, g))
        rhs = cfg.h.forward(valuation_vG(g))
        report.record(lhs == rhs, {"g": g.to_json(), "v(h_tilde(g))": lhs.to_json(),
                                   "h(v_G(g))": rhs.to_json()})
    return report


def taylor_bounds(n, width=Fraction(1, 10**6)):
    """Partial sums ``(sum_{k<=n} (-1)^k/k!, sum_{k<=n+1} (-1)^k/k!)`` for odd ``n``.

    Asserts that they bracket ``exp(-1)`` strictly, using :func:`scalars.exp_interval`.
    """
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise ValueError("n must be an odd positive integer")
    lower = sum((Fraction((-1) ** k, factorial(k)) for k in range(n + 1)), Fraction(0))
    upper = lower + Fraction((-1) ** (n + 1), factorial(n + 1))
    lo, hi = scalars.exp_interval(-1, width)
    assert lower < upper
    assert lower < lo and hi < upper, f"exp(-1) bracket ({lo}, {hi}) escapes ({lower}, {upper})"
    return lower, upper


def check_taylor(ns=(1, 3, 5, 7, 9, 11), width=Fraction(1, 10**6)):
    report = Report("taylor")
    report.config["width"] = str(width)
    lo, hi = scalars.exp_interval(-1, width)
    previous = None
    for n in ns:
        lower, upper = taylor_bounds(n, width)
        ok = lower < lo and hi < upper
        if previous is not None:
            ok = ok and previous[0] < lower and upper < previous[1]
        report.record(ok, {"n": n, "lower": str(lower), "upper": str(upper)})
        previous = (lower, upper)
    return report


def check_homomorphism(cfg, pairs):
    """``exp(x + y) = exp(x) exp(y)`` below the certified level of ``exp(x + y)``."""
    report = Report("homomorphism")
    report.config.update(cfg.describe())
    for x, y in pairs:
        lhs = exp_full(x + y, cfg)
        rhs = exp_full(x, cfg) * exp_full(y, cfg)
        level = valuation_v(lhs) + cfg.right_cutoff
        ok = equal_up_to(lhs, rhs, level)
        report.record(ok, {"x": x.to_json(), "y": y.to_json(), "level": level.to_json()})
    return report


def check_monotone(cfg, pairs):
    """``x < y -> exp(x) < exp(y)`` on comparable pairs."""
    report = Report("monotone")
    report.config.update(cfg.describe())
    for x, y in pairs:
        order = cmp_series(x, y).outcome
        if order is Sign.ZERO:
            continue
        image = cmp_series(exp_full(x, cfg), exp_full(y, cfg)).outcome
        outcome = None if Sign.UNDECIDED in (order, image) else order is image
        report.record(outcome, {"x": x.to_json(), "y": y.to_json()})
    return report


def check_log_exp(cfg, samples):
    """``log_full(exp_full(x)) = x`` below ``right_cutoff``."""
    report = Report("log-exp")
    report.config.update(cfg.describe())
    for x in samples:
        back = log_full(exp_full(x, cfg), cfg)
        report.record(equal_up_to(back, x, cfg.right_cutoff), {"x": x.to_json()})
    return report


def check_exp_log(cfg, samples):
    """``exp_full(log_full(u)) = u`` below ``v(u) + right_cutoff`` for positive ``u``."""
    report = Report("exp-log")
    report.config.update(cfg.describe())
    for u in samples:
        back = exp_full(log_full(u, cfg), cfg)
        report.record(equal_up_to(back, u, valuation_v(u) + cfg.right_cutoff), {"u": u.to_json()})
    return report


def check_exp_ode(eps_samples, cutoff, index=0, max_terms=DEFAULT_MAX_TERMS):
    """``d exp_right(eps) = exp_right(eps) * d eps`` below ``cutoff - 1`` in Q-exponent mode."""
    cutoff = _as_cutoff(cutoff)
    level = cutoff - e(index)
    report = Report("exp-ode")
    report.config["cutoff"] = cutoff.to_json()
    for eps in eps_samples:
        y = exp_right(eps, cutoff, max_terms)
        lhs = formal_derivative(y, index)
        rhs = y * formal_derivative(eps, index)
        report.record(equal_up_to(lhs, rhs, level), {"eps": eps.to_json()})
    return report
