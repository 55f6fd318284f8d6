"""Generalized power series with exponents in the Hahn sum over Q.

A :class:`SeriesElement` is a finite sum ``sum c_g t^g`` with ``g`` ranging
over :class:`~hahnexp.hahn_group.HahnElement` exponents.  Expansions that
would be infinite (inverses, roots, exponentials of infinitesimals) are cut
off and carry a truncation certificate ``trunc``: every term with exponent
below ``trunc`` is exact, terms at or above it may be missing.  Elements
without a certificate are exact.

Certificates propagate pessimistically: a sum is exact below the smaller
cutoff, and a product ``a * b`` is exact below
``min(v(a) + trunc(b), v(b) + trunc(a))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import scalars
from .errors import (
    DivisionByZero,
    NonRationalExponents,
    NotInValuationRing,
    NotPositive,
    TruncationError,
    UndecidedSign,
)
from .hahn_group import INFINITY, HahnElement, e
from .scalars import Sign, SignDecision, format_scalar, is_zero, parse_scalar

#: cap on the number of powers summed in a truncated expansion
DEFAULT_MAX_TERMS = 64

_ZERO_EXP = HahnElement.zero()


def _min(a, b):
    if a is None or a is INFINITY:
        return b
    if b is None or b is INFINITY:
        return a
    return a if a <= b else b


def _plus(a, b):
    if a is None or b is None:
        return None
    return a + b


class SeriesElement:
    __slots__ = ("terms", "trunc", "_hash")

    def __init__(self, terms=(), trunc=None):
        merged = {}
        for g, c in terms:
            if not isinstance(g, HahnElement):
                g = e(0, g) if g != 0 else _ZERO_EXP
            merged[g] = merged.get(g, 0) + scalars.to_scalar(c)
        self._set(merged, trunc)

    def _set(self, merged, trunc):
        items = [(g, c) for g, c in merged.items() if not is_zero(c)]
        if trunc is not None:
            items = [(g, c) for g, c in items if g < trunc]
        items.sort(key=lambda gc: _SortKey(gc[0]))
        self.terms = tuple(items)
        self.trunc = trunc
        self._hash = None

    @classmethod
    def _build(cls, merged, trunc):
        obj = cls.__new__(cls)
        obj._set(merged, trunc)
        return obj

    @classmethod
    def _from_sorted(cls, terms, trunc=None):
        obj = cls.__new__(cls)
        obj.terms = tuple(terms)
        obj.trunc = trunc
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent, coef=1):
        return cls(((exponent, coef),))

    @classmethod
    def constant(cls, c):
        return cls(((_ZERO_EXP, c),))

    @classmethod
    def zero(cls):
        return cls._from_sorted(())

    @classmethod
    def one(cls):
        return cls.constant(1)

    # -- certificates -------------------------------------------------------

    @property
    def is_exact(self):
        return self.trunc is None

    def exact_part(self):
        """The known terms, taken as an exact element."""
        return SeriesElement._from_sorted(self.terms)

    def truncate(self, level):
        """Drop terms of exponent ``>= level`` and lower the certificate to ``level``."""
        if level is None or level is INFINITY:
            return self
        trunc = _min(self.trunc, level)
        return SeriesElement._from_sorted([(g, c) for g, c in self.terms if g < trunc], trunc)

    def valuation_lower_bound(self):
        """``v(self)`` when known, otherwise the certificate (``INFINITY`` for exact zero)."""
        if self.terms:
            return self.terms[0][0]
        return INFINITY if self.trunc is None else self.trunc

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        merged = dict(self.terms)
        for g, c in other.terms:
            merged[g] = merged.get(g, 0) + c
        return SeriesElement._build(merged, _min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return SeriesElement._from_sorted(((g, -c) for g, c in self.terms), self.trunc)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if scalars.is_scalar(other):
            return self.scale(other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def scale(self, q):
        q = scalars.to_scalar(q)
        if is_zero(q):
            return SeriesElement.zero()
        return SeriesElement._from_sorted(
            [(g, c) for g, c in ((g, c * q) for g, c in self.terms) if not is_zero(c)], self.trunc)

    def shift(self, g):
        """Multiply by the monomial ``t^g``."""
        return SeriesElement._from_sorted(((h + g, c) for h, c in self.terms), _plus(self.trunc, g))

    def __truediv__(self, q):
        if scalars.is_scalar(q):
            return self.scale(Fraction(1) / q if isinstance(q, (int, Fraction)) else 1 / q)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = SeriesElement.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- order ----------------------------------------------------------------

    def _decided(self, other):
        d = cmp_series(self, _coerce(other))
        if d.outcome is Sign.UNDECIDED:
            raise UndecidedSign("series comparison undecided", d.precision_reached)
        return d.outcome

    def __lt__(self, other):
        return self._decided(other) is Sign.NEGATIVE

    def __le__(self, other):
        return self._decided(other) is not Sign.POSITIVE

    def __gt__(self, other):
        return self._decided(other) is Sign.POSITIVE

    def __ge__(self, other):
        return self._decided(other) is not Sign.NEGATIVE

    def __eq__(self, other):
        if isinstance(other, SeriesElement):
            return self.terms == other.terms and self.trunc == other.trunc
        if scalars.is_scalar(other):
            return self.is_exact and self.terms == SeriesElement.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.terms, self.trunc))
        return self._hash

    def __bool__(self):
        return bool(self.terms) or not self.is_exact

    # -- accessors ------------------------------------------------------------

    def coefficient(self, g):
        if not isinstance(g, HahnElement):
            g = e(0, g) if g != 0 else _ZERO_EXP
        if self.trunc is not None and not g < self.trunc:
            raise TruncationError(f"coefficient at {g} lies beyond the certificate")
        for h, c in self.terms:
            if h == g:
                return c
        return Fraction(0)

    @property
    def exponents(self):
        return [g for g, _ in self.terms]

    def __repr__(self):
        return f"SeriesElement({self})"

    def __str__(self):
        if not self.terms:
            text = "0"
        else:
            parts = []
            for g, c in self.terms:
                if not g:
                    parts.append(format_scalar(c))
                else:
                    parts.append(f"{format_scalar(c)}*t^({g})")
            text = " + ".join(parts)
        if self.trunc is not None:
            text += f" + O(t^({self.trunc}))"
        return text

    def to_json(self):
        return {
            "terms": [{"exp": g.to_json(), "coef": format_scalar(c)} for g, c in self.terms],
            "trunc": None if self.trunc is None else self.trunc.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        trunc = data.get("trunc")
        trunc = None if trunc is None else HahnElement.from_json(trunc)
        return cls(((HahnElement.from_json(t["exp"]), parse_scalar(t["coef"])) for t in data["terms"]),
                   trunc)


class _SortKey:
    __slots__ = ("g",)

    def __init__(self, g):
        self.g = g

    def __lt__(self, other):
        return self.g < other.g


def _coerce(x):
    if isinstance(x, SeriesElement):
        return x
    if scalars.is_scalar(x):
        return SeriesElement.constant(x)
    return None


def t(q=1, coef=1, index=0):
    """The monomial ``coef * t^(q e_index)``; with the default index this is ``t^q`` for rational q."""
    exponent = e(index, q) if q != 0 else _ZERO_EXP
    return SeriesElement.monomial(exponent, coef)


def series(mapping, trunc=None, index=0):
    """Build a series from ``{rational exponent: coefficient}`` (exponents taken as multiples of ``e_index``)."""
    return SeriesElement(((e(index, q) if q != 0 else _ZERO_EXP, c) for q, c in mapping.items()),
                         None if trunc is None else e(index, trunc))


def mul(a, b):
    """Sparse convolution with certificate propagation."""
    trunc = _min(_plus(a.valuation_lower_bound(), b.trunc) if b.trunc is not None else None,
                 _plus(b.valuation_lower_bound(), a.trunc) if a.trunc is not None else None)
    if trunc is INFINITY:
        trunc = None
    merged = {}
    for g, c in a.terms:
        for h, d in b.terms:
            k = g + h
            if trunc is not None and not k < trunc:
                continue
            merged[k] = merged.get(k, 0) + c * d
    return SeriesElement._build(merged, trunc)


def field_arith(op, a, b):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def valuation_v(a):
    """``min supp a``; :data:`INFINITY` for exact zero."""
    if a.terms:
        return a.terms[0][0]
    if a.trunc is None:
        return INFINITY
    raise TruncationError("valuation lies beyond the truncation certificate")


def cmp_series(a, b):
    """Sign of ``a - b`` from its leading coefficient."""
    d = a - _coerce(b)
    if d.terms:
        return scalars.sign(d.terms[0][1])
    if d.trunc is None:
        return SignDecision(Sign.ZERO)
    raise TruncationError("difference vanishes below the truncation certificate")


def equal_up_to(a, b, level):
    """True when ``a - b`` is certified to have valuation ``>= level``."""
    level = _as_exponent(level)
    d = a - _coerce(b)
    if any(g < level for g, _ in d.terms):
        return False
    return d.trunc is None or d.trunc >= level


def residue(a):
    """Coefficient at exponent 0 of an element of the valuation ring."""
    v = a.valuation_lower_bound()
    if v is not INFINITY and v < _ZERO_EXP:
        raise NotInValuationRing(f"v(a) = {v} < 0")
    if a.trunc is not None and not _ZERO_EXP < a.trunc:
        raise TruncationError("residue lies beyond the truncation certificate")
    return a.coefficient(_ZERO_EXP)


@dataclass(frozen=True)
class AdditiveDecomposition:
    infinite_part: SeriesElement
    constant: object
    infinitesimal: SeriesElement

    def recombine(self):
        return self.infinite_part + self.constant + self.infinitesimal


@dataclass(frozen=True)
class MultiplicativeDecomposition:
    monomial_exponent: HahnElement
    unit_constant: object
    one_plus_eps: SeriesElement

    def recombine(self):
        return self.one_plus_eps.shift(self.monomial_exponent).scale(self.unit_constant)


def additive_decompose(a):
    """Split ``a`` into purely infinite, constant and infinitesimal parts."""
    if a.trunc is not None and not _ZERO_EXP < a.trunc:
        raise TruncationError("constant part lies beyond the truncation certificate")
    infinite = [(g, c) for g, c in a.terms if g < _ZERO_EXP]
    small = [(g, c) for g, c in a.terms if g > _ZERO_EXP]
    return AdditiveDecomposition(
        SeriesElement._from_sorted(infinite),
        a.coefficient(_ZERO_EXP),
        SeriesElement._from_sorted(small, a.trunc),
    )


def leading(a):
    if not a.terms:
        if a.trunc is None:
            raise DivisionByZero("zero has no leading term")
        raise TruncationError("leading term lies beyond the truncation certificate")
    return a.terms[0]


def _unit_part(a):
    """Return ``(v, c, eps)`` with ``a = c t^v (1 + eps)``."""
    v, c = leading(a)
    inv_c = Fraction(1) / c if isinstance(c, Fraction) else 1 / c
    eps_terms = [((g - v), x * inv_c) for g, x in a.terms[1:]]
    eps = SeriesElement._from_sorted(eps_terms, None if a.trunc is None else a.trunc - v)
    return v, c, eps


def multiplicative_decompose(a):
    """Write ``a > 0`` as ``t^m * c * (1 + eps)``."""
    if not a.terms and a.trunc is None:
        raise NotPositive("zero is not positive")
    v, c = leading(a)
    s = scalars.sign(c)
    if s.outcome is Sign.UNDECIDED:
        raise UndecidedSign("leading coefficient of undecided sign", s.precision_reached)
    if s.outcome is not Sign.POSITIVE:
        raise NotPositive(f"{a} is not positive")
    _, _, eps = _unit_part(a)
    return MultiplicativeDecomposition(v, c, eps + 1)


def _power_series(eps, coefficients, level, max_terms):
    """Sum ``coefficients(k) * eps^k`` for the terms below ``level``.

    ``eps`` must have positive valuation.  The result is exact when ``eps``
    is exactly zero; otherwise its certificate is ``level`` or the bound
    ``(K + 1) v(eps)`` on the first omitted power, whichever is smaller.
    """
    one = SeriesElement.one()
    if not eps.terms and eps.trunc is None:
        return one.scale(coefficients(0))
    v_eps = eps.valuation_lower_bound()
    total = one.scale(coefficients(0)).truncate(level)
    power = one
    k = 0
    while True:
        k += 1
        if k > max_terms:
            total = total.truncate(v_eps * k)
            break
        power = (power * eps).truncate(level)
        if not power.terms and _reached(power.trunc, level):
            break
        total = total + power.scale(coefficients(k))
    return total.truncate(level)


def _reached(trunc, level):
    return trunc is not None and not trunc < level


def _as_exponent(cutoff):
    if isinstance(cutoff, HahnElement):
        return cutoff
    return e(0, cutoff) if cutoff != 0 else _ZERO_EXP


def invert(a, cutoff, max_terms=DEFAULT_MAX_TERMS):
    """``1/a`` as a geometric series, keeping the terms of exponent below ``cutoff``.

    ``a * invert(a, cutoff)`` equals 1 up to exponent ``v(a) + trunc`` where
    ``trunc <= cutoff`` is the certificate of the result.
    """
    cutoff = _as_exponent(cutoff)
    if not a.terms and a.trunc is None:
        raise DivisionByZero("cannot invert zero")
    v, c, eps = _unit_part(a)
    inv_c = Fraction(1) / c if isinstance(c, Fraction) else 1 / c
    inner = _power_series(-eps, lambda k: 1, cutoff + v, max_terms)
    return inner.scale(inv_c).shift(-v)


def divide(a, b, cutoff, max_terms=DEFAULT_MAX_TERMS):
    return a * invert(b, cutoff, max_terms)


def _binomial(alpha, k):
    out = Fraction(1)
    for j in range(k):
        out = out * (alpha - j) / (j + 1)
    return out


def nth_root_positive(a, n, cutoff, symbolic=False, max_terms=DEFAULT_MAX_TERMS):
    """Positive n-th root ``c^(1/n) t^(v/n) (1 + eps)^(1/n)`` via the binomial series."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    cutoff = _as_exponent(cutoff)
    decomposition = multiplicative_decompose(a)
    v = decomposition.monomial_exponent
    c = decomposition.unit_constant
    root_c = scalars.nth_root(c, n, symbolic=symbolic)
    eps = decomposition.one_plus_eps - 1
    v_root = v / n
    alpha = Fraction(1, n)
    inner = _power_series(eps, lambda k: _binomial(alpha, k), cutoff - v_root, max_terms)
    return inner.scale(root_c).shift(v_root)


def formal_derivative(a, index=0):
    """``sum c_g g t^(g - 1)`` for exponents that are rational multiples of ``e_index``."""
    one = e(index)
    index = Fraction(index)

    def rational(g):
        if not g.is_rational_multiple(index):
            raise NonRationalExponents(f"exponent {g} is not a rational multiple of e[{index}]")
        return g.coefficient(index)

    out = []
    for g, c in a.terms:
        q = rational(g)
        if q != 0:
            out.append((g - one, c * q))
    trunc = None
    if a.trunc is not None:
        rational(a.trunc)
        trunc = a.trunc - one
    return SeriesElement._from_sorted(out, trunc)
