"""Ordered coefficient fields.

Two kinds of scalars are used throughout the package:

* :class:`fractions.Fraction` -- exact rationals.  ``Rational`` is an alias.
* :class:`SymScalar` -- real numbers built from rationals with ``+ - * /``,
  ``exp``, ``log`` and n-th roots.  Every value is kept in a canonical
  normal form (a polynomial over Q in "atoms" such as ``exp(...)``) and its
  sign is decided by refining a rational interval bracket.

Arithmetic on a ``SymScalar`` that folds to a rational returns a plain
``Fraction``, so ``exp(1) * exp(-1)`` is exactly ``Fraction(1)``.

Comparisons that cannot be decided before the refinement cap is reached
produce :attr:`Sign.UNDECIDED`; operators that need a definite answer raise
:class:`~hahnexp.errors.UndecidedSign` instead of guessing.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .errors import (
    DivisionByZero,
    NonPositiveRadicand,
    NotRepresentable,
    ParseError,
    UndecidedSign,
)

Rational = Fraction

#: default refinement cap: comparisons stop once the bracket is this narrow
DEFAULT_CAP = Fraction(1, 2**64)
_MAX_BITS = 4096


class Settings:
    """Process-wide refinement configuration."""

    def __init__(self):
        self.cap = DEFAULT_CAP


settings = Settings()


def set_refinement_cap(cap):
    cap = Fraction(cap)
    if cap <= 0:
        raise ValueError("refinement cap must be positive")
    settings.cap = cap


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1
    UNDECIDED = None

    @property
    def decided(self):
        return self is not Sign.UNDECIDED

    def __neg__(self):
        if self is Sign.NEGATIVE:
            return Sign.POSITIVE
        if self is Sign.POSITIVE:
            return Sign.NEGATIVE
        return self


@dataclass(frozen=True)
class SignDecision:
    outcome: Sign
    precision_reached: Fraction = Fraction(0)

    @property
    def decided(self):
        return self.outcome.decided

    def __neg__(self):
        return SignDecision(-self.outcome, self.precision_reached)


# --------------------------------------------------------------------------
# rational interval brackets
# --------------------------------------------------------------------------


def _round_out(lo, hi, bits):
    scale = 1 << bits
    return (Fraction(math.floor(lo * scale), scale),
            Fraction(math.ceil(hi * scale), scale))


def _exp_bracket(a, bits):
    """Bracket exp(a) for rational a, working with ``bits`` fractional bits."""
    if a == 0:
        return Fraction(1), Fraction(1)
    s = 0
    r = a
    half = Fraction(1, 2)
    while abs(r) > half:
        r /= 2
        s += 1
    work = bits + 2 * s + 8
    eps = Fraction(1, 1 << work)
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    # |tail| <= 2 |r|^N / N! for |r| <= 1/2
    while True:
        total += term
        k += 1
        term = term * r / k
        if 2 * abs(term) <= eps:
            break
    rem = 2 * abs(term)
    lo, hi = _round_out(total - rem, total + rem, work)
    for _ in range(s):
        lo, hi = _round_out(lo * lo, hi * hi, work)
    return lo, hi


def _atanh_bracket(z, bits):
    # 2*atanh(z) = log((1+z)/(1-z)), |z| <= 1/3
    eps = Fraction(1, 1 << (bits + 4))
    z2 = z * z
    total = Fraction(0)
    power = z
    j = 0
    while True:
        term = power / (2 * j + 1)
        total += term
        j += 1
        power *= z2
        bound = abs(power) / ((2 * j + 1) * (1 - z2))
        if bound <= eps:
            break
    return _round_out(2 * (total - bound), 2 * (total + bound), bits + 4)


def _log_bracket(a, bits):
    if a <= 0:
        raise NonPositiveRadicand("log of a non-positive rational")
    if a == 1:
        return Fraction(0), Fraction(0)
    k = a.numerator.bit_length() - a.denominator.bit_length()
    m = a / Fraction(2) ** k
    # bring m into [2/3, 4/3] so that |(m-1)/(m+1)| <= 1/7
    while m > Fraction(4, 3):
        m /= 2
        k += 1
    while m < Fraction(2, 3):
        m *= 2
        k -= 1
    work = bits + max(k, -k).bit_length() + 4
    m_lo, m_hi = _atanh_bracket((m - 1) / (m + 1), work)
    if k == 0:
        return _round_out(m_lo, m_hi, work)
    l2_lo, l2_hi = _atanh_bracket(Fraction(1, 3), work)
    if k > 0:
        lo, hi = m_lo + k * l2_lo, m_hi + k * l2_hi
    else:
        lo, hi = m_lo + k * l2_hi, m_hi + k * l2_lo
    return _round_out(lo, hi, work)


def _root_bracket(a, n, bits):
    if a < 0:
        raise NonPositiveRadicand("root of a negative rational")
    if a == 0:
        return Fraction(0), Fraction(0)
    scaled = (a.numerator << (n * bits)) // a.denominator
    root, exact = gmpy2.iroot(gmpy2.mpz(scaled), n)
    root = int(root)
    lo = Fraction(root, 1 << bits)
    hi = Fraction(root + 1, 1 << bits)
    if exact and Fraction(scaled) == a * (1 << (n * bits)):
        hi = lo
    return lo, hi


def _bits_for(width):
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    return max(1, width.denominator.bit_length() - width.numerator.bit_length() + 1)


def exp_interval(a, width):
    """Return ``(lo, hi)`` with ``lo <= exp(a) <= hi`` and ``hi - lo <= width``.

    The bracket is built from a Taylor partial sum with an explicit
    remainder bound, after halving ``a`` until ``|a| <= 1/2`` and squaring
    back.  32 guard bits are used, so the result is usually far narrower
    than ``width``.
    """
    a = Fraction(a)
    if a == 0:
        return Fraction(1), Fraction(1)
    bits = _bits_for(width) + 32
    while True:
        lo, hi = _exp_bracket(a, bits)
        if hi - lo <= width:
            return lo, hi
        bits += 32


def log_interval(a, width):
    """Return a rational bracket of log(a), a > 0, of width at most ``width``."""
    a = Fraction(a)
    bits = _bits_for(width) + 32
    while True:
        lo, hi = _log_bracket(a, bits)
        if hi - lo <= width:
            return lo, hi
        bits += 32


# --------------------------------------------------------------------------
# normal forms
#
# poly  := tuple of (monomial, Fraction) sorted by monomial key, no zeros
# mono  := tuple of (atom, int power) sorted by atom key, no zero powers
# atom  := ("exp", poly) | ("log", poly) | ("root", n, poly) | ("inv", poly)
#
# A monomial holds at most one exp atom, always with power 1.
# --------------------------------------------------------------------------

_ONE_MONO = ()
_ZERO = ()


def _const(q):
    q = Fraction(q)
    return () if q == 0 else (((), q),)


def _is_const(p):
    return not p or (len(p) == 1 and p[0][0] == ())


def _const_value(p):
    return Fraction(0) if not p else p[0][1]


_key_cache = {}


def _atom_key(atom):
    key = _key_cache.get(atom)
    if key is None:
        key = _format_atom_plain(atom)
        _key_cache[atom] = key
    return key


def _mono_key(mono):
    return tuple((_atom_key(a), k) for a, k in mono)


def _atom_poly(atom):
    return ((((atom, 1),), Fraction(1)),)


def _poly_from_dict(d):
    items = [(m, c) for m, c in d.items() if c != 0]
    items.sort(key=lambda mc: _mono_key(mc[0]))
    return tuple(items)


def _mono_from_dict(d, exp_arg):
    items = [(a, k) for a, k in d.items() if k != 0]
    if exp_arg:
        items.append((("exp", exp_arg), 1))
    items.sort(key=lambda ak: _atom_key(ak[0]))
    return tuple(items)


def _split_exp(mono):
    rest = {}
    exp_arg = _ZERO
    for atom, k in mono:
        if atom[0] == "exp":
            exp_arg = atom[1]
        else:
            rest[atom] = k
    return rest, exp_arg


def _poly_add(p, r):
    d = dict(p)
    for m, c in r:
        d[m] = d.get(m, 0) + c
    return _poly_from_dict(d)


def _poly_scale(p, q):
    if q == 0:
        return _ZERO
    return tuple((m, c * q) for m, c in p)


def _poly_neg(p):
    return _poly_scale(p, Fraction(-1))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d1, e1 = _split_exp(m1)
    d2, e2 = _split_exp(m2)
    for atom, k in d2.items():
        d1[atom] = d1.get(atom, 0) + k
    exp_arg = _poly_add(e1, e2)
    return _mono_from_dict(d1, exp_arg)


def _poly_mul(p, r):
    if not p or not r:
        return _ZERO
    d = {}
    for m1, c1 in p:
        for m2, c2 in r:
            m = _mono_mul(m1, m2)
            d[m] = d.get(m, 0) + c1 * c2
    return _poly_from_dict(d)


def _poly_pow(p, k):
    result = _const(1)
    for _ in range(k):
        result = _poly_mul(result, p)
    return result


def _poly_inv(p):
    if not p:
        raise DivisionByZero("division by zero")
    if len(p) == 1:
        mono, c = p[0]
        rest, exp_arg = _split_exp(mono)
        inv_mono = {}
        expanded = _const(Fraction(1) / c)
        for atom, k in rest.items():
            if atom[0] == "inv" and k > 0:
                expanded = _poly_mul(expanded, _poly_pow(atom[1], k))
            else:
                inv_mono[atom] = -k
        base = ((_mono_from_dict(inv_mono, _poly_neg(exp_arg)), Fraction(1)),)
        return _poly_mul(expanded, base)
    return _atom_poly(("inv", p))


def _poly_exp(p):
    if not p:
        return _const(1)
    if len(p) == 1 and p[0][1] == 1:
        mono = p[0][0]
        if len(mono) == 1 and mono[0][1] == 1 and mono[0][0][0] == "log":
            return mono[0][0][1]
    return _atom_poly(("exp", p))


def _poly_log(p):
    if _is_const(p) and _const_value(p) == 1:
        return _ZERO
    if len(p) == 1 and p[0][1] == 1:
        mono = p[0][0]
        if len(mono) == 1 and mono[0][0][0] == "exp":
            return mono[0][0][1]
    return _atom_poly(("log", p))


def _rational_root(q, n):
    if q < 0:
        return None
    num, exact_n = gmpy2.iroot(gmpy2.mpz(q.numerator), n)
    den, exact_d = gmpy2.iroot(gmpy2.mpz(q.denominator), n)
    if exact_n and exact_d:
        return Fraction(int(num), int(den))
    return None


def _poly_root(p, n):
    if n == 1:
        return p
    if _is_const(p):
        r = _rational_root(_const_value(p), n)
        if r is not None:
            return _const(r)
    return _atom_poly(("root", n, p))


# --------------------------------------------------------------------------
# interval evaluation of normal forms
# --------------------------------------------------------------------------


class _Straddle(Exception):
    """Raised when an interval is too wide for a partial operation."""


def _imul(a, b):
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)


def _iinv(a):
    if a[0] <= 0 <= a[1]:
        raise _Straddle()
    return Fraction(1) / a[1], Fraction(1) / a[0]


def _ipow(a, k):
    if k < 0:
        return _iinv(_ipow(a, -k))
    result = (Fraction(1), Fraction(1))
    for _ in range(k):
        result = _imul(result, a)
    return result


def _eval_atom(atom, bits, memo):
    kind = atom[0]
    if kind == "exp":
        lo, hi = _eval_poly(atom[1], bits, memo)
        return _exp_bracket(lo, bits)[0], _exp_bracket(hi, bits)[1]
    if kind == "log":
        lo, hi = _eval_poly(atom[1], bits, memo)
        if lo <= 0:
            raise _Straddle()
        return _log_bracket(lo, bits)[0], _log_bracket(hi, bits)[1]
    if kind == "root":
        n = atom[1]
        lo, hi = _eval_poly(atom[2], bits, memo)
        if lo < 0:
            raise _Straddle()
        return _root_bracket(lo, n, bits)[0], _root_bracket(hi, n, bits)[1]
    if kind == "inv":
        return _iinv(_eval_poly(atom[1], bits, memo))
    raise ValueError(f"unknown atom {kind!r}")


def _eval_poly(p, bits, memo):
    key = ("poly", p)
    if key in memo:
        return memo[key]
    lo = hi = Fraction(0)
    for mono, c in p:
        iv = (Fraction(1), Fraction(1))
        for atom, k in mono:
            if atom in memo:
                a_iv = memo[atom]
            else:
                a_iv = _eval_atom(atom, bits, memo)
                memo[atom] = a_iv
            iv = _imul(iv, _ipow(a_iv, k))
        iv = _imul(iv, (c, c))
        lo += iv[0]
        hi += iv[1]
    result = _round_out(lo, hi, bits)
    memo[key] = result
    return result


# --------------------------------------------------------------------------
# SymScalar
# --------------------------------------------------------------------------


class SymScalar:
    """An exact real given by a normalized exp-log-root expression over Q.

    Instances are immutable apart from the interval cache, which is only
    ever replaced by a nested (narrower) bracket.
    """

    __slots__ = ("_poly", "_cache", "_hash")

    def __init__(self, poly):
        if _is_const(poly):
            raise ValueError("rational values are represented by Fraction")
        self._poly = poly
        self._cache = None
        self._hash = None

    @staticmethod
    def _wrap(poly):
        if _is_const(poly):
            return _const_value(poly)
        return SymScalar(poly)

    # -- interval bracket ---------------------------------------------------

    def interval(self, bits=32):
        """Rational bracket of the value; refining never widens it."""
        cache = self._cache
        if cache is not None and cache[0] >= bits:
            return cache[1]
        lo, hi = _eval_poly(self._poly, bits, {})
        if cache is not None:
            lo = max(lo, cache[1][0])
            hi = min(hi, cache[1][1])
        # copy-on-refine: the tuple is replaced atomically
        self._cache = (bits, (lo, hi))
        return lo, hi

    @property
    def cached_interval(self):
        return None if self._cache is None else self._cache[1]

    @property
    def precision_used(self):
        if self._cache is None:
            return None
        lo, hi = self._cache[1]
        return hi - lo

    def sign(self, cap=None):
        cap = settings.cap if cap is None else Fraction(cap)
        bits = 16
        width = None
        while True:
            try:
                lo, hi = self.interval(bits)
            except _Straddle:
                lo = hi = None
            if lo is not None:
                width = hi - lo
                if lo > 0:
                    return SignDecision(Sign.POSITIVE, width)
                if hi < 0:
                    return SignDecision(Sign.NEGATIVE, width)
                if width <= cap:
                    return SignDecision(Sign.UNDECIDED, width)
            if bits >= _MAX_BITS:
                return SignDecision(Sign.UNDECIDED, width)
            bits *= 2

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        p = _as_poly(other)
        if p is None:
            return NotImplemented
        return SymScalar._wrap(_poly_add(self._poly, p))

    __radd__ = __add__

    def __sub__(self, other):
        p = _as_poly(other)
        if p is None:
            return NotImplemented
        return SymScalar._wrap(_poly_add(self._poly, _poly_neg(p)))

    def __rsub__(self, other):
        p = _as_poly(other)
        if p is None:
            return NotImplemented
        return SymScalar._wrap(_poly_add(p, _poly_neg(self._poly)))

    def __neg__(self):
        return SymScalar(_poly_neg(self._poly))

    def __pos__(self):
        return self

    def __mul__(self, other):
        p = _as_poly(other)
        if p is None:
            return NotImplemented
        return SymScalar._wrap(_poly_mul(self._poly, p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = _as_poly(other)
        if p is None:
            return NotImplemented
        return _divide(self._poly, p)

    def __rtruediv__(self, other):
        p = _as_poly(other)
        if p is None:
            return NotImplemented
        return _divide(p, self._poly)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Fraction(1) / (self ** -k)
        return SymScalar._wrap(_poly_pow(self._poly, k))

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SymScalar):
            return self._poly == other._poly
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("sym", self._poly))
        return self._hash

    def _decided(self, other):
        outcome = cmp(self, other).outcome
        if outcome is Sign.UNDECIDED:
            raise UndecidedSign(f"cannot order {self} and {format_scalar(other)}")
        return outcome

    def __lt__(self, other):
        return self._decided(other) is Sign.NEGATIVE

    def __le__(self, other):
        return self._decided(other) is not Sign.POSITIVE

    def __gt__(self, other):
        return self._decided(other) is Sign.POSITIVE

    def __ge__(self, other):
        return self._decided(other) is not Sign.NEGATIVE

    def __float__(self):
        lo, hi = self.interval(64)
        return float((lo + hi) / 2)

    def __repr__(self):
        return f"SymScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _as_poly(x):
    if isinstance(x, SymScalar):
        return x._poly
    if isinstance(x, (int, Fraction)):
        return _const(x)
    return None


def _divide(p, r):
    if not r:
        raise DivisionByZero("division by zero")
    if p == r:
        return Fraction(1)
    if not _is_const(r):
        d = sign(SymScalar(r))
        if d.outcome is Sign.UNDECIDED:
            raise UndecidedSign("divisor indistinguishable from zero",
                                d.precision_reached)
    return SymScalar._wrap(_poly_mul(p, _poly_inv(r)))


def is_scalar(x):
    return isinstance(x, (int, Fraction, SymScalar))


def to_scalar(x):
    if isinstance(x, SymScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------


def exp(a):
    """Symbolic exponential; exact when it folds (exp(0) = 1, exp(log x) = x)."""
    return SymScalar._wrap(_poly_exp(_as_poly(to_scalar(a))))


def log(a):
    a = to_scalar(a)
    d = sign(a)
    if d.outcome is Sign.UNDECIDED:
        raise UndecidedSign("log argument of undecided sign", d.precision_reached)
    if d.outcome is not Sign.POSITIVE:
        raise NonPositiveRadicand("log of a non-positive scalar")
    return SymScalar._wrap(_poly_log(_as_poly(a)))


def nth_root(a, n, symbolic=False):
    """Positive n-th root.

    Rational radicands with a rational root give that root exactly.  Otherwise
    a symbolic root is returned when ``symbolic`` is set (or ``a`` is already
    symbolic) and :class:`NotRepresentable` is raised in rational mode.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("root degree must be a positive integer")
    a = to_scalar(a)
    d = sign(a)
    if d.outcome is Sign.UNDECIDED:
        raise UndecidedSign("radicand of undecided sign", d.precision_reached)
    if d.outcome is not Sign.POSITIVE:
        raise NonPositiveRadicand(f"radicand {format_scalar(a)} is not positive")
    if isinstance(a, Fraction):
        r = _rational_root(a, n)
        if r is not None:
            return r
        if not symbolic:
            raise NotRepresentable(f"{a} has no rational {n}-th root")
    return SymScalar._wrap(_poly_root(_as_poly(a), n))


def arith(op, a, b):
    a, b = to_scalar(a), to_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if isinstance(b, Fraction) and b == 0:
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def sign(x, cap=None):
    if isinstance(x, SymScalar):
        return x.sign(cap)
    x = Fraction(x)
    if x > 0:
        return SignDecision(Sign.POSITIVE)
    if x < 0:
        return SignDecision(Sign.NEGATIVE)
    return SignDecision(Sign.ZERO)


def cmp(a, b, cap=None):
    """Sign of ``a - b`` as a :class:`SignDecision`."""
    if a is b:
        return SignDecision(Sign.ZERO)
    return sign(to_scalar(a) - to_scalar(b), cap)


def is_zero(x):
    """Structural zero test; symbolic values are never reported zero."""
    return not isinstance(x, SymScalar) and x == 0


def definite_sign(x):
    """Sign as -1, 0, 1; raises :class:`UndecidedSign` when undecided."""
    d = sign(x)
    if d.outcome is Sign.UNDECIDED:
        raise UndecidedSign(f"sign of {format_scalar(x)} undecided", d.precision_reached)
    return d.outcome.value


# --------------------------------------------------------------------------
# text form
# --------------------------------------------------------------------------


def _format_rational(q):
    return str(Fraction(q))


def _format_atom_plain(atom):
    kind = atom[0]
    if kind == "root":
        return f"(root {atom[1]} {_format_poly(atom[2])})"
    if kind == "inv":
        return f"(div 1 {_format_poly(atom[1])})"
    return f"({kind} {_format_poly(atom[1])})"


def _format_mono(mono):
    num = []
    den = []
    for atom, k in mono:
        if atom[0] == "inv":
            # an inv atom with positive power divides by its argument
            target, factor = (den, _format_poly(atom[1])) if k > 0 else (num, _format_poly(atom[1]))
        elif k > 0:
            target, factor = num, _format_atom_plain(atom)
        else:
            target, factor = den, _format_atom_plain(atom)
        target.extend([factor] * abs(k))
    text = num[0] if num else "1"
    for factor in num[1:]:
        text = f"(mul {text} {factor})"
    for factor in den:
        text = f"(div {text} {factor})"
    return text


def _format_term(mono, c):
    if mono == ():
        return _format_rational(c)
    body = _format_mono(mono)
    if c == 1:
        return body
    return f"(mul {_format_rational(c)} {body})"


def _format_poly(p):
    if not p:
        return "0"
    ordered = [mc for mc in p if mc[0] != ()] + [mc for mc in p if mc[0] == ()]
    mono, c = ordered[0]
    text = _format_term(mono, c)
    for mono, c in ordered[1:]:
        if c < 0:
            text = f"(sub {text} {_format_term(mono, -c)})"
        else:
            text = f"(add {text} {_format_term(mono, c)})"
    return text


def format_scalar(x):
    """Canonical text: ``p/q`` for rationals, an s-expression otherwise."""
    if isinstance(x, SymScalar):
        return _format_poly(x._poly)
    return _format_rational(x)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character", pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    return tokens


def _parse_rational_token(tok, pos):
    if not _RATIONAL.match(tok):
        raise ParseError(f"bad number {tok!r}", pos)
    q = Fraction(tok)
    if "/" in tok and int(tok.split("/")[1]) == 0:
        raise ParseError("zero denominator", pos)
    return q


def parse_scalar(text):
    """Parse ``p/q`` or an s-expression such as ``(sub (exp 1) 1)``."""
    text = text.strip()
    if not text:
        raise ParseError("empty scalar", 0)
    if _RATIONAL.match(text):
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ParseError("zero denominator", 0) from None
    tokens = _tokenize(text)
    value, i = _parse_expr(tokens, 0)
    if i != len(tokens):
        raise ParseError("trailing input", tokens[i][1])
    return value


def _parse_expr(tokens, i):
    if i >= len(tokens):
        raise ParseError("unexpected end of input", tokens[-1][1] if tokens else 0)
    tok, pos = tokens[i]
    if tok == ")":
        raise ParseError("unexpected ')'", pos)
    if tok != "(":
        return _parse_rational_token(tok, pos), i + 1
    if i + 1 >= len(tokens):
        raise ParseError("unexpected end of input", pos)
    op, op_pos = tokens[i + 1]
    i += 2
    args = []
    while True:
        if i >= len(tokens):
            raise ParseError("missing ')'", pos)
        if tokens[i][0] == ")":
            i += 1
            break
        if op == "root" and not args:
            tok_n, pos_n = tokens[i]
            if not tok_n.isdigit() or int(tok_n) < 1:
                raise ParseError("root degree must be a positive integer", pos_n)
            args.append(int(tok_n))
            i += 1
            continue
        arg, i = _parse_expr(tokens, i)
        args.append(arg)
    return _apply_op(op, args, op_pos), i


def _apply_op(op, args, pos):
    arity = {"exp": 1, "log": 1, "neg": 1, "root": 2, "div": 2}
    if op in arity and len(args) != arity[op]:
        raise ParseError(f"{op} expects {arity[op]} argument(s)", pos)
    try:
        if op == "add":
            if len(args) < 2:
                raise ParseError("add expects at least 2 arguments", pos)
            total = args[0]
            for a in args[1:]:
                total = total + a
            return total
        if op == "sub":
            if len(args) == 1:
                return -args[0]
            if len(args) != 2:
                raise ParseError("sub expects 1 or 2 arguments", pos)
            return args[0] - args[1]
        if op == "mul":
            if len(args) < 2:
                raise ParseError("mul expects at least 2 arguments", pos)
            total = args[0]
            for a in args[1:]:
                total = total * a
            return total
        if op == "div":
            return arith("div", args[0], args[1])
        if op == "neg":
            return -args[0]
        if op == "exp":
            return exp(args[0])
        if op == "log":
            return log(args[0])
        if op == "root":
            return nth_root(args[1], args[0], symbolic=True)
    except (DivisionByZero, NonPositiveRadicand, UndecidedSign) as err:
        raise ParseError(str(err), pos) from err
    raise ParseError(f"unknown operator {op!r}", pos)
