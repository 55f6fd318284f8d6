"""The Hahn sum over Q with coefficients in an ordered field.

Elements are finite-support maps from the rational chain to the scalars,
ordered lexicographically: the sign of ``a`` is the sign of its coefficient
at the smallest index of its support.  This is a divisible ordered abelian
group whose natural valuation is the minimum of the support.
"""

from __future__ import annotations

from fractions import Fraction

from . import scalars
from .errors import NotInComponentDomain, NotPseudoCauchy, UndecidedSign
from .reports import Report
from .scalars import Sign, SignDecision, format_scalar, is_zero, parse_scalar


class _Infinity:
    """Valuation of zero; compares above every index and group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("hahnexp.Infinity")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "Infinity"

    def to_json(self):
        return "inf"


INFINITY = _Infinity()


class HahnElement:
    """A finite-support element of the Hahn sum, stored as sorted ``(index, coeff)`` pairs."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        merged = {}
        for idx, coef in terms:
            idx = Fraction(idx)
            coef = scalars.to_scalar(coef)
            merged[idx] = merged.get(idx, 0) + coef
        self.terms = tuple(sorted((i, c) for i, c in merged.items() if not is_zero(c)))
        self._hash = None

    @classmethod
    def _from_sorted(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = tuple(terms)
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, idx, coef=1):
        return cls(((idx, coef),))

    @classmethod
    def zero(cls):
        return cls._from_sorted(())

    # -- group operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HahnElement):
            if other == 0:
                return self
            return NotImplemented
        a, b = self.terms, other.terms
        if not a:
            return other
        if not b:
            return self
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            ia, ca = a[i]
            ib, cb = b[j]
            if ia < ib:
                out.append(a[i])
                i += 1
            elif ib < ia:
                out.append(b[j])
                j += 1
            else:
                c = ca + cb
                if not is_zero(c):
                    out.append((ia, c))
                i += 1
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return HahnElement._from_sorted(out)

    __radd__ = __add__

    def __neg__(self):
        return HahnElement._from_sorted((i, -c) for i, c in self.terms)

    def __sub__(self, other):
        if not isinstance(other, HahnElement):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if other == 0:
            return -self
        return NotImplemented

    def scale(self, q):
        """Multiply every coefficient by the scalar ``q``."""
        if is_zero(q):
            return HahnElement.zero()
        return HahnElement._from_sorted(
            (i, c) for i, c in ((i, c * q) for i, c in self.terms) if not is_zero(c))

    def __mul__(self, q):
        if isinstance(q, HahnElement):
            return NotImplemented
        return self.scale(q)

    __rmul__ = __mul__

    def __truediv__(self, n):
        return self.scale(Fraction(1) / n if isinstance(n, (int, Fraction)) else 1 / n)

    def divide_by_n(self, n):
        if not isinstance(n, int) or n < 1:
            raise ValueError("n must be a positive integer")
        return self / n

    # -- order ----------------------------------------------------------------

    def cmp(self, other):
        return cmp_group(self, other)

    def _decided(self, other):
        d = cmp_group(self, other)
        if d.outcome is Sign.UNDECIDED:
            raise UndecidedSign(f"cannot order {self} and {other}", d.precision_reached)
        return d.outcome

    def __lt__(self, other):
        if other is INFINITY:
            return NotImplemented
        return self._decided(other) is Sign.NEGATIVE

    def __le__(self, other):
        if other is INFINITY:
            return NotImplemented
        return self._decided(other) is not Sign.POSITIVE

    def __gt__(self, other):
        if other is INFINITY:
            return NotImplemented
        return self._decided(other) is Sign.POSITIVE

    def __ge__(self, other):
        if other is INFINITY:
            return NotImplemented
        return self._decided(other) is not Sign.NEGATIVE

    def __eq__(self, other):
        if isinstance(other, HahnElement):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- accessors ------------------------------------------------------------

    @property
    def support(self):
        return [i for i, _ in self.terms]

    def coefficient(self, idx):
        idx = Fraction(idx)
        for i, c in self.terms:
            if i == idx:
                return c
            if i > idx:
                break
        return Fraction(0)

    @property
    def leading(self):
        """``(min support index, coefficient)``; ``None`` for zero."""
        return self.terms[0] if self.terms else None

    def is_rational_multiple(self, idx=0):
        """True when the element is ``q * e_idx`` (or zero)."""
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == idx)

    def __repr__(self):
        return f"HahnElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, c in self.terms:
            parts.append(f"{format_scalar(c)}*e[{i}]")
        return " + ".join(parts)

    def to_json(self):
        return {"terms": [{"idx": str(i), "coef": format_scalar(c)} for i, c in self.terms]}

    @classmethod
    def from_json(cls, data):
        return cls((Fraction(t["idx"]), parse_scalar(t["coef"])) for t in data["terms"])


def e(idx, coef=1):
    """The unit vector ``coef * e_idx``."""
    return HahnElement.monomial(idx, coef)


def group_arith(op, a, b=None, n=None):
    if op == "add":
        return a + b
    if op == "neg":
        return -a
    if op == "sub":
        return a - b
    if op == "divide_by_n":
        return a.divide_by_n(n)
    raise ValueError(f"unknown operation {op!r}")


def cmp_group(a, b):
    """Lexicographic comparison: sign of ``a - b`` at ``min supp(a - b)``."""
    ta, tb = a.terms, b.terms
    i = j = 0
    while i < len(ta) or j < len(tb):
        if j >= len(tb) or (i < len(ta) and ta[i][0] < tb[j][0]):
            return scalars.sign(ta[i][1])
        if i >= len(ta) or tb[j][0] < ta[i][0]:
            return -scalars.sign(tb[j][1])
        ca, cb = ta[i][1], tb[j][1]
        if ca != cb:
            return scalars.cmp(ca, cb)
        i += 1
        j += 1
    return SignDecision(Sign.ZERO)


def valuation_vG(a):
    """``min supp a``, or :data:`INFINITY` for zero."""
    return a.terms[0][0] if a.terms else INFINITY


def diff_valuation(a, b):
    """``v_G(a - b)`` without building the difference."""
    ta, tb = a.terms, b.terms
    i = j = 0
    while i < len(ta) or j < len(tb):
        if j >= len(tb) or (i < len(ta) and ta[i][0] < tb[j][0]):
            return ta[i][0]
        if i >= len(ta) or tb[j][0] < ta[i][0]:
            return tb[j][0]
        if ta[i][1] != tb[j][1]:
            return ta[i][0]
        i += 1
        j += 1
    return INFINITY


def component_residue(a, gamma):
    """Image of ``a`` in the archimedean component ``B(G, gamma)``, i.e. its coefficient at ``gamma``."""
    gamma = Fraction(gamma)
    if valuation_vG(a) < gamma:
        raise NotInComponentDomain(f"v_G(a) = {valuation_vG(a)} < {gamma}")
    return a.coefficient(gamma)


def check_pseudo_cauchy(seq):
    """Raise :class:`NotPseudoCauchy` unless ``v(a_r - a_s) < v(a_s - a_t)`` for all ``r < s < t``
    and the terms are distinct.

    Returns the matrix of difference valuations.  Strictly increasing
    consecutive valuations are equivalent to the condition on all triples,
    and then ``v(a_r - a_s) = v(a_r - a_{r+1})`` for every ``s > r``.
    """
    m = len(seq)
    step = [diff_valuation(seq[r], seq[r + 1]) for r in range(m - 1)]
    for r in range(m - 2):
        if not step[r] < step[r + 1]:
            raise NotPseudoCauchy(
                f"v(a{r} - a{r + 1}) = {step[r]} is not below v(a{r + 1} - a{r + 2}) = {step[r + 1]}",
                triple=(r, r + 1, r + 2))
    if m >= 2 and step[-1] is INFINITY:
        raise NotPseudoCauchy(f"a{m - 2} = a{m - 1}; terms must be distinct")
    return [[step[r] if s > r else None for s in range(m)] for r in range(m)]


def pseudo_limit(seq):
    """Return ``(a, report)`` where ``a`` is a pseudo limit of the pseudo-Cauchy ``seq``.

    ``a`` is the last term plus ``e_mu`` with ``mu`` half-way between the last
    difference valuation and that valuation plus one.  Pseudo limits are far
    from unique; this is one admissible representative.
    """
    seq = list(seq)
    if len(seq) < 2:
        raise ValueError("need at least two terms")
    vals = check_pseudo_cauchy(seq)
    m = len(seq)
    last = vals[m - 2][m - 1]
    limit = seq[-1] + e(last + Fraction(1, 2))
    report = Report("pseudo-limit")
    report.note("the returned limit is one admissible representative, not a canonical choice")
    for r in range(m - 1):
        lhs = diff_valuation(seq[r], limit)
        rhs = vals[r][r + 1]
        report.record(lhs == rhs, {"rho": r, "v(a_rho - a)": str(lhs), "v(a_rho - a_rho+1)": str(rhs)})
    return limit, report
