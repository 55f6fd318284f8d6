"""Countable dense chains and order-isomorphisms between them.

The canonical chain is the rational line.  Automorphisms are represented by
their piecewise-linear subgroup (:class:`PLAutomorphism`), and isomorphisms
between chains are built lazily by back-and-forth (:class:`LazyChainIso`):
every query either returns a memoized answer or pins a new pair inside the
interval forced by the pairs already pinned.
"""

from __future__ import annotations

import bisect
import threading
from fractions import Fraction

from .errors import ConstraintUnsatisfiable, EmptyInterval


def between(x, y):
    """Midpoint of ``x < y``."""
    if not x < y:
        raise EmptyInterval(f"no point strictly between {x} and {y}")
    return (x + y) / 2


class RationalLine:
    """The chain (Q, <)."""

    name = "Q"

    def between(self, x, y):
        return between(Fraction(x), Fraction(y))

    def below(self, y):
        return Fraction(y) - 1

    def above(self, x):
        return Fraction(x) + 1

    def origin(self):
        return Fraction(0)

    def contains(self, x):
        return isinstance(x, (int, Fraction))


class PLAutomorphism:
    """An increasing piecewise-linear bijection of Q.

    Piece ``i`` is ``x -> slopes[i] * x + offsets[i]``; piece 0 covers
    ``(-inf, breakpoints[0]]`` and the last piece ``[breakpoints[-1], inf)``.
    """

    __slots__ = ("breakpoints", "slopes", "offsets")

    def __init__(self, breakpoints, slopes, offsets):
        self.breakpoints = tuple(Fraction(b) for b in breakpoints)
        self.slopes = tuple(Fraction(s) for s in slopes)
        self.offsets = tuple(Fraction(c) for c in offsets)
        if len(self.slopes) != len(self.breakpoints) + 1 or len(self.offsets) != len(self.slopes):
            raise ValueError("need one slope and one offset per piece")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(s <= 0 for s in self.slopes):
            raise ValueError("slopes must be positive")
        for i, b in enumerate(self.breakpoints):
            left = self.slopes[i] * b + self.offsets[i]
            right = self.slopes[i + 1] * b + self.offsets[i + 1]
            if left != right:
                raise ValueError(f"pieces do not join at breakpoint {b}")

    @classmethod
    def identity(cls):
        return cls((), (1,), (0,))

    @classmethod
    def shift(cls, c):
        return cls((), (1,), (c,))

    @classmethod
    def from_nodes(cls, nodes, left_slope=1, right_slope=1):
        """Interpolate increasing nodes ``[(x0, y0), (x1, y1), ...]``."""
        nodes = [(Fraction(x), Fraction(y)) for x, y in nodes]
        if not nodes:
            return cls((), (1,), (0,))
        for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
            if not (x0 < x1 and y0 < y1):
                raise ValueError("nodes must be strictly increasing in both coordinates")
        slopes = [Fraction(left_slope)]
        offsets = [nodes[0][1] - slopes[0] * nodes[0][0]]
        for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
            s = (y1 - y0) / (x1 - x0)
            slopes.append(s)
            offsets.append(y0 - s * x0)
        s = Fraction(right_slope)
        slopes.append(s)
        offsets.append(nodes[-1][1] - s * nodes[-1][0])
        return cls([x for x, _ in nodes], slopes, offsets)

    def _piece(self, x):
        return bisect.bisect_left(self.breakpoints, x)

    def __call__(self, x):
        x = Fraction(x)
        i = self._piece(x)
        return self.slopes[i] * x + self.offsets[i]

    def nodes(self):
        return [(b, self(b)) for b in self.breakpoints]

    def inverse(self):
        nodes = [(y, x) for x, y in self.nodes()]
        return PLAutomorphism.from_nodes(nodes, 1 / self.slopes[0], 1 / self.slopes[-1])

    def apply_inverse(self, y):
        y = Fraction(y)
        images = [self.slopes[i] * b + self.offsets[i] for i, b in enumerate(self.breakpoints)]
        i = bisect.bisect_left(images, y)
        return (y - self.offsets[i]) / self.slopes[i]

    def compose(self, other):
        """``self o other``."""
        xs = set(other.breakpoints)
        xs.update(other.apply_inverse(b) for b in self.breakpoints)
        nodes = [(x, self(other(x))) for x in sorted(xs)]
        return PLAutomorphism.from_nodes(
            nodes, self.slopes[0] * other.slopes[0], self.slopes[-1] * other.slopes[-1])

    def __eq__(self, other):
        if not isinstance(other, PLAutomorphism):
            return NotImplemented
        probes = set(self.breakpoints) | set(other.breakpoints) | {Fraction(0)}
        lo, hi = min(probes) - 1, max(probes) + 1
        probes |= {lo, hi}
        return all(self(x) == other(x) for x in probes) and \
            self.slopes[0] == other.slopes[0] and self.slopes[-1] == other.slopes[-1]

    def __hash__(self):
        return hash((self.breakpoints, self.slopes, self.offsets))

    def __repr__(self):
        return f"PLAutomorphism(breakpoints={list(map(str, self.breakpoints))}, slopes={list(map(str, self.slopes))})"

    def to_json(self):
        starts = [None] + [str(b) for b in self.breakpoints]
        return [[b, str(s), str(c)] for b, s, c in zip(starts, self.slopes, self.offsets)]

    @classmethod
    def from_json(cls, data):
        if not data or data[0][0] is not None:
            raise ValueError("first piece must have a null start")
        breakpoints = [Fraction(b) for b, _, _ in data[1:]]
        return cls(breakpoints, [Fraction(s) for _, s, _ in data], [Fraction(c) for _, _, c in data])


def apply_automorphism(sigma, x, inverse=False):
    return sigma.apply_inverse(x) if inverse else sigma(x)


class LazyChainIso:
    """A partial order-isomorphism extended on demand by back-and-forth.

    ``source`` and ``target`` are chain descriptors (objects with
    ``between``, ``below``, ``above`` and ``origin``).  An optional
    ``constraint`` decides admissibility of new pairs and may choose the
    images itself through ``choose_image`` / ``choose_preimage``.
    """

    FORWARD = "forward"
    BACKWARD = "backward"

    def __init__(self, source=None, target=None, constraint=None):
        self.source = source if source is not None else RationalLine()
        self.target = target if target is not None else RationalLine()
        self.constraint = constraint
        self._src = []
        self._tgt = []
        self._fwd = {}
        self._bwd = {}
        self._lock = threading.RLock()

    def __len__(self):
        return len(self._src)

    @property
    def memo(self):
        """Pinned pairs sorted by source."""
        return list(zip(self._src, self._tgt))

    def _neighbours(self, keys, values, x):
        i = bisect.bisect_left(keys, x)
        lo = (keys[i - 1], values[i - 1]) if i > 0 else None
        hi = (keys[i], values[i]) if i < len(keys) else None
        return i, lo, hi

    def _insert(self, i, x, y):
        self._src.insert(i, x)
        self._tgt.insert(i, y)
        self._fwd[x] = y
        self._bwd[y] = x

    def pin(self, x, y, check_constraint=True):
        """Pin ``x -> y`` explicitly; must keep the memo order-preserving."""
        with self._lock:
            if x in self._fwd:
                if self._fwd[x] != y:
                    raise ConstraintUnsatisfiable(f"{x} is already pinned to {self._fwd[x]}")
                return
            if y in self._bwd:
                raise ConstraintUnsatisfiable(f"{y} is already the image of {self._bwd[y]}")
            i, lo, hi = self._neighbours(self._src, self._tgt, x)
            if (lo is not None and not lo[1] < y) or (hi is not None and not y < hi[1]):
                raise ConstraintUnsatisfiable(f"pinning {x} -> {y} breaks order preservation")
            if check_constraint and self.constraint is not None and not self.constraint.admits(x, y):
                raise ConstraintUnsatisfiable(f"pair {x} -> {y} violates the constraint")
            self._insert(i, x, y)

    def forward(self, x):
        y = self._fwd.get(x)
        if y is not None:
            return y
        with self._lock:
            if x in self._fwd:
                return self._fwd[x]
            i, lo, hi = self._neighbours(self._src, self._tgt, x)
            lo_y = lo[1] if lo else None
            hi_y = hi[1] if hi else None
            if self.constraint is not None:
                y = self.constraint.choose_image(x, lo_y, hi_y)
                if y is None:
                    raise ConstraintUnsatisfiable(
                        f"no admissible image for {x} in ({lo_y}, {hi_y})")
            else:
                y = _default_choice(self.target, lo_y, hi_y)
            self._check_new(x, y, lo_y, hi_y, image=True)
            self._insert(i, x, y)
            return y

    def backward(self, y):
        x = self._bwd.get(y)
        if x is not None:
            return x
        with self._lock:
            if y in self._bwd:
                return self._bwd[y]
            j, lo, hi = self._neighbours(self._tgt, self._src, y)
            lo_x = lo[1] if lo else None
            hi_x = hi[1] if hi else None
            if self.constraint is not None:
                x = self.constraint.choose_preimage(y, lo_x, hi_x)
                if x is None:
                    raise ConstraintUnsatisfiable(
                        f"no admissible preimage for {y} in ({lo_x}, {hi_x})")
            else:
                x = _default_choice(self.source, lo_x, hi_x)
            self._check_new(x, y, lo_x, hi_x, image=False)
            self._insert(j, x, y)
            return x

    def _check_new(self, x, y, lo, hi, image):
        new = y if image else x
        if (lo is not None and not lo < new) or (hi is not None and not new < hi):
            raise ConstraintUnsatisfiable(f"chosen point {new} escapes ({lo}, {hi})")
        if self.constraint is not None and not self.constraint.admits(x, y):
            raise ConstraintUnsatisfiable(f"chosen pair {x} -> {y} violates the constraint")

    def query(self, x, direction="forward"):
        if direction == self.FORWARD:
            return self.forward(x)
        if direction == self.BACKWARD:
            return self.backward(x)
        raise ValueError(f"unknown direction {direction!r}")

    def is_order_preserving(self):
        return all(a < b for a, b in zip(self._tgt, self._tgt[1:])) and \
            all(a < b for a, b in zip(self._src, self._src[1:]))


def _default_choice(chain, lo, hi):
    if lo is None and hi is None:
        return chain.origin()
    if lo is None:
        return chain.below(hi)
    if hi is None:
        return chain.above(lo)
    return chain.between(lo, hi)


def iso_query(iso, x, direction="forward"):
    return iso.query(x, direction)
