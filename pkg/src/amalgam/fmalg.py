"""Finite model of the algebra of a measured equivalence relation.

Points carry positive rational weights summing to 1.  An element is a
complex combination of matrix units e[x,y] with (x,y) in a fixed equivalence
relation; multiplication is groupoid convolution e[x,y] e[z,w] = d_yz e[x,w],
the 2-cocycle being trivial throughout.  The conditional expectation onto
the diagonal keeps the (x,x) coefficients.  All coefficient arithmetic is
exact except modular scaling, whose phases are transcendental.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .scalars import QC, conj, is_zero

GROUPOID_POINT_BOUND = 8  # hard bound for exhaustive partial-bijection sweeps


@dataclass(frozen=True)
class FiniteBase:
    """Finite point set with a faithful state given by rational weights."""

    points: tuple
    weights: tuple

    def __post_init__(self):
        assert len(self.points) == len(set(self.points)), "duplicate point"
        assert len(self.weights) == len(self.points)
        for q in self.weights:
            assert isinstance(q, Fraction) and q > 0, "weights must be positive rationals"
        assert sum(self.weights) == 1, "weights must sum to 1"

    @staticmethod
    def uniform(points):
        points = tuple(points)
        return FiniteBase(points, (Fraction(1, len(points)),) * len(points))

    @staticmethod
    def weighted(pairs):
        pairs = list(pairs)
        return FiniteBase(tuple(p for p, _ in pairs),
                          tuple(Fraction(q) for _, q in pairs))

    def weight(self, x):
        return self.weights[self.points.index(x)]


@dataclass(frozen=True)
class FiniteRelation:
    """Equivalence relation on the base, stored as its full pair set."""

    base: FiniteBase
    pairs: frozenset

    def __post_init__(self):
        points = set(self.base.points)
        for x, y in self.pairs:
            assert x in points and y in points, f"pair off the base: {(x, y)}"
        for x in points:
            assert (x, x) in self.pairs, f"not reflexive at {x}"
        for x, y in self.pairs:
            assert (y, x) in self.pairs, f"not symmetric at {(x, y)}"
        for x, y in self.pairs:
            for y2, z in self.pairs:
                if y2 == y:
                    assert (x, z) in self.pairs, f"not transitive via {(x, y, z)}"

    @staticmethod
    def from_classes(base, classes):
        """Build from blocks; points not mentioned become singletons."""
        seen = set()
        pairs = set()
        for cls in classes:
            cls = tuple(cls)
            assert not seen.intersection(cls), "point in two classes"
            seen.update(cls)
            for x in cls:
                for y in cls:
                    pairs.add((x, y))
        for x in base.points:
            pairs.add((x, x))
        return FiniteRelation(base, frozenset(pairs))

    @staticmethod
    def diagonal(base):
        return FiniteRelation.from_classes(base, [])

    @staticmethod
    def full(base):
        return FiniteRelation.from_classes(base, [base.points])

    def classes(self):
        points = list(self.base.points)
        out = []
        while points:
            x = points[0]
            cls = tuple(y for y in self.base.points if (x, y) in self.pairs)
            out.append(cls)
            points = [y for y in points if y not in cls]
        return tuple(out)

    def class_of(self, x):
        return tuple(y for y in self.base.points if (x, y) in self.pairs)


class FMElement:
    """Combination of matrix units supported in one relation."""

    __slots__ = ("relation", "coeffs")

    def __init__(self, relation, coeffs):
        self.relation = relation
        clean = {}
        for pair, value in coeffs.items():
            assert pair in relation.pairs, f"support outside the relation: {pair}"
            value = QC.coerce(value)
            if not is_zero(value):
                clean[pair] = value
        self.coeffs = clean

    @staticmethod
    def unit(relation, x, y):
        return FMElement(relation, {(x, y): QC(1)})

    @staticmethod
    def one(relation):
        return FMElement(relation, {(x, x): QC(1) for x in relation.base.points})

    @staticmethod
    def zero(relation):
        return FMElement(relation, {})

    @staticmethod
    def diagonal(relation, values):
        return FMElement(relation, {(x, x): v for x, v in values.items()})

    def cast(self, relation):
        """Re-home into a larger relation over the same base."""
        assert relation.base == self.relation.base
        return FMElement(relation, dict(self.coeffs))

    def _check(self, other):
        if not isinstance(other, FMElement):
            raise TypeError("expected an FMElement")
        if other.relation != self.relation:
            raise ValueError("relation mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for pair, value in other.coeffs.items():
            out[pair] = out.get(pair, QC(0)) + value
        return FMElement(self.relation, out)

    def __neg__(self):
        return FMElement(self.relation, {p: -v for p, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        right = {}
        for (z, w), value in other.coeffs.items():
            right.setdefault(z, []).append((w, value))
        for (x, y), u in self.coeffs.items():
            for w, v in right.get(y, ()):
                pair = (x, w)
                out[pair] = out.get(pair, QC(0)) + u * v
        return FMElement(self.relation, out)

    def scale(self, scalar):
        scalar = QC.coerce(scalar)
        return FMElement(self.relation, {p: scalar * v for p, v in self.coeffs.items()})

    def adjoint(self):
        return FMElement(self.relation, {(y, x): conj(v) for (x, y), v in self.coeffs.items()})

    def expectation(self):
        """Conditional expectation onto the diagonal."""
        return FMElement(self.relation, {p: v for p, v in self.coeffs.items() if p[0] == p[1]})

    def is_zero(self):
        return not self.coeffs

    def is_diagonal(self):
        return all(x == y for x, y in self.coeffs)

    def right_support(self):
        """Smallest diagonal projection q with self * q = self."""
        cols = {y for _, y in self.coeffs}
        return FMElement(self.relation, {(y, y): QC(1) for y in cols})

    def left_support(self):
        rows = {x for x, _ in self.coeffs}
        return FMElement(self.relation, {(x, x): QC(1) for x in rows})

    def __eq__(self, other):
        if not isinstance(other, FMElement):
            return NotImplemented
        return self.relation == other.relation and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for (x, y), v in sorted(self.coeffs.items(), key=lambda kv: repr(kv[0])):
            bits.append(f"{v!r} e[{x},{y}]")
        return " + ".join(bits)


def coefficient_gap(u: FMElement, v: FMElement) -> float:
    """Largest absolute coefficient difference, for tolerance comparisons."""
    gap = 0.0
    for pair in set(u.coeffs) | set(v.coeffs):
        du = complex(u.coeffs.get(pair, QC(0)))
        dv = complex(v.coeffs.get(pair, QC(0)))
        gap = max(gap, abs(du - dv))
    return gap


def join(r1: FiniteRelation, r2: FiniteRelation) -> FiniteRelation:
    """Smallest equivalence relation containing both."""
    assert r1.base == r2.base
    parent = {x: x for x in r1.base.points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in list(r1.pairs) + list(r2.pairs):
        parent[find(x)] = find(y)
    classes = {}
    for x in r1.base.points:
        classes.setdefault(find(x), []).append(x)
    return FiniteRelation.from_classes(r1.base, classes.values())


def is_ergodic(relation: FiniteRelation) -> bool:
    return len(relation.classes()) == 1


@dataclass(frozen=True)
class PartialBijection:
    """Injective partial map on the base, stored as sorted graph pairs."""

    base: FiniteBase
    graph: tuple  # pairs (x, image of x)

    def __post_init__(self):
        dom = [x for x, _ in self.graph]
        img = [y for _, y in self.graph]
        assert len(set(dom)) == len(dom), "not a function"
        assert len(set(img)) == len(img), "not injective"

    def domain(self):
        return tuple(x for x, _ in self.graph)

    def image(self):
        return tuple(y for _, y in self.graph)

    def __call__(self, x):
        for z, y in self.graph:
            if z == x:
                return y
        raise KeyError(x)

    def to_element(self, relation: FiniteRelation) -> FMElement:
        """Partial isometry sum of e[map(x), x] over the domain."""
        return FMElement(relation, {(y, x): QC(1) for x, y in self.graph})

    def domain_projection(self, relation):
        return FMElement(relation, {(x, x): QC(1) for x in self.domain()})

    def image_projection(self, relation):
        return FMElement(relation, {(y, y): QC(1) for y in self.image()})


def normalizing_groupoid(relation: FiniteRelation):
    """All partial bijections whose graph sits inside the relation.

    Exhaustive, so the base is hard-bounded; the count grows like the
    number of partial injections.
    """
    points = relation.base.points
    assert len(points) <= GROUPOID_POINT_BOUND, \
        f"base too large for exhaustive sweep (bound {GROUPOID_POINT_BOUND})"
    out = []

    def assign(i, used, graph):
        if i == len(points):
            out.append(PartialBijection(relation.base, tuple(graph)))
            return
        x = points[i]
        assign(i + 1, used, graph)  # x outside the domain
        for y in relation.class_of(x):
            if y in used:
                continue
            graph.append((x, y))
            assign(i + 1, used | {y}, graph)
            graph.pop()

    assign(0, frozenset(), [])
    return out


def modular_scale(u: FMElement, t: float) -> FMElement:
    """Scale e[x,y] by (w_x/w_y)^{it}; fixes the diagonal pointwise.

    Ratio-1 entries keep their exact coefficients; all others pick up a
    floating phase (documented tolerance 1e-12 in the checks).
    """
    base = u.relation.base
    out = {}
    for (x, y), value in u.coeffs.items():
        ratio = base.weight(x) / base.weight(y)
        if ratio == 1:
            out[(x, y)] = value
        else:
            out[(x, y)] = complex(value) * cmath.exp(1j * t * math.log(ratio))
    return FMElement(u.relation, out)


def all_equivalence_relations(base: FiniteBase):
    """Every equivalence relation on the base, via partition enumeration."""
    points = list(base.points)

    def partitions(rest):
        if not rest:
            yield []
            return
        first, tail = rest[0], rest[1:]
        for sub in partitions(tail):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
            yield [[first]] + sub

    for blocks in partitions(points):
        yield FiniteRelation.from_classes(base, blocks)
