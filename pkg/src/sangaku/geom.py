"""Exact plane primitives, predicates, transforms and common tangents.

All coordinates are :class:`~sangaku.exactnum.AlgNum`; every predicate is an
exact polynomial identity in the coordinates, decided by exact sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import (
    CoincidentPoints,
    InvalidInput,
    NotSeparate,
    ParallelLines,
    PointNotIncident,
    RadicandOverflow,
    ZeroRatio,
)
from .exactnum import ZERO, AlgNum, Number, as_algnum, compare, sign, sqrt_rational


@dataclass(frozen=True)
class Point:
    x: AlgNum
    y: AlgNum

    def __post_init__(self):
        object.__setattr__(self, "x", as_algnum(self.x))
        object.__setattr__(self, "y", as_algnum(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, k: Number) -> "Point":
        return Point(self.x * k, self.y * k)

    def dot(self, other: "Point") -> AlgNum:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> AlgNum:
        return self.x * other.y - self.y * other.x

    def norm2(self) -> AlgNum:
        return self.dot(self)

    def sort_key(self):
        return _ExactKey((self.x, self.y))


@dataclass(frozen=True)
class Line:
    """The line a*x + b*y + c = 0, scaled so the first nonzero of (a, b) is 1."""

    a: AlgNum
    b: AlgNum
    c: AlgNum

    def __post_init__(self):
        a, b, c = as_algnum(self.a), as_algnum(self.b), as_algnum(self.c)
        if not a and not b:
            raise InvalidInput("line needs (a, b) != (0, 0)")
        lead = a if a else b
        if lead != 1:
            a, b, c = a / lead, b / lead, c / lead
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def value_at(self, p: Point) -> AlgNum:
        return self.a * p.x + self.b * p.y + self.c

    @property
    def normal(self) -> Point:
        return Point(self.a, self.b)

    @property
    def direction(self) -> Point:
        return Point(-self.b, self.a)

    def contains(self, p: Point) -> bool:
        return not self.value_at(p)

    def sort_key(self):
        return _ExactKey((self.a, self.b, self.c))

    def __str__(self):
        return f"({self.a})*x + ({self.b})*y + ({self.c}) = 0"


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: AlgNum

    def __post_init__(self):
        r = as_algnum(self.radius)
        if sign(r) <= 0:
            raise InvalidInput(f"circle radius must be positive, got {r}")
        object.__setattr__(self, "radius", r)


class TangentKind(str, Enum):
    EXTERNAL = "external"
    INTERNAL = "internal"


@dataclass(frozen=True)
class TangencyWitness:
    line: Line
    point1: Point
    point2: Point
    kind: TangentKind


class PairClass(str, Enum):
    SEPARATE = "separate"
    EXTERNALLY_TANGENT = "externally_tangent"
    OVERLAPPING = "overlapping"
    INTERNALLY_TANGENT = "internally_tangent"
    CONTAINED = "contained"
    CONCENTRIC_OR_EQUAL = "concentric_or_equal"


class CommonTangents(NamedTuple):
    external: tuple[TangencyWitness, TangencyWitness]
    internal: tuple[TangencyWitness, TangencyWitness]


class _ExactKey:
    """Lexicographic sort key over tuples of AlgNum using exact comparison."""

    __slots__ = ("vals",)

    def __init__(self, vals):
        self.vals = vals

    def _cmp(self, other) -> int:
        for u, v in zip(self.vals, other.vals):
            c = compare(u, v)
            if c:
                return c
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __eq__(self, other):
        return self._cmp(other) == 0


# -- constructions ---------------------------------------------------------------


def line_through(p: Point, q: Point) -> Line:
    if p == q:
        raise CoincidentPoints(f"cannot draw a line through one point {p}")
    a = q.y - p.y
    b = p.x - q.x
    return Line(a, b, -(a * p.x + b * p.y))


def intersect_lines(l1: Line, l2: Line) -> Point:
    det = l1.a * l2.b - l2.a * l1.b
    if not det:
        raise ParallelLines("lines are parallel")
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return Point(x, y)


def perpendicular_foot(p: Point, l: Line) -> Point:
    t = l.value_at(p) / (l.a * l.a + l.b * l.b)
    return Point(p.x - t * l.a, p.y - t * l.b)


# -- predicates ----------------------------------------------------------------


def is_parallel(l1: Line, l2: Line) -> bool:
    return not (l1.a * l2.b - l2.a * l1.b)


def is_perpendicular(l1: Line, l2: Line) -> bool:
    return not (l1.a * l2.a + l1.b * l2.b)


def orientation(p: Point, q: Point, r: Point) -> int:
    return sign((q - p).cross(r - p))


def collinear(p: Point, q: Point, r: Point) -> bool:
    return orientation(p, q, r) == 0


def all_collinear(points) -> bool:
    pts = list(points)
    base = pts[0]
    other = next((p for p in pts[1:] if p != base), None)
    if other is None:
        return True
    return all(collinear(base, other, p) for p in pts)


def on_circle(p: Point, w: Circle) -> bool:
    return (p - w.center).norm2() == w.radius * w.radius


def side_of(l: Line, p: Point) -> int:
    return sign(l.value_at(p))


def is_tangent(l: Line, w: Circle) -> bool:
    v = l.value_at(w.center)
    return v * v == w.radius * w.radius * (l.a * l.a + l.b * l.b)


# -- transforms ----------------------------------------------------------------


def reflect(p: Point, l: Line) -> Point:
    t = 2 * l.value_at(p) / (l.a * l.a + l.b * l.b)
    return Point(p.x - t * l.a, p.y - t * l.b)


def reflect_line(l: Line, axis: Line) -> Line:
    """Mirror image of a whole line."""
    d = l.direction
    p = _some_point(l)
    q = Point(p.x + d.x, p.y + d.y)
    return line_through(reflect(p, axis), reflect(q, axis))


def _some_point(l: Line) -> Point:
    if l.a:
        return Point(-l.c / l.a, ZERO)
    return Point(ZERO, -l.c / l.b)


def homothety(center: Point, ratio: Number, p: Point) -> Point:
    ratio = as_algnum(ratio)
    if not ratio:
        raise ZeroRatio("homothety ratio must be nonzero")
    return center + (p - center).scale(ratio)


# -- line / circle -------------------------------------------------------------


def line_circle_intersections(l: Line, w: Circle) -> list[Point]:
    """Intersection points in lexicographic (x, y) order."""
    foot = perpendicular_foot(w.center, l)
    n2 = l.a * l.a + l.b * l.b
    v = l.value_at(w.center)
    # squared half-chord, in units of the direction vector length squared
    disc = (w.radius * w.radius * n2 - v * v) / (n2 * n2)
    s = sign(disc)
    if s < 0:
        return []
    if s == 0:
        return [foot]
    if not disc.is_rational():
        raise RadicandOverflow("half-chord is not a square root of a rational")
    t = sqrt_rational(disc)
    d = l.direction
    pts = [foot + d.scale(t), foot - d.scale(t)]
    return sorted(pts, key=Point.sort_key)


def second_intersection(l: Line, w: Circle, known: Point) -> Point:
    """The other point where l meets w, by the root-sum identity (no new radicals)."""
    if not l.contains(known) or not on_circle(known, w):
        raise PointNotIncident(f"{known} is not on both the line and the circle")
    d = l.direction
    # |known + t*d - center|^2 = r^2 has roots t = 0 and t = -2 d.(known - center) / |d|^2
    t = -2 * d.dot(known - w.center) / d.norm2()
    return known + d.scale(t)


# -- circle pairs --------------------------------------------------------------


def classify_pair(w1: Circle, w2: Circle) -> PairClass:
    d2 = (w2.center - w1.center).norm2()
    r1, r2 = w1.radius, w2.radius
    if not d2:
        return PairClass.CONCENTRIC_OR_EQUAL
    outer = compare(d2, (r1 + r2) * (r1 + r2))
    if outer > 0:
        return PairClass.SEPARATE
    if outer == 0:
        return PairClass.EXTERNALLY_TANGENT
    inner = compare(d2, (r1 - r2) * (r1 - r2))
    if inner > 0:
        return PairClass.OVERLAPPING
    if inner == 0:
        return PairClass.INTERNALLY_TANGENT
    return PairClass.CONTAINED


def common_tangents(w1: Circle, w2: Circle) -> CommonTangents:
    """The two external and two internal common tangents of separate circles.

    A tangent is written u.p + h = 0 with u = alpha*v + beta*perp(v), where v is
    the center-to-center vector.  Scaling |u| = d^2 gives alpha = r2 - r1 and
    beta = +-sqrt(d^2 - (r2 - r1)^2) for external tangents, alpha = -(r1 + r2)
    and beta = +-sqrt(d^2 - (r1 + r2)^2) for internal ones, and h = r1*d^2 - u.P1.
    Equal radii need no special case: alpha = 0 gives the two lines parallel to
    the center line.
    """
    kind = classify_pair(w1, w2)
    if kind is not PairClass.SEPARATE:
        raise NotSeparate(f"common tangents need separate circles, got {kind.value}")
    p1, p2 = w1.center, w2.center
    r1, r2 = w1.radius, w2.radius
    v = p2 - p1
    vp = Point(-v.y, v.x)
    d2 = v.norm2()

    def build(alpha: AlgNum, tangent_kind: TangentKind) -> tuple[TangencyWitness, TangencyWitness]:
        beta = _sqrt(d2 - alpha * alpha)
        out = []
        for b in (beta, -beta):
            u = v.scale(alpha) + vp.scale(b)
            line = Line(u.x, u.y, r1 * d2 - u.dot(p1))
            t1, t2 = perpendicular_foot(p1, line), perpendicular_foot(p2, line)
            out.append(TangencyWitness(line, t1, t2, tangent_kind))
        out.sort(key=lambda w: w.line.sort_key())
        return tuple(out)

    external = build(r2 - r1, TangentKind.EXTERNAL)
    internal = build(-(r1 + r2), TangentKind.INTERNAL)
    for w in external + internal:
        _check_witness(w, w1, w2)
    return CommonTangents(external, internal)


def _sqrt(x: AlgNum) -> AlgNum:
    if not x.is_rational():
        raise RadicandOverflow(f"cannot take sqrt of irrational {x}")
    return sqrt_rational(x.rational_value())


def _check_witness(w: TangencyWitness, w1: Circle, w2: Circle) -> None:
    s = side_of(w.line, w1.center) * side_of(w.line, w2.center)
    expected = 1 if w.kind is TangentKind.EXTERNAL else -1
    if not (is_tangent(w.line, w1) and is_tangent(w.line, w2) and s == expected):
        raise AssertionError(f"tangent construction failed for {w}")


def tangency_chord(w: TangencyWitness, other: TangencyWitness, which: int) -> Line:
    """Line through the tangent points of two witnesses on circle ``which`` (1 or 2)."""
    p = w.point1 if which == 1 else w.point2
    q = other.point1 if which == 1 else other.point2
    return line_through(p, q)
