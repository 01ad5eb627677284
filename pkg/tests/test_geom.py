from fractions import Fraction as Q

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from sangaku import geom
from sangaku.errors import CoincidentPoints, InvalidInput, NotSeparate, PointNotIncident, ZeroRatio
from sangaku.exactnum import sign, sqrt_rational
from sangaku.geom import (
    Circle,
    Line,
    PairClass,
    Point,
    TangentKind,
    classify_pair,
    collinear,
    common_tangents,
    homothety,
    is_parallel,
    is_perpendicular,
    is_tangent,
    line_circle_intersections,
    line_through,
    on_circle,
    reflect,
    second_intersection,
    side_of,
)

from oracles import sympy_number

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
positive = st.fractions(min_value=Q(1, 10), max_value=20, max_denominator=12)
points = st.builds(Point, small, small)


@st.composite
def lines(draw):
    a, b, c = draw(small), draw(small), draw(small)
    assume(a or b)
    return Line(a, b, c)


@st.composite
def separate_pairs(draw):
    r1, r2 = draw(positive), draw(positive)
    c1, c2 = draw(points), draw(points)
    d2 = (c2 - c1).norm2()
    assume(d2 > (r1 + r2) * (r1 + r2))
    return Circle(c1, r1), Circle(c2, r2)


# -- lines ---------------------------------------------------------------------


def test_line_through_canonical():
    l = line_through(Point(0, 2), Point(-1, 0))
    assert (l.a, l.b, l.c) == (1, Q(-1, 2), 1)
    assert l.contains(Point(0, 2)) and l.contains(Point(-1, 0))


def test_line_through_x_axis():
    l = line_through(Point(0, 0), Point(1, 0))
    assert (l.a, l.b, l.c) == (0, 1, 0)


def test_line_through_coincident():
    with pytest.raises(CoincidentPoints) as exc:
        line_through(Point(1, 1), Point(1, 1))
    assert exc.value.code == "COINCIDENT_POINTS"


def test_line_rejects_null_normal():
    with pytest.raises(InvalidInput):
        Line(0, 0, 1)


@given(points, points)
def test_line_through_contains_both(p, q):
    assume(p != q)
    l = line_through(p, q)
    assert l.contains(p) and l.contains(q)
    lead = l.a if l.a else l.b
    assert lead == 1


# -- predicates ----------------------------------------------------------------


def test_perpendicular_example():
    # y = 2x + 2 and x + 2y = 2: directions (1, 2) and (2, -1)
    assert is_perpendicular(Line(-2, 1, -2), Line(1, 2, -2))
    assert not is_parallel(Line(-2, 1, -2), Line(1, 2, -2))


def test_tangent_example():
    # (-3 - 4 + 12)^2 = 25 = 1 * (9 + 16)
    assert is_tangent(Line(3, -4, 12), Circle(Point(-1, 1), 1))


def test_collinear_example():
    assert collinear(Point(0, 1), Point(2, 0), Point(Q(-8, 5), Q(9, 5)))


def test_side_of():
    l = Line(0, 1, 0)
    assert side_of(l, Point(3, 2)) == 1
    assert side_of(l, Point(3, -2)) == -1
    assert side_of(l, Point(3, 0)) == 0


def test_circle_needs_positive_radius():
    with pytest.raises(InvalidInput):
        Circle(Point(0, 0), 0)


# -- transforms ----------------------------------------------------------------


def test_reflect_examples():
    assert reflect(Point(1, 2), Line(0, 1, 0)) == Point(1, -2)
    assert reflect(Point(3, 0), Line(1, 0, 0)) == Point(-3, 0)


@given(points, lines())
def test_reflect_is_involution(p, l):
    q = reflect(p, l)
    assert reflect(q, l) == p
    assert (q == p) == l.contains(p)


@given(points, lines())
def test_reflection_preserves_distance_to_line(p, l):
    q = reflect(p, l)
    assert l.value_at(q) == -l.value_at(p)


def test_homothety_examples():
    p = Point(Q(3, 7), -2)
    assert homothety(Point(5, 5), 1, p) == p
    assert homothety(Point(0, 0), 2, Point(1, 1)) == Point(2, 2)
    # X = (-4, 0), ratio 3/6 maps J to I in the (1, 2) configuration
    assert homothety(Point(-4, 0), Q(1, 2), Point(Q(4, 5), Q(18, 5))) == Point(Q(-8, 5), Q(9, 5))


def test_homothety_zero_ratio():
    with pytest.raises(ZeroRatio):
        homothety(Point(0, 0), 0, Point(1, 1))


# -- line / circle -------------------------------------------------------------


def test_intersections_examples():
    unit = Circle(Point(0, 0), 1)
    assert line_circle_intersections(Line(0, 1, 0), unit) == [Point(-1, 0), Point(1, 0)]
    assert line_circle_intersections(Line(1, 0, -1), unit) == [Point(1, 0)]
    assert line_circle_intersections(Line(1, 0, -2), unit) == []
    # y = 2x + 2 with center (2, 2), r = 2: 5x^2 - 4x = 0
    pts = line_circle_intersections(Line(-2, 1, -2), Circle(Point(2, 2), 2))
    assert pts == [Point(0, 2), Point(Q(4, 5), Q(18, 5))]


def test_intersections_with_radical():
    pts = line_circle_intersections(Line(0, 1, 0), Circle(Point(0, 0), sqrt_rational(2)))
    s2 = sqrt_rational(2)
    assert pts == [Point(-s2, 0), Point(s2, 0)]


def test_second_intersection_examples():
    assert second_intersection(Line(-2, 1, -2), Circle(Point(2, 2), 2), Point(0, 2)) == Point(Q(4, 5), Q(18, 5))
    assert second_intersection(Line(1, 2, -2), Circle(Point(-1, 1), 1), Point(0, 1)) == Point(Q(-8, 5), Q(9, 5))
    assert second_intersection(Line(1, 0, -1), Circle(Point(0, 0), 1), Point(1, 0)) == Point(1, 0)


def test_second_intersection_sympy_oracle():
    x, y = sp.symbols("x y")
    sols = sp.solve([x + 2 * y - 2, (x + 1) ** 2 + (y - 1) ** 2 - 1], [x, y])
    other = [s for s in sols if s != (0, 1)][0]
    got = second_intersection(Line(1, 2, -2), Circle(Point(-1, 1), 1), Point(0, 1))
    assert (sympy_number(got.x), sympy_number(got.y)) == other


def test_second_intersection_needs_incidence():
    with pytest.raises(PointNotIncident):
        second_intersection(Line(0, 1, 0), Circle(Point(0, 0), 1), Point(0, 1))


@given(lines(), points, positive)
def test_intersection_count_matches_distance(l, c, r):
    w = Circle(c, r)
    v = l.value_at(c)
    s = sign(v * v - r * r * (l.a * l.a + l.b * l.b))
    try:
        pts = line_circle_intersections(l, w)
    except Exception as exc:  # radicand needs more than sqrt of a rational
        assert getattr(exc, "code", None) == "RADICAND_OVERFLOW"
        return
    assert len(pts) == {1: 0, 0: 1, -1: 2}[s]
    for p in pts:
        assert on_circle(p, w) and l.contains(p)
    if len(pts) == 2:
        assert pts[0].sort_key() < pts[1].sort_key()
        assert second_intersection(l, w, pts[0]) == pts[1]
        assert second_intersection(l, w, pts[1]) == pts[0]


# -- circle pairs --------------------------------------------------------------


@pytest.mark.parametrize(
    "w1, w2, kind",
    [
        (Circle(Point(-1, 1), 1), Circle(Point(2, 2), 2), PairClass.SEPARATE),
        (Circle(Point(0, 0), 1), Circle(Point(2, 0), 1), PairClass.EXTERNALLY_TANGENT),
        (Circle(Point(0, 0), 1), Circle(Point(1, 0), 1), PairClass.OVERLAPPING),
        (Circle(Point(0, 0), 3), Circle(Point(2, 0), 1), PairClass.INTERNALLY_TANGENT),
        (Circle(Point(0, 0), 3), Circle(Point(1, 0), 1), PairClass.CONTAINED),
        (Circle(Point(0, 0), 1), Circle(Point(0, 0), 3), PairClass.CONCENTRIC_OR_EQUAL),
        (Circle(Point(0, 0), 1), Circle(Point(0, 0), 1), PairClass.CONCENTRIC_OR_EQUAL),
    ],
)
def test_classify_pair(w1, w2, kind):
    assert classify_pair(w1, w2) is kind


def _distance_oracle(line, circle, r):
    # |a x0 + b y0 + c| / sqrt(a^2 + b^2) == r, evaluated with sympy
    a, b, c = (sympy_number(v) for v in (line.a, line.b, line.c))
    x0, y0 = sympy_number(circle.center.x), sympy_number(circle.center.y)
    return sp.simplify(sp.Abs(a * x0 + b * y0 + c) / sp.sqrt(a**2 + b**2) - r) == 0


def test_common_tangents_forward_pair():
    w1, w2 = Circle(Point(-1, 1), 1), Circle(Point(2, 2), 2)
    ext, int_ = common_tangents(w1, w2)
    assert [w.line for w in ext] == [Line(0, 1, 0), Line(3, -4, 12)]
    assert [w.line for w in int_] == [Line(1, 0, 0), Line(4, 3, -4)]
    for w in ext + int_:
        assert _distance_oracle(w.line, w1, 1) and _distance_oracle(w.line, w2, 2)
    assert all(w.kind is TangentKind.EXTERNAL for w in ext)
    assert all(w.kind is TangentKind.INTERNAL for w in int_)


def test_common_tangents_equal_radii():
    w1, w2 = Circle(Point(0, 0), 1), Circle(Point(4, 0), 1)
    ext, int_ = common_tangents(w1, w2)
    assert [w.line for w in ext] == [Line(0, 1, -1), Line(0, 1, 1)]
    s3 = sqrt_rational(3)
    assert [w.line for w in int_] == [Line(1, -s3, -2), Line(1, s3, -2)]
    for w in ext + int_:
        assert _distance_oracle(w.line, w1, 1) and _distance_oracle(w.line, w2, 1)


@pytest.mark.parametrize(
    "w2",
    [Circle(Point(2, 0), 1), Circle(Point(1, 0), 1), Circle(Point(0, 0), 3)],
)
def test_common_tangents_not_separate(w2):
    with pytest.raises(NotSeparate) as exc:
        common_tangents(Circle(Point(0, 0), 1), w2)
    assert exc.value.code == "NOT_SEPARATE"


@given(separate_pairs())
def test_tangent_witness_invariants(pair):
    w1, w2 = pair
    ext, int_ = common_tangents(w1, w2)
    for w in ext + int_:
        assert is_tangent(w.line, w1) and is_tangent(w.line, w2)
        assert w.point1 == geom.perpendicular_foot(w1.center, w.line)
        assert w.point2 == geom.perpendicular_foot(w2.center, w.line)
        assert on_circle(w.point1, w1) and on_circle(w.point2, w2)
        product = side_of(w.line, w1.center) * side_of(w.line, w2.center)
        assert product == (1 if w.kind is TangentKind.EXTERNAL else -1)
    assert ext[0].line.sort_key() < ext[1].line.sort_key()
    assert int_[0].line.sort_key() < int_[1].line.sort_key()


@given(separate_pairs())
def test_external_chords_parallel_and_perpendicular_to_center_line(pair):
    w1, w2 = pair
    ext, _ = common_tangents(w1, w2)
    centers = line_through(w1.center, w2.center)
    chord1 = geom.tangency_chord(ext[0], ext[1], 1)
    chord2 = geom.tangency_chord(ext[0], ext[1], 2)
    assert is_perpendicular(chord1, centers) and is_perpendicular(chord2, centers)
    assert is_parallel(chord1, chord2)


@given(separate_pairs())
def test_reflection_across_center_line_swaps_tangents(pair):
    w1, w2 = pair
    ext, int_ = common_tangents(w1, w2)
    axis = line_through(w1.center, w2.center)
    for group in (ext, int_):
        assert geom.reflect_line(group[0].line, axis) == group[1].line
        assert geom.reflect_line(group[1].line, axis) == group[0].line
