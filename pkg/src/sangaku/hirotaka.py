"""The HI-028 configuration: forward construction, claim checks and the converse.

Forward frame: A at the origin, the two perpendicular lines are the axes, the
circle c' (radius r') sits in the first quadrant touching the axes at C and E,
the circle c (radius r) in the second quadrant touching them at F and H.

Reverse frame: a general separate pair with centers (0, 0) and (d, 0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import geom
from .errors import EqualRadiiDegenerate, NonpositiveInput, NonpositiveRadius, NotSeparate
from .exactnum import AlgNum, as_algnum, sign, sqrt_rational
from .geom import Circle, Line, Point, TangencyWitness, TangentKind

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class ForwardConfig:
    r: Fraction
    r_prime: Fraction
    circle_c: Circle
    circle_c_prime: Circle
    A: Point
    C: Point
    D: Point
    E: Point
    F: Point
    G: Point
    H: Point
    I: Point
    J: Point
    K: Point
    L: Point
    M: Point
    X: Point
    axis_AC: Line
    axis_AE: Line
    line_EF: Line
    line_HC: Line
    tangent_IJ: Line
    tangent_LM: Line

    POINT_NAMES = ("A", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "X")
    LINE_NAMES = ("axis_AC", "axis_AE", "line_EF", "line_HC", "tangent_IJ", "tangent_LM")

    def points(self) -> dict[str, Point]:
        return {name: getattr(self, name) for name in self.POINT_NAMES}

    def lines(self) -> dict[str, Line]:
        return {name: getattr(self, name) for name in self.LINE_NAMES}


def construct_forward(r: RationalLike, r_prime: RationalLike) -> ForwardConfig:
    r, r_prime = Fraction(r), Fraction(r_prime)
    if r <= 0 or r_prime <= 0:
        raise NonpositiveRadius(f"radii must be positive, got r={r}, r'={r_prime}")
    if r == r_prime:
        # the circles would touch at (0, r)
        raise EqualRadiiDegenerate(f"r = r' = {r} makes the circles tangent")
    A = Point(0, 0)
    C, E = Point(r_prime, 0), Point(0, r_prime)
    F, H = Point(-r, 0), Point(0, r)
    G, D = Point(-r, r), Point(r_prime, r_prime)
    c = Circle(G, r)
    c_prime = Circle(D, r_prime)
    line_EF = geom.line_through(E, F)
    line_HC = geom.line_through(H, C)
    J = geom.second_intersection(line_EF, c_prime, E)
    L = geom.second_intersection(line_EF, c, F)
    I = geom.second_intersection(line_HC, c, H)
    M = geom.second_intersection(line_HC, c_prime, C)
    K = geom.intersect_lines(line_EF, line_HC)
    axis_AC = geom.line_through(A, C)
    axis_AE = geom.line_through(A, E)
    tangent_IJ = geom.line_through(I, J)
    tangent_LM = geom.line_through(L, M)
    X = geom.intersect_lines(axis_AC, tangent_IJ)
    return ForwardConfig(
        r=r, r_prime=r_prime, circle_c=c, circle_c_prime=c_prime,
        A=A, C=C, D=D, E=E, F=F, G=G, H=H, I=I, J=J, K=K, L=L, M=M, X=X,
        axis_AC=axis_AC, axis_AE=axis_AE, line_EF=line_EF, line_HC=line_HC,
        tangent_IJ=tangent_IJ, tangent_LM=tangent_LM,
    )


CLAIM_NAMES = (
    "parallel_IF_JC",
    "perpendicular_IC_FJ",
    "angle_at_K_right",
    "inscribed_angles_45",
    "ij_is_external_tangent",
    "lm_is_internal_tangent",
    "lm_perpendicular_ij",
    "quadruple_HCIM_collinear",
    "quadruple_EFJL_collinear",
    "quadruple_lines_perpendicular",
)


@dataclass(frozen=True)
class ClaimReport:
    flags: dict[str, bool]
    witnesses: dict[str, object]

    @property
    def all_true(self) -> bool:
        return all(self.flags.values())

    def __getattr__(self, name):
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)


def _is_45(vertex: Point, p: Point, q: Point) -> bool:
    u, v = p - vertex, q - vertex
    dot, cross = u.dot(v), u.cross(v)
    return bool(dot) and bool(cross) and dot * dot == cross * cross and sign(dot) > 0


def _tangent_at(line: Line, circle: Circle, point: Point) -> bool:
    return geom.is_tangent(line, circle) and geom.perpendicular_foot(circle.center, line) == point


def verify_forward(cfg: ForwardConfig) -> ClaimReport:
    c, cp = cfg.circle_c, cfg.circle_c_prime
    G, D = c.center, cp.center

    def tangent_kind(line: Line, p_c: Point, p_cp: Point, want: int) -> bool:
        return (
            _tangent_at(line, c, p_c)
            and _tangent_at(line, cp, p_cp)
            and geom.side_of(line, G) * geom.side_of(line, D) == want
        )

    flags = {
        "parallel_IF_JC": sign((cfg.F - cfg.I).cross(cfg.C - cfg.J)) == 0,
        "perpendicular_IC_FJ": geom.is_perpendicular(
            geom.line_through(cfg.I, cfg.C), geom.line_through(cfg.F, cfg.J)
        ),
        "angle_at_K_right": (cfg.E - cfg.K).dot(cfg.H - cfg.K) == 0,
        "inscribed_angles_45": _is_45(cfg.J, cfg.K, cfg.C) and _is_45(cfg.I, cfg.C, cfg.F),
        "ij_is_external_tangent": tangent_kind(cfg.tangent_IJ, cfg.I, cfg.J, 1),
        "lm_is_internal_tangent": tangent_kind(cfg.tangent_LM, cfg.L, cfg.M, -1),
        "lm_perpendicular_ij": geom.is_perpendicular(cfg.tangent_LM, cfg.tangent_IJ),
        "quadruple_HCIM_collinear": all(
            cfg.line_HC.contains(p) for p in (cfg.H, cfg.C, cfg.I, cfg.M)
        ),
        "quadruple_EFJL_collinear": all(
            cfg.line_EF.contains(p) for p in (cfg.E, cfg.F, cfg.J, cfg.L)
        ),
        "quadruple_lines_perpendicular": geom.is_perpendicular(cfg.line_HC, cfg.line_EF),
    }
    witnesses: dict[str, object] = dict(cfg.points())
    witnesses.update(cfg.lines())
    return ClaimReport(flags, witnesses)


# -- general pairs -------------------------------------------------------------


@dataclass(frozen=True)
class CirclePair:
    r1: Fraction
    r2: Fraction
    d: AlgNum
    circle1: Circle
    circle2: Circle
    external: tuple[TangencyWitness, TangencyWitness]
    internal: tuple[TangencyWitness, TangencyWitness]

    @property
    def d_squared(self) -> AlgNum:
        return self.d * self.d

    @property
    def tangents(self) -> tuple[TangencyWitness, ...]:
        return self.external + self.internal

    @property
    def tangent_points(self) -> list[tuple[Point, Point]]:
        return [(w.point1, w.point2) for w in self.tangents]


def make_pair(
    r1: RationalLike,
    r2: RationalLike,
    d: Optional[Union[RationalLike, AlgNum]] = None,
    *,
    d_squared: Optional[RationalLike] = None,
) -> CirclePair:
    """Canonical pair: circle1 centered at the origin, circle2 at (d, 0).

    Give either ``d`` or ``d_squared`` (for irrational center distances).
    """
    r1, r2 = Fraction(r1), Fraction(r2)
    if (d is None) == (d_squared is None):
        raise NonpositiveInput("give exactly one of d and d_squared")
    if d_squared is not None:
        d_squared = Fraction(d_squared)
        if d_squared <= 0:
            raise NonpositiveInput(f"d^2 must be positive, got {d_squared}")
        d = sqrt_rational(d_squared)
    d = as_algnum(d)
    if r1 <= 0 or r2 <= 0 or sign(d) <= 0:
        raise NonpositiveInput(f"need r1, r2, d > 0, got {r1}, {r2}, {d}")
    w1, w2 = Circle(Point(0, 0), r1), Circle(Point(d, 0), r2)
    kind = geom.classify_pair(w1, w2)
    if kind is not geom.PairClass.SEPARATE:
        raise NotSeparate(f"(r1, r2, d) = ({r1}, {r2}, {d}) is {kind.value}")
    ext, int_ = geom.common_tangents(w1, w2)
    return CirclePair(r1, r2, d, w1, w2, ext, int_)


def parallel_chords_check(pair: CirclePair) -> bool:
    e1, e2 = pair.external
    chord1 = geom.tangency_chord(e1, e2, 1)
    chord2 = geom.tangency_chord(e1, e2, 2)
    return geom.is_parallel(chord1, chord2)


def quadruple_split(pair: CirclePair) -> Optional[tuple[tuple[Point, ...], tuple[Point, ...]]]:
    """Split the 8 tangent points into two collinear quadruples, if possible.

    Each quadruple takes one tangent point from every tangent line; the first
    line's choice is fixed to break the swap symmetry, leaving 8 groupings.
    """
    pts = pair.tangent_points
    for choice in itertools.product((0, 1), repeat=len(pts) - 1):
        picks = (0,) + choice
        q1 = tuple(pair_pts[i] for pair_pts, i in zip(pts, picks))
        q2 = tuple(pair_pts[1 - i] for pair_pts, i in zip(pts, picks))
        if geom.all_collinear(q1) and geom.all_collinear(q2):
            return q1, q2
    return None


def collinearity_check(pair: CirclePair) -> bool:
    return quadruple_split(pair) is not None


def perpendicularity_check(pair: CirclePair) -> bool:
    """Each internal tangent is perpendicular to exactly one external tangent,
    and the two internals pick different externals."""
    matches = []
    for w in pair.internal:
        hits = [i for i, e in enumerate(pair.external) if geom.is_perpendicular(w.line, e.line)]
        if len(hits) != 1:
            return False
        matches.append(hits[0])
    return len(set(matches)) == len(matches)


def criterion_check(
    r1: RationalLike,
    r2: RationalLike,
    d: Optional[Union[RationalLike, AlgNum]] = None,
    *,
    d_squared: Optional[Union[RationalLike, AlgNum]] = None,
) -> bool:
    """True iff d^2 = 2 (r1^2 + r2^2)."""
    if (d is None) == (d_squared is None):
        raise NonpositiveInput("give exactly one of d and d_squared")
    r1, r2 = as_algnum(r1), as_algnum(r2)
    if sign(r1) <= 0 or sign(r2) <= 0:
        raise NonpositiveInput("radii must be positive")
    if d_squared is None:
        d = as_algnum(d)
        if sign(d) <= 0:
            raise NonpositiveInput("d must be positive")
        d_squared = d * d
    return as_algnum(d_squared) == 2 * (r1 * r1 + r2 * r2)


@dataclass(frozen=True)
class EquivalenceReport:
    collinear_quadruples: bool
    tangent_pairs_perpendicular: bool
    criterion_d2_eq_2r2: bool
    lines_perpendicular_when_collinear: Optional[bool]
    quadruple_lines: Optional[tuple[Line, Line]] = field(default=None, compare=False)

    @property
    def consistent(self) -> bool:
        return self.collinear_quadruples == self.tangent_pairs_perpendicular == self.criterion_d2_eq_2r2

    def flags(self) -> dict[str, Optional[bool]]:
        return {
            "collinear_quadruples": self.collinear_quadruples,
            "tangent_pairs_perpendicular": self.tangent_pairs_perpendicular,
            "criterion_d2_eq_2r2": self.criterion_d2_eq_2r2,
            "lines_perpendicular_when_collinear": self.lines_perpendicular_when_collinear,
            "consistent": self.consistent,
        }


def equivalence_check(pair: CirclePair) -> EquivalenceReport:
    split = quadruple_split(pair)
    lines = None
    lines_perp = None
    if split is not None:
        lines = tuple(geom.line_through(q[0], q[1]) for q in split)
        lines_perp = geom.is_perpendicular(*lines)
    return EquivalenceReport(
        collinear_quadruples=split is not None,
        tangent_pairs_perpendicular=perpendicularity_check(pair),
        criterion_d2_eq_2r2=criterion_check(pair.r1, pair.r2, d_squared=pair.d_squared),
        lines_perpendicular_when_collinear=lines_perp,
        quadruple_lines=lines,
    )


# -- deterministic sampling ----------------------------------------------------


class Lcg64:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64;
    each draw returns the high 32 bits of the new state.  The initial state is
    the seed reduced mod 2**64.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u32(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return self.state >> 32

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] as lo + (draw mod (hi - lo + 1))."""
        return lo + self.next_u32() % (hi - lo + 1)

    def rational(self, bound: int = 1000) -> Fraction:
        """Positive rational p/q with p, q drawn in [1, bound] (p first)."""
        p = self.randint(1, bound)
        q = self.randint(1, bound)
        return Fraction(p, q)


SAMPLE_BOUND = 1000
PERTURBATION = Fraction(1, 97)
PELL_SEED = (10, 7)
# base solutions are cycled; later ones grow roughly 5.8x per step
PELL_DEPTH = 6


def pell_base_solutions(count: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """(1, r2, d) from (d, r2) -> (3d + 4 r2, 2d + 3 r2) starting at (10, 7)."""
    out = []
    d, r2 = PELL_SEED
    for _ in range(count):
        out.append((Fraction(1), Fraction(r2), Fraction(d)))
        d, r2 = 3 * d + 4 * r2, 2 * d + 3 * r2
    return out


def criterion_solutions(seed: int, n: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """n distinct triples with d^2 = 2 (r1^2 + r2^2).

    Sample 0 is the base solution (1, 7, 10) unscaled; sample i > 0 takes base
    solution i mod PELL_DEPTH and scales it by a drawn rational.
    """
    if n < 1:
        raise NonpositiveInput("n must be >= 1")
    bases = pell_base_solutions(PELL_DEPTH)
    rng = Lcg64(seed)
    seen: set[tuple[Fraction, Fraction, Fraction]] = set()
    out = []
    i = 0
    while len(out) < n:
        r1, r2, d = bases[i % PELL_DEPTH]
        s = Fraction(1) if i == 0 else rng.rational(SAMPLE_BOUND)
        triple = (r1 * s, r2 * s, d * s)
        i += 1
        if triple in seen:
            continue
        seen.add(triple)
        out.append(triple)
    return out


def perturb(triple: tuple[Fraction, Fraction, Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """Move d off the criterion by PERTURBATION (or a multiple, should it land on it)."""
    r1, r2, d = triple
    k = 1
    while criterion_check(r1, r2, d + k * PERTURBATION):
        k += 1
    return r1, r2, d + k * PERTURBATION


def sample_forward_radii(rng: Lcg64, bound: int = SAMPLE_BOUND) -> tuple[Fraction, Fraction]:
    """Draw (r, r') with r != r'; equal draws are redrawn."""
    while True:
        r = rng.rational(bound)
        r_prime = rng.rational(bound)
        if r != r_prime:
            return r, r_prime


def sample_separate_pair(rng: Lcg64, bound: int = SAMPLE_BOUND) -> tuple[Fraction, Fraction, Fraction]:
    """(r1, r2, d) with d > r1 + r2; every fourth draw forces r1 = r2."""
    r1 = rng.rational(bound)
    r2 = r1 if rng.randint(0, 3) == 0 else rng.rational(bound)
    d = r1 + r2 + rng.rational(bound)
    return r1, r2, d


@dataclass
class SweepSummary:
    mode: str
    seed: int
    count: int
    passes: int = 0
    failures: int = 0
    first_counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "count": self.count,
            "passes": self.passes,
            "failures": self.failures,
            "first_counterexample": self.first_counterexample,
        }


def sweep(mode: str, seed: int, count: int) -> SweepSummary:
    """Run ``count`` exact checks.

    forward: draws (r, r') and requires every claim flag.  reverse: walks
    criterion_solutions(seed, count); even-indexed samples are used as-is and
    must be all-true, odd-indexed ones are perturbed and must be all-false; each
    report must be consistent.
    """
    if count < 1:
        raise NonpositiveInput("count must be >= 1")
    summary = SweepSummary(mode, seed, count)

    def record(ok: bool, sample: dict) -> None:
        if ok:
            summary.passes += 1
        else:
            summary.failures += 1
            if summary.first_counterexample is None:
                summary.first_counterexample = sample

    if mode == "forward":
        rng = Lcg64(seed)
        for i in range(count):
            r, r_prime = sample_forward_radii(rng)
            report = verify_forward(construct_forward(r, r_prime))
            failed = [k for k, v in report.flags.items() if not v]
            record(not failed, {"index": i, "r": r, "r_prime": r_prime, "failed": failed})
    elif mode == "reverse":
        for i, triple in enumerate(criterion_solutions(seed, count)):
            expect = i % 2 == 0
            r1, r2, d = triple if expect else perturb(triple)
            rep = equivalence_check(make_pair(r1, r2, d))
            ok = rep.consistent and rep.criterion_d2_eq_2r2 == expect
            if expect:
                ok = ok and rep.lines_perpendicular_when_collinear is True
            record(ok, {"index": i, "r1": r1, "r2": r2, "d": d, "flags": rep.flags()})
    else:
        raise ValueError(f"unknown sweep mode {mode!r}")
    return summary
