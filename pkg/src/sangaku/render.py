"""SVG figures of forward configurations and general circle pairs.

World coordinates are written straight into the document with y negated, so a
coordinate read back from the markup is the exact value rounded by
:func:`~sangaku.exactnum.to_decimal`.  Lines are clipped to the view box
exactly before conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from . import geom
from .errors import InvalidInput
from .exactnum import compare, to_decimal
from .geom import Circle, Line, Point
from .hirotaka import CirclePair, ForwardConfig, quadruple_split


@dataclass(frozen=True)
class RenderOptions:
    canvas_size: int = 600
    margin: Fraction = Fraction(1, 20)
    decimal_digits: int = 8
    show_labels: bool = True
    stroke_width: float = 1.5

    def __post_init__(self):
        if not isinstance(self.canvas_size, int) or self.canvas_size <= 0:
            raise InvalidInput(f"canvas_size must be a positive integer, got {self.canvas_size}")
        margin = Fraction(self.margin)
        if not 0 <= margin < Fraction(1, 2):
            raise InvalidInput(f"margin must be in [0, 1/2), got {self.margin}")
        object.__setattr__(self, "margin", margin)
        if self.decimal_digits < 3:
            raise InvalidInput("decimal_digits must be >= 3")
        if not self.stroke_width > 0:
            raise InvalidInput("stroke_width must be positive")


_APPROX_DIGITS = 20


def _approx(x) -> Fraction:
    return Fraction(to_decimal(x, _APPROX_DIGITS))


class _Box:
    def __init__(self, xmin: Fraction, ymin: Fraction, xmax: Fraction, ymax: Fraction):
        self.xmin, self.ymin, self.xmax, self.ymax = xmin, ymin, xmax, ymax

    @classmethod
    def fit(cls, circles: Sequence[Circle], points: Sequence[Point], margin: Fraction) -> "_Box":
        xs, ys = [], []
        for c in circles:
            cx, cy, r = _approx(c.center.x), _approx(c.center.y), _approx(c.radius)
            xs += [cx - r, cx + r]
            ys += [cy - r, cy + r]
        for p in points:
            xs.append(_approx(p.x))
            ys.append(_approx(p.y))
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        extent = max(x1 - x0, y1 - y0) / (1 - 2 * margin)
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        return cls(cx - extent / 2, cy - extent / 2, cx + extent / 2, cy + extent / 2)

    @property
    def extent(self) -> Fraction:
        return self.xmax - self.xmin

    def clip(self, line: Line) -> Optional[tuple[Point, Point]]:
        """Segment of ``line`` inside the box, or None if it misses it."""
        hits: list[Point] = []
        if line.b:
            for x in (self.xmin, self.xmax):
                y = -(line.a * x + line.c) / line.b
                if compare(y, self.ymin) >= 0 and compare(y, self.ymax) <= 0:
                    hits.append(Point(x, y))
        if line.a:
            for y in (self.ymin, self.ymax):
                x = -(line.b * y + line.c) / line.a
                if compare(x, self.xmin) >= 0 and compare(x, self.xmax) <= 0:
                    hits.append(Point(x, y))
        uniq: list[Point] = []
        for p in hits:
            if p not in uniq:
                uniq.append(p)
        if len(uniq) < 2:
            return None
        uniq.sort(key=Point.sort_key)
        return uniq[0], uniq[-1]


class _Doc:
    def __init__(self, opts: RenderOptions, box: _Box):
        self.opts = opts
        self.box = box
        self.parts: list[str] = []

    def num(self, x) -> str:
        return to_decimal(x, self.opts.decimal_digits)

    def xy(self, p: Point) -> tuple[str, str]:
        return self.num(p.x), self.num(-p.y)

    def circle(self, ident: str, c: Circle) -> None:
        cx, cy = self.xy(c.center)
        self.parts.append(
            f'  <circle id="{ident}" cx="{cx}" cy="{cy}" r="{self.num(c.radius)}"/>'
        )

    def line(self, ident: str, cls: str, line: Line) -> None:
        seg = self.box.clip(line)
        if seg is None:
            return
        (x1, y1), (x2, y2) = self.xy(seg[0]), self.xy(seg[1])
        self.parts.append(
            f'  <line id="{ident}" class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>'
        )

    def marker(self, name: str, p: Point) -> None:
        x, y = self.xy(p)
        self.parts.append(f'  <path class="point" id="pt-{name}" d="M {x} {y} h 0"/>')

    def label(self, name: str, p: Point, centers: Sequence[Point]) -> None:
        px, py = float(_approx(p.x)), float(_approx(p.y))
        # push away from the nearest circle center
        cx, cy = min(
            ((float(_approx(c.x)), float(_approx(c.y))) for c in centers),
            key=lambda c: (c[0] - px) ** 2 + (c[1] - py) ** 2,
        )
        dx, dy = px - cx, py - cy
        n = math.hypot(dx, dy)
        if n == 0:
            dx, dy, n = 1.0, 1.0, math.sqrt(2.0)
        off = float(self.box.extent) * 0.03
        lx, ly = px + off * dx / n, py + off * dy / n
        self.parts.append(
            f'  <text x="{self.num(Fraction(lx))}" y="{self.num(Fraction(-ly))}">{escape(name)}</text>'
        )

    def render(self, groups: list[tuple[str, list[str]]]) -> str:
        b, o = self.box, self.opts
        view = " ".join(self.num(v) for v in (b.xmin, -b.ymax, b.extent, b.extent))
        sw = o.stroke_width
        font = self.num(b.extent * Fraction(7, 200))
        out = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{o.canvas_size}" height="{o.canvas_size}" viewBox="{view}">',
            "<style>",
            f"  circle, line {{ fill: none; stroke: #000000; stroke-width: {sw}px; "
            "vector-effect: non-scaling-stroke; }",
            "  line.chord { stroke: #1f5fbf; }",
            "  line.quadruple { stroke: #bf1f1f; stroke-dasharray: 4 3; }",
            f"  path.point {{ stroke: #000000; stroke-width: {3 * sw}px; "
            "stroke-linecap: round; vector-effect: non-scaling-stroke; }",
            f"  text {{ font-family: serif; font-size: {font}px; "
            "text-anchor: middle; dominant-baseline: middle; }",
            "</style>",
        ]
        for gid, body in groups:
            out.append(f'<g id="{gid}">')
            out.extend(body)
            out.append("</g>")
        out.append("</svg>")
        return "\n".join(out) + "\n"


def _collect(doc: _Doc, fn) -> list[str]:
    doc.parts = []
    fn()
    return doc.parts


def render_forward(cfg: ForwardConfig, opts: Optional[RenderOptions] = None) -> str:
    opts = opts or RenderOptions()
    circles = [cfg.circle_c, cfg.circle_c_prime]
    points = cfg.points()
    box = _Box.fit(circles, list(points.values()), opts.margin)
    doc = _Doc(opts, box)
    centers = [cfg.G, cfg.D]

    def draw_circles():
        doc.circle("c", cfg.circle_c)
        doc.circle("c_prime", cfg.circle_c_prime)

    def draw_lines():
        for name in ("axis_AC", "axis_AE", "tangent_IJ", "tangent_LM"):
            doc.line(name, "tangent", getattr(cfg, name))
        for name in ("line_EF", "line_HC"):
            doc.line(name, "chord", getattr(cfg, name))

    def draw_points():
        for name, p in points.items():
            doc.marker(name, p)

    def draw_labels():
        if opts.show_labels:
            for name, p in points.items():
                doc.label(name, p, centers)

    groups = [
        ("circles", _collect(doc, draw_circles)),
        ("lines", _collect(doc, draw_lines)),
        ("points", _collect(doc, draw_points)),
        ("labels", _collect(doc, draw_labels)),
    ]
    return doc.render(groups)


def pair_point_names(pair: CirclePair) -> dict[str, Point]:
    """O1, O2 for the centers; T1..T8 for tangent points, two per tangent."""
    names = {"O1": pair.circle1.center, "O2": pair.circle2.center}
    for i, w in enumerate(pair.tangents):
        names[f"T{2 * i + 1}"] = w.point1
        names[f"T{2 * i + 2}"] = w.point2
    return names


def render_pair(pair: CirclePair, opts: Optional[RenderOptions] = None) -> str:
    opts = opts or RenderOptions()
    circles = [pair.circle1, pair.circle2]
    points = pair_point_names(pair)
    box = _Box.fit(circles, list(points.values()), opts.margin)
    doc = _Doc(opts, box)
    centers = [pair.circle1.center, pair.circle2.center]
    split = quadruple_split(pair)

    def draw_circles():
        doc.circle("circle1", pair.circle1)
        doc.circle("circle2", pair.circle2)

    def draw_lines():
        for i, w in enumerate(pair.external):
            doc.line(f"external{i + 1}", "tangent", w.line)
        for i, w in enumerate(pair.internal):
            doc.line(f"internal{i + 1}", "tangent", w.line)
        if split is not None:
            for i, quad in enumerate(split):
                doc.line(f"quadruple{i + 1}", "quadruple", geom.line_through(quad[0], quad[1]))

    def draw_points():
        for name, p in points.items():
            doc.marker(name, p)

    def draw_labels():
        if opts.show_labels:
            for name, p in points.items():
                doc.label(name, p, centers)

    groups = [
        ("circles", _collect(doc, draw_circles)),
        ("lines", _collect(doc, draw_lines)),
        ("points", _collect(doc, draw_points)),
        ("labels", _collect(doc, draw_labels)),
    ]
    return doc.render(groups)
