"""p-adic Newton polygons of sparse polynomials.

Points are ``(a_i, ord_p c_i)``.  The lower hull is built by a monotone-chain
sweep with exact integer cross products; every slope is a ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core.arith import ord_p
from .core.sparse import SparsePoly


@dataclass(frozen=True)
class Edge:
    left: tuple[int, int]
    right: tuple[int, int]
    slope: Fraction
    interior_points: tuple[tuple[int, int], ...] = ()

    @property
    def horizontal_length(self) -> int:
        return self.right[0] - self.left[0]

    @property
    def inner_normal_v(self) -> Fraction:
        """Root valuation attached to this edge (the negated slope)."""
        return -self.slope

    @property
    def has_interior_point(self) -> bool:
        return bool(self.interior_points)


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    points: tuple[tuple[int, int], ...]
    lower_edges: tuple[Edge, ...] = field(default_factory=tuple)

    def census(self) -> list[tuple[Fraction, int]]:
        return [(e.inner_normal_v, e.horizontal_length) for e in self.lower_edges]

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "points": [[str(a), str(v)] for a, v in self.points],
            "edges": [
                {
                    "left": [str(x) for x in e.left],
                    "right": [str(x) for x in e.right],
                    "slope": _frac_text(e.slope),
                    "horizontal_length": e.horizontal_length,
                    "inner_normal": [_frac_text(e.inner_normal_v), "1"],
                    "interior_points": [[str(x) for x in q] for q in e.interior_points],
                }
                for e in self.lower_edges
            ],
            "census": [[_frac_text(v), m] for v, m in self.census()],
        }


def _frac_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def build_polygon(f: SparsePoly, p: int) -> NewtonPolygon:
    """Lower hull of the valuation points of ``f``, edges left to right."""
    if f.is_zero:
        raise ValueError("Newton polygon of the zero polynomial")
    pts = tuple((a, ord_p(c, p)) for a, c in f.terms)
    hull: list[tuple[int, int]] = []
    for q in pts:
        # Pop while the turn is not strictly counter-clockwise, so collinear
        # points drop out of the vertex list and become edge interiors.
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], q) <= 0:
            hull.pop()
        hull.append(q)
    edges = []
    for left, right in zip(hull, hull[1:]):
        slope = Fraction(right[1] - left[1], right[0] - left[0])
        inner = tuple(q for q in pts if left[0] < q[0] < right[0] and _cross(left, right, q) == 0)
        edges.append(Edge(left, right, slope, inner))
    return NewtonPolygon(p, pts, tuple(edges))


def valuation_census(f: SparsePoly, p: int) -> list[tuple[Fraction, int]]:
    """(valuation, count) of the nonzero roots of f in C_p, one per lower edge."""
    if len(f) < 2:
        return []
    return build_polygon(f, p).census()


@dataclass(frozen=True)
class LowerBinomial:
    poly: SparsePoly
    edge: Edge


def lower_binomials(f: SparsePoly, p: int) -> tuple[list[LowerBinomial], list[Edge]]:
    """Binomials from lower edges without interior support points.

    Returns ``(binomials, flagged_edges)``; the second list holds the edges
    that do contain an interior point and therefore yield no binomial.
    """
    if len(f) < 2:
        raise ValueError("lower binomials need at least two terms")
    poly = build_polygon(f, p)
    coeffs = f.as_dict()
    good, flagged = [], []
    for e in poly.lower_edges:
        if e.has_interior_point:
            flagged.append(e)
            continue
        i, j = e.left[0], e.right[0]
        good.append(LowerBinomial(SparsePoly(((i, coeffs[i]), (j, coeffs[j]))), e))
    return good, flagged


def is_collinear(f: SparsePoly, p: int) -> bool:
    if len(f) != 3:
        raise ValueError(f"collinearity test needs exactly 3 terms, got {len(f)}")
    a, b, c = ((e, ord_p(co, p)) for e, co in f.terms)
    return _cross(a, b, c) == 0


def polygon_svg(poly: NewtonPolygon, scale: int = 40) -> str:
    """A small standalone SVG of the points and lower hull."""
    xs = [a for a, _ in poly.points]
    ys = [v for _, v in poly.points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad = 20
    width = (x1 - x0) * scale + 2 * pad
    height = (y1 - y0) * scale + 2 * pad

    def to_px(q):
        return (pad + (q[0] - x0) * scale, height - pad - (q[1] - y0) * scale)

    dots = "".join(
        '<circle cx="%d" cy="%d" r="3" fill="black"/>' % to_px(q) for q in poly.points
    )
    if poly.lower_edges:
        verts = [poly.lower_edges[0].left] + [e.right for e in poly.lower_edges]
        path = " ".join("%d,%d" % to_px(q) for q in verts)
        hull = f'<polyline points="{path}" fill="none" stroke="blue" stroke-width="2"/>'
    else:
        hull = ""
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
            f"{hull}{dots}</svg>")
