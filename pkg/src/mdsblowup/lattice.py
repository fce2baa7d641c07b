"""Rational triangles in the plane, their lattice points and normal fans."""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, NamedTuple, Sequence, Tuple

from .errors import (DegenerateFan, DegenerateTriangle, InvalidInterval,
                     NonCanonicalShape, NotAWps, ParseError)
from .rational import as_fraction, ceil_div, floor_div, fmt

Point = Tuple[Fraction, Fraction]
LatticePoint = Tuple[int, int]


def rpoint(x, y) -> Point:
    return (as_fraction(x), as_fraction(y))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def primitive(vec) -> Tuple[int, int]:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    x, y = Fraction(vec[0]), Fraction(vec[1])
    if x == 0 and y == 0:
        raise DegenerateFan("zero vector has no primitive generator")
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    a, b = int(x * den), int(y * den)
    g = gcd(a, b)
    return (a // g, b // g)


class CanonicalShape(NamedTuple):
    """Horizontal base at height ``base_y`` from ``left`` to ``right``; apex above."""
    base_y: Fraction
    left: Fraction
    right: Fraction
    slope_left: Fraction
    slope_right: Fraction
    apex: Point


@dataclass(frozen=True)
class RationalTriangle:
    """Triangle with rational vertices, stored counterclockwise starting from
    the lexicographically smallest vertex."""

    v0: Point
    v1: Point
    v2: Point

    def __post_init__(self):
        pts = [rpoint(*v) for v in (self.v0, self.v1, self.v2)]
        s = _cross(*pts)
        if s == 0:
            shown = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pts)
            raise DegenerateTriangle(f"vertices {shown} are collinear")
        if s < 0:
            pts[1], pts[2] = pts[2], pts[1]
        k = pts.index(min(pts))
        pts = pts[k:] + pts[:k]
        object.__setattr__(self, "v0", pts[0])
        object.__setattr__(self, "v1", pts[1])
        object.__setattr__(self, "v2", pts[2])

    @property
    def vertices(self) -> Tuple[Point, Point, Point]:
        return (self.v0, self.v1, self.v2)

    def edges(self):
        """Edges opposite v0, v1, v2, each as a counterclockwise (start, end) pair."""
        v = self.vertices
        return [(v[(k + 1) % 3], v[(k + 2) % 3]) for k in range(3)]

    def halfplanes(self):
        """``[(u, c), ...]`` with the triangle equal to the set {<u, x> >= c}."""
        out = []
        for a, b in self.edges():
            u = (a[1] - b[1], b[0] - a[0])
            out.append((u, u[0] * a[0] + u[1] * a[1]))
        return out

    def scale(self, factor) -> "RationalTriangle":
        f = as_fraction(factor)
        return RationalTriangle(*[(f * x, f * y) for x, y in self.vertices])

    def translate(self, dx, dy) -> "RationalTriangle":
        dx, dy = as_fraction(dx), as_fraction(dy)
        return RationalTriangle(*[(x + dx, y + dy) for x, y in self.vertices])

    def canonical(self) -> CanonicalShape:
        """Base/slope description; raises NonCanonicalShape unless the triangle
        has a horizontal bottom edge and two positive-slope upper edges."""
        ys = sorted(v[1] for v in self.vertices)
        if not (ys[0] == ys[1] < ys[2]):
            raise NonCanonicalShape("triangle has no horizontal bottom edge")
        base = sorted(v for v in self.vertices if v[1] == ys[0])
        apex = next(v for v in self.vertices if v[1] == ys[2])
        (xl, y0), (xr, _) = base
        if apex[0] <= xr:
            raise NonCanonicalShape("right edge does not have positive slope")
        s_l = (apex[1] - y0) / (apex[0] - xl)
        s_r = (apex[1] - y0) / (apex[0] - xr)
        return CanonicalShape(y0, xl, xr, s_l, s_r, apex)

    def to_text(self) -> str:
        return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in self.vertices)

    def to_dict(self) -> dict:
        return {"vertices": [[fmt(x), fmt(y)] for x, y in self.vertices]}

    @classmethod
    def from_dict(cls, data: dict) -> "RationalTriangle":
        verts = data["vertices"]
        if len(verts) != 3:
            raise ParseError("a triangle needs exactly three vertices")
        return cls(*[rpoint(*v) for v in verts])

    @classmethod
    def parse(cls, text: str) -> "RationalTriangle":
        """Accepts ``"x,y x,y x,y"`` or the JSON ``{"vertices": ...}`` form."""
        text = text.strip()
        if text.startswith("{"):
            try:
                return cls.from_dict(json.loads(text))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ParseError(f"bad triangle JSON: {exc}") from exc
        parts = text.split()
        if len(parts) != 3:
            raise ParseError(f"expected three vertices, got {text!r}")
        pts = []
        for part in parts:
            coords = part.split(",")
            if len(coords) != 2:
                raise ParseError(f"bad vertex {part!r}")
            pts.append(rpoint(*coords))
        return cls(*pts)


def triangle_from_base(left, right, slope_left, slope_right) -> RationalTriangle:
    """Triangle over the base [left, right] of the x-axis with the given edge slopes."""
    a, b = as_fraction(left), as_fraction(right)
    s_l, s_r = as_fraction(slope_left), as_fraction(slope_right)
    if a >= b:
        raise InvalidInterval(f"empty base interval [{a}, {b}]")
    if not (0 < s_l < s_r):
        raise NonCanonicalShape("need 0 < left slope < right slope")
    x = (s_r * b - s_l * a) / (s_r - s_l)
    return RationalTriangle((a, Fraction(0)), (b, Fraction(0)), (x, s_l * (x - a)))


def area(T: RationalTriangle) -> Fraction:
    return abs(_cross(*T.vertices)) / 2


def _contains_point(T: RationalTriangle, p) -> bool:
    return all(u[0] * p[0] + u[1] * p[1] >= c for u, c in T.halfplanes())


def contains(T: RationalTriangle, obj) -> bool:
    """Closed containment of a point, or of every point of an iterable
    (a polygon given by its vertices)."""
    if len(obj) == 2 and not isinstance(obj[0], (tuple, list)):
        return _contains_point(T, obj)
    return all(_contains_point(T, p) for p in obj)


def lattice_points(T: RationalTriangle) -> List[LatticePoint]:
    """All integer points of the closed triangle, sorted lexicographically."""
    hps = T.halfplanes()
    ys = [v[1] for v in T.vertices]
    out = []
    for j in range(ceil_div(min(ys)), floor_div(max(ys)) + 1):
        lo, hi = None, None
        empty = False
        for (ux, uy), c in hps:
            rhs = c - uy * j
            if ux > 0:
                bound = rhs / ux
                lo = bound if lo is None else max(lo, bound)
            elif ux < 0:
                bound = rhs / ux
                hi = bound if hi is None else min(hi, bound)
            elif rhs > 0:
                empty = True
        if empty or lo is None or hi is None or lo > hi:
            continue
        out.extend((i, j) for i in range(ceil_div(lo), floor_div(hi) + 1))
    out.sort()
    return out


def normal_fan_rays(T: RationalTriangle, outward: bool = False) -> List[Tuple[int, int]]:
    """Primitive normals of the edges opposite v0, v1, v2.

    Inward normals by default; ``outward=True`` negates them, which is the
    other common convention and describes the same toric surface.
    """
    sign = -1 if outward else 1
    rays = []
    for u, _ in T.halfplanes():
        a, b = primitive(u)
        rays.append((sign * a, sign * b))
    return rays


def _det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def positive_relation(rays: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Primitive positive (a, b, c) with a*r1 + b*r2 + c*r3 = 0."""
    if len(rays) != 3:
        raise DegenerateFan("exactly three rays required")
    r1, r2, r3 = [tuple(int(x) for x in r) for r in rays]
    rel = [_det(r2, r3), _det(r3, r1), _det(r1, r2)]
    if any(d == 0 for d in rel):
        raise DegenerateFan("parallel rays")
    if not (all(d > 0 for d in rel) or all(d < 0 for d in rel)):
        raise DegenerateFan("rays do not positively span the plane")
    g = gcd(*rel)
    return tuple(abs(d) // g for d in rel)


def generates_lattice(rays: Sequence[Sequence[int]]) -> bool:
    from .linalg import IntMatrix, smith_normal_form

    cols = [list(r) for r in rays]
    M = IntMatrix.from_rows([[c[0] for c in cols], [c[1] for c in cols]])
    return smith_normal_form(M).divisors == (1, 1)


def wps_weights(rays: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Weights (a, b, c) of P(a, b, c) for a complete fan with three rays.

    Raises NotAWps when the rays fail to generate Z^2 (the surface is then
    a quotient of a weighted projective plane); the relation is attached
    as ``exc.weights``.
    """
    rel = positive_relation(rays)
    if not generates_lattice(rays):
        exc = NotAWps(f"rays {list(rays)} do not generate Z^2")
        exc.weights = rel
        raise exc
    return rel


def parallel_triangle(delta: RationalTriangle, a, b) -> RationalTriangle:
    """Triangle with base [a, b] on the x-axis and upper edges parallel to delta's."""
    shape = delta.canonical()
    return triangle_from_base(a, b, shape.slope_left, shape.slope_right)


def relation_weights(delta: RationalTriangle):
    """Positive rational lambda_k with sum lambda_k * u_k = 0 for the edge normals."""
    us = [u for u, _ in delta.halfplanes()]
    return [_det(us[1], us[2]), _det(us[2], us[0]), _det(us[0], us[1])]


def homothety_ratio(points: Iterable, delta: RationalTriangle) -> Fraction:
    """Size of the smallest triangle with sides parallel to delta containing
    ``points``, measured in units of delta (0 for a single point)."""
    pts = list(points)
    hps = delta.halfplanes()
    lam = relation_weights(delta)
    mins = [min(u[0] * p[0] + u[1] * p[1] for p in pts) for u, _ in hps]
    own = sum(l * c for l, (_, c) in zip(lam, hps))
    return Fraction(sum(l * c for l, c in zip(lam, mins))) / own
