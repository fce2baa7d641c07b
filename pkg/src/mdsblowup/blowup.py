"""Numerical classes on the blowup of X_Delta at t0 = (1, 1).

A class is h * pi^*H_Delta - e * E with rational h, e. The intersection
form uses H.H = 2 Area(Delta), E.E = -1, H.E = 0; torsion in the class
group is ignored.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInterval, ParseError, WrongShape, ZeroPolynomial
from .lattice import RationalTriangle, area, homothety_ratio
from .laurent import LaurentPoly
from .rational import as_fraction, fmt


@dataclass(frozen=True)
class NumericClass:
    h: Fraction
    e: Fraction

    def __post_init__(self):
        object.__setattr__(self, "h", as_fraction(self.h))
        object.__setattr__(self, "e", as_fraction(self.e))

    def __add__(self, other):
        return NumericClass(self.h + other.h, self.e + other.e)

    def __rmul__(self, k):
        k = as_fraction(k)
        return NumericClass(k * self.h, k * self.e)

    def to_dict(self) -> dict:
        return {"h": fmt(self.h), "e": fmt(self.e)}

    @classmethod
    def from_dict(cls, data: dict) -> "NumericClass":
        return cls(as_fraction(data["h"]), as_fraction(data["e"]))

    @classmethod
    def parse(cls, text: str) -> "NumericClass":
        parts = text.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 'h,e', got {text!r}")
        return cls(as_fraction(parts[0]), as_fraction(parts[1]))


EXCEPTIONAL = NumericClass(0, -1)


@dataclass(frozen=True)
class DegreeInterval:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))
        if self.a > self.b:
            raise InvalidInterval(f"empty degree interval [{self.a}, {self.b}]")

    def __add__(self, other):
        return DegreeInterval(self.a + other.a, self.b + other.b)

    def within(self, lo, hi) -> bool:
        return as_fraction(lo) <= self.a and self.b <= as_fraction(hi)

    def to_dict(self) -> dict:
        return {"a": fmt(self.a), "b": fmt(self.b)}

    @classmethod
    def from_dict(cls, data: dict) -> "DegreeInterval":
        return cls(as_fraction(data["a"]), as_fraction(data["b"]))


def class_of(f: LaurentPoly, delta: RationalTriangle) -> NumericClass:
    """Class of the strict transform of V(f): the smallest triangle parallel to
    delta around the Newton polygon gives h, the multiplicity at t0 gives e."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial defines no curve")
    return NumericClass(homothety_ratio(f.newton_polygon(), delta), f.multiplicity_at_t0())


def class_of_triangle(tri: RationalTriangle, delta: RationalTriangle, order) -> NumericClass:
    """Class pi^*H' - order*E where H' corresponds to ``tri`` (parallel to delta)."""
    return NumericClass(homothety_ratio(tri.vertices, delta), order)


def intersect(c1: NumericClass, c2: NumericClass, delta: RationalTriangle) -> Fraction:
    return c1.h * c2.h * 2 * area(delta) - c1.e * c2.e


def degree_interval(f: LaurentPoly, delta: RationalTriangle) -> DegreeInterval:
    """Base [a, b] on the x-axis of the smallest triangle with delta's slopes
    containing the support of f."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial lies in no degree")
    shape = delta.canonical()
    inv_l, inv_r = 1 / shape.slope_left, 1 / shape.slope_right
    supp = f.newton_polygon()  # linear extremes sit at hull vertices
    return DegreeInterval(min(i - j * inv_l for i, j in supp),
                          max(i - j * inv_r for i, j in supp))


def vertical_segment_height(delta: RationalTriangle) -> Fraction:
    """Length of the vertical segment from the lowest vertex (rightmost on ties)
    up to the opposite edge."""
    low = min(delta.vertices, key=lambda v: (v[1], -v[0]))
    a, b = [v for v in delta.vertices if v != low]
    if a[0] == b[0] or not (min(a[0], b[0]) < low[0] < max(a[0], b[0])):
        raise WrongShape("vertical line through the lower vertex misses the opposite edge")
    y = a[1] + (b[1] - a[1]) * (low[0] - a[0]) / (b[0] - a[0])
    if y <= low[1]:
        raise WrongShape("opposite edge lies below the lower vertex")
    return y - low[1]


@dataclass(frozen=True)
class NegativityReport:
    curve_class: NumericClass
    self_intersection: Fraction
    negative: bool

    @property
    def zero_curve(self) -> bool:
        return self.self_intersection == 0

    def to_dict(self) -> dict:
        return {"class": self.curve_class.to_dict(),
                "self_intersection": fmt(self.self_intersection),
                "negative": self.negative,
                "zero_curve": self.zero_curve}

    @classmethod
    def from_dict(cls, data: dict) -> "NegativityReport":
        return cls(NumericClass.from_dict(data["class"]),
                   as_fraction(data["self_intersection"]), bool(data["negative"]))


def is_negative_curve(f: LaurentPoly, delta: RationalTriangle) -> NegativityReport:
    c = class_of(f, delta)
    cc = intersect(c, c, delta)
    return NegativityReport(c, cc, cc <= 0)
