"""Section spaces as kernels of integer matrices, Huneke-condition
membership, the characteristic-p sections zeta_p, and the comparison
triangle used to rule out m in HC over Q."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

from .blowup import DegreeInterval, degree_interval
from .curves import fgh, xi
from .errors import InputError, NoValidJ, PostVerificationFailed, ValidationFailed
from .fields import QQ, FieldSpec, is_prime
from .lattice import (Point, RationalTriangle, area, contains, lattice_points,
                      parallel_triangle, rpoint, triangle_from_base)
from .laurent import LaurentPoly
from .linalg import IntMatrix, SnfResult, good_prime, kernel, rank, smith_normal_form
from .rational import as_fraction, fmt

__all__ = [
    "SectionProblem", "constraint_matrix", "kernel", "smith_normal_form", "good_prime",
    "section_space", "HcReason", "HcReport", "hc_member", "main2_triangle",
    "ZetaResult", "find_split_index", "build_zeta_p", "zeta_prime_scan",
    "DeltaBarReport", "delta_bar_validator",
]


def gbinom(n: int, k: int) -> int:
    """Binomial coefficient valid for negative n (coefficient of u^k in (1+u)^n)."""
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


@dataclass(frozen=True)
class SectionProblem:
    """Polynomials with Newton polygon in ``triangle`` vanishing to ``order`` at t0;
    ``vertex`` marks the torus-fixed point whose monomial must survive."""

    triangle: RationalTriangle
    order: int
    vertex: Point

    def __post_init__(self):
        if self.order < 0:
            raise InputError("order must be nonnegative")
        v = rpoint(*self.vertex)
        if v not in self.triangle.vertices:
            raise InputError(f"{v} is not a vertex of the triangle")
        object.__setattr__(self, "vertex", v)

    def points(self):
        return lattice_points(self.triangle)

    def rows(self):
        return [(a, d - a) for d in range(self.order) for a in range(d + 1)]


def constraint_matrix(problem: SectionProblem) -> IntMatrix:
    """Row (a, b), a + b < order, column (i, j): C(i, a) * C(j, b)."""
    pts = problem.points()
    rows = [[gbinom(i, a) * gbinom(j, b) for i, j in pts] for a, b in problem.rows()]
    return IntMatrix.from_rows(rows, len(pts))


def section_space(problem: SectionProblem, field: FieldSpec = QQ) -> List[LaurentPoly]:
    """Basis of the section space (canonical kernel basis turned into polynomials)."""
    pts = problem.points()
    basis = kernel(constraint_matrix(problem), field)
    return [LaurentPoly(dict(zip(pts, v)), field) for v in basis]


class HcReason(str, Enum):
    NON_INTEGRAL_VERTEX = "NonIntegralVertex"
    VERTEX_COORDINATE_FORCED_ZERO = "VertexCoordinateForcedZero"
    WITNESS_FOUND = "WitnessFound"


@dataclass
class HcReport:
    l: int
    field: FieldSpec
    member: bool
    reason: HcReason
    witness: Optional[LaurentPoly] = None
    kernel_dim: Optional[int] = None
    num_points: Optional[int] = None
    order: Optional[int] = None

    def __post_init__(self):
        assert self.member == (self.reason == HcReason.WITNESS_FOUND)
        assert self.member == (self.witness is not None)

    def to_dict(self) -> dict:
        return {"l": self.l, "field": str(self.field), "member": self.member,
                "reason": self.reason.value,
                "witness": None if self.witness is None else self.witness.to_dict(),
                "kernel_dim": self.kernel_dim, "num_points": self.num_points,
                "order": self.order}

    @classmethod
    def from_dict(cls, data: dict) -> "HcReport":
        w = data.get("witness")
        return cls(int(data["l"]), FieldSpec.parse(data["field"]), bool(data["member"]),
                   HcReason(data["reason"]),
                   None if w is None else LaurentPoly.from_dict(w),
                   data.get("kernel_dim"), data.get("num_points"), data.get("order"))


def _is_witness(poly: LaurentPoly, pts, order: int, vertex) -> bool:
    return (not poly.is_zero()
            and set(poly.support()) <= set(pts)
            and bool(poly.coefficient(*vertex))
            and poly.multiplicity_at_t0() >= order)


def hc_member(l: int, delta_prime: RationalTriangle, n: int, vertex,
              field: FieldSpec = QQ, candidate: LaurentPoly = None) -> HcReport:
    """Is l in HC_K: does some polynomial with Newton polygon in l*delta_prime,
    vanishing to order l*n at t0, have a nonzero coefficient at the vertex
    l*``vertex``?

    ``candidate`` is tried first as the witness; the kernel is computed
    regardless so the report carries the section-space dimension.
    """
    if l < 1:
        raise InputError("l must be positive")
    problem = SectionProblem(delta_prime.scale(l), l * n, tuple(l * c for c in rpoint(*vertex)))
    vx, vy = problem.vertex
    if vx.denominator != 1 or vy.denominator != 1:
        return HcReport(l, field, False, HcReason.NON_INTEGRAL_VERTEX, order=problem.order)
    target = (int(vx), int(vy))
    pts = problem.points()
    col = pts.index(target)
    basis = kernel(constraint_matrix(problem), field)
    common = dict(kernel_dim=len(basis), num_points=len(pts), order=problem.order)
    if candidate is not None:
        if candidate.field != field:
            candidate = candidate.reduce_mod_p(field.p)
        if _is_witness(candidate, pts, problem.order, target):
            return HcReport(l, field, True, HcReason.WITNESS_FOUND, candidate, **common)
    for vec in basis:
        if vec[col]:
            witness = LaurentPoly(dict(zip(pts, vec)), field)
            return HcReport(l, field, True, HcReason.WITNESS_FOUND, witness, **common)
    return HcReport(l, field, False, HcReason.VERTEX_COORDINATE_FORCED_ZERO, **common)


def main2_triangle(m: int, alpha, beta) -> RationalTriangle:
    """Triangle with vertices (-alpha, 0), (m - 1 + beta, 0), (m, m + 1)."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    return RationalTriangle((-alpha, 0), (m - 1 + beta, 0), (m, m + 1))


@dataclass
class ZetaResult:
    m: int
    p: int
    k: int
    l: int
    j: int
    poly: LaurentPoly
    degree: DegreeInterval
    multiplicity: int
    constant_term: int

    def checks(self) -> dict:
        return {"degree within [0, pm]": self.degree.within(0, self.p * self.m),
                "multiplicity >= p(m+1)": self.multiplicity >= self.p * (self.m + 1),
                "constant term nonzero": self.constant_term != 0}

    def to_dict(self, include_poly: bool = False) -> dict:
        out = {"m": self.m, "p": self.p, "k": self.k, "l": self.l, "j": self.j,
               "terms": len(self.poly), "degree": self.degree.to_dict(),
               "multiplicity": self.multiplicity, "constant_term": self.constant_term,
               "checks": self.checks()}
        if include_poly:
            out["poly"] = self.poly.to_dict()
        return out


def find_split_index(m: int, p: int, alpha, beta) -> Optional[int]:
    """Smallest j in [0, k] with
    p*alpha <= (j+1)(1-(m+2)alpha)/(m+1) and
    p((m+2)beta-1)/(m+1) <= (k-j)(1-beta)/(m+1), where p = (m+1)k + l."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    k = p // (m + 1)
    for j in range(k + 1):
        if (p * alpha <= (j + 1) * (1 - (m + 2) * alpha) / (m + 1)
                and p * ((m + 2) * beta - 1) / (m + 1) <= (k - j) * (1 - beta) / (m + 1)):
            return j
    return None


def _zeta_terms(m, p, k, l, F, indices):
    """sum over i in indices of C(k,i) (-1)^i xi_{m+1}^(k-i) (x h xi_m)^i f^l xi_m^p."""
    f, _, h = fgh(F)
    big = xi(m + 1, F)
    small = xi(m, F)
    common = (f ** l) * small.frobenius()
    step = (h * small).shift(1, 0)
    total = LaurentPoly({}, F)
    indices = list(indices)
    if not indices:
        return total
    powers_big = {}
    acc = LaurentPoly.constant(1, F)
    for t in range(k - min(indices) + 1):
        if t >= k - max(indices):
            powers_big[t] = acc
        acc = acc * big
    step_pow = step ** min(indices)
    for i in indices:
        c = comb(k, i) * (-1) ** i % p
        if c:
            term = powers_big[k - i] * step_pow
            total = total + (term * common).scale(c)
        step_pow = step_pow * step
    return total


def build_zeta_p(m: int, p: int, alpha, beta, form: str = "auto") -> ZetaResult:
    """Section of p*D over F_p with nonzero constant term.

    ``form`` picks how zeta_p is assembled: ``"head"`` sums i = 0..j together
    with (-1)^(p+1) (x^m h^(m+1))^p, ``"tail"`` subtracts i = j+1..k from
    xi_{m+1}^p; ``"auto"`` takes whichever sum is shorter. Both are equal
    in characteristic p.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    k, l = divmod(p, m + 1)
    j = find_split_index(m, p, alpha, beta)
    if j is None:
        raise NoValidJ(f"no j in [0, {k}] satisfies both degree inequalities for p = {p}")
    F = FieldSpec(p)
    if form == "auto":
        form = "head" if j + 1 <= k - j else "tail"
    if form == "head":
        _, _, h = fgh(F)
        lead = (h ** (m + 1)).shift(m, 0).frobenius()
        if p % 2 == 0:
            lead = -lead
        zeta = lead + _zeta_terms(m, p, k, l, F, range(0, j + 1))
    elif form == "tail":
        zeta = xi(m + 1, F).frobenius() - _zeta_terms(m, p, k, l, F, range(j + 1, k + 1))
    else:
        raise InputError(f"unknown form {form!r}")
    delta = main2_triangle(m, alpha, beta)
    result = ZetaResult(m, p, k, l, j, zeta, degree_interval(zeta, delta),
                        zeta.multiplicity_at_t0(), int(zeta.coefficient(0, 0)))
    failed = [name for name, ok in result.checks().items() if not ok]
    if failed:
        raise PostVerificationFailed(f"zeta_{p} (m={m}): {', '.join(failed)}")
    return result


@dataclass
class ZetaScan:
    outcomes: dict  # prime -> ZetaResult or None (no valid j)
    threshold: Optional[int]

    def to_dict(self) -> dict:
        return {"threshold": self.threshold,
                "outcomes": {str(q): (None if r is None else r.to_dict())
                             for q, r in self.outcomes.items()}}


def zeta_prime_scan(m: int, alpha, beta, primes: Sequence[int]) -> ZetaScan:
    """Build zeta_p for each prime; NoValidJ is recorded as None. The observed
    threshold is the least tested prime from which on every construction
    succeeded."""
    outcomes = {}
    for q in sorted(primes):
        try:
            outcomes[q] = build_zeta_p(m, q, alpha, beta)
        except NoValidJ:
            outcomes[q] = None
    threshold = None
    for q in sorted(outcomes, reverse=True):
        if outcomes[q] is None:
            break
        threshold = q
    return ZetaScan(outcomes, threshold)


@dataclass
class DeltaBarReport:
    m: int
    alpha: Fraction
    beta: Fraction
    delta_bar: RationalTriangle
    clauses: List[Tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.clauses)

    def to_dict(self) -> dict:
        return {"m": self.m, "alpha": fmt(self.alpha), "beta": fmt(self.beta),
                "delta_bar": self.delta_bar.to_dict(),
                "clauses": [{"clause": c, "pass": ok, "detail": d} for c, ok, d in self.clauses],
                "passed": self.passed}

    @classmethod
    def from_dict(cls, data: dict) -> "DeltaBarReport":
        return cls(int(data["m"]), as_fraction(data["alpha"]), as_fraction(data["beta"]),
                   RationalTriangle.from_dict(data["delta_bar"]),
                   [(c["clause"], bool(c["pass"]), c["detail"]) for c in data["clauses"]])


def delta_bar_validator(m: int, alpha, beta, strict: bool = True) -> DeltaBarReport:
    """Check the comparison triangle over [0, m^2] (right slope m + 2, left edge
    through Q = (m^2+1, m(m+1)+1)) against the triangle of mH' and the
    Newton polygon of xi_{m+1}^m."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    m2 = m * m
    q = (m2 + 1, m * (m + 1) + 1)
    s_left = Fraction(q[1], q[0])
    bar = triangle_from_base(0, m2, s_left, m + 2)
    report = DeltaBarReport(m, alpha, beta, bar)

    def clause(name, ok, detail=""):
        report.clauses.append((name, bool(ok), detail))
        if strict and not ok:
            raise ValidationFailed(f"m={m}: {name} ({detail})")

    delta = main2_triangle(m, alpha, beta)
    d1 = parallel_triangle(delta, 0, m2)
    d2 = xi(m + 1) ** m
    d2_hull = d2.newton_polygon()
    apex2 = (m * (m + 1), m * (m + 2))
    clause("Newton polygon of xi_{m+1}^m has vertices (0,0), (m^2,0), m(m+1,m+2)",
           sorted(d2_hull) == sorted([(0, 0), (m2, 0), apex2]), str(d2_hull))
    d1_pts = lattice_points(d1)
    missing = [pt for pt in d1_pts if not contains(bar, pt)]
    clause("Delta_bar contains every lattice point of Delta_1", not missing,
           f"{len(d1_pts)} points, outside: {missing[:5]}")
    clause("Delta_bar contains the Newton polygon of xi_{m+1}^m", contains(bar, d2_hull))
    x_l = Fraction((m + 1) ** 2) / s_left
    x_r = m2 + Fraction((m + 1) ** 2, m + 2)
    clause("x_L = m(m+1) + (m+1)/(m(m+1)+1)",
           x_l == m * (m + 1) + Fraction(m + 1, m * (m + 1) + 1), fmt(x_l))
    clause("x_R = m(m+1) + 1/(m+2)", x_r == m * (m + 1) + Fraction(1, m + 2), fmt(x_r))
    clause("x_R < x_L", x_r < x_l, f"{fmt(x_r)} < {fmt(x_l)}")
    height = bar.canonical().apex[1]
    clause("height(Delta_bar) < (m+1)^2", height < (m + 1) ** 2, fmt(height))
    a = area(bar)
    clause("area(Delta_bar) < m^2 (m+1)^2 / 2", a < Fraction(m2 * (m + 1) ** 2, 2), fmt(a))
    clause("apex m(m+1, m+2) of Delta_2 lies outside Delta_1", not contains(d1, apex2),
           str(apex2))
    return report
