"""End-to-end certificates for the two triangle families.

A certificate is a list of premises, each carrying the exact expected and
actual values, so that it can be re-checked from its JSON form alone.
"""

import concurrent.futures
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .blowup import (NumericClass, class_of, class_of_triangle, degree_interval,
                     intersect, vertical_segment_height)
from .curves import eisenstein_certificate, fgh, xi
from .errors import CertificateError, InputError, MdsError, PremiseFailed, WrongShape
from .fields import QQ, primes_upto
from .lattice import (RationalTriangle, area, contains, normal_fan_rays,
                      parallel_triangle, wps_weights)
from .laurent import LaurentPoly
from .rational import as_fraction, fmt
from .sections import (delta_bar_validator, hc_member, main2_triangle,
                       zeta_prime_scan)

DEFAULT_PRIMES = tuple(primes_upto(97))


@dataclass
class Premise:
    premise: str
    expected: str
    actual: str
    passed: bool

    def to_dict(self) -> dict:
        return {"premise": self.premise, "expected": self.expected,
                "actual": self.actual, "pass": self.passed}

    @classmethod
    def from_dict(cls, data: dict) -> "Premise":
        return cls(data["premise"], data["expected"], data["actual"], bool(data["pass"]))


@dataclass
class Certificate:
    kind: str          # "MDS" or "non-MDS"
    m: int
    alpha: Fraction
    beta: Fraction
    premises: List[Premise] = field(default_factory=list)
    caveats: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.premises) and all(p.passed for p in self.premises)

    @property
    def verdict(self) -> str:
        return f"{self.kind}-certified" if self.passed else "not certified"

    def first_failure(self) -> Optional[str]:
        return next((p.premise for p in self.premises if not p.passed), None)

    def add(self, name: str, expected, actual, ok: bool) -> bool:
        self.premises.append(Premise(name, _s(expected), _s(actual), bool(ok)))
        return bool(ok)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "m": self.m, "alpha": fmt(self.alpha),
                "beta": fmt(self.beta), "verdict": self.verdict, "pass": self.passed,
                "premises": [p.to_dict() for p in self.premises],
                "caveats": list(self.caveats)}

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(data["kind"], int(data["m"]), as_fraction(data["alpha"]),
                   as_fraction(data["beta"]),
                   [Premise.from_dict(p) for p in data["premises"]], list(data["caveats"]))


# both names appear in reports; the structure is shared
MdsCertificate = NonMdsCertificate = Certificate


def _s(value) -> str:
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, NumericClass):
        return f"({fmt(value.h)}, {fmt(value.e)})"
    return str(value)


def _raise_if_failed(cert: Certificate) -> Certificate:
    failed = cert.first_failure()
    if failed is not None:
        raise PremiseFailed(failed, cert)
    return cert


def main1_triangle(m: int, alpha, beta) -> RationalTriangle:
    """Triangle with vertices (0, 0), (m - 1 + alpha, -beta), (m, m + 1)."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    return RationalTriangle((0, 0), (m - 1 + alpha, -beta), (m, m + 1))


def certify_main1(m: int, alpha, beta) -> Certificate:
    """MDS certificate: xi_m is a negative curve and V(1 - y) gives a curve
    disjoint from it."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    delta = main1_triangle(m, alpha, beta)
    cert = Certificate("MDS", m, alpha, beta)
    curve = xi(m)
    hull = curve.newton_polygon()
    cert.add("(i) Newton polygon of xi_m lies in Delta", "contained", hull,
             contains(delta, hull))
    twice_area = 2 * area(delta)
    cert.add("(ii) 2 Area(Delta) <= m^2", f"<= {m * m}", twice_area, twice_area <= m * m)
    c = class_of(curve, delta)
    cert.add("(iii) class of C is pi^*H - mE", NumericClass(1, m), c, c == NumericClass(1, m))
    cc = intersect(c, c, delta)
    cert.add("C.C <= 0", "<= 0", cc, cc <= 0)
    irr = eisenstein_certificate(m, strict=False)
    cert.add("xi_m irreducible (Eisenstein after x -> x, y -> y/x)", "holds",
             "holds" if irr.holds else "fails", irr.holds)
    _, _, h = fgh()
    d = class_of(h, delta)
    try:
        height = vertical_segment_height(delta)
        expected = NumericClass(1 / height, 1)
        cert.add("class of D = V(1-y) is (1/h) pi^*H - E", expected, d, d == expected)
    except WrongShape as exc:
        cert.add("class of D = V(1-y) is (1/h) pi^*H - E", "vertical segment exists",
                 str(exc), False)
    cd = intersect(c, d, delta)
    cert.add("(iv) C.D = 0", 0, cd, cd == 0)
    on_line = curve.at_y(1)
    target = LaurentPoly({(1, 0): 1, (0, 0): -1}) ** m
    if m % 2:
        target = -target
    cert.add("(v) xi_m(x, 1) = (-1)^m (x - 1)^m", target, on_line, on_line == target)
    cert.caveats.append("C and D meet inside the torus only at t0; C.D = 0 and distinct "
                        "irreducible curves then force them to be disjoint on the blowup")
    return _raise_if_failed(cert)


@dataclass(frozen=True)
class Main2Params:
    m: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise InputError(f"m must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))

    @property
    def alpha_max(self) -> Fraction:
        m1 = self.m + 1
        return Fraction(1, 1 + m1 + m1 * m1)

    @property
    def beta_min(self) -> Fraction:
        return Fraction(1, self.m + 2)

    def beta_max(self) -> Optional[Fraction]:
        m1, a = self.m + 1, self.alpha
        if 1 - (self.m + 2) * a == 0:
            return None
        inner = 1 + Fraction(1, m1) + Fraction(1, m1 * m1) - a / (1 - (self.m + 2) * a)
        if inner == 0:
            return None
        return 1 - 1 / inner

    def admissible(self) -> bool:
        bmax = self.beta_max()
        return (0 < self.alpha < self.alpha_max and bmax is not None
                and self.beta_min < self.beta < bmax)

    def triangle(self) -> RationalTriangle:
        return main2_triangle(self.m, self.alpha, self.beta)


def example_params(m: int) -> Main2Params:
    """alpha = 1/(m+2)^2, beta = ((m+2)^2+1)/((m+2)^3+1)."""
    return Main2Params(m, Fraction(1, (m + 2) ** 2),
                       Fraction((m + 2) ** 2 + 1, (m + 2) ** 3 + 1))


def curve_passes_through_vertex(poly: LaurentPoly, delta: RationalTriangle) -> bool:
    """Whether V(poly) passes through the fixed point of the lower-left vertex:
    true unless the matching vertex of its smallest triangle is integral and
    carries a nonzero monomial."""
    a = degree_interval(poly, delta).a
    if a.denominator != 1:
        return True
    return not poly.coefficient(int(a), 0)


def certify_main2(params: Main2Params, primes: Sequence[int] = DEFAULT_PRIMES,
                  l_check: Optional[int] = None) -> Certificate:
    """Non-MDS certificate: m is not in HC over Q while zeta_p puts p in HC
    over F_p for every tested prime above the observed threshold."""
    m, alpha, beta = params.m, params.alpha, params.beta
    l_check = 2 * m if l_check is None else l_check
    cert = Certificate("non-MDS", m, alpha, beta)
    bmax = params.beta_max()
    ok = cert.add("(i) 0 < alpha < 1/(1+(m+1)+(m+1)^2)",
                  f"(0, {fmt(params.alpha_max)})", alpha, 0 < alpha < params.alpha_max)
    ok &= cert.add("(i) 1/(m+2) < beta < upper bound",
                   f"({fmt(params.beta_min)}, {_s(bmax)})", beta,
                   bmax is not None and params.beta_min < beta < bmax)
    if not ok:
        return _raise_if_failed(cert)
    delta = params.triangle()
    curve = xi(m)
    hull = curve.newton_polygon()
    cert.add("Newton polygon of xi_m lies in Delta", "contained", hull, contains(delta, hull))
    cert.add("(ii) alpha + beta < 1/(m+1)", f"< {fmt(Fraction(1, m + 1))}", alpha + beta,
             alpha + beta < Fraction(1, m + 1))
    c = class_of(curve, delta)
    cert.add("class of C is pi^*H - mE", NumericClass(1, m), c, c == NumericClass(1, m))
    cc = intersect(c, c, delta)
    cert.add("(ii) C.C < 0", "< 0", cc, cc < 0)
    irr = eisenstein_certificate(m, strict=False)
    cert.add("xi_m irreducible (Eisenstein after x -> x, y -> y/x)", "holds",
             "holds" if irr.holds else "fails", irr.holds)
    cert.add("C passes through the fixed point P of the lower-left vertex", True,
             curve_passes_through_vertex(curve, delta),
             curve_passes_through_vertex(curve, delta))
    d_tri = parallel_triangle(delta, 0, m)
    d = class_of_triangle(d_tri, delta, m + 1)
    expected_d = NumericClass(Fraction(m) / (m - 1 + alpha + beta), m + 1)
    cert.add("class of D is m/(m-1+alpha+beta) pi^*H - (m+1)E", expected_d, d, d == expected_d)
    cd = intersect(c, d, delta)
    cert.add("(iii) C.D = 0", 0, cd, cd == 0)
    ls = sorted(set(range(1, l_check + 1)) | {m})
    members = [l for l in ls if hc_member(l, d_tri, m + 1, (0, 0), QQ).member]
    cert.add(f"(iv) l not in HC over Q for l in {ls}", "[]", members, not members)
    scan = zeta_prime_scan(m, alpha, beta, primes)
    failures = [q for q, r in scan.outcomes.items() if r is None]
    above = [q for q in scan.outcomes if scan.threshold is not None and q >= scan.threshold]
    all_ok = all(all(r.checks().values()) for r in scan.outcomes.values() if r is not None)
    cert.add("(v) zeta_p built and verified for every tested prime above the threshold",
             "threshold exists", f"threshold {scan.threshold}; no valid j at {failures}",
             scan.threshold is not None and all_ok)
    bar = delta_bar_validator(m, alpha, beta, strict=False)
    cert.add("(vi) comparison triangle over [0, m^2] validates", "all clauses",
             "all clauses" if bar.passed else next(c for c, ok, _ in bar.clauses if not ok),
             bar.passed)
    cert.caveats.append(
        "HC_k is nonempty iff m in HC_k only under the hypothesis that p lies in "
        f"HC over F_p for all large p; checked for primes {above} only "
        f"(observed threshold {scan.threshold})")
    cert.caveats.append("the stronger reduction to l = 1 for m = 1, 2: not checked")
    return _raise_if_failed(cert)


def certify_small_beta(m: int, alpha, beta) -> Certificate:
    """MDS certificate for the second triangle shape with beta <= 1/(m+2):
    xi_{m+1} is a section of D avoiding the fixed point P."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    cert = Certificate("MDS", m, alpha, beta)
    cert.add("0 <= beta <= 1/(m+2)", f"[0, {fmt(Fraction(1, m + 2))}]", beta,
             0 <= beta <= Fraction(1, m + 2))
    delta = main2_triangle(m, alpha, beta)
    curve = xi(m)
    hull = curve.newton_polygon()
    cert.add("Newton polygon of xi_m lies in Delta", "contained", hull, contains(delta, hull))
    twice_area = 2 * area(delta)
    cert.add("2 Area(Delta) <= m^2", f"<= {m * m}", twice_area, twice_area <= m * m)
    c = class_of(curve, delta)
    cert.add("class of C is pi^*H - mE", NumericClass(1, m), c, c == NumericClass(1, m))
    nxt = xi(m + 1)
    deg = degree_interval(nxt, delta)
    cert.add("xi_{m+1} lies in degree [0, m]", "[0, %d]" % m,
             f"[{fmt(deg.a)}, {fmt(deg.b)}]", deg.within(0, m))
    d_tri = parallel_triangle(delta, 0, m)
    d = class_of_triangle(d_tri, delta, m + 1)
    cd = intersect(c, d, delta)
    cert.add("C.D = 0", 0, cd, cd == 0)
    report = hc_member(1, d_tri, m + 1, (0, 0), QQ, candidate=nxt)
    cert.add("1 in HC over Q with witness xi_{m+1}", nxt,
             report.witness if report.witness is not None else report.reason.value,
             report.member and report.witness == nxt)
    irr_c = eisenstein_certificate(m, strict=False).holds
    irr_d = eisenstein_certificate(m + 1, strict=False).holds
    cert.add("xi_m, xi_{m+1} irreducible and distinct", "holds",
             "holds" if irr_c and irr_d else "fails", irr_c and irr_d)
    return _raise_if_failed(cert)


@dataclass
class ExampleFamily:
    m: int
    alpha: Fraction
    beta: Fraction
    rays: list
    weights: tuple

    def to_dict(self) -> dict:
        return {"m": self.m, "alpha": fmt(self.alpha), "beta": fmt(self.beta),
                "rays": [list(r) for r in self.rays], "weights": list(self.weights)}

    @classmethod
    def from_dict(cls, data: dict) -> "ExampleFamily":
        return cls(int(data["m"]), as_fraction(data["alpha"]), as_fraction(data["beta"]),
                   [tuple(r) for r in data["rays"]], tuple(data["weights"]))


def family_weights(m: int) -> tuple:
    n = m + 2
    return (n * n, n ** 3 + 1, n ** 3 * (m * m + 2 * m - 1) + m * m + 3 * m + 1)


def example_family(m: int) -> ExampleFamily:
    """Parameters, outward fan rays and sorted weights of the explicit
    non-MDS family at m."""
    params = example_params(m)
    rays = normal_fan_rays(params.triangle(), outward=True)
    weights = tuple(sorted(wps_weights(rays)))
    if weights != tuple(sorted(family_weights(m))):
        raise CertificateError(f"weights {weights} differ from {family_weights(m)}")
    return ExampleFamily(m, params.alpha, params.beta, rays, weights)


SCAN_COLUMNS = ("index", "m", "alpha", "beta", "shape", "self_intersection",
                "negative", "verdict", "detail")


def _scan_cell(job):
    index, m, alpha, beta, shape, primes, l_check = job
    row = {"index": index, "m": m, "alpha": fmt(alpha), "beta": fmt(beta),
           "shape": shape, "self_intersection": "", "negative": "", "verdict": "",
           "detail": ""}
    try:
        if shape == "main1":
            delta = main1_triangle(m, alpha, beta)
        else:
            delta = main2_triangle(m, alpha, beta)
        cc = 2 * area(delta) - m * m
        row["self_intersection"] = fmt(cc)
        row["negative"] = "zero" if cc == 0 else ("yes" if cc < 0 else "no")
        if shape == "main1":
            row["verdict"] = certify_main1(m, alpha, beta).verdict
        else:
            params = Main2Params(m, alpha, beta)
            if params.admissible():
                row["verdict"] = certify_main2(params, primes, l_check).verdict
            elif 0 <= beta <= Fraction(1, m + 2):
                row["verdict"] = certify_small_beta(m, alpha, beta).verdict
            else:
                row["verdict"] = "undetermined"
                row["detail"] = "outside both certified regions"
    except PremiseFailed as exc:
        row["verdict"] = "premise-failed"
        row["detail"] = exc.clause
    except MdsError as exc:
        row["verdict"] = "error"
        row["detail"] = str(exc)
    return row


def scan(m: int, alpha_grid: Sequence, beta_grid: Sequence, shape: str = "main2",
         primes: Sequence[int] = DEFAULT_PRIMES, l_check: Optional[int] = None,
         workers: int = 1) -> List[dict]:
    """One row per (alpha, beta) in row-major grid order; per-cell failures are
    recorded in the row instead of raised."""
    if shape not in ("main1", "main2"):
        raise InputError(f"unknown shape {shape!r}")
    jobs = []
    for a in alpha_grid:
        for b in beta_grid:
            jobs.append((len(jobs), m, as_fraction(a), as_fraction(b), shape,
                         tuple(primes), l_check))
    if workers > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_cell, jobs))
    else:
        rows = [_scan_cell(job) for job in jobs]
    return sorted(rows, key=lambda r: r["index"])


def scan_tsv(rows: List[dict]) -> str:
    lines = ["\t".join(SCAN_COLUMNS)]
    lines += ["\t".join(str(r[c]) for c in SCAN_COLUMNS) for r in rows]
    return "\n".join(lines) + "\n"
