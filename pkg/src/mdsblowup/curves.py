"""The xi_m family of plane curves with multiplicity m at (1, 1).

``xi(m)`` is built from its closed coefficient formula; the two
recursions and the irreducibility criteria are independent checks on it.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CertificateFails, InputError
from .fields import QQ, FieldSpec
from .laurent import LaurentPoly


def fgh(field: FieldSpec = QQ):
    """f = 1 - xy, g = 1 - xy^2, h = 1 - y."""
    f = LaurentPoly({(0, 0): 1, (1, 1): -1}, field)
    g = LaurentPoly({(0, 0): 1, (1, 2): -1}, field)
    h = LaurentPoly({(0, 0): 1, (0, 1): -1}, field)
    return f, g, h


@lru_cache(maxsize=None)
def _xi_rational(m: int) -> LaurentPoly:
    terms = {(m, m + 1): (-1) ** m}
    for j in range(m):
        c = (-1) ** j * comb(m + 1, j)
        for i in range(j, m):
            terms[(i, j)] = c
    return LaurentPoly(terms, QQ)


def xi(m: int, field: FieldSpec = QQ) -> LaurentPoly:
    """Row j (0 <= j < m) holds x^j .. x^(m-1) with coefficient
    (-1)^j C(m+1, j); the single top term is (-1)^m x^m y^(m+1)."""
    if not isinstance(m, int) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    poly = _xi_rational(m)
    return poly if field.is_rational else poly.reduce_mod_p(field.p)


def recursion_b_rhs(m: int, field: FieldSpec = QQ) -> LaurentPoly:
    f, _, h = fgh(field)
    return f * xi(m, field) + (h ** (m + 1)).shift(m, 0)


def recursion_c_rhs(m: int, field: FieldSpec = QQ) -> LaurentPoly:
    f, _, h = fgh(field)
    return (h * xi(m, field)).shift(1, 0) + f ** (m + 1)


def check_recursion_b(m: int, field: FieldSpec = QQ) -> bool:
    """xi_{m+1} == f xi_m + x^m h^(m+1)."""
    return xi(m + 1, field) == recursion_b_rhs(m, field)


def check_recursion_c(m: int, field: FieldSpec = QQ) -> bool:
    """xi_{m+1} == x h xi_m + f^(m+1)."""
    return xi(m + 1, field) == recursion_c_rhs(m, field)


@dataclass
class IrreducibilityCertificate:
    m: int
    field: str
    transformed: str
    checks: List[Tuple[str, bool]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(ok for _, ok in self.checks)

    def to_dict(self) -> dict:
        return {"m": self.m, "field": self.field, "transformed": self.transformed,
                "checks": [{"condition": c, "pass": ok} for c, ok in self.checks],
                "holds": self.holds}


def eisenstein_certificate(m: int, field: FieldSpec = QQ, poly: LaurentPoly = None,
                           strict: bool = True) -> IrreducibilityCertificate:
    """Eisenstein at the prime x for x * xi_m(x, y/x) viewed in K[x][y].

    Raises CertificateFails on the first violated condition when ``strict``.
    """
    poly = xi(m, field) if poly is None else poly
    t = poly.substitute_unimodular(((1, -1), (0, 1)), (1, 0))
    cert = IrreducibilityCertificate(m, str(field), t.to_text())

    def record(name, ok):
        cert.checks.append((name, ok))
        if strict and not ok:
            raise CertificateFails(f"xi_{m} over {field}: {name}")

    rows: Dict[int, List[int]] = {}
    for (i, j), _ in t.items():
        rows.setdefault(j, []).append(i)
    record("transformed polynomial has nonnegative exponents",
           all(i >= 0 and j >= 0 for i, j in t.support()))
    top = max(rows)
    record(f"y-degree is {m + 1}", top == m + 1)
    lead = t.coefficient(0, top)
    record("leading y-coefficient is the constant (-1)^m",
           rows.get(top) == [0] and lead == field((-1) ** m))
    for k in range(1, top):
        record(f"x divides a_{k}", all(i >= 1 for i in rows.get(k, [])))
    a0 = rows.get(0, [])
    record("x divides a_0", bool(a0) and all(i >= 1 for i in a0))
    record("x^2 does not divide a_0", 1 in a0)
    return cert


def parallelogram_conditions(f: LaurentPoly, u, v, w, m: int, n: int) -> Dict[str, bool]:
    """Each of the four sufficient conditions for irreducibility of f,
    whose support should lie in {w + a u + b v : 0 <= a <= m, 0 <= b <= n}."""
    u, v, w = tuple(u), tuple(v), tuple(w)
    det = u[0] * v[1] - u[1] * v[0]
    out = {}
    supp = f.support()
    in_p = det in (1, -1) and bool(supp)
    if in_p:
        for (i, j) in supp:
            di, dj = i - w[0], j - w[1]
            # integer coordinates of (di, dj) in the basis u, v
            a = (di * v[1] - dj * v[0]) * det
            b = (u[0] * dj - u[1] * di) * det
            if not (0 <= a <= m and 0 <= b <= n):
                in_p = False
                break
    out["support in P"] = in_p
    out["(i) x and y do not divide f"] = (
        bool(supp) and all(i >= 0 and j >= 0 for i, j in supp)
        and min(i for i, _ in supp) == 0 and min(j for _, j in supp) == 0)
    out["(ii) u, v basis of Z^2"] = det in (1, -1)

    def c(pt):
        return f.coefficient(pt[0], pt[1])

    def at(s, t):
        return (w[0] + s * u[0] + t * v[0], w[1] + s * u[1] + t * v[1])

    out["(iii) prescribed coefficients vanish"] = (
        all(not c(at(0, t)) for t in range(n))
        and all(not c(at(s, n)) for s in range(1, m + 1)))
    out["(iv) c_{w+u} and c_{w+nv} nonzero"] = bool(c(at(1, 0))) and bool(c(at(0, n)))
    return out


def parallelogram_irreducible(f: LaurentPoly, u, v, w, m: int, n: int) -> bool:
    """True when the parallelogram criterion certifies f irreducible;
    False means inconclusive, not reducible."""
    if m < 1 or n < 1:
        raise InputError("m and n must be positive")
    return all(parallelogram_conditions(f, u, v, w, m, n).values())
