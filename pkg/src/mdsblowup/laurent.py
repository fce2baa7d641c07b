"""Sparse Laurent polynomials in x, y over Q or F_p.

Terms are kept in a dict ``{(i, j): c}`` with no stored zeros. Over F_p,
large products go through Kronecker substitution (pack into one big
integer, multiply with GMP, unpack), and the shifted expansion used for
multiplicities is done densely with numpy.
"""

import json
import re
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import gmpy2
import numpy as np

from .errors import (BadPrime, FieldMismatch, NonUnimodular, ParseError,
                     ZeroPolynomial)
from .fields import QQ, FieldSpec
from .rational import as_fraction

Exp = Tuple[int, int]

# operand-size product above which F_p multiplication switches to Kronecker
_KRONECKER_MIN = 4096
# F_p multiplicity uses the dense numpy transform when the exponent box
# has at most this many cells and more than a handful of terms
_DENSE_BOX_MAX = 4_000_000
_DENSE_MULT_MIN = 32


class LaurentPoly:
    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] = None, field: FieldSpec = QQ):
        self.field = field
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = field(c)
            if c:
                clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exp, object], field: FieldSpec) -> "LaurentPoly":
        # trusted constructor: coefficients already canonical and nonzero
        obj = cls.__new__(cls)
        obj.field = field
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1, field: FieldSpec = QQ) -> "LaurentPoly":
        return cls({(i, j): coeff}, field)

    @classmethod
    def constant(cls, c, field: FieldSpec = QQ) -> "LaurentPoly":
        return cls({(0, 0): c}, field)

    # -- container protocol -------------------------------------------------

    @property
    def terms(self) -> Dict[Exp, object]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical order: by y-exponent, then x-exponent."""
        return sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0]))

    def support(self) -> List[Exp]:
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int = None):
        if j is None:
            i, j = i
        return self._terms.get((i, j), self.field(0))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.field == other.field and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r}, field={self.field})"

    def __str__(self):
        return self.to_text()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, str)):
            return LaurentPoly.constant(other, self.field)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def _norm(self, c):
        return c % self.field.p if self.field.p is not None else c

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = self._norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: self._norm(-c) for e, c in self._terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "LaurentPoly":
        c = self.field(c)
        if not c:
            return LaurentPoly._raw({}, self.field)
        return LaurentPoly._raw({e: self._norm(v * c) for e, v in self._terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return LaurentPoly._raw({}, self.field)
        p = self.field.p
        if p is not None and len(self) * len(other) >= _KRONECKER_MIN:
            terms = _kronecker_mul(self._terms, other._terms, p)
            if terms is not None:
                return LaurentPoly._raw(terms, self.field)
        out: Dict[Exp, object] = {}
        get = out.get
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = get(e, 0) + c1 * c2
        if p is None:
            out = {e: c for e, c in out.items() if c}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return LaurentPoly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        p = self.field.p
        if p is not None and n >= p and n % p == 0:
            # Frobenius: (sum c x^i y^j)^p = sum c x^(pi) y^(pj) in F_p
            return (self ** (n // p)).frobenius()
        result = LaurentPoly.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self) -> "LaurentPoly":
        """f(x^p, y^p); equals f**p over F_p."""
        p = self.field.p
        if p is None:
            raise FieldMismatch("Frobenius needs a prime field")
        return LaurentPoly._raw({(p * i, p * j): c for (i, j), c in self._terms.items()}, self.field)

    def shift(self, di: int, dj: int) -> "LaurentPoly":
        """Multiply by the monomial x^di y^dj."""
        return LaurentPoly._raw({(i + di, j + dj): c for (i, j), c in self._terms.items()}, self.field)

    # -- field changes and substitutions -------------------------------------

    def reduce_mod_p(self, p: int) -> "LaurentPoly":
        if not self.field.is_rational:
            raise FieldMismatch("reduction mod p needs a polynomial over Q")
        Fp = FieldSpec(p)
        out = {}
        for e, c in self._terms.items():
            if c.denominator % p == 0:
                raise BadPrime(f"coefficient {c} has denominator divisible by {p}")
            v = Fp(c)
            if v:
                out[e] = v
        return LaurentPoly._raw(out, Fp)

    def substitute_unimodular(self, matrix, shift=(0, 0)) -> "LaurentPoly":
        """Exponent change (i, j) -> matrix @ (i, j) + shift.

        ``matrix=((1, -1), (0, 1)), shift=(1, 0)`` is f -> x f(x, y/x).
        """
        (a, b), (c, d) = matrix
        if a * d - b * c not in (1, -1):
            raise NonUnimodular(f"det {a * d - b * c} is not +-1")
        s, t = shift
        return LaurentPoly._raw(
            {(a * i + b * j + s, c * i + d * j + t): v for (i, j), v in self._terms.items()},
            self.field)

    def at_y(self, value) -> "LaurentPoly":
        """Univariate polynomial f(x, value) (returned with y-exponent 0)."""
        value = self.field(value)
        out: Dict[Exp, object] = {}
        for (i, j), c in self._terms.items():
            if j < 0:
                term = c * self.field.inv(value) ** (-j)
            else:
                term = c * value ** j
            out[(i, 0)] = out.get((i, 0), 0) + term
        return LaurentPoly(out, self.field)

    # -- geometry of the support ---------------------------------------------

    def newton_polygon(self) -> List[Exp]:
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no Newton polygon")
        return convex_hull(self._terms)

    def multiplicity_at_t0(self) -> int:
        """Order of vanishing at (1, 1): least total degree in the expansion
        in u = x - 1, v = y - 1. Valid in every characteristic."""
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no multiplicity")
        p = self.field.p
        if p is not None and len(self) >= _DENSE_MULT_MIN and p < 2 ** 20:
            box = _box_size(self._terms)
            if box[0] * box[1] <= _DENSE_BOX_MAX:
                return _dense_multiplicity(self._terms, p)
        return _sparse_multiplicity(self._terms, p)

    def shifted_expansion(self, max_degree: int) -> Dict[Exp, object]:
        """Coefficients of u^a v^b (a + b <= max_degree) after x = 1+u, y = 1+v."""
        if any(i < 0 or j < 0 for i, j in self._terms):
            raise ValueError("shifted expansion needs a polynomial, not a Laurent polynomial")
        out = {}
        p = self.field.p
        for d in range(max_degree + 1):
            for a in range(d + 1):
                b = d - a
                s = sum(c * comb(i, a) * comb(j, b) for (i, j), c in self._terms.items())
                if p is not None:
                    s %= p
                if s:
                    out[(a, b)] = s
        return out

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in self.items():
            cs = self.field.to_str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("y" if j == 1 else f"y^{j}")
            if not mono:
                body = mag
            elif mag == "1":
                body = "*".join(mono)
            else:
                body = "*".join([mag] + mono)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def to_dict(self) -> dict:
        return {"field": str(self.field),
                "terms": [[i, j, self.field.to_str(c)] for (i, j), c in self.items()]}

    @classmethod
    def from_dict(cls, data: dict) -> "LaurentPoly":
        try:
            field = FieldSpec.parse(data.get("field", "Q"))
            return cls({(int(i), int(j)): c for i, j, c in data["terms"]}, field)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ) -> "LaurentPoly":
        """Parse ``"1 + x - 3*x*y + x^2*y^3"`` (or the JSON form)."""
        text = text.strip()
        if text.startswith("{"):
            try:
                return cls.from_dict(json.loads(text))
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad polynomial JSON: {exc}") from exc
        return cls(_parse_terms(text), field)


_FACTOR = re.compile(r"^(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[xy])(?:\^(?P<exp>-?\d+))?)$")


def _parse_terms(text: str) -> Dict[Exp, Fraction]:
    s = text.replace(" ", "").replace("^-", "^~").replace("**", "^")
    if not s:
        raise ParseError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    chunks = re.findall(r"[+-][^+-]*", s)
    if "".join(chunks) != s:
        raise ParseError(f"cannot parse polynomial {text!r}")
    out: Dict[Exp, Fraction] = {}
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:].replace("~", "-")
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        # implicit products: "3x", "xy", "x^2y^3"
        body = re.sub(r"(?<=[0-9xy])(?=[xy])", "*", body)
        coeff, i, j = Fraction(sign), 0, 0
        for factor in body.split("*"):
            m = _FACTOR.match(factor)
            if not m:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            if m.group("num"):
                coeff *= as_fraction(m.group("num"))
            else:
                e = int(m.group("exp")) if m.group("exp") else 1
                if m.group("var") == "x":
                    i += e
                else:
                    j += e
        out[(i, j)] = out.get((i, j), 0) + coeff
    return out


def convex_hull(points: Iterable[Exp]) -> List[Exp]:
    """Counterclockwise hull vertices (monotone chain), starting from the
    lexicographically smallest point; collinear boundary points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: List[Exp] = []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper: List[Exp] = []
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    hull = lower[:-1] + upper[:-1]
    return hull


def _sparse_multiplicity(terms: Mapping[Exp, object], p) -> int:
    mi = min(i for i, _ in terms)
    mj = min(j for _, j in terms)
    items = [(i - mi, j - mj, c) for (i, j), c in terms.items()]
    top = max(i + j for i, j, _ in items)
    for d in range(top + 1):
        for a in range(d + 1):
            b = d - a
            s = 0
            for i, j, c in items:
                if i >= a and j >= b:
                    s += c * comb(i, a) * comb(j, b)
            if (s % p if p is not None else s):
                return d
    # a nonzero polynomial has a nonzero coefficient in degree <= its degree
    raise AssertionError("shifted expansion vanished identically")


def _box_size(terms) -> Tuple[int, int]:
    xs = [i for i, _ in terms]
    ys = [j for _, j in terms]
    return max(xs) - min(xs) + 1, max(ys) - min(ys) + 1


def _binomial_mod_matrix(n: int, p: int) -> np.ndarray:
    """P[a, i] = C(i, a) mod p for 0 <= a, i < n."""
    P = np.zeros((n, n), dtype=np.int64)
    col = np.zeros(n, dtype=np.int64)
    col[0] = 1
    P[:, 0] = col
    for i in range(1, n):
        nxt = col.copy()
        nxt[1:] = (col[1:] + col[:-1]) % p
        col = nxt
        P[:, i] = col
    return P


def _dense_multiplicity(terms: Mapping[Exp, int], p: int) -> int:
    mi = min(i for i, _ in terms)
    mj = min(j for _, j in terms)
    ii = np.fromiter((i - mi for i, _ in terms), dtype=np.int64, count=len(terms))
    jj = np.fromiter((j - mj for _, j in terms), dtype=np.int64, count=len(terms))
    cc = np.fromiter(terms.values(), dtype=np.int64, count=len(terms))
    nx, ny = int(ii.max()) + 1, int(jj.max()) + 1
    A = np.zeros((nx, ny), dtype=np.int64)
    A[ii, jj] = cc
    B = (_binomial_mod_matrix(nx, p) @ A) % p
    C = (B @ _binomial_mod_matrix(ny, p).T) % p
    a, b = np.nonzero(C)
    return int((a + b).min())


def _kronecker_mul(f: Mapping[Exp, int], g: Mapping[Exp, int], p: int):
    """Exact product over F_p through a single big-integer multiplication.

    Returns None when the coefficient bound does not fit a 64-bit slot.
    """
    bound = min(len(f), len(g)) * (p - 1) ** 2
    if bound < 2 ** 32:
        dtype, width = np.dtype("<u4"), 4
    elif bound < 2 ** 64:
        dtype, width = np.dtype("<u8"), 8
    else:
        return None
    fi0 = min(i for i, _ in f)
    fj0 = min(j for _, j in f)
    gi0 = min(i for i, _ in g)
    gj0 = min(j for _, j in g)
    fdx = max(i for i, _ in f) - fi0
    gdx = max(i for i, _ in g) - gi0
    row = fdx + gdx + 1

    def pack(t, i0, j0):
        idx = np.fromiter(((i - i0) + (j - j0) * row for i, j in t), dtype=np.int64, count=len(t))
        vals = np.fromiter(t.values(), dtype=np.uint64, count=len(t))
        arr = np.zeros(int(idx.max()) + 1, dtype=dtype)
        arr[idx] = vals
        return gmpy2.mpz.from_bytes(arr.tobytes(), "little")

    prod = pack(f, fi0, fj0) * pack(g, gi0, gj0)
    nbytes = (prod.bit_length() + 8 * width - 1) // (8 * width) * width
    arr = np.frombuffer(prod.to_bytes(nbytes, "little"), dtype=dtype).astype(np.uint64) % p
    nz = np.nonzero(arr)[0]
    i0, j0 = fi0 + gi0, fj0 + gj0
    ks = nz.tolist()
    vs = arr[nz].tolist()
    return {(k % row + i0, k // row + j0): v for k, v in zip(ks, vs)}


def x_(field: FieldSpec = QQ) -> LaurentPoly:
    return LaurentPoly.monomial(1, 0, 1, field)


def y_(field: FieldSpec = QQ) -> LaurentPoly:
    return LaurentPoly.monomial(0, 1, 1, field)
