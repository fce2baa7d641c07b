"""Exact integer/field linear algebra: Smith normal form and kernels.

Constraint matrices are integer matrices whose kernel over Q or F_p is
the section space; the elementary divisors say at which primes the two
kernels can differ.
"""

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .fields import FieldSpec, is_prime
from .errors import InputError


@dataclass(frozen=True)
class IntMatrix:
    rows: Tuple[Tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise InputError("column count required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InputError("ragged matrix")
        return cls(rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"rows": [list(r) for r in self.rows], "ncols": self.ncols}

    @classmethod
    def from_dict(cls, data: dict) -> "IntMatrix":
        return cls.from_rows(data["rows"], data["ncols"])


@dataclass(frozen=True)
class SnfResult:
    divisors: Tuple[int, ...]
    rank: int

    def to_dict(self) -> dict:
        return {"divisors": list(self.divisors), "rank": self.rank}

    @classmethod
    def from_dict(cls, data: dict) -> "SnfResult":
        return cls(tuple(int(d) for d in data["divisors"]), int(data["rank"]))


def _min_nonzero(A, t, r, c):
    best = None
    for i in range(t, r):
        row = A[i]
        for j in range(t, c):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Elementary divisors d1 | d2 | ... of an integer matrix.

    Pivots on the smallest nonzero absolute value in the remaining block;
    the list has length min(rows, cols), zeros last.
    """
    r, c = M.shape
    A = [list(row) for row in M.rows]
    divisors: List[int] = []
    t = 0
    while t < min(r, c):
        found = _min_nonzero(A, t, r, c)
        if found is None:
            break
        _, i, j = found
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // piv
                    if q:
                        Ai, At = A[i], A[t]
                        for k in range(t, c):
                            Ai[k] -= q * At[k]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // piv
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                # remainder smaller than the pivot somewhere in row/column t
                best = None
                for i in range(t, r):
                    v = A[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, None)
                for j in range(t, c):
                    v = A[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), None, j)
                _, i, j = best
                if i is not None:
                    A[t], A[i] = A[i], A[t]
                else:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            bad = None
            for i in range(t + 1, r):
                if any(v % piv for v in A[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            At, Ab = A[t], A[bad]
            for k in range(t, c):
                At[k] += Ab[k]
        divisors.append(abs(A[t][t]))
        t += 1
    rank = len(divisors)
    divisors.extend([0] * (min(r, c) - rank))
    return SnfResult(tuple(divisors), rank)


def good_prime(M: IntMatrix, p: int) -> bool:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    return all(d % p for d in smith_normal_form(M).divisors if d)


def rref(rows: Sequence[Sequence], ncols: int, field: FieldSpec):
    """Reduced row echelon form over ``field``; returns (rows, pivot columns)."""
    p = field.p
    R = [[field(x) for x in row] for row in rows]
    R = [row for row in R if any(row)]
    pivots: List[int] = []
    lead = 0
    for col in range(ncols):
        piv_row = next((i for i in range(lead, len(R)) if R[i][col]), None)
        if piv_row is None:
            continue
        R[lead], R[piv_row] = R[piv_row], R[lead]
        inv = field.inv(R[lead][col])
        if p is None:
            R[lead] = [x * inv for x in R[lead]]
        else:
            R[lead] = [x * inv % p for x in R[lead]]
        top = R[lead]
        nz = [k for k in range(col, ncols) if top[k]]
        for i in range(len(R)):
            if i != lead and R[i][col]:
                factor = R[i][col]
                row = R[i]
                if p is None:
                    for k in nz:
                        row[k] -= factor * top[k]
                else:
                    for k in nz:
                        row[k] = (row[k] - factor * top[k]) % p
        pivots.append(col)
        lead += 1
        if lead == len(R):
            break
    return R[:lead], pivots


def rank(M: IntMatrix, field: FieldSpec) -> int:
    return len(rref(M.rows, M.ncols, field)[1])


def kernel(M: IntMatrix, field: FieldSpec) -> List[list]:
    """Canonical kernel basis: one vector per free column of the RREF,
    with a 1 in that column and zeros in the other free columns."""
    R, pivots = rref(M.rows, M.ncols, field)
    pivot_set = set(pivots)
    one = field(1)
    basis = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = [field(0)] * M.ncols
        v[f] = one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = -row[f] if field.p is None else (-row[f]) % field.p
        basis.append(v)
    return basis
