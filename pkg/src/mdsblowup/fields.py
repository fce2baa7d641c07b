"""The two kinds of coefficient field used throughout: Q and F_p."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BadPrime, ParseError
from .rational import as_fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list:
    return [q for q in range(2, n + 1) if is_prime(q)]


@dataclass(frozen=True)
class FieldSpec:
    """``FieldSpec()`` is Q, ``FieldSpec(7)`` is F_7."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if self.p >= 2 ** 64 or not is_prime(self.p):
                raise BadPrime(f"{self.p} is not a prime below 2^64")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, value):
        """Canonical field element for an int, Fraction or rational string."""
        if self.p is None:
            return as_fraction(value)
        if isinstance(value, int) and not isinstance(value, bool):
            return value % self.p
        q = as_fraction(value)
        if q.denominator % self.p == 0:
            raise BadPrime(f"denominator of {q} divisible by {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def inv(self, a):
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        """Element as a signed rational string; F_p uses the symmetric range."""
        if self.p is None:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a - self.p if 2 * a > self.p else a)

    def __str__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls()
        if text.startswith("Fp:") or text.startswith("F"):
            digits = text.split(":", 1)[1] if ":" in text else text[1:]
            try:
                return cls(int(digits))
            except ValueError as exc:
                raise ParseError(f"bad field {text!r}") from exc
        raise ParseError(f"bad field {text!r}; expected 'Q' or 'Fp:<prime>'")


QQ = FieldSpec()
