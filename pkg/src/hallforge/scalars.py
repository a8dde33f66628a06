"""Exact arithmetic in the real quadratic field Q(sqrt(q)) for a fixed prime q.

Every coefficient produced by this package lives here.  A Scalar stores a pair
of exact rationals (a, b) denoting a + b*sqrt(q); since q is prime, sqrt(q) is
irrational, the representation is unique, and Q(sqrt(q)) is a field with

    1 / (a + b*sqrt(q)) = (a - b*sqrt(q)) / (a^2 - q*b^2).

The distinguished square root v = sqrt(q) (so v * v == q) plays the role of
the quantum parameter; all the q-combinatorics below ([r], [r]!, Gaussian
binomials, Grassmannian and GL(r, F_q) counts) is expressed through it.  No
floating-point value ever appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Scalar",
    "is_prime",
    "zero",
    "one",
    "from_rational",
    "sqrt_q",
    "qint",
    "qfact",
    "qbinom",
    "phi",
    "tau",
    "grassmannian_size",
    "gl_size",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, slots=True)
class Scalar:
    """An element a + b*sqrt(q) of Q(sqrt(q)), with a, b exact rationals."""

    a: Fraction
    b: Fraction
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other: object) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.q != self.q:
                raise ValueError(f"mixed base primes {self.q} and {other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(Fraction(other), Fraction(0), self.q)
        return None

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, self.q)

    def __sub__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(
            self.a * o.a + self.q * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.q,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        norm = self.a * self.a - self.q * self.b * self.b
        if norm == 0:
            # q prime makes sqrt(q) irrational, so norm == 0 forces a == b == 0.
            raise ZeroDivisionError("inverse of zero in Q(sqrt(q))")
        return Scalar(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = Scalar(Fraction(1), Fraction(0), self.q)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar(Fraction(other), Fraction(0), self.q)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.q == other.q and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.q))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return int(self.a)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        if self.a == 0:
            return f"{self.b}*v"
        return f"({self.a} + {self.b}*v)"

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "a": f"{self.a.numerator}/{self.a.denominator}",
            "b": f"{self.b.numerator}/{self.b.denominator}",
            "q": self.q,
        }

    @staticmethod
    def from_json(data: dict) -> "Scalar":
        def parse(s: str) -> Fraction:
            num, _, den = s.partition("/")
            return Fraction(int(num), int(den or "1"))

        return Scalar(parse(data["a"]), parse(data["b"]), int(data["q"]))


def _check_q(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"base parameter q={q} must be prime")


def zero(q: int) -> Scalar:
    return Scalar(Fraction(0), Fraction(0), q)


def one(q: int) -> Scalar:
    return Scalar(Fraction(1), Fraction(0), q)


def from_rational(x: int | Fraction, q: int) -> Scalar:
    return Scalar(Fraction(x), Fraction(0), q)


def sqrt_q(q: int) -> Scalar:
    """The distinguished square root v with v * v == q."""
    _check_q(q)
    return Scalar(Fraction(0), Fraction(1), q)


@lru_cache(maxsize=None)
def qint(r: int, q: int) -> Scalar:
    """Balanced quantum integer [r] = (v^r - v^-r) / (v - v^-1)."""
    if r < 0:
        raise ValueError("quantum integer needs r >= 0")
    v = sqrt_q(q)
    if r == 0:
        return zero(q)
    return (v**r - v**-r) / (v - v**-1)


@lru_cache(maxsize=None)
def qfact(r: int, q: int) -> Scalar:
    """Quantum factorial [r]! = [1][2]...[r]."""
    out = one(q)
    for i in range(1, r + 1):
        out = out * qint(i, q)
    return out


def qbinom(m: int, r: int, q: int) -> Scalar:
    """Quantum binomial [m choose r] = [m][m-1]...[m-r+1] / [r]!.

    Defined for any integer m and r >= 0; vanishes for 0 <= m < r because the
    numerator then contains the factor [0].
    """
    if r < 0:
        raise ValueError("qbinom needs r >= 0")
    num = one(q)
    for i in range(r):
        num = num * qint_signed(m - i, q)
    return num / qfact(r, q)


def qint_signed(r: int, q: int) -> Scalar:
    """[r] extended to negative r by [-r] = -[r]."""
    if r >= 0:
        return qint(r, q)
    return -qint(-r, q)


@lru_cache(maxsize=None)
def phi(r: int, q: int) -> Scalar:
    """The product (1 - t)(1 - t^2)...(1 - t^r) evaluated at t = v^2 = q."""
    if r < 0:
        raise ValueError("phi needs r >= 0")
    _check_q(q)
    out = one(q)
    t = Fraction(q)
    for i in range(1, r + 1):
        out = out * from_rational(1 - t**i, q)
    return out


def tau(i: object, r: int, q: int) -> Scalar:
    """Normalization constant 1 / phi(r) at t = q; independent of the vertex i."""
    if r < 1:
        raise ValueError("tau needs r >= 1")
    return phi(r, q).inverse()


def grassmannian_size(s: int, u: int, q: int) -> Scalar:
    """Number of s-dimensional subspaces of F_q^u, as v^((u-s)s) * [u choose s]."""
    if s < 0 or u < 0:
        raise ValueError("grassmannian_size needs s, u >= 0")
    if s > u:
        return zero(q)
    return sqrt_q(q) ** ((u - s) * s) * qbinom(u, s, q)


@lru_cache(maxsize=None)
def gl_size(r: int, q: int) -> int:
    """Order of GL_r(F_q): (q^r - 1)(q^r - q)...(q^r - q^(r-1))."""
    if r < 0:
        raise ValueError("gl_size needs r >= 0")
    out = 1
    for i in range(r):
        out *= q**r - q**i
    return out
