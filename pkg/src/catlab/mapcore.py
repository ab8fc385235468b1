"""Exact integer dynamics of the discrete cat map on the N x N torus.

A point ``(x, y)`` with ``0 <= x, y < n`` is sent to ``(a*x + b*y, c*x + d*y) mod n``.
The canonical matrix is ``[[1, 1], [1, 2]]``; every routine that talks about
periods assumes it.  Apply/invert accept any unimodular matrix.

``x`` is the column index and ``y`` the row index of a rendered image.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterator, NamedTuple

from .errors import DomainError, InvariantViolation

__all__ = [
    "CANONICAL",
    "CatMatrix",
    "LatticePoint",
    "Orbit",
    "apply_point",
    "check_modulus",
    "check_point",
    "exact_period",
    "exact_period_factored",
    "invert_point",
    "iter_orbit",
    "matrix_pow_mod",
    "orbit_length",
    "orbit_of",
]


class LatticePoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class CatMatrix:
    """Integer 2x2 matrix ``[[a, b], [c, d]]`` with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"matrix {self.rows()} is not unimodular")

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def inverse(self) -> "CatMatrix":
        return CatMatrix(self.d, -self.b, -self.c, self.a)


CANONICAL = CatMatrix(1, 1, 1, 2)

Mat2 = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class Orbit:
    start: LatticePoint
    points: tuple[LatticePoint, ...]

    @property
    def length(self) -> int:
        return len(self.points)


def check_modulus(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"modulus must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    return n


def check_point(p, n: int) -> LatticePoint:
    x, y = p
    if not (0 <= x < n and 0 <= y < n):
        raise DomainError(f"point ({x}, {y}) is outside the {n}x{n} lattice")
    return LatticePoint(x, y)


def apply_point(p, n: int, m: CatMatrix = CANONICAL) -> LatticePoint:
    x, y = check_point(p, check_modulus(n))
    return LatticePoint((m.a * x + m.b * y) % n, (m.c * x + m.d * y) % n)


def invert_point(p, n: int, m: CatMatrix = CANONICAL) -> LatticePoint:
    """Preimage of ``p``; for the canonical matrix ``(2x - y, y - x) mod n``."""
    return apply_point(p, n, m.inverse())


def _mul(u: Mat2, v: Mat2, n: int) -> Mat2:
    (a, b), (c, d) = u
    (e, f), (g, h) = v
    return (
        ((a * e + b * g) % n, (a * f + b * h) % n),
        ((c * e + d * g) % n, (c * f + d * h) % n),
    )


def _identity(n: int) -> Mat2:
    one = 1 % n
    return ((one, 0), (0, one))


def matrix_pow_mod(m: CatMatrix, k: int, n: int) -> Mat2:
    """``m**k`` with entries reduced mod ``n`` (square and multiply)."""
    check_modulus(n)
    if k < 0:
        raise DomainError(f"exponent must be >= 0, got {k}")
    result = _identity(n)
    base = tuple(tuple(v % n for v in row) for row in m.rows())
    while k:
        if k & 1:
            result = _mul(result, base, n)
        base = _mul(base, base, n)
        k >>= 1
    return result


def iter_orbit(p, n: int) -> Iterator[LatticePoint]:
    """Yield the orbit of ``p`` under the canonical map, starting with ``p``."""
    x0, y0 = check_point(p, check_modulus(n))
    x, y = x0, y0
    while True:
        yield LatticePoint(x, y)
        x, y = (x + y) % n, (x + 2 * y) % n
        if x == x0 and y == y0:
            return


def orbit_length(p, n: int) -> int:
    """Length of the orbit through ``p``; constant memory."""
    x0, y0 = check_point(p, check_modulus(n))
    x, y = (x0 + y0) % n, (x0 + 2 * y0) % n
    steps = 1
    while x != x0 or y != y0:
        x, y = (x + y) % n, (x + 2 * y) % n
        steps += 1
    return steps


def orbit_of(p, n: int) -> Orbit:
    points = tuple(iter_orbit(p, n))
    return Orbit(points[0], points)


def exact_period(n: int) -> int:
    """Smallest ``m >= 1`` with ``[[1,1],[1,2]]**m == I (mod n)``.

    Direct iteration, capped at the Dyson-Falk bound.
    """
    check_modulus(n)
    if n == 1:
        return 1
    from .period import dyson_falk_bound

    cap = dyson_falk_bound(n)
    # track the first row (a, b); the second row is (b, a + b) for powers of this matrix
    a, b = 1, 1
    for m in range(1, cap + 1):
        if a == 1 % n and b == 0 and (a + b) % n == 1 % n:
            return m
        a, b = (a + b) % n, (a + 2 * b) % n
    raise InvariantViolation(f"no period <= bound {cap} found for n={n}")


def exact_period_factored(n: int) -> int:
    """Same result as :func:`exact_period`, computed as an lcm over prime powers."""
    check_modulus(n)
    if n == 1:
        return 1
    from .period import factorize

    return lcm(*(exact_period(p**e) for p, e in factorize(n).factors))
