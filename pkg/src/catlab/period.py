"""Prime factorization of N and the Dyson-Falk upper bound on the cat map period.

Each prime power ``p**e`` of ``N`` contributes one term to an LCM, and the bound
is half of that LCM::

    p = 1, 4 (mod 5)   ->  (p - 1) * p**(e-1)
    p = 2, 3 (mod 5)   ->  2 * (p + 1) * p**(e-1)
    p = 5              ->  2 * 10 * 5**(e-1)
    p = 2              ->  3 * 2**max(e-1, 1)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .errors import DomainError

__all__ = [
    "BoundTerm",
    "Factorization",
    "PeriodReport",
    "PrimeClass",
    "bound_lcm",
    "bound_terms",
    "classify_prime",
    "dyson_falk_bound",
    "factorize",
    "is_prime",
    "period_report",
]


class PrimeClass(enum.Enum):
    P = "P-type"
    Q = "Q-type"
    FIVE = "Five"
    TWO = "Two"


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


@dataclass(frozen=True)
class BoundTerm:
    prime: int
    exponent: int
    cls: PrimeClass
    value: int

    def describe(self) -> str:
        return f"{self.prime}^{self.exponent} ({self.cls.value}) -> {self.value}"


@dataclass(frozen=True)
class PeriodReport:
    n: int
    period: int
    bound: int
    terms: tuple[BoundTerm, ...]
    # set when the LCM of the terms was odd and the bound had to be rounded up
    odd_lcm: bool = False

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.period, self.bound)

    @property
    def lcm(self) -> int:
        return lcm(*(t.value for t in self.terms))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "period": self.period,
            "bound": self.bound,
            "lcm": self.lcm,
            "ratio": str(self.ratio),
            "odd_lcm": self.odd_lcm,
            "terms": [
                {"prime": t.prime, "exponent": t.exponent, "class": t.cls.value, "value": t.value}
                for t in self.terms
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PeriodReport":
        terms = tuple(
            BoundTerm(t["prime"], t["exponent"], PrimeClass(t["class"]), t["value"])
            for t in doc["terms"]
        )
        return cls(doc["n"], doc["period"], doc["bound"], terms, doc.get("odd_lcm", False))


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    return all(k % d for d in range(3, isqrt(k) + 1, 2))


def factorize(n: int) -> Factorization:
    """Prime-power decomposition by trial division, primes ascending."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"factorize needs an integer n >= 2, got {n!r}")
    factors = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return Factorization(n, tuple(factors))


def classify_prime(p: int) -> PrimeClass:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        return PrimeClass.TWO
    if p == 5:
        return PrimeClass.FIVE
    return PrimeClass.P if p % 5 in (1, 4) else PrimeClass.Q


def _term_value(p: int, e: int, cls: PrimeClass) -> int:
    if cls is PrimeClass.P:
        return (p - 1) * p ** (e - 1)
    if cls is PrimeClass.Q:
        return 2 * (p + 1) * p ** (e - 1)
    if cls is PrimeClass.FIVE:
        return 2 * 10 * 5 ** (e - 1)
    return 3 * 2 ** max(e - 1, 1)


def bound_terms(f: Factorization) -> list[BoundTerm]:
    terms = []
    for p, e in f.factors:
        cls = classify_prime(p)
        terms.append(BoundTerm(p, e, cls, _term_value(p, e, cls)))
    return terms


def bound_lcm(n: int) -> int:
    """The LCM of all bound terms, i.e. twice the bound."""
    return lcm(*(t.value for t in bound_terms(factorize(n))))


def _check_bound_domain(n) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"the bound is defined for N > 1, got {n!r}")


def dyson_falk_bound(n: int) -> int:
    _check_bound_domain(n)
    return -(-bound_lcm(n) // 2)


def period_report(n: int) -> PeriodReport:
    from .mapcore import exact_period_factored

    _check_bound_domain(n)
    f = factorize(n)
    terms = tuple(bound_terms(f))
    total = lcm(*(t.value for t in terms))
    bound = -(-total // 2)
    return PeriodReport(n, exact_period_factored(n), bound, terms, odd_lcm=total % 2 == 1)
