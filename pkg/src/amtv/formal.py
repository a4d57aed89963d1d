"""Exact linear algebra scaffolding: Gaussian rationals and formal sums.

A FormalSum is a finite linear combination of hashable symbols with exact
coefficients (Fraction or GaussianRational).  Zero coefficients are never
stored, so equality of FormalSums is equality of the underlying maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Generic, Hashable, Iterable, Iterator, Tuple, TypeVar

S = TypeVar("S", bound=Hashable)


@dataclass(frozen=True)
class GaussianRational:
    """Exact element of Q(i), stored as re + im*i."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re=0, im=0) -> "GaussianRational":
        return GaussianRational(Fraction(re), Fraction(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GR_ONE = GaussianRational.of(1)
GR_I = GaussianRational.of(0, 1)


class FormalSum(Generic[S]):
    """Finite map symbol -> exact coefficient, closed under +, -, scalar *.

    The coefficient type only needs ring operations and truthiness for the
    zero test; Fraction and GaussianRational both qualify.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[S, object]] = ()):
        acc: Dict[S, object] = {}
        for sym, coeff in terms:
            if sym in acc:
                acc[sym] = acc[sym] + coeff
            else:
                acc[sym] = coeff
        self.terms = {s: c for s, c in acc.items() if c}

    @staticmethod
    def single(sym: S, coeff=Fraction(1)) -> "FormalSum[S]":
        return FormalSum([(sym, coeff)])

    @staticmethod
    def zero() -> "FormalSum[S]":
        return FormalSum()

    def __iter__(self) -> Iterator[Tuple[S, object]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, sym: S):
        return self.terms.get(sym, Fraction(0))

    def __add__(self, other: "FormalSum[S]") -> "FormalSum[S]":
        return FormalSum(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "FormalSum[S]") -> "FormalSum[S]":
        return self + other.scale(Fraction(-1))

    def scale(self, coeff) -> "FormalSum[S]":
        if not coeff:
            return FormalSum()
        return FormalSum((s, coeff * c) for s, c in self.terms.items())

    def map_symbols(self, fn: Callable[[S, object], Tuple[Hashable, object]]) -> "FormalSum":
        """Rewrite every (symbol, coeff) pair; pairs may collide and merge."""
        return FormalSum(fn(s, c) for s, c in self.terms.items())

    def coefficient_mass(self):
        total = Fraction(0)
        for c in self.terms.values():
            total += c
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "FormalSum(0)"
        parts = [f"{c}*{s}" for s, c in sorted(self.terms.items(), key=lambda t: repr(t[0]))]
        return "FormalSum(" + " + ".join(parts) + ")"
