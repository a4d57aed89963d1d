"""Named constants and exact-coefficient constant expressions.

The catalog covers the constants that appear in closed-form evaluations:
pi, log 2, zeta(k), the alternating zeta zetabar(k) (with zetabar(0) = 1/2
and zetabar(1) = log 2), the alternating odd t-values tbar(k), the scaled
t-values ttilde(k) = (2^k - 1) zeta(k), the generalized Catalan constants
G_m = tbar(2m)/2^(2m), and Li_s(1/2).

tbar at odd argument uses the Euler-number closed form
    tbar(2k+1) = (-1)^k E_{2k} pi^(2k+1) / (2 (2k)!),
with Euler numbers from the exact secant-series recurrence; tbar at even
argument (and the cross-check for odd ones) goes through the Dirichlet
beta function beta(s) = 4^(-s) (zeta(s,1/4) - zeta(s,3/4)).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

import mpmath as mp


class UnknownConstantError(KeyError):
    pass


@lru_cache(maxsize=None)
def euler_numbers(count: int) -> Tuple[int, ...]:
    """E_0, E_2, ..., E_{2(count-1)} as exact integers.

    Recurrence from sec(x)*cos(x) = 1:  sum_j C(2n, 2j) E_{2j} = 0 for n >= 1.
    """
    es = [1]
    for n in range(1, count):
        acc = 0
        for j in range(n):
            acc += math.comb(2 * n, 2 * j) * es[j]
        es.append(-acc)
    return tuple(es)


def dirichlet_beta(s: int) -> mp.mpf:
    """beta(s) = sum_{n>=0} (-1)^n / (2n+1)^s at the current precision."""
    return mp.mpf(4) ** (-s) * (mp.zeta(s, mp.mpf(1) / 4) - mp.zeta(s, mp.mpf(3) / 4))


def tbar_euler_form(k: int) -> mp.mpf:
    """tbar at odd k = 2j+1 from the Euler-number closed form."""
    if k % 2 == 0:
        raise ValueError("Euler-number form only covers odd arguments")
    j = (k - 1) // 2
    e = euler_numbers(j + 1)[j]
    return (-1) ** j * e * mp.pi ** k / (2 * mp.factorial(2 * j))


def _constant_value(name: str, arg: Optional[int]) -> mp.mpf:
    if name == "pi":
        return mp.pi
    if name == "log2":
        return mp.log(2)
    if name == "zeta":
        if arg is None or arg < 2:
            raise UnknownConstantError(f"zeta needs integer argument >= 2, got {arg}")
        return mp.zeta(arg)
    if name == "zetabar":
        if arg is None or arg < 0:
            raise UnknownConstantError(f"zetabar needs integer argument >= 0, got {arg}")
        if arg == 0:
            return mp.mpf(1) / 2
        if arg == 1:
            return mp.log(2)
        return (1 - mp.mpf(2) ** (1 - arg)) * mp.zeta(arg)
    if name == "tbar":
        if arg is None or arg < 1:
            raise UnknownConstantError(f"tbar needs integer argument >= 1, got {arg}")
        if arg % 2 == 1:
            return tbar_euler_form(arg)
        return mp.mpf(2) ** arg * dirichlet_beta(arg)
    if name == "ttilde":
        if arg is None or arg < 2:
            raise UnknownConstantError(f"ttilde needs integer argument >= 2, got {arg}")
        return (mp.mpf(2) ** arg - 1) * mp.zeta(arg)
    if name == "G":
        m = 1 if arg is None else arg
        if m < 1:
            raise UnknownConstantError(f"G needs integer argument >= 1, got {arg}")
        return dirichlet_beta(2 * m)
    if name == "li_half":
        if arg is None or arg < 1:
            raise UnknownConstantError(f"li_half needs integer argument >= 1, got {arg}")
        return mp.polylog(arg, mp.mpf(1) / 2)
    raise UnknownConstantError(name)


def constant(name: str, arg: Optional[int] = None, digits: int = 30) -> Tuple[mp.mpf, mp.mpf]:
    """Value of a named constant, correct to the requested digits.

    Returns (value, err) computed with guard digits; err is a safe absolute
    error radius for the returned mpf.
    """
    with mp.workdps(digits + 10):
        val = _constant_value(name, arg)
        err = mp.mpf(10) ** (-(digits + 5))
    return val, err


# ---------------------------------------------------------------------------
# constant expressions

# A monomial is a sorted tuple of ((name, arg), power); a ConstExpr is a
# FormalSum-like map monomial -> Fraction.

Monomial = Tuple[Tuple[Tuple[str, Optional[int]], int], ...]


def mono(*factors) -> Monomial:
    """Build a monomial from (name, arg[, power]) factors, e.g.
    mono(("pi", None), ("zeta", 3))  or  mono(("pi", None, 3))."""
    acc: Dict[Tuple[str, Optional[int]], int] = {}
    for f in factors:
        if len(f) == 2:
            key, power = (f[0], f[1]), 1
        else:
            key, power = (f[0], f[1]), f[2]
        acc[key] = acc.get(key, 0) + power
    return tuple(sorted((k, p) for k, p in acc.items() if p))


class ConstExpr:
    """Exact-rational linear combination of constant monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[Monomial, Fraction]] = ()):
        acc: Dict[Monomial, Fraction] = {}
        for m, c in terms:
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        self.terms = {m: c for m, c in acc.items() if c}

    @staticmethod
    def rational(c) -> "ConstExpr":
        return ConstExpr([((), Fraction(c))])

    @staticmethod
    def term(c, *factors) -> "ConstExpr":
        return ConstExpr([(mono(*factors), Fraction(c))])

    def __add__(self, other: "ConstExpr") -> "ConstExpr":
        return ConstExpr(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "ConstExpr") -> "ConstExpr":
        return self + other.scale(-1)

    def scale(self, c) -> "ConstExpr":
        c = Fraction(c)
        if not c:
            return ConstExpr()
        return ConstExpr((m, c * v) for m, v in self.terms.items())

    def __mul__(self, other: "ConstExpr") -> "ConstExpr":
        out = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                acc: Dict[Tuple[str, Optional[int]], int] = {}
                for k, p in m1 + m2:
                    acc[k] = acc.get(k, 0) + p
                out.append((tuple(sorted(acc.items())), c1 * c2))
        return ConstExpr(out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConstExpr) and self.terms == other.terms

    def evaluate(self, digits: int) -> mp.mpf:
        """Numeric value at the current working precision plus guard digits."""
        with mp.workdps(digits + 10):
            total = mp.mpf(0)
            for m, c in self.terms.items():
                v = mp.mpf(c.numerator) / c.denominator
                for (name, arg), p in m:
                    v *= _constant_value(name, arg) ** p
                total += v
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            factors = [str(c)]
            for (name, arg), p in m:
                base = name if arg is None else f"{name}({arg})"
                factors.append(base if p == 1 else f"{base}^{p}")
            parts.append("*".join(factors))
        return " + ".join(parts)
