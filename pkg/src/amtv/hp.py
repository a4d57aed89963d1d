"""Arbitrary-precision values carrying an explicit absolute error radius.

Arithmetic propagates error bounds conservatively; the radii are tracked as
mpf so they survive far-underflow ranges (e.g. 1e-400 at 400 digits).
All operations assume the current mpmath working precision is at least the
precision the operands were produced at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .formal import GaussianRational


def _as_mpf_frac(q: Fraction) -> mp.mpf:
    return mp.mpf(q.numerator) / q.denominator


@dataclass
class HPReal:
    value: mp.mpf
    err: mp.mpf

    def __post_init__(self):
        if self.err < 0 or not mp.isfinite(self.err):
            raise ValueError("error radius must be finite and nonnegative")

    def claimed_digits(self) -> int:
        """Largest d with err <= 10^-d (0 if none)."""
        if self.err == 0:
            return mp.mp.dps
        return max(0, int(mp.floor(-mp.log10(self.err))))

    def __str__(self) -> str:
        return f"{mp.nstr(self.value, 20)} (+-{mp.nstr(self.err, 3)})"


@dataclass
class HPComplex:
    re: mp.mpf
    im: mp.mpf
    err: mp.mpf

    @staticmethod
    def zero() -> "HPComplex":
        return HPComplex(mp.mpf(0), mp.mpf(0), mp.mpf(0))

    @staticmethod
    def exact(re, im=0) -> "HPComplex":
        return HPComplex(mp.mpf(re), mp.mpf(im), mp.mpf(0))

    def to_mpc(self) -> mp.mpc:
        return mp.mpc(self.re, self.im)

    def modulus_bound(self) -> mp.mpf:
        return mp.hypot(self.re, self.im) + self.err

    def __add__(self, other: "HPComplex") -> "HPComplex":
        return HPComplex(self.re + other.re, self.im + other.im, self.err + other.err)

    def __sub__(self, other: "HPComplex") -> "HPComplex":
        return HPComplex(self.re - other.re, self.im - other.im, self.err + other.err)

    def __neg__(self) -> "HPComplex":
        return HPComplex(-self.re, -self.im, self.err)

    def __mul__(self, other: "HPComplex") -> "HPComplex":
        a, b = self.to_mpc(), other.to_mpc()
        prod = a * b
        err = abs(a) * other.err + abs(b) * self.err + self.err * other.err
        return HPComplex(prod.real, prod.imag, err)

    def scale_gaussian(self, g: GaussianRational) -> "HPComplex":
        gre, gim = _as_mpf_frac(g.re), _as_mpf_frac(g.im)
        re = self.re * gre - self.im * gim
        im = self.re * gim + self.im * gre
        return HPComplex(re, im, self.err * mp.hypot(gre, gim))

    def scale_fraction(self, q: Fraction) -> "HPComplex":
        f = _as_mpf_frac(q)
        return HPComplex(self.re * f, self.im * f, self.err * abs(f))

    def real_part(self, digits: int) -> HPReal:
        """Extract the real part, insisting the imaginary part is noise.

        Raises if |im| exceeds 10^-(digits-3) + err: for values that are
        real on mathematical grounds this signals an implementation bug.
        """
        tol = mp.mpf(10) ** (-(digits - 3)) + self.err
        if abs(self.im) > tol:
            raise ArithmeticError(
                f"imaginary residual {mp.nstr(self.im, 5)} exceeds threshold {mp.nstr(tol, 5)}"
            )
        return HPReal(self.re, self.err + abs(self.im))

    def __str__(self) -> str:
        return f"({mp.nstr(self.re, 20)} + {mp.nstr(self.im, 20)}i) (+-{mp.nstr(self.err, 3)})"
