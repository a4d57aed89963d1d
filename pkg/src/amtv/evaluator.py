"""Arbitrary-precision evaluation of words and T-values.

Every admissible word over {w[-1], w[0], w[1]} expands, by partial
fractions of the three 1-forms, into Gaussian-integer combinations of
iterated integrals with simple-pole letters dt/(t-a), a in {0, +-1, +-i}
("level-4 words").  Those are evaluated by splitting the path at 1/2:

    I_{0->1}(a_1..a_w) = sum_j I_{0->1/2}(a_1..a_j) * I_{1/2->1}(a_{j+1}..a_w)

and mapping each 1/2->1 piece back to a 0->1/2 integral through t -> 1-t,
which reverses the subword, sends each pole a to 1-a, and contributes a
factor (-1)^length (the pullback of dt/(t-a) is dt/(t-(1-a)) read along the
reversed path).  Every 0->1/2 piece starts with a nonzero pole and all its
poles have modulus >= 1, so the prefix power series converge at t = 1/2
at the geometric rate 2^-N with rigorously bounded coefficients.

Truncation order is N = ceil(digits * ln10/ln2) + 64 guard bits; internal
arithmetic carries 15 guard digits; expansion coefficients stay exact
Gaussian rationals until the final assembly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import mpmath as mp

from .cache import ValueCache
from .errors import PrecisionError
from .formal import FormalSum, GaussianRational
from .hp import HPComplex, HPReal
from .words import (
    NEG,
    POS,
    ZERO,
    AdmissibilityError,
    NotationError,
    TIndex,
    Word,
    _shuffle_letters,
    format_word,
    is_admissible,
    is_admissible_word,
    to_word,
)

GUARD_DIGITS = 15
_LN10_LN2 = math.log(10) / math.log(2)

_TOKENS = ("0", "1", "-1", "i", "-i")
_TOKEN_POLE = {"0": (0, 0), "1": (1, 0), "-1": (-1, 0), "i": (0, 1), "-i": (0, -1)}
# i^e -> token, used for fourth roots of unity
_UNIT_TOKEN = {0: "1", 1: "i", 2: "-1", 3: "-i"}


@dataclass(frozen=True)
class Level4Word:
    """Letters dt/(t-a) with a in {0, +-1, +-i}, t->0 end first.

    Integrability over (0,1) requires first != "0" and last != "1"; words
    with a trailing "1" run are kept representable so that the shuffle
    regularization can act on them.
    """

    letters: Tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("level-4 word must be nonempty")
        if any(t not in _TOKEN_POLE for t in self.letters):
            raise ValueError(f"bad letters {self.letters}")
        if self.letters[0] == "0":
            raise ValueError("leading pole 0 is never integrable at 0")

    @property
    def weight(self) -> int:
        return len(self.letters)

    def is_integrable(self) -> bool:
        return self.letters[-1] != "1"

    def __str__(self) -> str:
        return format_level4(self)


def format_level4(v: Level4Word) -> str:
    return ",".join(v.letters)


def parse_level4(text: str) -> Level4Word:
    toks = tuple(text.strip().split(","))
    if not all(t in _TOKEN_POLE for t in toks):
        raise NotationError(f"bad level-4 word {text!r}")
    return Level4Word(toks)


# ---------------------------------------------------------------------------
# letter expansion

_EXPANSION = {
    ZERO: (("0", GaussianRational.of(1)),),
    POS: (("-1", GaussianRational.of(1)), ("1", GaussianRational.of(-1))),
    NEG: (("-i", GaussianRational.of(0, 1)), ("i", GaussianRational.of(0, -1))),
}


def expand_letters(w: Word) -> FormalSum:
    """Distribute the partial fractions of each 1-form over the word.

    w[0] = f0;  w[1] = f(-1) - f(1);  w[-1] = i f(-i) - i f(i).
    Every resulting level-4 word is integrable: the first 1-form is not
    w[0] so the first pole is nonzero, and the last is not w[1] so the
    last pole is never 1.
    """
    if not is_admissible_word(w):
        raise AdmissibilityError(f"non-admissible word {w}")
    acc: List[Tuple[Tuple[str, ...], GaussianRational]] = [((), GaussianRational.of(1))]
    for letter in w.letters:
        nxt = []
        for toks, coeff in acc:
            for tok, c in _EXPANSION[letter]:
                nxt.append((toks + (tok,), coeff * c))
        acc = nxt
    return FormalSum((Level4Word(toks), coeff) for toks, coeff in acc)


# ---------------------------------------------------------------------------
# power-series engine


def _prefix_values(poles: Sequence[Tuple[int, int]], N: int) -> Tuple[List[mp.mpc], List[mp.mpf]]:
    """Prefix integrals I_{0->1/2}(poles[:j]) for j = 0..len(poles).

    Series recurrences per level: integrate-then-divide for pole 0 (needs
    the previous series to vanish at 0, which holds since the first pole is
    nonzero), geometric convolution G_m = (G_{m-1} - c_m)/a for pole a != 0.
    Returns the prefix values and per-level truncation bounds; coefficients
    obey |c_n| <= (n+1)^level since every nonzero pole has modulus >= 1.
    """
    if poles and poles[0] == (0, 0):
        raise ValueError("prefix series need a nonzero first pole")
    half = mp.mpf(1) / 2
    coeffs = [mp.mpc(0)] * (N + 1)
    coeffs[0] = mp.mpc(1)
    values = [mp.mpc(1)]
    tails = [mp.mpf(0)]
    level_tail = 2 * mp.mpf(N + 2) ** 0 * mp.mpf(2) ** (-N)
    for level, (are, aim) in enumerate(poles, start=1):
        new = [mp.mpc(0)] * (N + 1)
        if are == 0 and aim == 0:
            for n in range(1, N + 1):
                new[n] = coeffs[n] / n
        else:
            inva = 1 / mp.mpc(are, aim)
            g = mp.mpc(0)
            for m in range(N):
                g = (g - coeffs[m]) * inva
                new[m + 1] = g / (m + 1)
        coeffs = new
        acc = mp.mpc(0)
        for c in reversed(coeffs):
            acc = acc * half + c
        values.append(acc)
        level_tail = 2 * mp.mpf(N + 2) ** level * mp.mpf(2) ** (-N)
        tails.append(level_tail)
    return values, tails


def _compose_at_half(poles: Tuple[Tuple[int, int], ...], digits: int) -> HPComplex:
    """Full-path integral via the composition at 1/2 (see module docstring)."""
    w = len(poles)
    N = int(math.ceil(digits * _LN10_LN2)) + 64
    P, tailP = _prefix_values(poles, N)
    tpoles = tuple((1 - re, -im) for (re, im) in reversed(poles))
    Q, tailQ = _prefix_values(tpoles, N)
    total = mp.mpc(0)
    err = mp.mpf(0)
    for j in range(w + 1):
        k = w - j
        term = P[j] * Q[k]
        total = total - term if k % 2 else total + term
        err += abs(P[j]) * tailQ[k] + abs(Q[k]) * tailP[j] + tailP[j] * tailQ[k]
    err += mp.mpf(10) ** (-(digits + 8))
    return HPComplex(total.real, total.imag, err)


def eval_level4(v: Level4Word, digits: int, cache: Optional[ValueCache] = None) -> HPComplex:
    """Iterated integral of a level-4 word over (0,1) to the given digits."""
    if not v.is_integrable():
        raise AdmissibilityError(f"non-integrable level-4 word {v}")
    key = "l4:" + format_level4(v)
    if cache is not None:
        hit = cache.get(key, digits)
        if hit is not None:
            return hit
    with mp.workdps(digits + GUARD_DIGITS):
        poles = tuple(_TOKEN_POLE[t] for t in v.letters)
        out = _compose_at_half(poles, digits)
        if out.err > mp.mpf(10) ** (-digits):
            raise PrecisionError(f"level-4 evaluation of {v} reached only {out.err}")
    if cache is not None:
        cache.put(key, _claimed_digits(out.err, digits), out)
    return out


def _claimed_digits(err: mp.mpf, requested: int) -> int:
    if err == 0:
        return requested + GUARD_DIGITS
    return max(requested, int(mp.floor(-mp.log10(err))))


# ---------------------------------------------------------------------------
# word and T-value evaluation


def eval_word(w: Word, digits: int, cache: Optional[ValueCache] = None) -> HPComplex:
    """I(w): the iterated integral of an admissible word over (0,1)."""
    key = format_word(w)
    if cache is not None:
        hit = cache.get(key, digits)
        if hit is not None:
            return hit
    expansion = expand_letters(w)
    with mp.workdps(digits + GUARD_DIGITS):
        total = HPComplex.zero()
        inner_digits = digits + 2
        for v, coeff in expansion:
            total = total + eval_level4(v, inner_digits, cache).scale_gaussian(coeff)
    if cache is not None:
        cache.put(key, _claimed_digits(total.err, digits), total)
    return total


def eval_T(ix: TIndex, digits: int, cache: Optional[ValueCache] = None) -> HPReal:
    """T-value of an admissible signed composition, with error radius.

    The assembled word integral must be real up to noise: an imaginary
    residual above 10^-(digits-3) signals an implementation bug upstream
    and raises rather than being silently discarded.
    """
    if not is_admissible(ix):
        raise AdmissibilityError(f"non-admissible index {ix}")
    sign, w = to_word(ix)
    val = eval_word(w, digits, cache)
    with mp.workdps(digits + GUARD_DIGITS):
        real = val.real_part(digits)
        return HPReal(real.value * sign, real.err)


def eval_tsum(fs: FormalSum, digits: int, cache: Optional[ValueCache] = None) -> HPReal:
    """Evaluate a formal sum of T-indices with exact rational coefficients."""
    with mp.workdps(digits + GUARD_DIGITS):
        total = mp.mpf(0)
        err = mp.mpf(0)
        for ix, coeff in fs:
            c = mp.mpf(coeff.numerator) / coeff.denominator
            hv = eval_T(ix, digits, cache)
            total += c * hv.value
            err += abs(c) * hv.err
        return HPReal(total, err)


# ---------------------------------------------------------------------------
# colored multiple zeta values at fourth roots of unity


def _unit_exponent(eta: Union[int, complex, str]) -> int:
    """Normalize a fourth root of unity to its exponent e with eta = i^e."""
    table = {1: 0, 1j: 1, -1: 2, -1j: 3, "1": 0, "i": 1, "-1": 2, "-i": 3}
    if isinstance(eta, complex):
        key = complex(eta)
    elif eta in (1, -1):
        key = int(eta)
    else:
        key = str(eta)
    if key not in table:
        raise ValueError(f"{eta!r} is not a fourth root of unity")
    return table[key]


def li_word(ks: Sequence[int], etas: Sequence[Union[int, complex, str]]) -> Tuple[int, Level4Word]:
    """Level-4 word of Li_{k}(etas):  (-1)^depth * I(word) = Li.

    The pole of block j is the inverse of the tail product eta_j...eta_r;
    the remaining k_j - 1 letters of the block are poles at 0.
    """
    ks = tuple(ks)
    es = [_unit_exponent(e) for e in etas]
    if len(ks) != len(es) or not ks:
        raise ValueError("ks and etas must be nonempty, equal length")
    letters: List[str] = []
    tail = 0
    tails = []
    for e in reversed(es):
        tail = (tail + e) % 4
        tails.append(tail)
    tails.reverse()
    for k, te in zip(ks, tails):
        letters.append(_UNIT_TOKEN[(-te) % 4])
        letters.extend(["0"] * (k - 1))
    return (-1) ** len(ks), Level4Word(tuple(letters))


def eval_colored_mzv(
    ks: Sequence[int],
    etas: Sequence[Union[int, complex, str]],
    digits: int,
    cache: Optional[ValueCache] = None,
    regularized: bool = False,
) -> HPComplex:
    """Li_{k1..kr}(eta1..etar) for fourth roots of unity.

    Requires (k_r, eta_r) != (1, 1) unless `regularized`, in which case the
    divergent trailing-one words are given their shuffle-regularized values
    (the regularization that assigns 0 to the integral of the single letter
    f(1); products then agree with the shuffle relations).
    """
    ks = tuple(ks)
    es = [_unit_exponent(e) for e in etas]
    if not regularized and ks[-1] == 1 and es[-1] == 0:
        raise AdmissibilityError("(k_r, eta_r) = (1, 1) is not admissible")
    sign, v = li_word(ks, etas)
    with mp.workdps(digits + GUARD_DIGITS):
        val = eval_level4_reg(v, digits, cache) if regularized else eval_level4(v, digits, cache)
        out = val.scale_fraction(Fraction(sign))
    return out


# ---------------------------------------------------------------------------
# shuffle regularization for trailing-one words


def shuffle_level4(u: Level4Word, v: Level4Word) -> FormalSum:
    return FormalSum(
        (Level4Word(t), Fraction(c)) for t, c in _shuffle_letters(u.letters, v.letters)
    )


def eval_level4_reg(v: Level4Word, digits: int, cache: Optional[ValueCache] = None) -> HPComplex:
    """Shuffle-regularized value of a level-4 word (reg of f(1) is 0).

    For w = u f(1)^m with u not ending in f(1), the shuffle identity
    u f(1)^(m-1) sha f(1) = m * w + (words with < m trailing ones) and
    reg(f(1)) = 0 give  reg(w) = -(1/m) * sum of the other words' regs.
    """
    memo: Dict[Tuple[str, ...], HPComplex] = {}

    def rec(letters: Tuple[str, ...]) -> HPComplex:
        if letters in memo:
            return memo[letters]
        if letters[-1] != "1":
            out = eval_level4(Level4Word(letters), digits, cache)
        elif len(letters) == 1:
            out = HPComplex.zero()
        else:
            m = 0
            while m < len(letters) and letters[-1 - m] == "1":
                m += 1
            base = letters[:-1]
            total = HPComplex.zero()
            for toks, c in _shuffle_letters(base, ("1",)):
                if toks == letters:
                    continue
                total = total + rec(toks).scale_fraction(Fraction(c))
            out = total.scale_fraction(Fraction(-1, m))
        memo[letters] = out
        return out

    with mp.workdps(digits + GUARD_DIGITS):
        return rec(v.letters)
