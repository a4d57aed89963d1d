"""Signed compositions, integration words, and their algebra.

A T-value T(k_1,...,k_r; s_1,...,s_r) is indexed by a signed composition
(TIndex).  Its iterated-integral encoding is a word over the three 1-forms

    w[-1] = 2dt/(1+t^2),   w[0] = dt/t,   w[1] = 2dt/(1-t^2),

stored with the letter nearest t=0 first.  A word is admissible when its
first letter is not w[0] and its last letter is not w[1]; a TIndex is
admissible when (k_r, s_r) != (1, +1).  The maps between the two carry an
explicit sign so that   T(ix) = sign * I(word)   where I is the iterated
integral over 0 < t_1 < ... < t_n < 1.

Text notation (bit-exact, used by the CLI and the value cache):
  TIndex:  comma-separated nonzero ints, negative = barred ("1,-2").
  Word:    string over {m, z, p} for letters w[-1], w[0], w[1] ("mz").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Tuple

from .formal import FormalSum

NEG, ZERO, POS = -1, 0, 1

_LETTER_CHAR = {NEG: "m", ZERO: "z", POS: "p"}
_CHAR_LETTER = {v: k for k, v in _LETTER_CHAR.items()}
# serialization order NEG < ZERO < POS
_LETTER_RANK = {NEG: 0, ZERO: 1, POS: 2}


class NotationError(ValueError):
    """Raised when text notation cannot be parsed."""


class AdmissibilityError(ValueError):
    """Raised when an operation requires an admissible index or word."""


@dataclass(frozen=True)
class TIndex:
    """Signed composition (k_1..k_r; s_1..s_r) with k_j >= 1 and s_j = +-1."""

    ks: Tuple[int, ...]
    sigmas: Tuple[int, ...]

    def __post_init__(self):
        if len(self.ks) != len(self.sigmas) or not self.ks:
            raise ValueError("ks and sigmas must be nonempty and equal length")
        if any(k < 1 for k in self.ks):
            raise ValueError("exponents must be positive integers")
        if any(s not in (-1, 1) for s in self.sigmas):
            raise ValueError("signs must be +1 or -1")

    @property
    def weight(self) -> int:
        return sum(self.ks)

    @property
    def depth(self) -> int:
        return len(self.ks)

    def sigma_tails(self) -> Tuple[int, ...]:
        """Tail products s'_j = s_j s_{j+1} ... s_r."""
        tails = []
        acc = 1
        for s in reversed(self.sigmas):
            acc *= s
            tails.append(acc)
        return tuple(reversed(tails))

    def __str__(self) -> str:
        return format_tindex(self)


@dataclass(frozen=True)
class Word:
    """Nonempty sequence of letters in {-1, 0, +1}, t->0 end first."""

    letters: Tuple[int, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("word must be nonempty")
        if any(l not in (-1, 0, 1) for l in self.letters):
            raise ValueError("letters must lie in {-1, 0, 1}")

    @property
    def weight(self) -> int:
        return len(self.letters)

    def counts(self) -> Tuple[int, int, int]:
        """(alpha, beta, gamma) = (#ZERO, #POS, #NEG)."""
        a = self.letters.count(ZERO)
        b = self.letters.count(POS)
        return a, b, len(self.letters) - a - b

    def __str__(self) -> str:
        return format_word(self)


# ---------------------------------------------------------------------------
# notation


def format_tindex(ix: TIndex) -> str:
    return ",".join(str(k * s) for k, s in zip(ix.ks, ix.sigmas))


def parse_tindex(text: str) -> TIndex:
    try:
        vals = [int(tok) for tok in text.strip().split(",")]
    except ValueError as exc:
        raise NotationError(f"bad composition {text!r}") from exc
    if not vals or any(v == 0 for v in vals):
        raise NotationError(f"bad composition {text!r}: entries must be nonzero")
    return TIndex(tuple(abs(v) for v in vals), tuple(1 if v > 0 else -1 for v in vals))


def format_word(w: Word) -> str:
    return "".join(_LETTER_CHAR[l] for l in w.letters)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text or any(ch not in _CHAR_LETTER for ch in text):
        raise NotationError(f"bad word {text!r}: expected a string over m/z/p")
    return Word(tuple(_CHAR_LETTER[ch] for ch in text))


def word_sort_key(w: Word) -> Tuple[int, ...]:
    return tuple(_LETTER_RANK[l] for l in w.letters)


# ---------------------------------------------------------------------------
# admissibility and the composition <-> word dictionary


def is_admissible(ix: TIndex) -> bool:
    """Convergence condition: (k_r, s_r) != (1, +1)."""
    return not (ix.ks[-1] == 1 and ix.sigmas[-1] == 1)


def is_admissible_word(w: Word) -> bool:
    return w.letters[0] != ZERO and w.letters[-1] != POS


def to_word(ix: TIndex) -> Tuple[int, Word]:
    """Map a signed composition to (sign, word) with T(ix) = sign * I(word).

    The word is w[s'_1] w[0]^{k_1-1} ... w[s'_r] w[0]^{k_r-1} and the sign
    is the product of the tail sign products s'_j.
    """
    if not is_admissible(ix):
        raise AdmissibilityError(f"non-admissible index {ix}")
    tails = ix.sigma_tails()
    letters: List[int] = []
    sign = 1
    for k, sp in zip(ix.ks, tails):
        sign *= sp
        letters.append(POS if sp == 1 else NEG)
        letters.extend([ZERO] * (k - 1))
    return sign, Word(tuple(letters))


def from_word(w: Word) -> Tuple[int, TIndex]:
    """Inverse dictionary: word -> (sign, TIndex) with T(ix) = sign * I(w)."""
    if not is_admissible_word(w):
        raise AdmissibilityError(f"non-admissible word {w}")
    ss: List[int] = []
    ks: List[int] = []
    for l in w.letters:
        if l == ZERO:
            ks[-1] += 1
        else:
            ss.append(1 if l == POS else -1)
            ks.append(1)
    sign = 1
    sigmas = []
    for j, s in enumerate(ss):
        sign *= s
        sigmas.append(s * ss[j + 1] if j + 1 < len(ss) else s)
    return sign, TIndex(tuple(ks), tuple(sigmas))


# ---------------------------------------------------------------------------
# duality


_DUAL_SWAP = {ZERO: POS, POS: ZERO, NEG: NEG}


def dual_word(w: Word) -> Word:
    """Involution induced by t -> (1-t)/(1+t): reverse, swap w[0] <-> w[1]."""
    if not is_admissible_word(w):
        raise AdmissibilityError(f"non-admissible word {w}")
    return Word(tuple(_DUAL_SWAP[l] for l in reversed(w.letters)))


def dual(ix: TIndex) -> TIndex:
    """Dual index with T(ix) = T(dual(ix)); an involution."""
    _, w = to_word(ix)
    _, ix_star = from_word(dual_word(w))
    return ix_star


# ---------------------------------------------------------------------------
# shuffle algebra


@lru_cache(maxsize=None)
def _shuffle_letters(u: Tuple[int, ...], v: Tuple[int, ...]):
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc = {}
    for rest, c in _shuffle_letters(u[1:], v):
        key = (u[0],) + rest
        acc[key] = acc.get(key, 0) + c
    for rest, c in _shuffle_letters(u, v[1:]):
        key = (v[0],) + rest
        acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def shuffle(u: Word, v: Word) -> FormalSum:
    """Shuffle product: sum over all order-preserving interleavings."""
    return FormalSum(
        (Word(letters), Fraction(c)) for letters, c in _shuffle_letters(u.letters, v.letters)
    )


def product_as_T(a: TIndex, b: TIndex) -> FormalSum:
    """Expand T(a)*T(b) as an exact sum of T-values via the shuffle relation."""
    sa, wa = to_word(a)
    sb, wb = to_word(b)
    out = []
    for w, c in shuffle(wa, wb):
        sw, ix = from_word(w)
        out.append((ix, Fraction(sa * sb * sw) * c))
    return FormalSum(out)


# ---------------------------------------------------------------------------
# enumeration and canonical (dual-dedup) representatives


def enumerate_words(weight: int) -> List[Word]:
    """All admissible words of the given weight, in serialization order.

    Weight 1 is the single word "m": it is the only length-1 word whose
    single letter passes both the first-letter and last-letter rules.
    For weight >= 2 the count is 4 * 3^(weight-2).
    """
    if weight < 1:
        raise ValueError("weight must be >= 1")
    if weight == 1:
        return [Word((NEG,))]
    words = []
    for first in (NEG, POS):
        for mid in itertools.product((NEG, ZERO, POS), repeat=weight - 2):
            for last in (NEG, ZERO):
                words.append(Word((first,) + mid + (last,)))
    return sorted(words, key=word_sort_key)


def is_self_dual(w: Word) -> bool:
    return dual_word(w) == w


def _first_zero_index(w: Word) -> int:
    try:
        return w.letters.index(ZERO)
    except ValueError:
        return len(w.letters)  # no zero letter: sorts last


def canonical_rep(w: Word) -> Word:
    """Pick one word per dual pair {w, dual(w)}.

    Rule: prefer the word with 2*alpha <= weight - gamma (i.e. alpha <= beta);
    on ties prefer the earlier first w[0] letter, then the smaller
    serialization.  The choice is symmetric in the pair, so it induces a
    well-defined set of representatives.
    """
    d = dual_word(w)
    aw = w.counts()[0]
    ad = d.counts()[0]
    if aw != ad:
        return w if aw < ad else d
    if _first_zero_index(w) != _first_zero_index(d):
        return w if _first_zero_index(w) < _first_zero_index(d) else d
    return min(w, d, key=word_sort_key)


def canonical_words(weight: int) -> List[Word]:
    """Dual-deduplicated admissible words; count is 2*3^(w-2) + 3^floor(w/2-1)."""
    reps = {canonical_rep(w) for w in enumerate_words(weight)}
    return sorted(reps, key=word_sort_key)


def expected_word_count(weight: int) -> int:
    return 1 if weight == 1 else 4 * 3 ** (weight - 2)


def expected_canonical_count(weight: int) -> int:
    if weight == 1:
        return 1
    return 2 * 3 ** (weight - 2) + 3 ** (weight // 2 - 1)


def enumerate_tindices(weight: int) -> Iterator[TIndex]:
    """All admissible signed compositions of the given weight."""
    for w in enumerate_words(weight):
        yield from_word(w)[1]
