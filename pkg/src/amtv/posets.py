"""3-labeled posets, their integral expansion into words, and the
alternating psi-values at positive integer arguments.

A finite poset with labels in {-1, 0, 1} encodes a multiple integral over
its order polytope with the 1-form w[label] attached to each coordinate.
Resolving one incomparable pair (a, b) at a time via

    I(X) = I(X with a<b) + I(X with b<a)

terminates in total orders, i.e. plain words (minimum element first).

The alternating psi-function evaluated at integer s = p+1 expands over the
two-chain poset whose left chain is the word of (k_vec, all bars) plus a
top circle and whose right chain is p bullets labeled +1 under the same
top circle; the words of the expansion are the interleavings of the two
chains below the top element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import mpmath as mp

from .errors import PrecisionError
from .formal import FormalSum
from .series import ErrBound
from .words import NEG, POS, ZERO, TIndex, Word, _shuffle_letters, from_word


@dataclass(frozen=True)
class Poset3:
    """Strict partial order on hashable elements with labels in {-1,0,1}."""

    elements: Tuple
    less: FrozenSet[Tuple]  # transitively closed set of (a, b) pairs, a < b
    labels: Dict

    def __post_init__(self):
        for a, b in self.less:
            if (b, a) in self.less or a == b:
                raise ValueError("order must be irreflexive and antisymmetric")
        for a, b in self.less:
            for c, d in self.less:
                if b == c and (a, d) not in self.less:
                    raise ValueError("order must be transitively closed")
        if set(self.labels) != set(self.elements):
            raise ValueError("labels must cover all elements")
        if any(v not in (-1, 0, 1) for v in self.labels.values()):
            raise ValueError("labels must lie in {-1,0,1}")

    def __hash__(self):
        return hash((self.elements, self.less, tuple(sorted(self.labels.items()))))

    def maximal(self) -> List:
        return [e for e in self.elements if not any(a == e for a, _ in self.less)]

    def minimal(self) -> List:
        return [e for e in self.elements if not any(b == e for _, b in self.less)]


def poset_from_chains(chains: Sequence[Sequence[int]], labels: Dict) -> Poset3:
    """Union of disjoint-or-overlapping ascending chains, closed transitively."""
    cover = []
    for ch in chains:
        cover.extend((ch[i], ch[i + 1]) for i in range(len(ch) - 1))
    elems = tuple(sorted(labels))
    return poset_from_cover(elems, cover, labels)


def poset_from_cover(elements: Sequence, cover: Sequence[Tuple], labels: Dict) -> Poset3:
    less = set()
    adj: Dict = {e: set() for e in elements}
    for a, b in cover:
        adj[a].add(b)
    # transitive closure by DFS from each node
    for e in elements:
        stack = list(adj[e])
        seen = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v])
        for v in seen:
            less.add((e, v))
    return Poset3(tuple(elements), frozenset(less), dict(labels))


def poset_admissible(X: Poset3) -> bool:
    """Labels must avoid 1 on maximal and 0 on minimal elements
    (equivalently: the associated integral converges)."""
    return all(X.labels[e] != 1 for e in X.maximal()) and all(
        X.labels[e] != 0 for e in X.minimal()
    )


def _maximal_word(X: Poset3) -> Optional[Word]:
    """The word of X if X is a total order, else None."""
    n = len(X.elements)
    if len(X.less) != n * (n - 1) // 2:
        return None
    rank = {e: 0 for e in X.elements}
    for a, b in X.less:
        rank[b] += 1
    ordered = sorted(X.elements, key=lambda e: rank[e])
    return Word(tuple(X.labels[e] for e in ordered))


def expand_poset(
    X: Poset3,
    pivot: Optional[Callable[[Poset3, List[Tuple]], Tuple]] = None,
) -> FormalSum:
    """I(X) as an exact sum of words, resolving incomparable pairs.

    The default pivot takes the lexicographically smallest incomparable
    pair by element id; the result is pivot-independent.
    """
    if not poset_admissible(X):
        raise ValueError("poset is not admissible")

    def rec(less: FrozenSet) -> FormalSum:
        Y = Poset3(X.elements, less, X.labels)
        w = _maximal_word(Y)
        if w is not None:
            return FormalSum.single(w, Fraction(1))
        pairs = [
            (a, b)
            for i, a in enumerate(X.elements)
            for b in X.elements[i + 1 :]
            if (a, b) not in less and (b, a) not in less
        ]
        a, b = pivot(Y, pairs) if pivot else min(pairs)
        return rec(_adjoin(less, a, b)) + rec(_adjoin(less, b, a))

    return rec(X.less)


def _adjoin(less: FrozenSet, a, b) -> FrozenSet:
    """Transitive closure of less + {a < b}."""
    below_a = {x for x, y in less if y == a} | {a}
    above_b = {y for x, y in less if x == b} | {b}
    return frozenset(set(less) | {(x, y) for x in below_a for y in above_b})


def linear_extension_count(X: Poset3) -> int:
    """Brute-force count of linear extensions (oracle for small posets)."""
    import itertools

    n = len(X.elements)
    count = 0
    for perm in itertools.permutations(X.elements):
        pos = {e: i for i, e in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in X.less):
            count += 1
    return count


# ---------------------------------------------------------------------------
# the alternating psi-function at integer arguments


def psi_bar_poset(ks: Sequence[int], p: int) -> Poset3:
    """Two-chain poset whose integral equals psi(ks; p+1).

    Left chain: per k_j a bullet labeled -1 then k_j - 1 circles; a final
    top circle.  Right chain: p bullets labeled +1, totally ordered, below
    the same top circle.
    """
    ks = tuple(ks)
    if not ks or any(k < 1 for k in ks):
        raise ValueError("ks must be a nonempty composition")
    labels = {}
    left = []
    nid = 0
    for k in ks:
        labels[nid] = -1
        left.append(nid)
        nid += 1
        for _ in range(k - 1):
            labels[nid] = 0
            left.append(nid)
            nid += 1
    top = nid
    labels[top] = 0
    left.append(top)
    nid += 1
    right = []
    for _ in range(p):
        labels[nid] = 1
        right.append(nid)
        nid += 1
    right.append(top)
    return poset_from_chains([left, right], labels)


def psi_bar_symbolic(ks: Sequence[int], p: int) -> FormalSum:
    """psi(ks; p+1) as an exact sum of T-values.

    Expands the two-chain poset by direct interleaving of the two chains
    below the top circle (the same result as expand_poset, computed with
    binomially many terms), then converts each word through the
    word -> composition dictionary, signs included.
    """
    ks = tuple(ks)
    if not ks or any(k < 1 for k in ks):
        raise ValueError("ks must be a nonempty composition")
    if p < 0:
        raise ValueError("p must be >= 0")
    left: List[int] = []
    for k in ks:
        left.append(NEG)
        left.extend([ZERO] * (k - 1))
    out = []
    for letters, c in _shuffle_letters(tuple(left), (POS,) * p):
        sign, ix = from_word(Word(letters + (ZERO,)))
        out.append((ix, Fraction(c * sign)))
    return FormalSum(out)


def psi_bar_term_count(ks: Sequence[int], p: int) -> int:
    return math.comb(sum(ks) + p, p)


# ---------------------------------------------------------------------------
# quadrature oracle


def _b_letters(ks: Tuple[int, ...]) -> List[str]:
    letters: List[str] = []
    for k in ks:
        letters.append("b")  # 2dt/(1+t^2)
        letters.extend("z" * (k - 1))  # dt/t
    return letters


def _b_series_at_zero(letters: Sequence[str], N: int) -> List[List[mp.mpf]]:
    """Taylor coefficients at 0 of every letter-prefix of the B-kernel.

    Recurrences per letter: for 2/(1+t^2), G(1+t^2) = 2F gives
    G_n = 2 c_n - G_{n-2} and integration divides by the index; for dt/t
    the previous series (which vanishes at 0) is divided by the index.
    """
    coeffs = [mp.mpf(0)] * (N + 1)
    coeffs[0] = mp.mpf(1)
    levels = []
    for letter in letters:
        new = [mp.mpf(0)] * (N + 1)
        if letter == "b":
            g_prev2, g_prev1 = mp.mpf(0), mp.mpf(0)
            for n in range(N):
                g = 2 * coeffs[n] - g_prev2
                new[n + 1] = g / (n + 1)
                g_prev2, g_prev1 = g_prev1, g
        else:
            for n in range(1, N + 1):
                new[n] = coeffs[n] / n
        coeffs = new
        levels.append(list(coeffs))
    return levels


def _horner(series: Sequence[mp.mpf], x: mp.mpf) -> mp.mpf:
    acc = mp.mpf(0)
    for c in reversed(series):
        acc = acc * x + c
    return acc


def _b_series_recentred(
    letters: Sequence[str], zero_levels: List[List[mp.mpf]], c: mp.mpf, N: int
) -> List[mp.mpf]:
    """Taylor coefficients of the full B-kernel around t = c.

    Each layer satisfies dB_j/dt = g(t) B_{j-1}(t) with g one of 2/(1+t^2)
    or 1/t; the layer series at c follow by Cauchy products against the
    pole expansions 1/(t-a) = sum (-1)^n (t-c)^n / (c-a)^(n+1), with
    initial values at t = c taken from the zero-centred prefix series
    (every B-prefix is analytic in |t - c| < |c - i|, the branch points
    sitting at +-i only).
    """

    def pole_series(a: mp.mpc) -> List[mp.mpc]:
        out = [1 / (c - a)]
        for _ in range(N):
            out.append(-out[-1] / (c - a))
        return out

    two_over = [
        (mp.mpc(0, -1) * pi + mp.mpc(0, 1) * qi).real
        for pi, qi in zip(pole_series(mp.mpc(0, 1)), pole_series(mp.mpc(0, -1)))
    ]
    inv_t = [x.real for x in pole_series(mp.mpc(0))]

    prev = [mp.mpf(1)] + [mp.mpf(0)] * N
    for letter, zser in zip(letters, zero_levels):
        g = two_over if letter == "b" else inv_t
        new = [_horner(zser, c)]
        for n in range(1, N + 1):
            conv = mp.fsum(g[k] * prev[n - 1 - k] for k in range(n))
            new.append(conv / n)
        prev = new
    return prev


def b_kernel(ks: Sequence[int], digits: int) -> Callable[[mp.mpf], mp.mpf]:
    """Evaluator of the B-kernel of psi (iterated integral from 0 to x).

    Two expansion centres cover [0, 1]: the series at 0 (used for
    x <= 0.55, geometric rate <= 0.55) and a series at 3/4 (used above,
    rate <= (1/4)/|3/4 - i| = 1/5 up to x = 1).
    """
    ks = tuple(ks)
    letters = _b_letters(ks)
    n_zero = int(math.ceil(digits * math.log(10) / math.log(4 / 3))) + 30
    zero_levels = _b_series_at_zero(letters, n_zero)
    c = mp.mpf(3) / 4
    n_c = int(math.ceil(digits * math.log(10) / math.log(5))) + 20
    centred = _b_series_recentred(letters, zero_levels, c, n_c)
    series_at_zero = zero_levels[-1]

    def B(x: mp.mpf) -> mp.mpf:
        if x <= mp.mpf("0.55"):
            return _horner(series_at_zero, x)
        return _horner(centred, x - c)

    return B


def psi_bar_quadrature(ks: Sequence[int], p: int, digits: int = 12) -> ErrBound:
    """Direct quadrature of psi(ks; p+1) through its kernel integral:

        (-1)^p / p! * int_0^1 log^p((1-x)/(1+x)) B(ks; x) / x dx.

    Oracle tier: digits <= 15.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    if digits > 15:
        raise PrecisionError("quadrature oracle supports at most 15 digits")
    with mp.workdps(digits + 12):
        B = b_kernel(ks, digits + 6)

        def integrand(x: mp.mpf) -> mp.mpf:
            lg = mp.log((1 - x) / (1 + x)) ** p if p else mp.mpf(1)
            return lg * B(x) / x

        val, quad_err = mp.quad(integrand, [0, mp.mpf(3) / 4, 1], error=True)
        val *= mp.mpf((-1) ** p) / mp.factorial(p)
        bound = float(4 * quad_err + mp.mpf(10) ** (-(digits + 3)))
        if bound > 10.0 ** (-digits):
            raise PrecisionError(f"quadrature reached only {bound:.3g}")
        return ErrBound(float(val), bound)
