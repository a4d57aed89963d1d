"""Exact finite harmonic sums and low-precision series oracles.

This module is the brute-force tier: direct summation of the defining
series with certified (conservative) error bounds, exact T/S-harmonic sums,
weighted sums of T-values as formal symbol sums, and the closed-form
right-hand sides of the log-moment integral identities.  High precision
lives in the evaluator module; everything here is float64/Fraction.

The finite sums T_n(k_1..k_m) and S_n(k_1..k_m) run over interlaced
chains n_1 (rel) n_2 (rel) ... (rel) n, where the relations alternate
between <= and <.  For the T-chains the relations are <=, <, <=, ... and
odd positions carry denominators (2n_j - 1), even positions (2n_j); the
final bound is n_m <= n for odd depth and n_m < n for even depth.  The
S-chains swap both patterns.  Both carry the prefactor 2^depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Sequence, Tuple

import mpmath as mp
import numpy as np

from .constants import ConstExpr
from .errors import PrecisionError
from .formal import FormalSum
from .words import TIndex

DEFAULT_TERM_BUDGET = 2_000_000

# Accumulations run in extended precision (80-bit on x86) so the rounding
# term of the certified bounds stays far below the truncation term.
_LD = np.longdouble
_EPS_LD = float(np.finfo(_LD).eps)


def _rounding_slack(n_terms: int, abs_sum: float) -> float:
    return 4.0 * n_terms * _EPS_LD * abs_sum + 1e-300


@dataclass
class ErrBound:
    """A float value together with a certified absolute error radius."""

    value: float
    bound: float

    def __post_init__(self):
        if not (self.bound >= 0 and math.isfinite(self.bound)):
            raise ValueError("bound must be finite and nonnegative")


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All ordered compositions of `total` into `parts` positive integers."""
    if parts < 1 or total < parts:
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# multiple T/S-harmonic sums


def _chain_spec(kind: str, depth: int):
    """Relations and denominator parities for a T- or S-chain.

    Returns (rel, final_rel, den) where rel[j] is True if n_{j+1} <= n_{j+2}
    is weak (position j, 0-based), final_rel is True if n_m <= n is weak,
    and den(j, v) is the denominator base at 0-based position j.
    """
    if kind == "T":
        rel = [j % 2 == 0 for j in range(depth - 1)]
        final_weak = depth % 2 == 1
        den = lambda j, v: 2 * v - 1 if j % 2 == 0 else 2 * v
    elif kind == "S":
        rel = [j % 2 == 1 for j in range(depth - 1)]
        final_weak = depth % 2 == 0
        den = lambda j, v: 2 * v if j % 2 == 0 else 2 * v - 1
    else:
        raise ValueError(f"kind must be 'T' or 'S', got {kind!r}")
    return rel, final_weak, den


def harmonic_sum(kind: str, n: int, ks: Sequence[int]) -> Fraction:
    """Exact T_n(ks) or S_n(ks); empty ks gives 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ks = tuple(ks)
    if not ks:
        return Fraction(1)
    depth = len(ks)
    rel, final_weak, den = _chain_spec(kind, depth)
    top = n if final_weak else n - 1
    if top < 1:
        return Fraction(0)
    # F[v] = sum over admissible chains ending at n_j = v of the partial product
    F = [Fraction(0)] * (top + 1)
    for v in range(1, top + 1):
        F[v] = Fraction(1, den(0, v) ** ks[0])
    for j in range(1, depth):
        prefix = [Fraction(0)] * (top + 1)
        acc = Fraction(0)
        for v in range(1, top + 1):
            if rel[j - 1]:
                acc += F[v]
                prefix[v] = acc
            else:
                prefix[v] = acc
                acc += F[v]
        F = [
            prefix[v] / den(j, v) ** ks[j] if prefix[v] else Fraction(0)
            for v in range(top + 1)
        ]
    return Fraction(2) ** depth * sum(F, Fraction(0))


def _harmonic_prefix_array(kind: str, ks: Sequence[int], N: int) -> np.ndarray:
    """float64 array H with H[v-1] = T_v(ks) (or S_v) for v = 1..N."""
    ks = tuple(ks)
    if not ks:
        return np.ones(N, dtype=_LD)
    depth = len(ks)
    rel, final_weak, den_fn = _chain_spec(kind, depth)
    v = np.arange(1, N + 1, dtype=_LD)

    def den_array(j):
        if kind == "T":
            base = 2 * v - 1 if j % 2 == 0 else 2 * v
        else:
            base = 2 * v if j % 2 == 0 else 2 * v - 1
        return base ** ks[j]

    F = 1.0 / den_array(0)
    for j in range(1, depth):
        c = np.cumsum(F)
        if rel[j - 1]:
            prefix = c
        else:
            prefix = np.empty_like(c)
            prefix[0] = 0.0
            prefix[1:] = c[:-1]
        F = prefix / den_array(j)
    c = np.cumsum(F)
    if final_weak:
        out = c
    else:
        out = np.empty_like(c)
        out[0] = 0.0
        out[1:] = c[:-1]
    return (2.0 ** depth) * out


# ---------------------------------------------------------------------------
# brute-force T-value oracle


def oracle_eval(ix: TIndex, term_budget: int = DEFAULT_TERM_BUDGET) -> ErrBound:
    """Direct nested-series evaluation of an admissible T-value.

    Prefix accumulation is O(N * depth) via cumulative sums.  The outer tail
    is bounded by a consecutive-difference (midpoint) bound when the outer
    sign alternates, and by an integral comparison against the observed
    inner-sum supremum when it does not.
    """
    from .words import is_admissible

    if not is_admissible(ix):
        raise ValueError(f"non-admissible index {ix}")
    N = int(term_budget)
    r = ix.depth
    n = np.arange(1, N + 1, dtype=_LD)
    ints = np.arange(1, N + 1)
    sign_cache = {
        1: np.ones(N, dtype=_LD),
        -1: np.where(ints % 2 == 1, _LD(-1.0), _LD(1.0)),
    }

    prefix = np.ones(N, dtype=_LD)
    sup_inner = 1.0
    A = None
    for j, (k, s) in enumerate(zip(ix.ks, ix.sigmas), start=1):
        base = 2 * n - j
        invden = np.where(base > 0, base, _LD(1.0)) ** (-float(k))
        invden[base <= 0] = 0.0
        A = prefix * sign_cache[s] * invden
        if j < r:
            c = np.cumsum(A)
            prefix = np.empty_like(c)
            prefix[0] = 0.0
            prefix[1:] = c[:-1]
            sup_inner = max(sup_inner, float(np.max(np.abs(prefix))))
    partial = np.cumsum(A)
    scale = 2.0 ** r
    slack = scale * _rounding_slack(N * r, float(np.sum(np.abs(A))))

    if ix.sigmas[-1] == -1:
        value = scale * 0.5 * (partial[-1] + partial[-2])
        env = np.abs(A[-8:])
        deltas = np.abs(np.diff(env))
        bound = scale * min(float(env[-1]), 4.0 * float(np.max(deltas)))
    else:
        k_r = ix.ks[-1]
        if k_r < 2:
            raise ValueError("non-alternating outer series needs k_r >= 2")
        value = scale * partial[-1]
        tail = sup_inner * (2.0 * N - r) ** (1 - k_r) / (2.0 * (k_r - 1))
        bound = scale * tail
    return ErrBound(float(value), float(bound + slack))


# ---------------------------------------------------------------------------
# alternating convoluted T-values


def convoluted_T(
    ks: Sequence[int],
    ls: Sequence[int],
    digits: int = 8,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> ErrBound:
    """Oracle value of T(ks (*) ls), the alternating convoluted T-value.

    The defining alternating outer series couples two finite harmonic sums;
    which of T_n/S_n appears, and whether the outer denominator is 2n or
    2n-1, is selected by the parities of len(ks) and len(ls).
    """
    ks, ls = tuple(ks), tuple(ls)
    if not ks or not ls:
        raise ValueError("both compositions must be nonempty")
    N = int(term_budget)
    q = ks[-1] + ls[-1]
    ks_even = len(ks) % 2 == 0
    ls_even = len(ls) % 2 == 0
    H1 = _harmonic_prefix_array("T", ks[:-1], N)
    H2 = _harmonic_prefix_array("T" if ks_even == ls_even else "S", ls[:-1], N)
    n = np.arange(1, N + 1, dtype=_LD)
    den = 2 * n if ks_even else 2 * n - 1
    a = H1 * H2 * den ** (-float(q))
    signs = np.where(np.arange(1, N + 1) % 2 == 1, _LD(-1.0), _LD(1.0))
    partial = np.cumsum(signs * a)
    value = 2.0 * 0.5 * float(partial[-1] + partial[-2])
    deltas = np.abs(np.diff(a[-8:]))
    bound = 2.0 * min(float(a[-1]), 4.0 * float(np.max(deltas)))
    bound += 2.0 * _rounding_slack(N * (len(ks) + len(ls)), float(np.sum(a)))
    if bound > 10.0 ** (-digits):
        raise PrecisionError(
            f"convoluted value reached bound {bound:.3g} > 1e-{digits} "
            f"with {N} terms"
        )
    return ErrBound(float(value), float(bound))


# ---------------------------------------------------------------------------
# weighted sums


def weighted_sum_symbolic(k: int, r: int, l: int) -> FormalSum:
    """W_l(k, r) as a formal sum of T-indices: bars at positions l and r.

    l = 0 (or l = r) puts the single bar at the final position.  Every
    summand ends barred, hence is admissible.  Empty when k < r.
    """
    if not (0 <= l <= r):
        raise ValueError("need 0 <= l <= r")
    terms = []
    for comp in compositions(k, r):
        sig = tuple(-1 if (j == l or j == r) else 1 for j in range(1, r + 1))
        terms.append((TIndex(comp, sig), Fraction(1)))
    return FormalSum(terms)


def alpha_coeff(n: int) -> ConstExpr:
    """alpha_n = (-1)^n pi^(2n) / (2n+1)!."""
    if n < 0:
        raise ValueError("alpha_n needs n >= 0")
    c = Fraction((-1) ** n, math.factorial(2 * n + 1))
    if n == 0:
        return ConstExpr.rational(c)
    return ConstExpr.term(c, ("pi", None, 2 * n))


# ---------------------------------------------------------------------------
# log-moment integrals: closed forms and quadrature oracle


def log_moment_integral(n: int, m: int, row: str) -> ConstExpr:
    """Closed form of int_0^1 t^a log^b((1-t)/(1+t)) dt.

    The row selects the parities (a, b) = ("e": even, "o": odd):
      ee: a = 2n-2, b = 2m      eo: a = 2n-2, b = 2m-1
      oe: a = 2n-1, b = 2m      oo: a = 2n-1, b = 2m-1
    """
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    t_n = lambda js: harmonic_sum("T", n, (1,) * js)
    s_n = lambda js: harmonic_sum("S", n, (1,) * js)
    if row == "ee":
        out = ConstExpr()
        for j in range(0, m + 1):
            c = Fraction(2 * math.factorial(2 * m), 2 * n - 1) * t_n(2 * m - 2 * j)
            out = out + ConstExpr.term(c, ("zetabar", 2 * j))
        return out
    if row == "eo":
        out = ConstExpr.rational(-Fraction(math.factorial(2 * m - 1), 2 * n - 1) * s_n(2 * m - 1))
        for j in range(1, m + 1):
            c = -Fraction(2 * math.factorial(2 * m - 1), 2 * n - 1) * t_n(2 * m - 2 * j)
            out = out + ConstExpr.term(c, ("zetabar", 2 * j - 1))
        return out
    if row == "oe":
        out = ConstExpr.rational(Fraction(math.factorial(2 * m), 2 * n) * s_n(2 * m))
        for j in range(1, m + 1):
            c = Fraction(2 * math.factorial(2 * m), 2 * n) * t_n(2 * m - 2 * j + 1)
            out = out + ConstExpr.term(c, ("zetabar", 2 * j - 1))
        return out
    if row == "oo":
        out = ConstExpr()
        for j in range(0, m):
            c = -Fraction(math.factorial(2 * m - 1), n) * t_n(2 * m - 2 * j - 1)
            out = out + ConstExpr.term(c, ("zetabar", 2 * j))
        return out
    raise ValueError(f"row must be one of ee/eo/oe/oo, got {row!r}")


def log_moment_lhs(n: int, m: int, row: str, digits: int = 12) -> mp.mpf:
    """Quadrature oracle for the integral on the left-hand side."""
    a = 2 * n - 2 if row[0] == "e" else 2 * n - 1
    b = 2 * m if row[1] == "e" else 2 * m - 1
    with mp.workdps(digits + 10):
        val = mp.quad(lambda t: t ** a * mp.log((1 - t) / (1 + t)) ** b, [0, 1])
    return val


# ---------------------------------------------------------------------------
# alternating odd harmonic sums: closed form and oracle


def alt_odd_harmonic_closed(p: int, q: int) -> ConstExpr:
    """Closed form of sum_{n>=1} (-1)^(n-1) hbar_n^(p) / n^q for even p+q.

    hbar_n^(p) = sum_{k<=n} (-1)^(k-1) (k - 1/2)^(-p).  Odd p+q is outside
    the closed form's reach and is rejected.
    """
    if (p + q) % 2 != 0:
        raise ValueError("closed form requires p + q even")
    if p < 1 or q < 1:
        raise ValueError("need p, q >= 1")
    sp = (-1) ** p
    out = ConstExpr()
    if q % 2 == 0:
        out = out + ConstExpr.term(2 * sp, ("tbar", p), ("zetabar", q))
    out = out + ConstExpr.term(-sp * math.comb(p + q - 1, p - 1), ("tbar", p + q))
    for k in range(p):
        c = (-1) ** k - 1
        if not c:
            continue
        coeff = -sp * c * math.comb(p + q - k - 2, q - 1)
        out = out + ConstExpr.term(coeff, ("ttilde", k + 1), ("tbar", p + q - k - 1))
    for j in range(1, q // 2 + 1):
        coeff = 2 * sp * math.comb(p + q - 2 * j - 1, p - 1)
        out = out + ConstExpr.term(coeff, ("zeta", 2 * j), ("tbar", p + q - 2 * j))
    return out.scale(Fraction(1, 2))


def _alternating_midpoint(a: np.ndarray, first_sign: float) -> Tuple[float, float]:
    """Midpoint partial sum and certified bound for sum +-(-1)^... a_n with
    a positive, eventually monotone convex envelope."""
    signs = np.where(np.arange(1, len(a) + 1) % 2 == 1, _LD(first_sign), _LD(-first_sign))
    partial = np.cumsum(signs * a)
    value = 0.5 * float(partial[-1] + partial[-2])
    deltas = np.abs(np.diff(a[-8:]))
    bound = min(float(np.abs(a[-1])), 4.0 * float(np.max(deltas)))
    return value, bound


def alt_odd_harmonic_oracle(p: int, q: int, term_budget: int = DEFAULT_TERM_BUDGET) -> ErrBound:
    """Partial-sum oracle for sum_{n>=1} (-1)^(n-1) hbar_n^(p) / n^q.

    The inner sum hbar_n oscillates around tbar(p), which spoils a direct
    alternating-series bound, so the sum is split as

        tbar(p) * sum (-1)^(n-1)/n^q  -  sum_n rho(n)/n^q,

    where rho(n) = (-1)^n (hbar_n - tbar(p)) > 0 is the (smooth, decaying)
    alternating tail of the hbar series.  The first two factors are plain
    alternating series with certified midpoint bounds; the rho-series is
    absolutely convergent and its tail is estimated by the integral of the
    asymptotic envelope rho(x) ~ (x+1/2)^(-p)/2 with a certified window.
    """
    N = int(term_budget)
    k = np.arange(1, N + 1, dtype=_LD)
    signs = np.where(np.arange(1, N + 1) % 2 == 1, _LD(1.0), _LD(-1.0))
    a_inner = (k - 0.5) ** (-float(p))
    hbar = np.cumsum(signs * a_inner)

    tbar_val, tbar_err = _alternating_midpoint(a_inner, 1.0)
    zbar_val, zbar_err = _alternating_midpoint(k ** (-float(q)), 1.0)

    rho = signs * (hbar - _LD(tbar_val))  # = (-1)^(n-1)(hbar_n - tbar) > 0
    rho_terms = rho / k ** float(q)
    s = p + q
    corr = 0.5 * N ** (1 - s) / (s - 1)
    rho_sum = float(np.sum(rho_terms)) + corr
    # the computed tbar enters every rho term; sum 1/n^q <= 1 + ln N
    rho_tail_err = (p + 2.0) * N ** (-float(s)) + (1.0 + math.log(N)) * tbar_err

    value = tbar_val * zbar_val + rho_sum
    bound = (
        abs(tbar_val) * zbar_err
        + abs(zbar_val) * tbar_err
        + tbar_err * zbar_err
        + rho_tail_err
        + _rounding_slack(4 * N, float(np.sum(np.abs(rho_terms))) + abs(tbar_val) + 3.0)
    )
    return ErrBound(float(value), float(bound))


# ---------------------------------------------------------------------------
# unitriangular inversion


def triangular_invert(A: Callable[[int, int], complex], C: Sequence, p_max: int) -> List:
    """Solve sum_{j<=p} A(j,p) B_j = C_p by the signed-path expansion.

    A(j, p) is 1-based with A(p, p) = 1 required; C is C_1..C_{p_max}.
    The signed-path weights W(j, p) = sum over chains j = i_0 < ... < i_k = p
    of (-1)^k prod A(i_{l-1}, i_l) are computed by the recursion
    W(p,p) = 1, W(j,p) = -sum_{j<i<=p} A(j,i) W(i,p).
    """
    if len(C) < p_max:
        raise ValueError("C too short")
    B = []
    for p in range(1, p_max + 1):
        if A(p, p) != 1:
            raise ValueError(f"A({p},{p}) must be 1")
        W = {p: 1}
        for j in range(p - 1, 0, -1):
            W[j] = -sum(A(j, i) * W[i] for i in range(j + 1, p + 1))
        B.append(sum(C[j - 1] * W[j] for j in range(1, p + 1)))
    return B


def forward_substitution(A: Callable[[int, int], complex], C: Sequence, p_max: int) -> List:
    """Reference solver for the same unitriangular system."""
    B: List = []
    for p in range(1, p_max + 1):
        B.append(C[p - 1] - sum(A(j, p) * B[j - 1] for j in range(1, p)))
    return B
