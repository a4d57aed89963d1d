"""Verification catalog: identities as data rows, evaluated on demand.

A Row states lhs = rhs where each side is a tuple of Terms; a Term is an
exact rational coefficient times a monomial in named constants times a
product of T-values.  Rows marked symbolic hold because both sides are
the identical multiset of terms (e.g. the weighted-sum dualities at
m = p), and are checked without numerics.  Rows with variants carry
alternative right-hand sides; verification records which one matched.

Suites:  weight2..weight5 (basis reductions and dual pairs),
special-values (closed forms), theorems (weighted-sum dualities,
concatenation dualities, reversal identities, and psi cross-checks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp

from . import tables
from .cache import ValueCache
from .constants import Monomial, mono
from .evaluator import GUARD_DIGITS, eval_T
from .constants import _constant_value
from .formal import FormalSum
from .hp import HPReal
from .series import alpha_coeff, compositions, weighted_sum_symbolic
from .words import TIndex, format_tindex, parse_tindex


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    consts: Monomial = ()
    tvals: Tuple[TIndex, ...] = ()


Expr = Tuple[Term, ...]


def t_term(coeff, *tix) -> Term:
    return Term(
        Fraction(coeff),
        (),
        tuple(parse_tindex(t) if isinstance(t, str) else t for t in tix),
    )


def c_term(coeff, *factors) -> Term:
    return Term(Fraction(coeff), mono(*factors))


def expr_scale(e: Expr, c) -> Expr:
    c = Fraction(c)
    return tuple(Term(t.coeff * c, t.consts, t.tvals) for t in e)


def expr_mul(e1: Expr, e2: Expr) -> Expr:
    out = []
    for a in e1:
        for b in e2:
            acc: Dict = {}
            for k, p in a.consts + b.consts:
                acc[k] = acc.get(k, 0) + p
            out.append(
                Term(
                    a.coeff * b.coeff,
                    tuple(sorted(acc.items())),
                    tuple(sorted(a.tvals + b.tvals, key=format_tindex)),
                )
            )
    return tuple(out)


def expr_from_formal(fs: FormalSum, scale=1, consts: Monomial = ()) -> Expr:
    scale = Fraction(scale)
    return tuple(
        Term(scale * c, consts, (ix,))
        for ix, c in sorted(fs, key=lambda t: format_tindex(t[0]))
    )


def terms_canonical(e: Expr) -> Tuple:
    """Multiset signature of an expression for exact symbolic comparison."""
    acc: Dict = {}
    for t in e:
        key = (t.consts, tuple(format_tindex(ix) for ix in t.tvals))
        acc[key] = acc.get(key, Fraction(0)) + t.coeff
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def evaluate_expr(e: Expr, digits: int, cache: Optional[ValueCache] = None) -> HPReal:
    with mp.workdps(digits + GUARD_DIGITS):
        total = mp.mpf(0)
        err = mp.mpf(0)
        for t in e:
            v = mp.mpf(t.coeff.numerator) / t.coeff.denominator
            for (name, arg), p in t.consts:
                v *= _constant_value(name, arg) ** p
            verr = abs(v) * mp.mpf(10) ** (-(digits + 8))
            for ix in t.tvals:
                hv = eval_T(ix, digits + 2, cache)
                verr = abs(v) * hv.err + abs(hv.value) * verr
                v *= hv.value
            total += v
            err += verr
        return HPReal(total, err)


@dataclass
class Row:
    rid: str
    lhs: Expr
    rhs: Expr
    tol: Optional[float] = None
    variants: Optional[Dict[str, Expr]] = None
    symbolic: bool = False


@dataclass
class RowResult:
    rid: str
    status: str  # "pass" | "fail"
    residual: float
    tol: float
    method: str  # "numeric" | "symbolic"
    variant: Optional[str] = None

    def to_json(self) -> Dict:
        out = {
            "id": self.rid,
            "status": self.status,
            "residual": self.residual,
            "tol": self.tol,
            "method": self.method,
        }
        if self.variant is not None:
            out["variant"] = self.variant
        return out


# ---------------------------------------------------------------------------
# row builders


def _basis_expr(weight: int, coeffs: Dict[int, int]) -> Expr:
    basis = tables.BASES[weight]
    return tuple(t_term(c, basis[i - 1]) for i, c in sorted(coeffs.items()))


def table_rows(weight: int) -> List[Row]:
    rows = []
    for lhs, coeffs in tables.REDUCTIONS[weight].items():
        rows.append(
            Row(
                rid=f"w{weight}/T({lhs})",
                lhs=(t_term(1, lhs),),
                rhs=_basis_expr(weight, coeffs),
            )
        )
    for a, b in tables.DUALITY_ROWS[weight]:
        rows.append(
            Row(rid=f"w{weight}/dual T({a})=T({b})", lhs=(t_term(1, a),), rhs=(t_term(1, b),))
        )
    return rows


def _w_expr(k: int, r: int, l: int, scale=1, consts: Monomial = ()) -> Expr:
    return expr_from_formal(weighted_sum_symbolic(k, r, l), scale, consts)


def _alpha_mono(n: int) -> Tuple[Fraction, Monomial]:
    ce = alpha_coeff(n)
    ((monomial, coeff),) = ce.terms.items()
    return coeff, monomial


def weighted_duality_row(m: int, p: int, l: int, shifted: bool) -> Row:
    """Duality of weighted sums:
    (-1)^m sum_j alpha_{p-j} W_l(2j+2m+l-1-2d, 2m+l-d)
      = (-1)^p sum_j alpha_{m-j} W_l(2j+2p+l-1-2d, 2p+l-d),  d = 0 or 1."""
    d = 1 if shifted else 0

    def side(mm: int, pp: int) -> Expr:
        out: List[Term] = []
        sgn = Fraction((-1) ** mm)
        for j in range(1, pp + 1):
            coeff, monomial = _alpha_mono(pp - j)
            k = 2 * j + 2 * mm + l - 1 - 2 * d
            r = 2 * mm + l - d
            if k < r:
                continue
            out.extend(_w_expr(k, r, l, scale=sgn * coeff, consts=monomial))
        return tuple(out)

    name = "shifted" if shifted else "plain"
    lhs, rhs = side(m, p), side(p, m)
    return Row(
        rid=f"wsum-duality/{name}/m={m},p={p},l={l}",
        lhs=lhs,
        rhs=rhs,
        symbolic=(m == p),
    )


def _diamond(js: Sequence[int]) -> List[Tuple[int, int]]:
    js = list(js)
    if len(js) == 1:
        return [(js[0], 1)]
    return [(js[0], -1)] + [(j, 1) for j in js[1:-1]] + [(js[-1], -1)]


def _prefix_entries(m: int) -> List[Tuple[int, int]]:
    return [(1, 1)] * (m - 1) + [(1, -1)] if m >= 1 else []


def _tix(entries: Sequence[Tuple[int, int]]) -> TIndex:
    return TIndex(tuple(k for k, _ in entries), tuple(s for _, s in entries))


def concat_duality_row(kvec: Sequence[int], m: int, p: int) -> Row:
    """Binomially weighted concatenation duality for a composition kvec and
    integers m, p >= 0 (products of two T-values on the right)."""
    kvec = tuple(kvec)
    K = sum(kvec)
    r = len(kvec)

    def comp_side(side_kvec: Sequence[int], mm: int, pp: int) -> Expr:
        out = []
        for comp in compositions(mm + 1 + K, K + 1):
            entries: List[Tuple[int, int]] = []
            pos = 0
            for blk in side_kvec:
                entries.extend(_diamond(comp[pos : pos + blk]))
                pos += blk
            entries.append((comp[-1] + pp, -1))
            out.append(Term(Fraction(math.comb(comp[-1] + pp - 1, pp)), (), (_tix(entries),)))
        return tuple(out)

    lhs = comp_side(tuple(reversed(kvec)), m, p) + expr_scale(
        comp_side(kvec, p, m), Fraction((-1) ** (K + 1))
    )
    rhs: List[Term] = []
    for l in range(1, r + 1):
        outer = Fraction((-1) ** sum(kvec[l:]))
        for j in range(1, kvec[l - 1] + 1):
            first = _tix(_prefix_entries(m) + [(k, 1) for k in reversed(kvec[l:])] + [(j, -1)])
            second = _tix(
                _prefix_entries(p) + [(k, 1) for k in kvec[: l - 1]] + [(kvec[l - 1] - j + 1, -1)]
            )
            rhs.extend(
                expr_mul(
                    (Term(outer * (-1) ** (j - 1)),),
                    (Term(Fraction(1), (), (first, second)),),
                )
            )
    return Row(
        rid=f"concat-duality/k={','.join(map(str, kvec))};m={m},p={p}",
        lhs=lhs,
        rhs=tuple(rhs),
    )


def barred_composition_row(k: int, p: int) -> Row:
    """Composition sum with three barred slots against depth-1 products."""
    if k < 2:
        raise ValueError("needs k >= 2")
    lhs = []
    for comp in compositions(p + k + 1, k + 1):
        entries = _diamond(comp[:-1]) + [(comp[-1], -1)]
        lhs.append(Term(Fraction(1), (), (_tix(entries),)))
    rhs: List[Term] = [
        Term(
            Fraction((-1) ** k),
            (),
            (_tix(_diamond([1] * k) + [(p + 1, -1)]),),
        )
    ]
    for j in range(1, k + 1):
        second = _tix(_prefix_entries(p) + [(k - j + 1, -1)])
        rhs.append(
            Term(Fraction((-1) ** (k + j)), (), tuple(sorted((_tix([(j, -1)]), second), key=format_tindex)))
        )
    return Row(rid=f"barred-composition/k={k},p={p}", lhs=tuple(lhs), rhs=tuple(rhs))


def reversal_products_row(kvec: Sequence[int]) -> Row:
    """Palindromic boundary case (m = p = 0) of the concatenation duality."""
    kvec = tuple(kvec)
    K = sum(kvec)
    r = len(kvec)
    first = _tix(
        sum((_diamond([1] * k) for k in reversed(kvec)), []) + [(1, -1)]
    )
    second = _tix(sum((_diamond([1] * k) for k in kvec), []) + [(1, -1)])
    lhs = (
        Term(Fraction(1), (), (first,)),
        Term(Fraction((-1) ** (K + 1)), (), (second,)),
    )
    rhs: List[Term] = []
    for l in range(1, r + 1):
        outer = Fraction((-1) ** sum(kvec[l:]))
        for j in range(1, kvec[l - 1] + 1):
            a = _tix([(k, 1) for k in reversed(kvec[l:])] + [(j, -1)])
            b = _tix([(k, 1) for k in kvec[: l - 1]] + [(kvec[l - 1] - j + 1, -1)])
            rhs.append(
                Term(outer * (-1) ** (j - 1), (), tuple(sorted((a, b), key=format_tindex)))
            )
    return Row(rid=f"reversal-products/k={','.join(map(str, kvec))}", lhs=lhs, rhs=tuple(rhs))


def palindrome_square_row(p: int) -> Row:
    """T(block(2p+1), bar 1) = (-1)^p/2 T(bar(p+1))^2 + alternating products."""
    lhs = (Term(Fraction(1), (), (_tix(_diamond([1] * (2 * p + 1)) + [(1, -1)]),)),)
    rhs = [
        Term(
            Fraction((-1) ** p, 2),
            (),
            (TIndex((p + 1,), (-1,)), TIndex((p + 1,), (-1,))),
        )
    ]
    for j in range(1, p + 1):
        rhs.append(
            Term(
                Fraction((-1) ** (j - 1)),
                (),
                tuple(
                    sorted(
                        (TIndex((j,), (-1,)), TIndex((2 * p + 2 - j,), (-1,))),
                        key=format_tindex,
                    )
                ),
            )
        )
    return Row(rid=f"palindrome-square/p={p}", lhs=lhs, rhs=tuple(rhs))


def block_duality_row(kvec: Sequence[int], p: int) -> Row:
    """T({1}_{p-1}, bar1, kvec, bar1) = T(block(k_r),..,block(k_1), bar(p+1))."""
    kvec = tuple(kvec)
    lhs_ix = _tix(_prefix_entries(p) + [(k, 1) for k in kvec] + [(1, -1)])
    rhs_entries: List[Tuple[int, int]] = []
    for k in reversed(kvec):
        rhs_entries.extend(_diamond([1] * k))
    rhs_entries.append((p + 1, -1))
    return Row(
        rid=f"block-duality/k={','.join(map(str, kvec))};p={p}",
        lhs=(Term(Fraction(1), (), (lhs_ix,)),),
        rhs=(Term(Fraction(1), (), (_tix(rhs_entries),)),),
    )


def reversal_identity_row(ks: Sequence[int], sigmas: Sequence[int]) -> Row:
    """Depth-3 reversal: s3 T(k;s) - T(k1,k2;s1,s2)T(k3;s3) equals the same
    with the order of components reversed."""
    k1, k2, k3 = ks
    s1, s2, s3 = sigmas
    if (k1, s1) == (1, 1) or (k2, s2) == (1, 1) or (k3, s3) == (1, 1):
        raise ValueError("components (1, +1) are excluded")
    lhs = (
        Term(Fraction(s3), (), (TIndex((k1, k2, k3), (s1, s2, s3)),)),
        Term(
            Fraction(-1),
            (),
            tuple(sorted((TIndex((k1, k2), (s1, s2)), TIndex((k3,), (s3,))), key=format_tindex)),
        ),
    )
    rhs = (
        Term(Fraction(s1), (), (TIndex((k3, k2, k1), (s3, s2, s1)),)),
        Term(
            Fraction(-1),
            (),
            tuple(sorted((TIndex((k3, k2), (s3, s2)), TIndex((k1,), (s1,))), key=format_tindex)),
        ),
    )
    sig = ",".join(str(k * s) for k, s in zip(ks, sigmas))
    return Row(rid=f"reversal-identity/{sig}", lhs=lhs, rhs=rhs)


def ones_bar_k_row(r: int, k: int) -> Row:
    """T({1}_{r-1}, bar k) = sum_j (-1)^(j-1) T({1}_{r-j-1}, bar1) W(k+j-1, j)."""
    lhs = (Term(Fraction(1), (), (_tix([(1, 1)] * (r - 1) + [(k, -1)]),)),)
    rhs: List[Term] = []
    for j in range(1, r + 1):
        w = _w_expr(k + j - 1, j, 0, scale=Fraction((-1) ** (j - 1)))
        if r - j - 1 >= 0:
            ladder = (Term(Fraction(1), (), (_tix([(1, 1)] * (r - j - 1) + [(1, -1)]),)),)
            rhs.extend(expr_mul(ladder, w))
        else:
            rhs.extend(w)
    return Row(rid=f"ones-bar-k/r={r},k={k}", lhs=lhs, rhs=tuple(rhs))


def even_palindrome_closed_row(p: int) -> Row:
    """T(bar1, {1}_{2p-2}, bar1) via the W1(2j,2) closed forms."""
    lhs = (Term(Fraction(1), (), (_tix([(1, -1)] + [(1, 1)] * (2 * p - 2) + [(1, -1)]),)),)
    rhs: List[Term] = []
    for j in range(1, p + 1):
        acoeff, amono = _alpha_mono(p - j)
        for kk in range(1, j + 1):
            c = Fraction((-1) ** p) * acoeff * Fraction(1, 2 ** (2 * j - 2))
            factors = [("tbar", 2 * kk), ("zetabar", 2 * j - 2 * kk)]
            m = mono(*([f for f in factors] + [(n, a, pw) for (n, a), pw in amono]))
            rhs.append(Term(c, m))
    return Row(rid=f"even-palindrome/p={p}", lhs=lhs, rhs=tuple(rhs))


def odd_ladder_product_row(p: int) -> Row:
    """T(bar1,{1}_{2p-2},bar1,bar1) = 2p T(2p+1) - sum_k T(bar(2k-1)) T(bar m).

    Weight homogeneity forces m = 2p-2k+2 in the product sum (the variant
    with m = 2p-2k+1 is kept for the record; it is weight-inhomogeneous
    and fails numerically)."""

    def rhs_terms(shift: int) -> Expr:
        out: List[Term] = [Term(Fraction(2 * p), (), (TIndex((2 * p + 1,), (1,)),))]
        for k in range(1, p + 1):
            pair = tuple(
                sorted(
                    (TIndex((2 * k - 1,), (-1,)), TIndex((2 * p - 2 * k + shift,), (-1,))),
                    key=format_tindex,
                )
            )
            out.append(Term(Fraction(-1), (), pair))
        return tuple(out)

    lhs_ix = _tix([(1, -1)] + [(1, 1)] * (2 * p - 2) + [(1, -1), (1, -1)])
    return Row(
        rid=f"odd-ladder-product/p={p}",
        lhs=(Term(Fraction(1), (), (lhs_ix,)),),
        rhs=rhs_terms(2),
        variants={
            "as-printed(2p-2k+1)": rhs_terms(1),
            "homogeneous(2p-2k+2)": rhs_terms(2),
        },
    )


# ---------------------------------------------------------------------------
# suites


def _ladder_expr(r: int) -> Expr:
    return (Term(Fraction((-1) ** r, math.factorial(r) * 2 ** r), mono(("pi", None, r))),)


def suite_weight2() -> List[Row]:
    rows = table_rows(2)
    rows.append(Row("w2/T(-1)=-pi/2", (t_term(1, "-1"),), (c_term(Fraction(-1, 2), ("pi", None)),)))
    rows.append(Row("w2/T(1,-1)=pi^2/8", (t_term(1, "1,-1"),), (c_term(Fraction(1, 8), ("pi", None, 2)),)))
    rows.append(Row("w2/T(-2)=-2G", (t_term(1, "-2"),), (c_term(-2, ("G", 1)),)))
    rows.append(Row("w2/T(2)=pi^2/4", (t_term(1, "2"),), (c_term(Fraction(1, 4), ("pi", None, 2)),)))
    return rows


def suite_weight3() -> List[Row]:
    rows = table_rows(3)
    rows.append(
        Row(
            "w3/T(1,-2)",
            (t_term(1, "1,-2"),),
            (c_term(Fraction(-7, 4), ("zeta", 3)), c_term(Fraction(1, 4), ("pi", None), ("tbar", 2))),
        )
    )
    rows.append(Row("w3/T(-3)=-pi^3/16", (t_term(1, "-3"),), (c_term(Fraction(-1, 16), ("pi", None, 3)),)))
    return rows


def suite_weight4() -> List[Row]:
    return table_rows(4)


def suite_weight5() -> List[Row]:
    return table_rows(5)


def suite_special_values() -> List[Row]:
    rows: List[Row] = []
    rows.append(
        Row(
            "special/T(1,-2)",
            (t_term(1, "1,-2"),),
            (c_term(Fraction(-7, 4), ("zeta", 3)), c_term(Fraction(1, 4), ("pi", None), ("tbar", 2))),
        )
    )
    t1112_core = (
        c_term(Fraction(31, 16), ("zeta", 5)),
        c_term(Fraction(-1, 16), ("pi", None), ("tbar", 4)),
    )
    rows.append(
        Row(
            "special/T(1,1,1,-2)",
            (t_term(1, "1,1,1,-2"),),
            t1112_core + (c_term(Fraction(1, 96), ("pi", None, 3), ("tbar", 2)),),
            variants={
                "as-printed(-7/96)": t1112_core
                + (c_term(Fraction(-7, 96), ("pi", None, 3), ("tbar", 2)),),
                "corrected(+1/96)": t1112_core
                + (c_term(Fraction(1, 96), ("pi", None, 3), ("tbar", 2)),),
            },
        )
    )
    rows.append(
        Row(
            "special/T(-1,-1,-1)",
            (t_term(1, "-1,-1,-1"),),
            (c_term(Fraction(7, 2), ("zeta", 3)), c_term(Fraction(-1, 4), ("pi", None), ("tbar", 2))),
        )
    )
    rows.append(
        Row(
            "special/T(-1,1,1,-1)",
            (t_term(1, "-1,1,1,-1"),),
            (c_term(Fraction(1, 8), ("tbar", 4)), c_term(Fraction(-3, 8), ("tbar", 2), ("zeta", 2))),
        )
    )
    rows.append(
        Row(
            "special/T(-1,1,1,1,1,-1)",
            (t_term(1, "-1,1,1,1,1,-1"),),
            (
                c_term(Fraction(-15, 128), ("tbar", 2), ("zeta", 4)),
                c_term(Fraction(3, 32), ("tbar", 4), ("zeta", 2)),
                c_term(Fraction(-1, 32), ("tbar", 6)),
            ),
        )
    )
    for r in range(1, 7):
        rows.append(
            Row(
                f"special/ladder-r{r}",
                (Term(Fraction(1), (), (_tix([(1, 1)] * (r - 1) + [(1, -1)]),)),),
                _ladder_expr(r),
            )
        )
    w43_core = (
        c_term(Fraction(1, 8), ("tbar", 4)),
        c_term(Fraction(-7, 8), ("pi", None), ("zeta", 3)),
    )
    rows.append(
        Row(
            "special/W(4,3)",
            _w_expr(4, 3, 0),
            w43_core,
            variants={
                "as-printed(+tbar2*zeta2)": w43_core + (c_term(1, ("tbar", 2), ("zeta", 2)),),
                "corrected(no tbar2*zeta2)": w43_core,
            },
        )
    )
    w65_core = (
        c_term(Fraction(-1, 32), ("tbar", 6)),
        c_term(Fraction(-7, 192), ("pi", None, 3), ("zeta", 3)),
        c_term(Fraction(31, 32), ("pi", None), ("zeta", 5)),
    )
    rows.append(
        Row(
            "special/W(6,5)",
            _w_expr(6, 5, 0),
            w65_core,
            variants={
                "as-printed(-15/8 tbar2*zeta4)": w65_core
                + (c_term(Fraction(-15, 8), ("tbar", 2), ("zeta", 4)),),
                "corrected(no tbar2*zeta4)": w65_core,
            },
        )
    )
    rows.append(Row("special/W1(2,2)", _w_expr(2, 2, 1), (c_term(Fraction(-1, 2), ("tbar", 2)),)))
    rows.append(
        Row(
            "special/W1(4,2)",
            _w_expr(4, 2, 1),
            (c_term(Fraction(-1, 8), ("tbar", 4)), c_term(Fraction(-1, 8), ("tbar", 2), ("zeta", 2))),
        )
    )
    rows.append(
        Row(
            "special/W1(6,2)",
            _w_expr(6, 2, 1),
            (
                c_term(Fraction(-7, 128), ("tbar", 2), ("zeta", 4)),
                c_term(Fraction(-1, 32), ("tbar", 4), ("zeta", 2)),
                c_term(Fraction(-1, 32), ("tbar", 6)),
            ),
        )
    )
    for j in (1, 2, 3):
        rhs = tuple(
            c_term(Fraction(-1, 2 ** (2 * j - 2)), ("tbar", 2 * k), ("zetabar", 2 * j - 2 * k))
            for k in range(1, j + 1)
        )
        rows.append(Row(f"special/W1-closed-j{j}", _w_expr(2 * j, 2, 1), rhs))
    rows.append(Row("special/W2(3,3)", _w_expr(3, 3, 2), (c_term(Fraction(-1, 16), ("pi", None, 3)),)))

    w253_common = (
        c_term(Fraction(-241, 11520), ("pi", None, 5)),
        c_term(Fraction(1, 24), ("pi", None), ("log2", None, 4)),
        c_term(1, ("pi", None), ("li_half", 4)),
    )
    _l2z3 = lambda c: c_term(c, ("pi", None), ("log2", None), ("zeta", 3))
    _plog = lambda p: c_term(Fraction(-1, 24), ("pi", None, 3), ("log2", None, p))
    rows.append(
        Row(
            "special/W2(5,3)",
            _w_expr(5, 3, 2),
            w253_common + (_plog(2), _l2z3(Fraction(7, 8))),
            tol=1e-12,
            variants={
                "log^3-as-printed": w253_common + (_plog(3), _l2z3(Fraction(1, 8))),
                "log^2": w253_common + (_plog(2), _l2z3(Fraction(1, 8))),
                "log^2-and-7/8": w253_common + (_plog(2), _l2z3(Fraction(7, 8))),
            },
        )
    )
    w273_t = tuple(
        Term(Fraction(1, 2), mono(("pi", None)), (parse_tindex(s),))
        for s in ("1,-5", "2,-4", "3,-3", "4,-2", "5,-1")
    )
    rows.append(
        Row(
            "special/W2(7,3)",
            _w_expr(7, 3, 2),
            (
                c_term(Fraction(-47, 11520), ("pi", None, 7)),
                c_term(Fraction(-1, 192), ("pi", None, 5), ("log2", None, 2)),
                c_term(Fraction(1, 192), ("pi", None, 3), ("log2", None, 4)),
                c_term(Fraction(1, 8), ("pi", None, 3), ("li_half", 4)),
                c_term(Fraction(7, 64), ("pi", None, 3), ("log2", None), ("zeta", 3)),
            )
            + w273_t,
        )
    )
    rows.append(
        Row(
            "special/T(1,1,-3)",
            (t_term(1, "1,1,-3"), ),
            (
                c_term(Fraction(121, 11520), ("pi", None, 5)),
                c_term(Fraction(1, 24), ("pi", None, 3), ("log2", None, 2)),
                c_term(Fraction(-1, 24), ("pi", None), ("log2", None, 4)),
                c_term(-1, ("pi", None), ("li_half", 4)),
                c_term(Fraction(-7, 8), ("pi", None), ("log2", None), ("zeta", 3)),
            ),
        )
    )
    rows.append(
        Row("special/dual T(1,-1,1,1,-1)", (t_term(1, "1,-1,1,1,-1"),), (t_term(1, "1,1,-3"),))
    )
    rows.append(
        Row(
            "special/T(1,1,1,1,-3)",
            (t_term(1, "1,1,1,1,-3"),),
            (
                c_term(Fraction(-77, 69120), ("pi", None, 7)),
                c_term(Fraction(1, 576), ("pi", None, 5), ("log2", None, 2)),
                c_term(Fraction(-1, 576), ("pi", None, 3), ("log2", None, 4)),
                c_term(Fraction(-1, 24), ("pi", None, 3), ("li_half", 4)),
                c_term(Fraction(-7, 192), ("pi", None, 3), ("log2", None), ("zeta", 3)),
            )
            + w273_t,
        )
    )
    rows.append(Row("special/T(1,-1)=3/4*zeta2", (t_term(1, "1,-1"),), (c_term(Fraction(3, 4), ("zeta", 2)),)))
    rows.append(
        Row(
            "special/T(-1,1,-1,-1)",
            (t_term(1, "-1,1,-1,-1"),),
            (c_term(Fraction(-1, 8), ("tbar", 2, 2)), c_term(Fraction(45, 16), ("zeta", 4))),
        )
    )
    for k in range(1, 6):
        rows.append(
            Row(
                f"special/T(bar{k})",
                (t_term(1, f"-{k}"),),
                (c_term(Fraction(-1, 2 ** (k - 1)), ("tbar", k)),),
            )
        )
    return rows


def suite_theorems() -> List[Row]:
    rows: List[Row] = []
    for shifted in (False, True):
        for m in (1, 2):
            for p in (1, 2):
                for l in (0, 1, 2):
                    rows.append(weighted_duality_row(m, p, l, shifted))
    for kvec in ((1,), (2,), (1, 1)):
        for m in (0, 1):
            for p in (0, 1):
                rows.append(concat_duality_row(kvec, m, p))
    for p in (0, 1):
        rows.append(barred_composition_row(2, p))
    for kvec in ((1,), (2,), (3,)):
        rows.append(reversal_products_row(kvec))
    for p in (0, 1):
        rows.append(palindrome_square_row(p))
    for kvec in ((1,), (2,), (3,), (1, 1), (1, 2), (2, 1), (1, 1, 1)):
        for p in (0, 1, 2):
            rows.append(block_duality_row(kvec, p))
    for ks, sigmas in (
        ((1, 1, 2), (-1, -1, 1)),
        ((2, 1, 1), (1, -1, -1)),
        ((1, 2, 1), (-1, 1, -1)),
        ((2, 2, 1), (-1, 1, -1)),
        ((1, 1, 2), (-1, -1, -1)),
        ((1, 2, 2), (-1, -1, 1)),
    ):
        rows.append(reversal_identity_row(ks, sigmas))
    for r, k in ((2, 2), (3, 2), (2, 3)):
        rows.append(ones_bar_k_row(r, k))
    for p in (1, 2, 3):
        rows.append(even_palindrome_closed_row(p))
        rows.append(
            Row(
                f"even-palindrome-dual/p={p}",
                (Term(Fraction(1), (), (_tix([(1, -1)] + [(1, 1)] * (2 * p - 2) + [(1, -1)]),)),),
                (Term(Fraction(1), (), (_tix([(1, 1)] * (2 * p - 2) + [(2, -1)]),)),),
            )
        )
    for p in (1, 2):
        rows.append(odd_ladder_product_row(p))
    return rows


SUITES = {
    "weight2": (suite_weight2, 40, 1e-35),
    "weight3": (suite_weight3, 40, 1e-35),
    "weight4": (suite_weight4, 40, 1e-35),
    "weight5": (suite_weight5, 60, 1e-50),
    "special-values": (suite_special_values, 40, 1e-35),
    "theorems": (suite_theorems, 30, 1e-25),
}


def verify_row(row: Row, digits: int, tol: float, cache: Optional[ValueCache] = None) -> RowResult:
    tol = row.tol if row.tol is not None else tol
    if row.symbolic:
        ok = terms_canonical(row.lhs) == terms_canonical(row.rhs)
        return RowResult(row.rid, "pass" if ok else "fail", 0.0, tol, "symbolic")
    lhs = evaluate_expr(row.lhs, digits, cache)
    if row.variants:
        best_name, best_resid = None, None
        for name, rhs in sorted(row.variants.items()):
            resid = abs(lhs.value - evaluate_expr(rhs, digits, cache).value)
            if best_resid is None or resid < best_resid:
                best_name, best_resid = name, resid
        status = "pass" if best_resid < tol else "fail"
        return RowResult(row.rid, status, float(best_resid), tol, "numeric", best_name)
    rhs = evaluate_expr(row.rhs, digits, cache)
    resid = abs(lhs.value - rhs.value)
    status = "pass" if resid < tol else "fail"
    return RowResult(row.rid, status, float(resid), tol, "numeric")


def verify_catalog(
    suite: str, digits: Optional[int] = None, cache: Optional[ValueCache] = None
) -> Dict:
    """Evaluate every row of a suite; returns a JSON-ready report."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    builder, default_digits, tol = SUITES[suite]
    digits = digits or default_digits
    results = [verify_row(row, digits, tol, cache) for row in builder()]
    failures = [r.rid for r in results if r.status != "pass"]
    return {
        "suite": suite,
        "digits": digits,
        "tol": tol,
        "rows": [r.to_json() for r in results],
        "max_residual": max((r.residual for r in results), default=0.0),
        "n_rows": len(results),
        "failures": failures,
        "passed": not failures,
    }
