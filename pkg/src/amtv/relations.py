"""Relation laboratory: basis discovery, coordinate extraction, the level-4
generating set, and symbolic relation factories.

Basis discovery is a greedy scan: candidates are evaluated to the working
precision and tested by PSLQ against the values already accepted as
independent.  Detection failures at the height bound leave a candidate
"undecided" rather than guessing.  Dimension results are numeric evidence
("consistent with d at height H, digits D"), never proofs: PSLQ
non-detection only excludes relations up to the stated height.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp

from . import tables
from .cache import ValueCache
from .errors import PrecisionError
from .evaluator import GUARD_DIGITS, eval_colored_mzv, eval_T
from .formal import FormalSum
from .hp import HPComplex, HPReal
from .pslq import pslq
from .series import compositions
from .words import (
    TIndex,
    canonical_words,
    dual,
    enumerate_tindices,
    format_tindex,
    from_word,
    is_admissible,
    parse_tindex,
    product_as_T,
)


@dataclass
class Relation:
    """Integer relation sum_j coefficients[j] * value(symbols[j]) ~ 0."""

    symbols: Tuple[str, ...]
    coefficients: Tuple[int, ...]
    residual: float
    height: int
    digits: int

    def __post_init__(self):
        if sum(1 for c in self.coefficients if c) < 2:
            raise ValueError("a relation needs at least two nonzero coefficients")

    def to_json(self) -> Dict:
        return {
            "symbols": list(self.symbols),
            "coefficients": list(self.coefficients),
            "residual": self.residual,
            "height": self.height,
            "digits": self.digits,
        }


@dataclass
class BasisReport:
    weight: int
    digits: int
    height_bound: int
    basis: List[TIndex] = field(default_factory=list)
    relations: List[Relation] = field(default_factory=list)
    undecided: List[TIndex] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def summary(self) -> str:
        return (
            f"weight {self.weight}: dim consistent with {self.dim} "
            f"at height {self.height_bound}, digits {self.digits}"
            + (f" ({len(self.undecided)} undecided)" if self.undecided else "")
        )

    def to_json(self) -> Dict:
        return {
            "weight": self.weight,
            "digits": self.digits,
            "height_bound": self.height_bound,
            "dim": self.dim,
            "statement": self.summary(),
            "basis": [format_tindex(ix) for ix in self.basis],
            "relations": [r.to_json() for r in self.relations],
            "undecided": [format_tindex(ix) for ix in self.undecided],
        }


def scan_candidates(weight: int) -> List[TIndex]:
    """Candidate order: published basis, then the {1,2,3} sign-pattern
    family, then the remaining canonical representatives (dual-dedup)."""
    seen = set()
    out: List[TIndex] = []

    def push(ix: TIndex) -> None:
        if ix not in seen:
            seen.add(ix)
            out.append(ix)

    for s in tables.BASES.get(weight, ()):
        push(parse_tindex(s))
    for s in tables.pattern_candidates(weight):
        ix = parse_tindex(s)
        if is_admissible(ix):
            push(ix)
    for w in canonical_words(weight):
        push(from_word(w)[1])
    return out


def find_basis(
    weight: int,
    digits: int = 60,
    max_height: int = 10_000,
    cache: Optional[ValueCache] = None,
) -> BasisReport:
    """Greedy incremental basis scan over one weight."""
    report = BasisReport(weight=weight, digits=digits, height_bound=max_height)
    basis_vals: List[HPReal] = []
    with mp.workdps(digits + GUARD_DIGITS):
        for ix in scan_candidates(weight):
            val = eval_T(ix, digits, cache)
            if not basis_vals:
                report.basis.append(ix)
                basis_vals.append(val)
                continue
            try:
                rel = pslq([val] + basis_vals, digits, max_height)
            except PrecisionError:
                report.undecided.append(ix)
                continue
            if rel is None:
                report.basis.append(ix)
                basis_vals.append(val)
                continue
            if rel[0] == 0:
                # relation among accepted basis values: treat as undecided
                report.undecided.append(ix)
                continue
            resid = abs(
                mp.fsum(
                    c * v.value for c, v in zip(rel, [val] + basis_vals)
                )
            )
            report.relations.append(
                Relation(
                    symbols=tuple(
                        format_tindex(j) for j in [ix] + report.basis
                    ),
                    coefficients=tuple(rel),
                    residual=float(resid),
                    height=max(abs(c) for c in rel),
                    digits=digits,
                )
            )
    return report


def express(
    x: HPReal,
    basis: Sequence[HPReal],
    digits: int,
    max_height: int = 10_000,
) -> Optional[List[Fraction]]:
    """Rational coordinates of x in the given basis, or None."""
    try:
        rel = pslq([x] + list(basis), digits, max_height)
    except PrecisionError:
        return None
    if rel is None or rel[0] == 0:
        return None
    return [Fraction(-c, rel[0]) for c in rel[1:]]


# ---------------------------------------------------------------------------
# the level-4 generating set


def deligne_basis(
    weight: int, digits: int = 30, cache: Optional[ValueCache] = None
) -> List[Tuple[str, HPComplex]]:
    """Generating set (2 pi i)^p Li_{k}(i, 1, ..., 1) with p + |k| = weight.

    Entries with a trailing (1, 1) block are shuffle-regularized; the
    count is 2^weight.  For relation work over the rationals each element
    contributes its real and imaginary part separately.
    """
    if weight < 1:
        raise ValueError("weight must be >= 1")
    out: List[Tuple[str, HPComplex]] = []
    with mp.workdps(digits + GUARD_DIGITS):
        tpi = mp.mpc(0, 2) * mp.pi
        for p in range(weight, -1, -1):
            rest = weight - p
            scale = tpi ** p
            scale_hp = HPComplex(
                scale.real, scale.imag, abs(scale) * mp.mpf(10) ** (-(digits + 8))
            )
            if rest == 0:
                out.append((f"tpi^{p}", scale_hp))
                continue
            for depth in range(1, rest + 1):
                for ks in compositions(rest, depth):
                    li = eval_colored_mzv(
                        ks, ("i",) + (1,) * (depth - 1), digits, cache, regularized=True
                    )
                    label = f"tpi^{p}*L[{','.join(map(str, ks))}]"
                    out.append((label, li * scale_hp))
    return out


def real_span(elements: Sequence[Tuple[str, HPComplex]]) -> List[Tuple[str, HPReal]]:
    """Split complex generators into real/imaginary spanning reals."""
    out = []
    for label, v in elements:
        out.append((label + ".re", HPReal(v.re, v.err)))
        out.append((label + ".im", HPReal(v.im, v.err)))
    return out


# ---------------------------------------------------------------------------
# symbolic relation factories


def _relation_from_formal(fs: FormalSum, digits: int = 0) -> Optional[Relation]:
    """Normalize an exact FormalSum identity (= 0) into a Relation."""
    if not fs:
        return None
    items = sorted(fs, key=lambda t: format_tindex(t[0]))
    denom = 1
    for _, c in items:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    coeffs = [int(c * denom) for _, c in items]
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c))
    if g > 1:
        coeffs = [c // g for c in coeffs]
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    if sum(1 for c in coeffs if c) < 2:
        return None
    return Relation(
        symbols=tuple(format_tindex(ix) for ix, _ in items),
        coefficients=tuple(coeffs),
        residual=0.0,
        height=max(abs(c) for c in coeffs),
        digits=digits,
    )


def lifted_relations(weight: int) -> List[Relation]:
    """Exact homogeneous relations among weight-w values.

    (a) products of a lower-weight value with a duality pair of the
    complementary weight, expanded through the shuffle relation;
    (b) the depth-3 reversal identity
        s3 T(k1,k2,k3;s) - T(k1,k2;s1,s2) T(k3;s3)
          = s1 T(k3,k2,k1;s') - T(k3,k2;s3,s2) T(k1;s1),
    for all components with (k_j, s_j) != (1, 1).
    """
    if weight > 6:
        raise ValueError("lifted relations are generated for weight <= 6")
    seen = set()
    out: List[Relation] = []

    def push(fs: FormalSum) -> None:
        rel = _relation_from_formal(fs)
        if rel is None:
            return
        key = (rel.symbols, rel.coefficients)
        if key not in seen:
            seen.add(key)
            out.append(rel)

    for k in (1, 2, 3):
        rest = weight - k
        if rest < 2:
            continue
        pairs = []
        for ix in enumerate_tindices(rest):
            st = dual(ix)
            if st != ix and (st, ix) not in pairs:
                pairs.append((ix, st))
        for a in enumerate_tindices(k):
            for ix, st in pairs:
                push(product_as_T(a, ix) - product_as_T(a, st))

    for comp in compositions(weight, 3):
        k1, k2, k3 = comp
        for s1 in (1, -1):
            for s2 in (1, -1):
                for s3 in (1, -1):
                    if (k1, s1) == (1, 1) or (k2, s2) == (1, 1) or (k3, s3) == (1, 1):
                        continue
                    lhs = FormalSum.single(
                        TIndex((k1, k2, k3), (s1, s2, s3)), Fraction(s3)
                    ) - product_as_T(TIndex((k1, k2), (s1, s2)), TIndex((k3,), (s3,)))
                    rhs = FormalSum.single(
                        TIndex((k3, k2, k1), (s3, s2, s1)), Fraction(s1)
                    ) - product_as_T(TIndex((k3, k2), (s3, s2)), TIndex((k1,), (s1,)))
                    push(lhs - rhs)
    return out
