"""Integer-relation detection (PSLQ, standard two-matrix construction).

Parameters follow the usual reproducible choices: gamma = 2/sqrt(3), and a
relation is accepted when |sum c_j x_j| < 10^-(digits*4/5).  A `None`
return is a certificate of exclusion: the algorithm's norm lower bound
1/max|H_jj| exceeded max_height * sqrt(n), so no integer relation of
height <= max_height exists among the inputs (at the working precision).
Anything in between raises PrecisionError: the inputs do not carry enough
digits to decide the question up to the requested height.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import mpmath as mp

from .errors import PrecisionError
from .hp import HPReal

GAMMA_NUM = 2.0
GAMMA_DEN = 3.0  # gamma = 2/sqrt(3)


@dataclass
class PslqStats:
    iterations: int = 0
    exclusion_norm: float = 0.0


def _as_mpf_list(xs: Sequence[Union[mp.mpf, HPReal, float, int]], digits: int) -> List[mp.mpf]:
    out = []
    for x in xs:
        if isinstance(x, HPReal):
            if x.err > mp.mpf(10) ** (-digits):
                raise PrecisionError(
                    f"input carries error {mp.nstr(x.err, 3)} > 1e-{digits}"
                )
            out.append(mp.mpf(x.value))
        else:
            out.append(mp.mpf(x))
    return out


def pslq(
    xs: Sequence[Union[mp.mpf, HPReal, float, int]],
    digits: int,
    max_height: int = 10_000,
    max_iterations: Optional[int] = None,
    stats: Optional[PslqStats] = None,
) -> Optional[List[int]]:
    """Find c (integers, >= 2 nonzero) with |sum c_j x_j| < 10^-(4*digits/5).

    Returns the coefficient vector with max|c_j| <= max_height, or None
    with the exclusion interpretation above.  Raises PrecisionError when
    neither a relation nor an exclusion certificate is reachable.
    """
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two inputs")
    threshold_exp = -(digits * 4) // 5
    with mp.workdps(digits + 10):
        x = _as_mpf_list(xs, digits)
        if any(v == 0 for v in x):
            # a zero input is a height-1 relation on its own
            c = [0] * n
            c[x.index(mp.mpf(0))] = 1
            # still need >= 2 nonzero coefficients per the Relation contract;
            # pair the zero entry with a zero-coefficient partner is not
            # allowed, so treat zero inputs as caller error instead.
            raise ValueError("inputs must be nonzero")
        threshold = mp.mpf(10) ** threshold_exp
        norm_x = mp.sqrt(mp.fsum(v * v for v in x))
        gamma = mp.sqrt(mp.mpf(GAMMA_NUM * GAMMA_NUM) / GAMMA_DEN)
        eps_floor = mp.mpf(10) ** (-(digits + 6))

        y = [v / norm_x for v in x]
        # partial norms s_k = sqrt(sum_{j>=k} y_j^2)
        s = [mp.mpf(0)] * n
        acc = mp.mpf(0)
        for k in range(n - 1, -1, -1):
            acc += y[k] * y[k]
            s[k] = mp.sqrt(acc)
        H = [[mp.mpf(0)] * (n - 1) for _ in range(n)]
        for j in range(n - 1):
            H[j][j] = s[j + 1] / s[j]
            for i in range(j + 1, n):
                H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1])
        A = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        B = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

        def reduce_row(i: int, j_start: int) -> None:
            for j in range(j_start, -1, -1):
                if H[j][j] == 0:
                    continue
                t = int(mp.nint(H[i][j] / H[j][j]))
                if t == 0:
                    continue
                y[j] += t * y[i]
                for k in range(j + 1):
                    H[i][k] -= t * H[j][k]
                for k in range(n):
                    A[i][k] -= t * A[j][k]
                    B[k][j] += t * B[k][i]

        for i in range(1, n):
            reduce_row(i, i - 1)

        if max_iterations is None:
            max_iterations = 2000 * n * n + 20000
        gammas = [gamma ** (i + 1) for i in range(n - 1)]

        def candidate_check() -> Optional[List[int]]:
            j_min = min(range(n), key=lambda j: abs(y[j]))
            if abs(y[j_min]) * norm_x > threshold * 2:
                return None
            c = [B[i][j_min] for i in range(n)]
            resid = abs(mp.fsum(ci * xi for ci, xi in zip(c, x)))
            if resid < threshold and sum(1 for ci in c if ci) >= 2:
                if max(abs(ci) for ci in c) <= max_height:
                    return c
            return None

        for it in range(max_iterations):
            if stats is not None:
                stats.iterations = it
            cand = candidate_check()
            if cand is not None:
                return cand
            # norm lower bound for any remaining relation
            hmax = max(abs(H[j][j]) for j in range(n - 1))
            bound = 1 / hmax if hmax > 0 else mp.inf
            if stats is not None:
                stats.exclusion_norm = float(bound)
            if bound > max_height * mp.sqrt(n):
                return None

            m = max(range(n - 1), key=lambda i: gammas[i] * abs(H[i][i]))
            y[m], y[m + 1] = y[m + 1], y[m]
            H[m], H[m + 1] = H[m + 1], H[m]
            A[m], A[m + 1] = A[m + 1], A[m]
            for k in range(n):
                B[k][m], B[k][m + 1] = B[k][m + 1], B[k][m]
            if m < n - 2:
                t0 = mp.hypot(H[m][m], H[m][m + 1])
                if t0 == 0:
                    raise PrecisionError("degenerate corner: inputs too imprecise")
                t1, t2 = H[m][m] / t0, H[m][m + 1] / t0
                for i in range(m, n):
                    t3, t4 = H[i][m], H[i][m + 1]
                    H[i][m] = t1 * t3 + t2 * t4
                    H[i][m + 1] = -t2 * t3 + t1 * t4
            for i in range(m + 1, n):
                reduce_row(i, min(i - 1, m + 1))
            if min(abs(v) for v in y) < eps_floor:
                cand = candidate_check()
                if cand is not None:
                    return cand
                raise PrecisionError(
                    f"y-vector exhausted at {digits} digits without a clean relation"
                )
        raise PrecisionError(f"no decision within {max_iterations} iterations")
