"""Reference tables: verified bases and integer reduction rows per weight.

Every weight-w table lists a basis (as T-index notation) and, for the
displayed non-basis values, the integer coordinates in that basis.  The
catalog verifies each row numerically and the relation lab re-derives the
coefficients by integer-relation detection; the dimension scan tries these
basis candidates first so the reported bases match these lists.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

# weight -> ordered basis, in the notation of words.parse_tindex
BASES: Dict[int, Tuple[str, ...]] = {
    1: ("-1",),
    2: ("1,-1", "-2"),
    3: ("3", "1,-2", "-2,-1", "1,1,-1"),
    # a1..a7
    4: ("1,1,1,-1", "-2,2", "-1,3", "1,-3", "-2,1,-1", "3,-1", "-4"),
    # b1..b13
    5: (
        "1,1,1,1,-1",
        "2,1,1,-1",
        "1,1,2,-1",
        "-1,2,1,-1",
        "-2,1,1,-1",
        "1,3,-1",
        "1,-3,-1",
        "3,-1,-1",
        "-3,-1,-1",
        "-2,-2,-1",
        "-1,4",
        "1,-4",
        "1,4",
    ),
}

# lhs notation -> {1-based basis index: integer coefficient}
REDUCTIONS: Dict[int, Dict[str, Dict[int, int]]] = {
    2: {
        "2": {1: 2},
    },
    3: {
        "-3": {4: 3},
        "-1,-2": {4: 6, 3: -2},
        "2,-1": {1: 1, 2: -1},
    },
    4: {
        "4": {1: 8},
        "-2,-2": {2: 9, 7: -12, 3: 18},
        "-1,-2,-1": {1: 24, 5: -4, 6: -2},
        "2,2": {4: 4},
        "-1,-3": {7: 3, 3: -4, 2: -2},
        "1,1,-2": {2: 3, 7: -4, 3: 6},
        "-2,-1,-1": {5: 2},
        "2,-2": {1: 12, 4: -2, 6: -1},
        "-3,-1": {7: 9, 3: -12, 2: -6},
        "1,3": {1: 6, 4: -2},
        "-1,1,-2": {1: 12, 6: -2},
        "2,1,-1": {2: 2, 3: 6, 7: -3},
        "1,2,-1": {2: -4, 3: -9, 7: 6},
        "-1,2,-1": {1: -12, 5: 1, 6: 2},
        "1,-1,2": {5: 1},
    },
    5: {
        "-5": {1: 25},
        "-3,2": {6: 2, 7: 4, 11: -77, 1: 240, 4: 21, 5: -17, 8: 2},
        "5": {2: 2, 12: -2, 13: 7},
        "-2,3": {1: -90, 4: -10, 5: 8, 11: 35, 6: -1, 7: -2, 8: -1},
        "2,3": {13: 2, 2: 2, 12: -2},
        "-1,-2,-2": {10: -1, 2: -6, 12: 12, 13: -24, 3: 3, 9: 4},
        "2,-3": {12: -4, 13: 4, 2: 1},
        "2,-1,-2": {1: 180, 11: -70, 4: 20, 5: -10, 6: 2, 7: 4, 8: 2},
        "3,2": {13: 6},
        "1,-1,3": {12: 9, 13: 3, 3: -6, 9: -2, 2: 3},
        "-1,-4": {1: -20, 11: 6, 4: -2, 5: 2},
        "-1,2,-2": {10: 2, 2: 3, 13: 12, 3: -6, 9: -3},
        "-3,-2": {4: 2, 5: -2, 1: 60, 11: -14},
        "-1,3,-1": {10: -2, 2: -2, 13: -6, 3: 5, 9: 2},
        "-2,-3": {1: 60, 11: -14, 4: 5, 5: -5},
        "-2,-1,2": {5: 4, 1: -120, 11: 28, 4: -8, 8: 2},
        "3,-2": {12: 12, 13: -6, 3: -3},
        "2,-2,-1": {7: -2, 1: -60, 5: 4, 11: 28, 4: -8, 8: -1},
        "-4,-1": {11: 21, 1: -60, 4: -5, 5: 5},
        "-1,-3,-1": {10: 1, 2: 2, 12: -12, 13: 12, 3: 1, 9: -1},
        "4,-1": {2: 2, 12: -12, 13: 12, 3: 3},
        "2,1,-2": {1: -60, 11: 42, 4: -12, 5: 6, 6: -2, 7: -4, 8: -3},
        "-3,1,-1": {12: 3},
        "2,2,-1": {7: -2, 1: -60, 11: 42, 4: -12, 5: 6, 6: -4, 8: -3},
        "-1,-1,-3": {12: -24, 13: 12, 3: 9, 9: 1},
        "3,1,-1": {7: 1, 1: 30, 11: -14, 4: 4, 5: -2, 6: 1, 8: 1},
        "-1,1,-3": {12: 9, 13: -6, 3: -3},
        "1,1,-3": {7: -1, 1: -20, 11: 14, 4: -4, 5: 2, 6: -1, 8: -1},
        "1,-2,2": {9: 1, 2: -3, 12: 6, 13: -6},
        "1,2,-2": {7: 4, 1: 90, 11: -56, 4: 16, 5: -8, 6: 3, 8: 4},
        "1,-1,-3": {5: 4, 1: -90, 11: 28, 4: -8},
        "-2,-1,-2": {10: -1, 2: 6, 12: 12, 13: 12, 3: -9, 9: -4},
        "1,-2,-2": {1: 30, 6: -1, 7: -2, 8: -1},
        "-2,2,-1": {10: 1, 2: 3, 12: -12, 13: 12, 9: -1},
        "-2,1,-2": {12: 12, 10: -1, 13: -6, 3: -3},
        "-1,1,1,-2": {1: -100, 11: 14, 4: -2, 5: 6, 8: 2},
        "2,-1,2": {12: -12, 3: 6, 9: 2},
        "-1,1,2,-1": {1: 180, 11: -35, 4: 7, 5: -11, 8: -2},
        "-1,-2,1,-1": {1: 60, 11: -14, 4: 3, 5: -5},
        "-1,-1,2,-1": {1: -360, 11: 84, 4: -20, 5: 24, 8: 2},
        "1,1,1,-2": {12: 2, 13: -1, 3: -1},
        "-2,-1,1,-1": {1: 150, 4: 13, 5: -10, 11: -49, 6: 1, 7: 2, 8: 1},
        "1,2,1,-1": {12: -3, 13: 3},
        "2,-1,-1,-1": {5: 36, 1: -480, 4: -44, 11: 168, 6: -4, 7: -8, 8: -4},
    },
}

# displayed dual-pair equalities (lhs value equals rhs value)
DUALITY_ROWS: Dict[int, List[Tuple[str, str]]] = {
    2: [("-1,-1", "-2")],
    3: [
        ("1,2", "3"),
        ("1,-1,-1", "-3"),
        ("-1,1,-1", "1,-2"),
        ("-1,-1,-1", "2,-1"),
        ("-1,2", "-2,-1"),
    ],
    4: [
        ("-1,-1,-2", "-1,2,-1"),
        ("-1,1,1,-1", "1,1,-2"),
        ("-1,1,-1,-1", "3,-1"),
    ],
    5: [
        ("1,-1,-1,-2", "-1,2,1,-1"),
        ("1,1,-1,2", "-2,1,1,-1"),
        ("-1,1,3", "1,-3,-1"),
        ("-2,1,2", "3,-1,-1"),
        ("-1,-1,3", "1,-2,-2"),
        ("-1,-2,2", "2,-1,-2"),
        ("1,-2,-1,-1", "-2,-1,1,-1"),
        ("1,-1,-2,-1", "-1,-2,1,-1"),
        ("-1,-1,1,-2", "-1,1,2,-1"),
        ("-1,2,2", "2,-2,-1"),
    ],
}

# the {1,2,3}-pattern basis candidates are tried right after the tables;
# signs: last always barred, earlier entries barred unless the part is 1
def pattern_candidates(weight: int) -> List[str]:
    from .series import compositions

    out = []
    for depth in range(1, weight + 1):
        for comp in compositions(weight, depth):
            if any(c > 3 for c in comp):
                continue
            sigs = [1 if c == 1 else -1 for c in comp]
            sigs[-1] = -1
            out.append(",".join(str(k * s) for k, s in zip(comp, sigs)))
    return out
