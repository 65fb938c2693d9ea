"""Named Boolean functions with published reference values."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .anf import parse_anf
from .boolfun import BooleanFunction
from .errors import InputError


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expr: str
    k: int
    degree: int
    lpu: Optional[Fraction] = None
    dpu: Optional[Fraction] = None
    pattern: Optional[str] = None  # "a, b": ell_n = a on bZ, else 1
    differentials: Tuple[int, ...] = ()  # du for n = k, k+1, ..., 9
    image_ratio_n10: Optional[str] = None  # two decimals, or "1" for bijective

    def function(self) -> BooleanFunction:
        return parse_anf(self.expr, self.k)

    def du_by_n(self) -> Dict[int, int]:
        return {self.k + i: v for i, v in enumerate(self.differentials)}


F = Fraction

CANDIDATES: List[CorpusEntry] = [
    CorpusEntry("A1", "x1 ⊕ x2(x3 ⊕ 1)", 3, 2, F(1, 4), F(1, 4), image_ratio_n10=".97"),
    CorpusEntry("A2", "x1 ⊕ x2x3", 3, 2, F(1, 4), F(1, 4), image_ratio_n10=".87"),
    CorpusEntry("B1", "x1 ⊕ x2(x3 ⊕ x4)", 4, 2, F(1, 4), F(1, 8), image_ratio_n10=".84"),
    CorpusEntry("B2", "x1 ⊕ x2(x3 ⊕ x4 ⊕ 1)", 4, 2, F(1, 4), F(1, 8), image_ratio_n10=".86"),
    CorpusEntry("B3", "x1 ⊕ x4(x2 ⊕ x3 ⊕ 1)", 4, 2, F(1, 4), F(1, 8), image_ratio_n10=".83"),
    CorpusEntry("C1", "x2 ⊕ x3 ⊕ x4(x1 ⊕ x2)(x3 ⊕ 1)", 4, 3, F(9, 16), F(5, 16), image_ratio_n10=".90"),
    CorpusEntry("C2", "x1 ⊕ x4 ⊕ x3(x2 ⊕ x4 ⊕ x2x4)", 4, 3, F(9, 16), F(5, 16), image_ratio_n10=".71"),
    CorpusEntry("D1", "x2 ⊕ x3((x1 ⊕ x2)(x4 ⊕ 1) ⊕ x4x5 ⊕ 1)", 5, 3, F(1, 4), F(7, 32),
                image_ratio_n10=".95"),
    CorpusEntry("D2", "x2 ⊕ x3(x1 ⊕ 1) ⊕ x4((x2 ⊕ 1)(x5 ⊕ 1) ⊕ x3(x1 ⊕ x5))", 5, 3, F(1, 4), F(7, 32),
                image_ratio_n10=".95"),
    CorpusEntry("D3", "x2 ⊕ x4(x5 ⊕ 1)(x1 ⊕ x3)", 5, 3, F(9, 16), F(9, 32), image_ratio_n10=".95"),
    CorpusEntry("E1", "x2 ⊕ x1(x4(x3 ⊕ 1) ⊕ (x4 ⊕ 1)x5(x2 ⊕ x3 ⊕ 1))", 5, 4, F(25, 64), F(1, 4),
                image_ratio_n10="1"),
]

VIRTUAL_LIFTINGS: List[CorpusEntry] = [
    CorpusEntry("V1", "x1 ⊕ x2(x3 ⊕ 1)", 3, 2, F(1, 4), pattern="3, 2",
                differentials=(2, 4, 8, 16, 32, 64, 128)),
    CorpusEntry("V2", "x1 ⊕ x2x3(x4 ⊕ 1)", 4, 3, F(9, 16), pattern="4, 3",
                differentials=(6, 14, 28, 56, 112, 224)),
    CorpusEntry("V3", "x1 ⊕ x2(x3 ⊕ 1)(x4 ⊕ 1)", 4, 3, F(9, 16), pattern="2, 3",
                differentials=(6, 14, 28, 56, 112, 224)),
    CorpusEntry("V4", "x2 ⊕ x1(x3x4 ⊕ x5(x3 ⊕ x4 ⊕ 1))", 5, 3, F(9, 16), pattern="4, 3",
                differentials=(10, 24, 42, 80, 162)),
    CorpusEntry("V5", "x2 ⊕ x3((x1 ⊕ x2)(x4 ⊕ 1) ⊕ x4x5 ⊕ 1)", 5, 3, F(1, 4), pattern="4, 3",
                differentials=(8, 14, 28, 56, 112)),
    CorpusEntry("V6", "x2 ⊕ x3(x1 ⊕ 1) ⊕ x4((x2 ⊕ 1)(x5 ⊕ 1) ⊕ x3(x1 ⊕ x5))", 5, 3, F(1, 4),
                pattern="4, 3", differentials=(8, 14, 28, 56, 112)),
    CorpusEntry("V7", "x3 ⊕ x4(x5(x2 ⊕ x3 ⊕ 1) ⊕ 1) ⊕ (x4 ⊕ 1)(x2 ⊕ x3(x1 ⊕ x2))", 5, 3, F(1),
                pattern="4, 3", differentials=(10, 18, 44, 84, 168)),
    CorpusEntry("V8", "x2 ⊕ x4(x5 ⊕ 1)(x1 ⊕ x3)", 5, 3, F(9, 16), pattern="2, 3",
                differentials=(12, 24, 34, 72, 144)),
    CorpusEntry("V9", "x1 ⊕ x2x3x4(x5 ⊕ 1)", 5, 4, F(49, 64), pattern="5, 4",
                differentials=(18, 38, 78, 156, 312)),
    CorpusEntry("V10", "x1 ⊕ x2x3(x4 ⊕ 1)(x5 ⊕ 1)", 5, 4, F(49, 64), pattern="2, 4",
                differentials=(22, 36, 74, 148, 296)),
    CorpusEntry("V11", "x1 ⊕ x2(x3 ⊕ 1)(x4 ⊕ 1)(x5 ⊕ 1)", 5, 4, F(49, 64), pattern="2, 4",
                differentials=(18, 38, 78, 156, 312)),
    CorpusEntry("V12", "x1 ⊕ x2(x3 ⊕ 1)(x4(x5 ⊕ 1) ⊕ 1)", 5, 4, F(25, 64), pattern="3, 4",
                differentials=(14, 24, 48, 96, 192)),
]

PROPER_LIFTINGS: List[CorpusEntry] = [
    CorpusEntry("P1", "x2 ⊕ x1(x3 ⊕ 1)x4", 4, 3, F(9, 16), differentials=(6, 14, 30, 54, 108, 216)),
    CorpusEntry("P2", "x2 ⊕ x1x3(x4 ⊕ 1)(x5 ⊕ 1)", 5, 4, F(49, 64), differentials=(16, 34, 72, 148, 304)),
    CorpusEntry("P3", "x2 ⊕ x1(x3 ⊕ 1)(x4 ⊕ 1)x5", 5, 4, F(49, 64), differentials=(22, 34, 72, 146, 286)),
    CorpusEntry("P4", "x2 ⊕ x1(x4(x3 ⊕ 1) ⊕ (x4 ⊕ 1)x5(x2 ⊕ x3 ⊕ 1))", 5, 4, F(25, 64),
                differentials=(8, 18, 36, 68, 132)),
    CorpusEntry("P5", "x3 ⊕ x1x2(x4 ⊕ 1)x5", 5, 4, F(49, 64), differentials=(18, 40, 78, 152, 300)),
    CorpusEntry("P6", "x3 ⊕ x1(x2 ⊕ 1)x4(x5 ⊕ 1)", 5, 4, F(49, 64), differentials=(22, 50, 74, 148, 304)),
]

# degree-2 k = 6 liftings for n in {11, 13, 15, 17, 19}
K6_DEGREE2: List[CorpusEntry] = [
    CorpusEntry("K6a", "x1 ⊕ x2 ⊕ x3 ⊕ x2x3 ⊕ x2x5 ⊕ x2x6 ⊕ x3x4 ⊕ x3x5 ⊕ x4x5 ⊕ x4x6 ⊕ x5x6", 6, 2),
    CorpusEntry("K6b", "x1 ⊕ x2 ⊕ x3 ⊕ x5 ⊕ x2x3 ⊕ x4x5 ⊕ x5x6", 6, 2),
    CorpusEntry("K6c", "x1 ⊕ x3 ⊕ x4 ⊕ x5 ⊕ x2x3 ⊕ x3x4 ⊕ x5x6", 6, 2),
    CorpusEntry("K6d", "x1 ⊕ x4 ⊕ x5 ⊕ x2x3 ⊕ x2x4 ⊕ x2x6 ⊕ x3x4 ⊕ x3x5 ⊕ x3x6 ⊕ x4x5 ⊕ x5x6", 6, 2),
]
K6_LIFTING_NS = (11, 13, 15, 17, 19)

# single permutive APN liftings whose linear-term variants give all APN classes
APN_GENERATORS: List[CorpusEntry] = [
    CorpusEntry("APN3", "x1 ⊕ x2x3", 3, 2),
    CorpusEntry("APN4", "x1 ⊕ x2(x3 ⊕ x4)", 4, 2),
    CorpusEntry("APN5", "x1 ⊕ x2(x3 ⊕ x4 ⊕ x5) ⊕ x3x5", 5, 2),
]

NAMED: List[CorpusEntry] = [
    CorpusEntry("chi", "x1 ⊕ (x2 ⊕ 1)x3", 3, 2, pattern="3, 2"),
    CorpusEntry("patt", "x2 ⊕ x1(x3 ⊕ 1)x4", 4, 3),
    CorpusEntry("g", "x1 ⊕ x2(x3 ⊕ x4 ⊕ 1)", 4, 2),
]
G_ELL_N = (4, 2, 4, 2, 4, 2, 3, 2, 4, 2, 3, 3, 4, 2, 4, 3, 4)  # n = 4..20

# elementary-equivalence class counts: (k, almost liftings, permutive)
COMPARISON = ((3, 4, 4), (4, 73, 65), (5, 17881, 16416))

# counting rows (n, potential, f(0) != f(1), liftings, deg 1, deg 2, ...)
REFERENCE_COUNTS_K3 = [
    (3, 13, 8, 6, 0, 6), (4, 5, 3, 1, 1, 0), (5, 4, 2, 2, 1, 1), (6, 4, 2, 0, 0, 0),
    (7, 4, 2, 2, 1, 1), (8, 4, 2, 1, 1, 0), (9, 4, 2, 1, 0, 1), (10, 4, 2, 1, 1, 0),
    (11, 4, 2, 2, 1, 1), (12, 4, 2, 0, 0, 0), (13, 4, 2, 2, 1, 1), (14, 4, 2, 1, 1, 0),
    (15, 4, 2, 1, 0, 1), (16, 4, 2, 1, 1, 0), (17, 4, 2, 2, 1, 1), (18, 4, 2, 0, 0, 0),
    (19, 4, 2, 2, 1, 1),
]
REFERENCE_COUNTS_K4 = [
    (4, 1665, 887, 205, 1, 12, 192), (5, 536, 281, 59, 1, 6, 52), (6, 124, 64, 6, 1, 3, 2),
    (7, 77, 39, 4, 0, 0, 4), (8, 73, 36, 4, 1, 0, 3), (9, 73, 36, 3, 1, 0, 2),
    (10, 73, 36, 4, 1, 0, 3), (11, 73, 36, 5, 1, 0, 4), (12, 73, 36, 2, 1, 0, 1),
    (13, 73, 36, 5, 1, 0, 4), (14, 73, 36, 3, 0, 0, 3), (15, 73, 36, 3, 1, 0, 2),
    (16, 73, 36, 4, 1, 0, 3), (17, 73, 36, 5, 1, 0, 4), (18, 73, 36, 2, 1, 0, 1),
    (19, 73, 36, 5, 1, 0, 4), (20, 73, 36, 4, 1, 0, 3), (21, 73, 36, 2, 0, 0, 2),
    (22, 73, 36, 4, 1, 0, 3), (23, 73, 36, 5, 1, 0, 4),
]
# None where the published table leaves a cell blank
REFERENCE_COUNTS_K5 = [
    (5, 75165111, 38800984, 2815556, 2, 483, 89583, 2725488),
    (6, None, None, 13316, 2, 117, 731, 12466),
    (7, None, None, 462, 3, 20, 90, 349),
    (8, 36080, 18072, 31, 3, 0, 11, 17), (9, 18808, 9369, 52, 2, 3, 18, 29),
    (10, 17921, 8953, 34, 2, 1, 11, 20), (11, 17885, 8940, 78, 3, 3, 28, 44),
    (12, 17882, 8937, 8, 2, 0, 0, 6), (13, 17881, 8936, 78, 3, 3, 27, 45),
    (14, 17881, 8936, 33, 3, 1, 10, 19), (15, 17881, 8936, 43, 0, 1, 16, 26),
    (16, 17881, 8936, 27, 3, 0, 9, 15), (17, 17881, 8936, 75, 3, 3, 26, 43),
    (18, 17881, 8936, 14, 2, 1, 1, 10), (19, 17881, 8936, 74, 3, 3, 26, 42),
    (20, 17881, 8936, 25, 2, 0, 9, 14),
]
REFERENCE_COUNTS_K6_DEG2 = [
    (6, 232090, 119232, 4850, 3, 4847), (7, 136330, 69497, 468, 3, 465),
    (8, 41462, 22295, 52, 4, 48), (9, 21784, 11310, 34, 3, 31), (10, 17078, 8631, 4, 4, 0),
    (11, 16701, 8358, 8, 4, 4), (12, 16593, 8289, 4, 3, 1), (13, 16581, 8280, 8, 4, 4),
    (14, 16579, 8280, 3, 3, 0), (15, 16579, 8280, 7, 3, 4), (16, 16579, 8280, 4, 4, 0),
    (17, 16579, 8280, 8, 4, 4), (18, 16579, 8280, 3, 3, 0), (19, 16579, 8280, 8, 4, 4),
    (20, 16579, 8280, 4, 4, 0),
]
REFERENCE_COUNTS = {3: REFERENCE_COUNTS_K3, 4: REFERENCE_COUNTS_K4, 5: REFERENCE_COUNTS_K5, 6: REFERENCE_COUNTS_K6_DEG2}

GROUPS: Dict[str, List[CorpusEntry]] = {
    "candidates": CANDIDATES,
    "virtual": VIRTUAL_LIFTINGS,
    "proper": PROPER_LIFTINGS,
    "k6": K6_DEGREE2,
    "apn": APN_GENERATORS,
    "named": NAMED,
}


def lookup(name: str) -> CorpusEntry:
    for group in GROUPS.values():
        for e in group:
            if e.name.lower() == name.lower():
                return e
    raise InputError(f"no corpus entry named {name!r}")
