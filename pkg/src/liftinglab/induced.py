"""Induced shift-invariant maps F on n bits and their statistics.

Bit j of an n-bit word (j = 1 is the most significant) is f applied to the
cyclic window x_j, ..., x_{j+k-1}. The right shift sigma is a rotate-right by
one on the integer encoding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from .boolfun import BooleanFunction, anf_of, degree, fwht
from .errors import CapError, InputError

MAX_TABLE_N = 24
MAX_SCAN_N = 14
MAX_DDT_N = 12
MAX_BRANCH_N = 12


def _check_n(f: BooleanFunction, n: int, cap: int, what: str = "table"):
    if n < f.arity:
        raise InputError(f"n = {n} is smaller than the arity k = {f.arity}")
    if n > cap:
        raise CapError(f"n = {n} exceeds the {what} cap of {cap}")


def _index_dtype(n):
    return np.uint32 if n <= 31 else np.uint64


def rotate_right(x, n: int, s: int = 1):
    s %= n
    mask = (1 << n) - 1
    if s == 0:
        return x
    return ((x >> s) | (x << (n - s))) & mask


def popcount(a) -> np.ndarray:
    return np.bitwise_count(np.asarray(a, dtype=np.uint64)).astype(np.int64)


def cyclic_table(f: BooleanFunction, n: int) -> np.ndarray:
    k = f.arity
    dt = _index_dtype(n)
    x = np.arange(1 << n, dtype=dt)
    lut = f.values.astype(dt)
    out = np.zeros_like(x)
    mask = dt((1 << n) - 1)
    for j in range(n):
        # rotate left by j so x_{j+1} becomes the top bit
        if j:
            rot = ((x << dt(j)) | (x >> dt(n - j))) & mask
        else:
            rot = x
        out |= lut[rot >> dt(n - k)] << dt(n - 1 - j)
    return out


def open_table(f: BooleanFunction, m: int) -> np.ndarray:
    k = f.arity
    if m < k:
        raise InputError(f"m = {m} is smaller than k = {k}")
    if m > MAX_TABLE_N + k - 1:
        raise CapError(f"m = {m} too large for an explicit table")
    dt = _index_dtype(m)
    x = np.arange(1 << m, dtype=dt)
    lut = f.values.astype(dt)
    kmask = dt((1 << k) - 1)
    out = np.zeros_like(x)
    width = m - k + 1
    for j in range(width):
        out |= lut[(x >> dt(m - k - j)) & kmask] << dt(width - 1 - j)
    return out


def apply_open(f: BooleanFunction, m: int, x) -> Tuple[int, ...]:
    k = f.arity
    if len(x) != m:
        raise InputError(f"expected {m} input bits")
    if m < k:
        raise InputError(f"m = {m} is smaller than k = {k}")
    return tuple(f(tuple(x[i:i + k])) for i in range(m - k + 1))


def open_balanced(f: BooleanFunction, m: int) -> bool:
    counts = np.bincount(open_table(f, m), minlength=1 << (m - f.arity + 1))
    return bool(np.all(counts == (1 << (f.arity - 1))))


@dataclass(frozen=True)
class SboxTable:
    f: BooleanFunction
    n: int
    table: np.ndarray = field(repr=False, compare=False)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def is_shift_invariant(self) -> bool:
        x = np.arange(1 << self.n, dtype=np.int64)
        t = self.table.astype(np.int64)
        return bool(np.array_equal(t[rotate_right(x, self.n)], rotate_right(t, self.n)))


def induce_cyclic(f: BooleanFunction, n: int) -> SboxTable:
    _check_n(f, n, MAX_TABLE_N)
    return SboxTable(f, n, cyclic_table(f, n))


@dataclass(frozen=True)
class PreimageDistribution:
    n: int
    counts: Tuple[int, ...]  # counts[j] = number of outputs with exactly j preimages

    @property
    def ell_n(self) -> int:
        return max(j for j, c in enumerate(self.counts) if c)

    @property
    def iota(self) -> int:
        return self.counts[0] if self.counts else 0

    @property
    def image_ratio(self) -> Fraction:
        return Fraction((1 << self.n) - self.iota, 1 << self.n)

    def c(self, j: int) -> int:
        return self.counts[j] if j < len(self.counts) else 0

    def check_identities(self) -> bool:
        total = 1 << self.n
        ell, c0 = self.ell_n, self.iota
        return (sum(self.counts) == total
                and sum(j * c for j, c in enumerate(self.counts)) == total
                and Fraction(total, total - c0) <= ell <= c0 + 1
                and ell - 1 <= c0 <= total * (1 - Fraction(1, ell)))


def _distribution_from_table(table: np.ndarray, n: int) -> PreimageDistribution:
    pre = np.bincount(table, minlength=1 << n)
    return PreimageDistribution(n, tuple(int(c) for c in np.bincount(pre)))


def preimage_distribution(f: BooleanFunction, n: int) -> PreimageDistribution:
    _check_n(f, n, MAX_TABLE_N)
    return _distribution_from_table(cyclic_table(f, n), n)


def is_bijective(f: BooleanFunction, n: int) -> bool:
    _check_n(f, n, MAX_TABLE_N)
    pre = np.bincount(cyclic_table(f, n), minlength=1 << n)
    return bool(np.all(pre == 1))


# --- differential properties -------------------------------------------------

@dataclass(frozen=True)
class DifferentialSummary:
    n: int
    du: int
    collision_difference: int
    branch_number: Optional[int]

    @property
    def dpu(self) -> Fraction:
        return Fraction(self.du, 1 << self.n)


def ddt(f: BooleanFunction, n: int) -> np.ndarray:
    _check_n(f, n, MAX_DDT_N, "DDT")
    t = cyclic_table(f, n).astype(np.int64)
    size = 1 << n
    x = np.arange(size)
    out = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        out[a] = np.bincount(t[x ^ a] ^ t, minlength=size)
    return out


def differential_summary(f: BooleanFunction, n: int, with_branch: bool = True) -> DifferentialSummary:
    """One streaming pass over input differences a != 0, never storing the DDT."""
    _check_n(f, n, MAX_SCAN_N, "metric scan")
    if with_branch and n > MAX_BRANCH_N:
        raise CapError(f"branch number limited to n <= {MAX_BRANCH_N}")
    t = cyclic_table(f, n).astype(np.int64)
    size = 1 << n
    x = np.arange(size)
    wt = popcount(np.arange(size)) if with_branch else None
    du = 0
    coll = 0
    branch = None
    for a in range(1, size):
        row = np.bincount(t[x ^ a] ^ t, minlength=size)
        du = max(du, int(row.max()))
        coll = max(coll, int(row[0]))
        if with_branch:
            # b = 0 allowed: a collision is a pair x != y with F(x) = F(y)
            cand = int(wt[a]) + int(wt[row > 0].min())
            branch = cand if branch is None else min(branch, cand)
    return DifferentialSummary(n, du, coll, branch)


def du(f: BooleanFunction, n: int) -> int:
    return differential_summary(f, n, with_branch=False).du


def dpu(f: BooleanFunction, n: int) -> Fraction:
    return Fraction(du(f, n), 1 << n)


def collision_difference(f: BooleanFunction, n: int) -> int:
    return differential_summary(f, n, with_branch=False).collision_difference


def branch_number(f: BooleanFunction, n: int) -> int:
    return differential_summary(f, n, with_branch=True).branch_number


# --- linear properties -------------------------------------------------------

@dataclass(frozen=True)
class LinearSummary:
    n: int
    nl: int
    argmax: Tuple[int, int]  # (a, b) with maximal |sum (-1)^(a.x + b.F(x))|

    @property
    def lpu(self) -> Fraction:
        return (1 - Fraction(self.nl, 1 << (self.n - 1))) ** 2

    @property
    def max_correlation(self) -> Fraction:
        return 1 - Fraction(self.nl, 1 << (self.n - 1))


def _component_signs(t: np.ndarray, bs: np.ndarray) -> np.ndarray:
    # (-1)^(b . F(x)) for a block of masks b
    par = np.bitwise_count(np.bitwise_and(bs[:, None], t[None, :])) & 1
    return 1 - 2 * par.astype(np.int64)


def lat(f: BooleanFunction, n: int) -> np.ndarray:
    """LAT[b][a] = sum_x (-1)^(a.x + b.F(x))."""
    _check_n(f, n, MAX_DDT_N, "LAT")
    t = cyclic_table(f, n).astype(np.int64)
    bs = np.arange(1 << n, dtype=np.int64)
    return fwht(_component_signs(t, bs))


def lat_and_linearity(f: BooleanFunction, n: int, block: int = 256) -> LinearSummary:
    _check_n(f, n, MAX_SCAN_N, "metric scan")
    t = cyclic_table(f, n).astype(np.int64)
    size = 1 << n
    best = -1
    arg = (0, 1)
    for start in range(1, size, block):
        bs = np.arange(start, min(size, start + block), dtype=np.int64)
        spec = np.abs(fwht(_component_signs(t, bs)))
        i = int(spec.argmax())
        val = int(spec.flat[i])
        if val > best:
            best = val
            arg = (i % size, int(bs[i // size]))
    return LinearSummary(n, (size - best) // 2, arg)


def nonlinearity_F(f: BooleanFunction, n: int) -> int:
    return lat_and_linearity(f, n).nl


def lpu(f: BooleanFunction, n: int) -> Fraction:
    return lat_and_linearity(f, n).lpu


# --- image structure ---------------------------------------------------------

def sbox_balancedness(f: BooleanFunction, n: int) -> int:
    _check_n(f, n, MAX_SCAN_N, "metric scan")
    hist = np.bincount(cyclic_table(f, n), minlength=1 << n)
    spec = fwht(hist.astype(np.int64))
    return int(np.abs(spec[1:]).max())


def strict_avalanche(f: BooleanFunction, n: int) -> int:
    _check_n(f, n, MAX_SCAN_N, "metric scan")
    t = cyclic_table(f, n).astype(np.int64)
    size = 1 << n
    x = np.arange(size)
    best = 0
    for i in range(n):
        d = t ^ t[x ^ (1 << i)]
        spec = fwht(np.bincount(d, minlength=size).astype(np.int64))
        best = max(best, int(np.abs(spec[1:]).max()))
    return best


def component_degree_max(f: BooleanFunction, n: int) -> int:
    """max over v != 0 of deg(v . F), computed from scratch (no shortcut through f)."""
    from .boolfun import mobius
    _check_n(f, n, 10, "component-degree scan")
    t = cyclic_table(f, n).astype(np.int64)
    size = 1 << n
    wt = popcount(np.arange(size))
    best = 0
    for v in range(1, size):
        comp = (popcount(t & v) & 1).astype(np.uint8)
        coeffs = mobius(comp)
        nz = np.flatnonzero(coeffs)
        if nz.size:
            best = max(best, int(wt[nz].max()))
    return best


@dataclass(frozen=True)
class CryptoMetrics:
    n: int
    du: int
    dpu: Fraction
    nl_F: int
    lpu: Fraction
    degree_F: int
    branch_number: Optional[int]
    sbox_balancedness: int
    strict_avalanche: int
    collision_difference: int
    distribution: PreimageDistribution

    @property
    def image_ratio(self) -> Fraction:
        return self.distribution.image_ratio

    def as_dict(self) -> Dict:
        return {
            "n": self.n,
            "du": self.du,
            "dpu": fmt_fraction(self.dpu),
            "nl_F": self.nl_F,
            "lpu": fmt_fraction(self.lpu),
            "degree_F": self.degree_F,
            "branch_number": self.branch_number,
            "sbox_balancedness": self.sbox_balancedness,
            "strict_avalanche": self.strict_avalanche,
            "collision_difference": self.collision_difference,
            "ell_n": self.distribution.ell_n,
            "iota": self.distribution.iota,
            "image_ratio": fmt_fraction(self.image_ratio),
        }


def fmt_fraction(q: Fraction) -> str:
    return str(Fraction(q))


def metrics_report(f: BooleanFunction, n: int) -> CryptoMetrics:
    _check_n(f, n, MAX_SCAN_N, "metric scan")
    diff = differential_summary(f, n, with_branch=n <= MAX_BRANCH_N)
    lin = lat_and_linearity(f, n)
    return CryptoMetrics(
        n=n,
        du=diff.du,
        dpu=diff.dpu,
        nl_F=lin.nl,
        lpu=lin.lpu,
        degree_F=degree(f),
        branch_number=diff.branch_number,
        sbox_balancedness=sbox_balancedness(f, n),
        strict_avalanche=strict_avalanche(f, n),
        collision_difference=diff.collision_difference,
        distribution=preimage_distribution(f, n),
    )


def nonlinear_variables(f: BooleanFunction) -> set:
    return {i for m in anf_of(f).monomials if len(m) >= 2 for i in m}
