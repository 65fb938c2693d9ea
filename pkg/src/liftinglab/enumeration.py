"""Exhaustive search over truth-table space with staged potential-lifting filters.

Truth tables are packed into uint64 words (k <= 6) with f(0, ..., 0) as the
most significant of the 2^k bits, matching BooleanFunction.table.

The pipeline for a range of tables:

1. cheap vectorised predicates (full diameter, balance = stage m = k,
   optional constraints, one representative per elementary class);
2. vectorised open-map balance for stages m = k+1 .. k+VEC_STAGES;
3. exact first failing stage for the remaining survivors by path-count BFS
   (None for almost liftings, which pass every stage);
4. bijectivity of the cyclic map at each n, vectorised for small n and via
   the trace of the pair matrix for large n.

Counters of a range are plain sums, so ranges merge in any order.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .boolfun import BooleanFunction
from .classifier import first_unbalanced_m, is_apn_lifting, non_injective_lengths
from .errors import CapError, InputError

VEC_STAGES = 4
VEC_CYCLIC_MAX_N = 12
BATCH_CELLS = 1 << 22
DEFAULT_CHUNK = 1 << 22
QUICK_SPACE = 1 << 20
MAX_N = 30

U1 = np.uint64(1)


@dataclass(frozen=True)
class SearchSpec:
    k: int
    n_max: Optional[int]  # None: run every stage (almost-lifting decision)
    max_degree: Optional[int] = None
    permutive_only: bool = False
    f0_zero: bool = False
    f0_neq_f1: bool = False
    diameter_exact: bool = True
    count_mode: str = "equivalence_classes"  # or "functions"
    long_running: bool = False

    def __post_init__(self):
        if self.count_mode not in ("equivalence_classes", "functions"):
            raise InputError(f"unknown count mode {self.count_mode!r}")
        if self.k < 2:
            raise InputError("searches need k >= 2")
        if self.k == 7:
            raise CapError("k = 7 (permutive, degree <= 2) search is not supported")
        if self.k > 6:
            raise CapError("searches are limited to k <= 6")
        if self.n_max is not None and not self.k <= self.n_max <= MAX_N:
            raise CapError(f"n_max must lie in [k, {MAX_N}]")

    @property
    def uses_anf_space(self) -> bool:
        return self.max_degree is not None and self.max_degree < self.k - 1

    @property
    def space_size(self) -> int:
        if self.uses_anf_space:
            return 1 << len(_monomials(self.k, self.max_degree))
        return 1 << (1 << self.k)

    @property
    def degree_columns(self) -> List[int]:
        top = self.k - 1 if self.max_degree is None else min(self.k - 1, self.max_degree)
        return list(range(1, top + 1))

    def check_caps(self):
        if not self.uses_anf_space and self.k > 5:
            raise CapError("full truth-table space is limited to k <= 5; add a degree bound")
        if self.space_size > QUICK_SPACE and not self.long_running:
            raise CapError(
                f"search space of {self.space_size} functions is long-running; "
                "pass --long-running")


@dataclass
class CountRow:
    n: int
    potential_count: int
    f0_neq_f1_count: int
    lifting_count: int
    lifting_by_degree: Dict[int, int]

    def as_list(self, degrees: List[int]) -> List[int]:
        return [self.n, self.potential_count, self.f0_neq_f1_count, self.lifting_count] + [
            self.lifting_by_degree.get(d, 0) for d in degrees]


@dataclass
class Counters:
    """Additive search counters; index 0 of each per-n list is n = k."""
    potential: List[int]
    f0_neq: List[int]
    f1_one: List[int]
    lifting: List[List[int]]  # [n][degree]
    almost: int = 0
    almost_f0_neq: int = 0
    almost_f1_one: int = 0
    processed: int = 0

    @classmethod
    def empty(cls, spec: SearchSpec) -> "Counters":
        rows = 0 if spec.n_max is None else spec.n_max - spec.k + 1
        return cls([0] * rows, [0] * rows, [0] * rows,
                   [[0] * (spec.k + 1) for _ in range(rows)])

    def merge(self, other: "Counters") -> "Counters":
        self.potential = [a + b for a, b in zip(self.potential, other.potential)]
        self.f0_neq = [a + b for a, b in zip(self.f0_neq, other.f0_neq)]
        self.f1_one = [a + b for a, b in zip(self.f1_one, other.f1_one)]
        self.lifting = [[a + b for a, b in zip(r, s)] for r, s in zip(self.lifting, other.lifting)]
        self.almost += other.almost
        self.almost_f0_neq += other.almost_f0_neq
        self.almost_f1_one += other.almost_f1_one
        self.processed += other.processed
        return self

    def flat(self) -> List[int]:
        out = [self.processed, self.almost, self.almost_f0_neq, self.almost_f1_one]
        out += self.potential + self.f0_neq + self.f1_one
        for r in self.lifting:
            out += r
        return out

    @classmethod
    def from_flat(cls, spec: SearchSpec, values: List[int]) -> "Counters":
        c = cls.empty(spec)
        rows = len(c.potential)
        it = iter(values)
        c.processed, c.almost, c.almost_f0_neq, c.almost_f1_one = (next(it) for _ in range(4))
        c.potential = [next(it) for _ in range(rows)]
        c.f0_neq = [next(it) for _ in range(rows)]
        c.f1_one = [next(it) for _ in range(rows)]
        c.lifting = [[next(it) for _ in range(spec.k + 1)] for _ in range(rows)]
        return c

    def rows(self, spec: SearchSpec) -> List[CountRow]:
        out = []
        for i, n in enumerate(range(spec.k, (spec.n_max or spec.k - 1) + 1)):
            by_deg = {d: self.lifting[i][d] for d in spec.degree_columns}
            out.append(CountRow(n, self.potential[i], self.f0_neq[i], sum(self.lifting[i]), by_deg))
        return out


@dataclass(frozen=True)
class Survivor:
    table: int
    first_unbalanced: Optional[int]
    degree: int
    f0_neq_f1: bool

    def function(self, k: int) -> BooleanFunction:
        return BooleanFunction(k, self.table)


# --- packed-table primitives ---------------------------------------------------

def _position_mask(k: int, pred) -> np.uint64:
    size = 1 << k
    m = 0
    for i in range(size):
        if pred(i):
            m |= 1 << (size - 1 - i)
    return np.uint64(m)


def _bit(t: np.ndarray, k: int, idx) -> np.ndarray:
    size = 1 << k
    return (t >> (np.uint64(size - 1) - np.asarray(idx, dtype=np.uint64))) & U1


def _permute(t: np.ndarray, k: int, src) -> np.ndarray:
    """out has value t[src[i]] at index i."""
    size = 1 << k
    out = np.zeros_like(t)
    for i in range(size):
        out |= ((t >> np.uint64(size - 1 - src[i])) & U1) << np.uint64(size - 1 - i)
    return out


def _full(k: int) -> np.uint64:
    return np.uint64((1 << (1 << k)) - 1)


def depends_first(t, k):
    half = (1 << k) // 2
    low = np.uint64((1 << half) - 1)
    return ((t >> np.uint64(half)) ^ t) & low != 0


def depends_last(t, k):
    m = _position_mask(k, lambda i: i & 1)
    return ((t >> U1) ^ t) & m != 0


def left_permutive(t, k):
    half = (1 << k) // 2
    low = np.uint64((1 << half) - 1)
    return ((t >> np.uint64(half)) ^ t) & low == low


def right_permutive(t, k):
    m = _position_mask(k, lambda i: i & 1)
    return ((t >> U1) ^ t) & m == m


def orbit_images(t: np.ndarray, k: int) -> List[np.ndarray]:
    size = 1 << k
    rev = [int(format(i, f"0{k}b")[::-1], 2) for i in range(size)]
    comp = [i ^ (size - 1) for i in range(size)]
    r = _permute(t, k, rev)
    imgs = [t, r, _permute(t, k, comp), _permute(r, k, comp)]
    full = _full(k)
    return imgs + [x ^ full for x in imgs]


def is_class_representative(t: np.ndarray, k: int) -> np.ndarray:
    imgs = orbit_images(t, k)
    lo = imgs[0]
    for x in imgs[1:]:
        lo = np.minimum(lo, x)
    return t == lo


def packed_degree(t: np.ndarray, k: int) -> np.ndarray:
    size = 1 << k
    a = t.copy()
    h = 1
    while h < size:
        m = _position_mask(k, lambda i, h=h: not i & h)
        a ^= (a & m) >> np.uint64(h)
        h <<= 1
    deg = np.zeros(t.shape, dtype=np.int64)
    for d in range(1, k + 1):
        m = _position_mask(k, lambda i, d=d: bin(i).count("1") == d)
        deg[(a & m) != 0] = d
    return deg


def _monomials(k: int, max_degree: int) -> List[Tuple[int, ...]]:
    out = []
    for d in range(0, max_degree + 1):
        out.extend(combinations(range(1, k + 1), d))
    return out


def _monomial_table(k: int, mono) -> int:
    return BooleanFunction(k, _position_mask(k, lambda i: all(i >> (k - v) & 1 for v in mono)).item()).table


def anf_space_tables(k: int, max_degree: int, start: int, stop: int) -> np.ndarray:
    monos = [np.uint64(_monomial_table(k, m)) for m in _monomials(k, max_degree)]
    idx = np.arange(start, stop, dtype=np.uint64)
    t = np.zeros(idx.shape, dtype=np.uint64)
    zero = np.uint64(0)
    for j, mt in enumerate(monos):
        t ^= np.where((idx >> np.uint64(j)) & U1 == U1, mt, zero)
    return t


# --- stage checks --------------------------------------------------------------

def open_balanced_batch(t: np.ndarray, k: int, m: int) -> np.ndarray:
    """Balance of F_(m) for every packed table in t."""
    width = m - k + 1
    x = np.arange(1 << m, dtype=np.uint64)
    kmask = np.uint64((1 << k) - 1)
    windows = [(x >> np.uint64(m - k - j)) & kmask for j in range(width)]
    return _uniform_counts(t, k, windows, 1 << (k - 1))


def cyclic_bijective_batch(t: np.ndarray, k: int, n: int) -> np.ndarray:
    x = np.arange(1 << n, dtype=np.uint64)
    mask = np.uint64((1 << n) - 1)
    windows = []
    for j in range(n):
        rot = x if j == 0 else ((x << np.uint64(j)) | (x >> np.uint64(n - j))) & mask
        windows.append(rot >> np.uint64(n - k))
    return _uniform_counts(t, k, windows, 1)


def _uniform_counts(t: np.ndarray, k: int, windows, target: int) -> np.ndarray:
    width = len(windows)
    cells = windows[0].size
    words = 1 << width
    out = np.empty(t.shape, dtype=bool)
    batch = max(1, BATCH_CELLS // cells)
    shifts = [np.uint64((1 << k) - 1) - w for w in windows]
    for s in range(0, t.size, batch):
        tb = t[s:s + batch, None]
        y = np.zeros((tb.shape[0], cells), dtype=np.int64)
        for j, sh in enumerate(shifts):
            y |= ((tb >> sh[None, :]) & U1).astype(np.int64) << (width - 1 - j)
        flat = y + (np.arange(tb.shape[0], dtype=np.int64) * words)[:, None]
        counts = np.bincount(flat.ravel(), minlength=tb.shape[0] * words).reshape(-1, words)
        out[s:s + batch] = np.all(counts == target, axis=1)
    return out


# --- scanning ----------------------------------------------------------------------

def candidate_tables(spec: SearchSpec, start: int, stop: int) -> np.ndarray:
    if spec.uses_anf_space:
        return anf_space_tables(spec.k, spec.max_degree, start, stop)
    return np.arange(start, stop, dtype=np.uint64)


def stage_k_survivors(spec: SearchSpec, t: np.ndarray) -> np.ndarray:
    """Filters that are cheap on packed tables, ending with balance (stage m = k)."""
    k = spec.k
    size = 1 << k
    keep = np.bitwise_count(t) == size // 2
    if spec.diameter_exact:
        keep &= depends_first(t, k) & depends_last(t, k)
    f0 = _bit(t, k, 0)
    f1 = _bit(t, k, size - 1)
    if spec.f0_zero:
        keep &= f0 == 0
    if spec.f0_neq_f1:
        keep &= f0 != f1
    if spec.permutive_only:
        keep &= left_permutive(t, k) | right_permutive(t, k)
    t = t[keep]
    if spec.max_degree is not None and not spec.uses_anf_space:
        t = t[packed_degree(t, k) <= spec.max_degree]
    if spec.count_mode == "equivalence_classes":
        t = t[is_class_representative(t, k)]
    return t


def scan_range(spec: SearchSpec, start: int, stop: int,
               collect: bool = False) -> Tuple[Counters, List[Survivor]]:
    k = spec.k
    size = 1 << k
    counters = Counters.empty(spec)
    counters.processed = stop - start
    t = stage_k_survivors(spec, candidate_tables(spec, start, stop))

    first_fail = np.zeros(t.shape, dtype=np.int64)  # 0: not failed so far
    top = k + VEC_STAGES if spec.n_max is None else min(spec.n_max, k + VEC_STAGES)
    alive = np.ones(t.shape, dtype=bool)
    for m in range(k + 1, top + 1):
        idx = np.flatnonzero(alive)
        ok = open_balanced_batch(t[idx], k, m)
        first_fail[idx[~ok]] = m
        alive[idx[~ok]] = False

    need_exact = spec.n_max is None or spec.n_max > top
    exact: Dict[int, Optional[int]] = {}
    if need_exact:
        for i in np.flatnonzero(alive):
            exact[int(i)] = first_unbalanced_m(BooleanFunction(k, int(t[i])))

    def fails_at(i):
        if first_fail[i]:
            return int(first_fail[i])
        return exact.get(i, None) if need_exact else None

    fails = [fails_at(i) for i in range(t.size)]
    deg = packed_degree(t, k)
    f0 = _bit(t, k, 0)
    f1 = _bit(t, k, size - 1)
    neq = f0 != f1
    one = f1 == 1

    for i, ff in enumerate(fails):
        if ff is None and need_exact:
            counters.almost += 1
            counters.almost_f0_neq += int(neq[i])
            counters.almost_f1_one += int(one[i])

    if spec.n_max is not None:
        limit = np.array([MAX_N + 1 if ff is None else ff for ff in fails], dtype=np.int64)
        big: Dict[int, set] = {}
        for row, n in enumerate(range(k, spec.n_max + 1)):
            pot = np.flatnonzero(limit > n)
            counters.potential[row] = int(pot.size)
            counters.f0_neq[row] = int(np.count_nonzero(neq[pot]))
            counters.f1_one[row] = int(np.count_nonzero(one[pot]))
            if n <= VEC_CYCLIC_MAX_N:
                bij = pot[cyclic_bijective_batch(t[pot], k, n)]
            else:
                bij = []
                for i in pot:
                    i = int(i)
                    if i not in big:
                        big[i] = non_injective_lengths(BooleanFunction(k, int(t[i])), spec.n_max,
                                                       VEC_CYCLIC_MAX_N + 1)
                    if n not in big[i]:
                        bij.append(i)
                bij = np.array(bij, dtype=np.int64)
            for d in deg[bij]:
                counters.lifting[row][int(d)] += 1

    survivors = []
    if collect:
        survivors = [Survivor(int(t[i]), fails[i], int(deg[i]), bool(neq[i])) for i in range(t.size)]
    return counters, survivors


def _scan_size(spec: SearchSpec) -> int:
    # tables >= 2^(2^k - 1) have f(0) = 1; orbit minima never do (output complement)
    f0_forced = spec.f0_zero or spec.count_mode == "equivalence_classes"
    if f0_forced and not spec.uses_anf_space:
        return spec.space_size // 2
    return spec.space_size


def _chunks(spec: SearchSpec, start: int, chunk: int) -> Iterator[Tuple[int, int]]:
    total = _scan_size(spec)
    for s in range(start, total, chunk):
        yield s, min(total, s + chunk)


def _scan_job(args):
    spec, s, e = args
    return s, e, scan_range(spec, s, e)[0]


# --- checkpoints -----------------------------------------------------------------

def _spec_key(spec: SearchSpec) -> str:
    return f"{spec.k} {'inf' if spec.n_max is None else spec.n_max}"


def write_checkpoint(path, spec: SearchSpec, last_index: int, counters: Counters):
    """Plain text: "k n stage last_index counters..." (stage = last vectorised stage)."""
    stage = spec.k + VEC_STAGES
    line = f"{_spec_key(spec)} {stage} {last_index} " + " ".join(map(str, counters.flat()))
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(line + "\n")
    os.replace(tmp, path)


def read_checkpoint(path, spec: SearchSpec) -> Tuple[int, Counters]:
    fields = Path(path).read_text().split()
    if " ".join(fields[:2]) != _spec_key(spec) or int(fields[2]) != spec.k + VEC_STAGES:
        raise InputError(f"checkpoint {path} belongs to a different search")
    return int(fields[3]), Counters.from_flat(spec, [int(v) for v in fields[4:]])


# --- public entry points -----------------------------------------------------

def run_search(spec: SearchSpec, jobs: int = 1, checkpoint=None,
               chunk: int = DEFAULT_CHUNK, progress=None) -> Counters:
    spec.check_caps()
    start = 0
    total = Counters.empty(spec)
    if checkpoint is not None and Path(checkpoint).exists():
        start, total = read_checkpoint(checkpoint, spec)
    work = [(spec, s, e) for s, e in _chunks(spec, start, chunk)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_scan_job, work)
            total = _consume(results, total, spec, checkpoint, progress)
    else:
        total = _consume(map(_scan_job, work), total, spec, checkpoint, progress)
    return total


def _consume(results, total, spec, checkpoint, progress):
    for s, e, part in results:
        total.merge(part)
        if checkpoint is not None:
            write_checkpoint(checkpoint, spec, e, total)
        if progress is not None:
            progress(e, _scan_size(spec))
    return total


def enumerate_rows(spec: SearchSpec, jobs: int = 1, checkpoint=None, **kw) -> List[CountRow]:
    if spec.n_max is None:
        raise InputError("enumerate_rows needs a finite n_max")
    return run_search(spec, jobs=jobs, checkpoint=checkpoint, **kw).rows(spec)


def iter_survivors(spec: SearchSpec, keep=None) -> Iterator[Survivor]:
    """Stage-k survivors with their exact first failing stage, chunk by chunk."""
    spec.check_caps()
    for s, e in _chunks(spec, 0, DEFAULT_CHUNK):
        for x in scan_range(spec, s, e, collect=True)[1]:
            if keep is None or keep(x):
                yield x


def survivors(spec: SearchSpec) -> List[Survivor]:
    return list(iter_survivors(spec))


def almost_lifting_representatives(k: int, long_running: bool = False,
                                   **constraints) -> List[BooleanFunction]:
    spec = SearchSpec(k, None, long_running=long_running, **constraints)
    return [x.function(k) for x in iter_survivors(spec, lambda x: x.first_unbalanced is None)]


def apn_lifting_representatives(k: int, n_max: int = 10,
                                long_running: bool = False) -> List[BooleanFunction]:
    """Almost-lifting classes with du = 2^(n-k+1) for k <= n <= n_max."""
    return [f for f in almost_lifting_representatives(k, long_running=long_running)
            if is_apn_lifting(f, n_max)]


def count_almost_lifting_classes(k: int, jobs: int = 1, checkpoint=None,
                                 long_running: bool = False) -> int:
    if k > 5:
        raise CapError("almost-lifting class counts limited to k <= 5")
    spec = SearchSpec(k, None, long_running=long_running)
    return run_search(spec, jobs=jobs, checkpoint=checkpoint).almost


def count_s_k(k: int, n_cutoff: Optional[int] = None, jobs: int = 1,
              checkpoint=None, long_running: bool = False) -> Tuple[int, int]:
    """(|S_{k,n}|, how many of those have f(1,...,1) = 1); n_cutoff=None gives S_k."""
    if k > 5:
        raise CapError("S_k counts limited to k <= 5")
    spec = SearchSpec(k, n_cutoff, f0_zero=True, count_mode="functions",
                      long_running=long_running)
    c = run_search(spec, jobs=jobs, checkpoint=checkpoint)
    if n_cutoff is None:
        return c.almost, c.almost_f1_one
    return c.potential[-1], c.f1_one[-1]


# --- closed forms --------------------------------------------------------------

def _p2(e) -> int:
    e = Fraction(e)
    if e.denominator != 1:
        raise ArithmeticError(f"non-integer exponent {e}")
    return 2 ** int(e)


def permutive_sets_sizes(k: int) -> Tuple[int, int, int, int]:
    """(|T_k|, |T^r_k|, |T^c_k|, |T^{r∘c}_k|) in closed form."""
    if k < 2:
        raise InputError("needs k >= 2")
    q = Fraction(2) ** (k - 3)
    T = 2 * _p2(2 ** (k - 1)) - 3 * _p2(2 ** (k - 2))
    if k % 2 == 0:
        Tr = _p2((2 ** (k - 2) + 2 ** (k // 2 - 1)) / Fraction(2))
        Trc = Tr
    else:
        Tr = _p2((2 ** (k - 2) + 2 ** ((k - 1) // 2)) / Fraction(2))
        Trc = 2 * _p2(Fraction(2 ** (k - 2), 2))
    Tc = 2 * (2 * _p2(2 ** (k - 2)) - 3 * _p2(math.floor(q)))
    return T, Tr, Tc, Trc


def permutive_class_count(k: int) -> int:
    if k < 2:
        raise InputError("needs k >= 2")
    q = Fraction(2) ** (k - 3)
    base = 2 * _p2(2 ** (k - 1)) + _p2(2 ** (k - 2))
    if k % 2 == 0:
        total = base + 2 * _p2(q + Fraction(2) ** (k // 2 - 2)) - 6 * _p2(math.floor(q))
    else:
        total = base + _p2(q + Fraction(2) ** ((k - 3) // 2)) - 4 * _p2(q)
    count, rem = divmod(total, 8)
    if rem:
        raise ArithmeticError(f"class-count formula gave a non-integer for k = {k}")
    return count


def s_k_lower_bound(k: int) -> int:
    if k < 2:
        raise InputError("needs k >= 2")
    return 2 ** 2 ** (k - 1) - 3 * 2 ** (2 ** (k - 2) - 1)
