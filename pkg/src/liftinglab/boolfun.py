"""Boolean functions f: F_2^k -> F_2 and their intrinsic properties.

Encoding used throughout the package: an input (x_1, ..., x_k) has index
enc(x) = sum_i x_i 2^(k-i), so x_1 is the most significant bit. A truth table
is packed into a 2^k-bit integer whose most significant bit is f(0, ..., 0);
integer order of packed tables is therefore lexicographic order of the
value sequence f(0), f(1), ..., f(2^k - 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, Sequence, Tuple

import numpy as np

from .errors import InputError

MAX_ARITY = 8


def bit_reverse(i: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (i & 1)
        i >>= 1
    return out


def enc(x: Sequence[int]) -> int:
    idx = 0
    for b in x:
        idx = (idx << 1) | (int(b) & 1)
    return idx


def dec(idx: int, k: int) -> Tuple[int, ...]:
    return tuple((idx >> (k - 1 - i)) & 1 for i in range(k))


def pack(values: Iterable[int]) -> int:
    t = 0
    for v in values:
        t = (t << 1) | (int(v) & 1)
    return t


class Permutivity(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"
    NONE = "none"


class BoundarySide(str, Enum):
    X1_SIDE = "x1_side"
    XK_SIDE = "xk_side"
    BOTH = "both"
    NEITHER = "neither"


@dataclass(frozen=True)
class BooleanFunction:
    arity: int
    table: int

    def __post_init__(self):
        if not 1 <= self.arity <= MAX_ARITY:
            raise InputError(f"arity must be in 1..{MAX_ARITY}, got {self.arity}")
        if not 0 <= self.table < (1 << self.size):
            raise InputError("truth table does not fit 2^arity bits")

    @property
    def size(self) -> int:
        return 1 << self.arity

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "BooleanFunction":
        n = len(values)
        k = n.bit_length() - 1
        if n < 2 or (1 << k) != n:
            raise InputError(f"truth table length {n} is not a power of two >= 2")
        return cls(k, pack(values))

    @classmethod
    def constant(cls, arity: int, value: int = 0) -> "BooleanFunction":
        return cls(arity, ((1 << (1 << arity)) - 1) if value else 0)

    @classmethod
    def variable(cls, arity: int, i: int) -> "BooleanFunction":
        return cls.from_values([(idx >> (arity - i)) & 1 for idx in range(1 << arity)])

    @classmethod
    def from_hex(cls, text: str, arity: int) -> "BooleanFunction":
        return cls(arity, int(text, 16))

    def to_hex(self) -> str:
        return format(self.table, f"0{max(1, self.size // 4)}x")

    @cached_property
    def values(self) -> np.ndarray:
        n = self.size
        t = self.table
        return np.array([(t >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)

    def __call__(self, x: Sequence[int]) -> int:
        return evaluate(self, x)

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if other.arity != self.arity:
            raise InputError("arity mismatch")
        return BooleanFunction(self.arity, self.table ^ other.table)

    def weight(self) -> int:
        return bin(self.table).count("1")

    def __repr__(self):
        return f"BooleanFunction(arity={self.arity}, hex={self.to_hex()!r})"


@dataclass(frozen=True)
class AnfPolynomial:
    arity: int
    monomials: FrozenSet[FrozenSet[int]]

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def evaluate(self, x: Sequence[int]) -> int:
        acc = 0
        for mono in self.monomials:
            acc ^= int(all(x[i - 1] for i in mono))
        return acc

    def to_function(self) -> BooleanFunction:
        k = self.arity
        return BooleanFunction.from_values(
            [self.evaluate(dec(idx, k)) for idx in range(1 << k)])

    def sorted_monomials(self):
        return sorted((tuple(sorted(m)) for m in self.monomials), key=lambda m: (len(m), m))


def evaluate(f: BooleanFunction, x: Sequence[int]) -> int:
    if len(x) != f.arity:
        raise InputError(f"expected {f.arity} input bits, got {len(x)}")
    return (f.table >> (f.size - 1 - enc(x))) & 1


def mobius(values: np.ndarray) -> np.ndarray:
    a = np.array(values, dtype=np.uint8)
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a[:, 1, :] ^= a[:, 0, :]
        a = a.reshape(-1)
        h <<= 1
    return a


def anf_of(f: BooleanFunction) -> AnfPolynomial:
    k = f.arity
    coeffs = mobius(f.values)
    monos = []
    for u in np.flatnonzero(coeffs):
        monos.append(frozenset(i for i in range(1, k + 1) if (int(u) >> (k - i)) & 1))
    return AnfPolynomial(k, frozenset(monos))


def degree(f: BooleanFunction) -> int:
    return anf_of(f).degree


def depends_on(f: BooleanFunction, i: int) -> bool:
    """Semantic dependence on x_i: some x has f(x) != f(x + e_i)."""
    v = f.values
    bit = 1 << (f.arity - i)
    idx = np.arange(f.size)
    return bool(np.any(v != v[idx ^ bit]))


def support(f: BooleanFunction) -> list:
    return [i for i in range(1, f.arity + 1) if depends_on(f, i)]


def diameter(f: BooleanFunction) -> int:
    dep = support(f)
    if not dep:
        return 0
    return dep[-1] - dep[0] + 1


def restrict_to_diameter(f: BooleanFunction) -> BooleanFunction:
    """Drop leading/trailing variables f ignores, so the result has full diameter."""
    dep = support(f)
    if not dep:
        return f
    lo, hi = dep[0], dep[-1]
    width = hi - lo + 1
    if width == f.arity:
        return f
    shift = f.arity - hi
    vals = [f.values[y << shift] for y in range(1 << width)]
    return BooleanFunction.from_values(vals)


def walsh_spectrum(f: BooleanFunction) -> np.ndarray:
    return fwht(1 - 2 * f.values.astype(np.int64))


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis."""
    a = np.array(a, dtype=np.int64)
    n = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < n:
        a = a.reshape(*lead, -1, 2, h)
        x = a[..., 0, :].copy()
        y = a[..., 1, :]
        a[..., 0, :] = x + y
        a[..., 1, :] = x - y
        a = a.reshape(*lead, n)
        h <<= 1
    return a


def nonlinearity(f: BooleanFunction) -> int:
    w = walsh_spectrum(f)
    return (f.size - int(np.abs(w).max())) // 2


def is_balanced(f: BooleanFunction) -> bool:
    return 2 * f.weight() == f.size


def is_permutive(f: BooleanFunction) -> Permutivity:
    k = f.arity
    left = not depends_on(f ^ BooleanFunction.variable(k, 1), 1)
    right = not depends_on(f ^ BooleanFunction.variable(k, k), k)
    if left and right:
        return Permutivity.BOTH
    if left:
        return Permutivity.LEFT
    if right:
        return Permutivity.RIGHT
    return Permutivity.NONE


def reflect(f: BooleanFunction) -> BooleanFunction:
    k = f.arity
    v = f.values
    return BooleanFunction.from_values([v[bit_reverse(i, k)] for i in range(f.size)])


def complement_inputs(f: BooleanFunction) -> BooleanFunction:
    return BooleanFunction.from_values(f.values[::-1])


def complement_output(f: BooleanFunction) -> BooleanFunction:
    return BooleanFunction(f.arity, f.table ^ ((1 << f.size) - 1))


def elementary_orbit(f: BooleanFunction) -> set:
    out = set()
    for g in (f, reflect(f)):
        for h in (g, complement_inputs(g)):
            out.add(h)
            out.add(complement_output(h))
    return out


def canonical_form(f: BooleanFunction) -> BooleanFunction:
    return min(elementary_orbit(f), key=lambda g: g.table)


def elementary_equivalent(f: BooleanFunction, g: BooleanFunction) -> bool:
    return f.arity == g.arity and canonical_form(f) == canonical_form(g)


def boundary_balance(f: BooleanFunction) -> BoundarySide:
    k = f.arity
    if k < 2:
        raise InputError("boundary balance needs arity >= 2")
    v = f.values
    idx = np.arange(f.size)
    half = f.size // 4
    x1_zero = v[(idx >> (k - 1)) & 1 == 0]
    xk_zero = v[idx & 1 == 0]
    x1 = int(np.count_nonzero(x1_zero == 0)) == half
    xk = int(np.count_nonzero(xk_zero == 0)) == half
    if x1 and xk:
        return BoundarySide.BOTH
    if x1:
        return BoundarySide.X1_SIDE
    if xk:
        return BoundarySide.XK_SIDE
    return BoundarySide.NEITHER
