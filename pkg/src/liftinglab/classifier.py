"""Exact, n-independent classification of liftings.

Everything here runs on the de Bruijn graph whose nodes are (k-1)-bit
windows. A node u has two out-edges, one per appended bit b; the edge goes to
the node (u << 1 | b) mod 2^(k-1) and carries the output label f(u, b).
Products of the label-split adjacency matrices A_0, A_1 count preimages:
the entry sum of A_w is |F_(|w|+k-1)^{-1}(w)| and its trace is the number of
cyclic preimages of w.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .anf import format_anf
from .boolfun import BooleanFunction, degree, diameter, restrict_to_diameter
from .errors import CapError, InputError, UnboundedError
from .induced import MAX_TABLE_N, du, open_table, preimage_distribution

MAX_DECISION_K = 6
CLOSURE_LIMIT = 2_000_000


@dataclass(frozen=True)
class TransitionMatrices:
    k: int
    A0: np.ndarray = field(repr=False, compare=False)
    A1: np.ndarray = field(repr=False, compare=False)

    @property
    def nodes(self) -> int:
        return 1 << (self.k - 1)

    def product(self, word) -> np.ndarray:
        out = np.eye(self.nodes, dtype=np.int64)
        for b in word:
            out = out @ (self.A1 if b else self.A0)
        return out

    def open_count(self, word) -> int:
        return int(self.product(word).sum())

    def cyclic_count(self, word) -> int:
        return int(np.trace(self.product(word)))


def _require_full_diameter(f: BooleanFunction):
    if diameter(f) != f.arity:
        raise InputError(
            f"function has diameter {diameter(f)} but arity {f.arity}; restrict it first")


def _edges(f: BooleanFunction):
    """(u, v, label) for every edge of the labelled de Bruijn graph."""
    d = 1 << (f.arity - 1)
    vals = f.values
    for u in range(d):
        for b in (0, 1):
            idx = (u << 1) | b
            yield u, idx & (d - 1), int(vals[idx])


def transition_matrices(f: BooleanFunction) -> TransitionMatrices:
    _require_full_diameter(f)
    d = 1 << (f.arity - 1)
    A = np.zeros((2, d, d), dtype=np.int64)
    for u, v, lab in _edges(f):
        A[lab, u, v] += 1
    return TransitionMatrices(f.arity, A[0], A[1])


def _step_tables(f: BooleanFunction):
    # step[b] lists (u, v) pairs whose edge is labelled b
    step = ([], [])
    for u, v, lab in _edges(f):
        step[lab].append((u, v))
    return step


def _advance(vec: Tuple[int, ...], pairs) -> Tuple[int, ...]:
    out = [0] * len(vec)
    for u, v in pairs:
        if vec[u]:
            out[v] += vec[u]
    return tuple(out)


@dataclass(frozen=True)
class AlmostDecision:
    almost: bool
    witness: Optional[Tuple[int, ...]] = None  # output word w of an unbalanced F_(m)
    m: Optional[int] = None
    states: int = 0

    def __bool__(self):
        return self.almost


def bfs_almost_lifting(f: BooleanFunction) -> Tuple[bool, Optional[Tuple[int, ...]], int]:
    """(all balanced, shortest failing word, visited vectors); terminates for every f."""
    k = f.arity
    target = 1 << (k - 1)
    step = _step_tables(f)
    start = (1,) * target
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        vec, word = queue.popleft()
        for b in (0, 1):
            nxt = _advance(vec, step[b])
            w = word + (b,)
            if sum(nxt) != target:
                return False, w, len(seen)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, w))
    return True, None, len(seen)


def has_diamond(f: BooleanFunction) -> bool:
    """Two distinct equal-label paths with common endpoints in the de Bruijn graph.

    In the pair graph: some off-diagonal node entered from the diagonal can
    get back to the diagonal. No diamond is equivalent to F_(m) balanced for
    every m.
    """
    d, rows, cols = _pair_graph(f)
    size = d * d
    diag = np.arange(size) % (d + 1) == 0
    rows = np.asarray(rows)
    cols = np.asarray(cols)
    back = [[] for _ in range(size)]
    for r, c in zip(rows.tolist(), cols.tolist()):
        back[c].append(r)
    reaches = diag.copy()
    queue = deque(np.flatnonzero(diag).tolist())
    while queue:
        v = queue.popleft()
        for u in back[v]:
            if not reaches[u]:
                reaches[u] = True
                queue.append(u)
    leave = diag[rows] & ~diag[cols]
    return bool(np.any(reaches[cols[leave]]))


def decide_almost_lifting(f: BooleanFunction) -> AlmostDecision:
    """Diamond test decides; for failures a BFS over path-count vectors finds the shortest witness.

    The BFS alone is also a decision procedure but its state space grows
    quickly for k = 6 almost liftings, while for failing functions it stops at
    the first unbalanced word.
    """
    _require_full_diameter(f)
    if f.arity > MAX_DECISION_K:
        raise CapError(f"almost-lifting decision limited to k <= {MAX_DECISION_K}")
    if not has_diamond(f):
        return AlmostDecision(True)
    ok, witness, states = bfs_almost_lifting(f)
    if ok:
        raise AssertionError("diamond found but every F_(m) balanced")
    return AlmostDecision(False, witness, witness_m(f, witness), states)


def witness_m(f: BooleanFunction, witness) -> int:
    return len(witness) + f.arity - 1


def verify_witness(f: BooleanFunction, witness) -> bool:
    """Brute force: |F_(m)^{-1}(w)| differs from 2^(k-1)."""
    m = witness_m(f, witness)
    y = 0
    for b in witness:
        y = (y << 1) | b
    count = int(np.count_nonzero(open_table(f, m) == y))
    return count != (1 << (f.arity - 1))


def first_unbalanced_m(f: BooleanFunction) -> Optional[int]:
    """Smallest m >= k with F_(m) unbalanced, or None for an almost lifting.

    BFS visits path-count vectors in order of word length, so the first
    violation found has minimal length.
    """
    return decide_almost_lifting(f).m


def is_potential_lifting(f: BooleanFunction, n: int) -> bool:
    if n < f.arity:
        raise InputError("n must be at least k")
    if diameter(f) != f.arity:
        return False
    m = first_unbalanced_m(f)
    return m is None or m > n


def is_potential_l_lifting(f: BooleanFunction, n: int, l) -> bool:
    """|F_(m)^{-1}(y)| <= l 2^(k-1) for all k <= m <= n, by level-wise propagation."""
    k = f.arity
    if not l > 1:
        raise InputError("l must exceed 1")
    if n < k:
        raise InputError("n must be at least k")
    if n - k + 1 > 26:
        raise CapError("m - k + 1 limited to 26")
    if diameter(f) != k:
        return False
    bound = l * (1 << (k - 1))
    step = _step_tables(f)
    level = {(1,) * (1 << (k - 1))}
    for _ in range(n - k + 1):
        level = {_advance(v, step[b]) for v in level for b in (0, 1)}
        if any(sum(v) > bound for v in level):
            return False
    return True


# --- proper liftings ---------------------------------------------------------

def _pair_graph(f: BooleanFunction):
    d = 1 << (f.arity - 1)
    out = [[] for _ in range(2)]
    for u, v, lab in _edges(f):
        out[lab].append((u, v))
    rows, cols = [], []
    for lab in (0, 1):
        for u, v in out[lab]:
            for u2, v2 in out[lab]:
                rows.append(u * d + u2)
                cols.append(v * d + v2)
    return d, rows, cols


def pair_matrix(f: BooleanFunction) -> np.ndarray:
    """A_0 (x) A_0 + A_1 (x) A_1: trace of its n-th power is sum_y |F^{-1}(y)|^2."""
    t = transition_matrices(f)
    return np.kron(t.A0, t.A0) + np.kron(t.A1, t.A1)


def _cyclic_pair_components(f: BooleanFunction, off_only: bool = False):
    """Strong components of the pair graph that carry a cycle through an off-diagonal node.

    Yields (off-diagonal mask, boolean adjacency restricted to the component).
    off_only drops diagonal nodes first; without diamonds no closed walk
    mixes the two kinds, so this loses nothing then.
    """
    d, rows, cols = _pair_graph(f)
    size = d * d
    rows = np.asarray(rows)
    cols = np.asarray(cols)
    off = (np.arange(size) // d) != (np.arange(size) % d)
    if off_only:
        keep = off[rows] & off[cols]
        rows, cols = rows[keep], cols[keep]
    g = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
    _, labels = connected_components(g, directed=True, connection="strong")
    comp_size = np.bincount(labels)
    loops = np.zeros(size, dtype=bool)
    loops[rows[rows == cols]] = True
    cyclic = off & ((comp_size[labels] > 1) | loops)
    for c in np.unique(labels[cyclic]):
        nodes = np.flatnonzero(labels == c)
        pos = -np.ones(size, dtype=np.int64)
        pos[nodes] = np.arange(nodes.size)
        inside = (labels[rows] == c) & (labels[cols] == c)
        adj = np.zeros((nodes.size, nodes.size), dtype=bool)
        adj[pos[rows[inside]], pos[cols[inside]]] = True
        yield off[nodes], adj


def decide_proper_lifting(f: BooleanFunction) -> bool:
    """Injective on periodic configurations.

    Two distinct periodic preimages of one configuration are a closed walk of
    the synchronised pair graph through an off-diagonal node, so f is proper
    iff no off-diagonal node sits on a cycle. Any such cycle has length at
    most 4^(k-1), which is the bound for the equivalent check "cyclic F is
    injective for every n <= 4^(k-1)".
    """
    _require_full_diameter(f)
    if f.arity > MAX_DECISION_K:
        raise CapError(f"proper-lifting decision limited to k <= {MAX_DECISION_K}")
    return next(_cyclic_pair_components(f), None) is None


def _bool_power(a: np.ndarray, e: int) -> np.ndarray:
    out = None
    while e:
        if e & 1:
            out = a if out is None else np.minimum(out @ a, 1.0)
        e >>= 1
        if e:
            a = np.minimum(a @ a, 1.0)
    return out


def non_injective_lengths(f: BooleanFunction, n_max: int, n_min: int = 1) -> Set[int]:
    """Periods n in [n_min, n_max] at which the cyclic map is not injective.

    Same pair-graph argument as decide_proper_lifting, with walk lengths:
    boolean powers of each off-diagonal strong component.
    """
    _require_full_diameter(f)
    bad: Set[int] = set()
    for off, adj in _cyclic_pair_components(f, off_only=not has_diamond(f)):
        a = adj.astype(np.float32)
        p = _bool_power(a, n_min)
        for n in range(n_min, n_max + 1):
            if np.any(np.diagonal(p)[off] > 0):
                bad.add(n)
            if n < n_max:
                p = np.minimum(p @ a, 1.0)
    return bad


def cyclic_square_sums(f: BooleanFunction, n_max: int) -> Dict[int, int]:
    """n -> sum_y |F^{-1}(y)|^2 for k <= n <= n_max, exact (int64 up to n = 30)."""
    k = f.arity
    M = pair_matrix(f)
    if n_max > 30:
        M = M.astype(object)
    P = np.linalg.matrix_power(M, k) if M.dtype != object else _objpow(M, k)
    out = {}
    for n in range(k, n_max + 1):
        out[n] = int(np.trace(P))
        P = P @ M
    return out


def _objpow(M, e):
    out = np.identity(M.shape[0], dtype=object)
    for _ in range(e):
        out = out @ M
    return out


def injective_up_to(f: BooleanFunction, n_max: int) -> bool:
    return all(s == (1 << n) for n, s in cyclic_square_sums(f, n_max).items())


def lifting_n_set(f: BooleanFunction, n_max: int) -> List[int]:
    if n_max > 20:
        raise CapError("lifting_n_set limited to n_max <= 20")
    if diameter(f) != f.arity:
        return []
    bad = non_injective_lengths(f, n_max)
    return [n for n in range(f.arity, n_max + 1) if n not in bad]


# --- ell(f) ------------------------------------------------------------------

def _mat_step(mat: Tuple[Tuple[int, ...], ...], pairs):
    return tuple(_advance(row, pairs) for row in mat)


def semigroup_max_trace(f: BooleanFunction, limit: int = CLOSURE_LIMIT) -> int:
    """Largest trace over the closure of products A_w with |w| >= k.

    Finite for almost liftings (every product has entry sum 2^(k-1)) but can
    be large for permutive rules, hence the limit.
    """
    _require_full_diameter(f)
    if not decide_almost_lifting(f):
        raise UnboundedError("not an almost lifting: ell(f) is unbounded")
    k = f.arity
    d = 1 << (k - 1)
    step = _step_tables(f)
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    level = {ident}
    for _ in range(k):
        level = {_mat_step(m, step[b]) for m in level for b in (0, 1)}
    seen = set(level)
    queue = deque(level)
    while queue:
        m = queue.popleft()
        for b in (0, 1):
            nxt = _mat_step(m, step[b])
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise CapError("semigroup closure exceeded its size limit")
                queue.append(nxt)
    return max(sum(m[i][i] for i in range(d)) for m in seen)


def _set_successors(members, out_b):
    """All node sets reachable by moving every member along one b-edge, kept distinct."""
    results = []

    def rec(i, used, acc):
        if i == len(members):
            results.append(acc)
            return
        for v in out_b[members[i]]:
            if not used >> v & 1:
                rec(i + 1, used | (1 << v), acc | (1 << v))

    rec(0, 0, 0)
    return results


def _has_cycle(nodes, succ) -> bool:
    # peel off nodes without successors inside the graph; a cycle survives
    alive = set(nodes)
    indeg_out = {s: [t for t in succ[s] if t in alive] for s in alive}
    preds = {s: [] for s in alive}
    for s, ts in indeg_out.items():
        for t in ts:
            preds[t].append(s)
    outdeg = {s: len(ts) for s, ts in indeg_out.items()}
    stack = [s for s, c in outdeg.items() if c == 0]
    while stack:
        s = stack.pop()
        alive.discard(s)
        for p in preds[s]:
            if p in alive:
                outdeg[p] -= 1
                if outdeg[p] == 0:
                    stack.append(p)
    return bool(alive)


def ell_exact(f: BooleanFunction) -> int:
    """sup_n ell_n(f) for an almost lifting.

    An almost lifting induces a surjective cellular automaton, which has no
    diamonds: distinct closed walks with one label never meet at the same
    time step. So ell(f) is the largest c for which c pairwise distinct nodes
    can move in lock step, along equally labelled edges, around a cycle of
    c-element node sets.
    """
    _require_full_diameter(f)
    if not decide_almost_lifting(f):
        raise UnboundedError("not an almost lifting: ell(f) is unbounded")
    d = 1 << (f.arity - 1)
    outs = [[[] for _ in range(d)] for _ in range(2)]
    for u, v, lab in _edges(f):
        outs[lab][u].append(v)
    best = 1
    for c in range(2, d + 1):
        nodes = [sum(1 << u for u in combo) for combo in combinations(range(d), c)]
        succ = {}
        for mask in nodes:
            members = [u for u in range(d) if mask >> u & 1]
            succ[mask] = [t for b in (0, 1) for t in _set_successors(members, outs[b])]
        if not _has_cycle(nodes, succ):
            break
        best = c
    return best


# --- virtual and APN liftings -----------------------------------------------

def virtual_iota_formula(d: int, n: int) -> int:
    if d < 1:
        raise InputError("degree must be positive")
    if n <= d:
        raise InputError("formula needs n > d")
    return d * (1 << (n // d - 1)) if n % d == 0 else 0


def is_virtual_lifting(f: BooleanFunction, n_max: int) -> bool:
    k = f.arity
    d = degree(f)
    if diameter(f) != k or d < 2 or d >= k:
        return False
    if n_max > MAX_TABLE_N:
        raise CapError(f"n_max limited to {MAX_TABLE_N}")
    if not decide_almost_lifting(f) or decide_proper_lifting(f):
        return False
    return all(preimage_distribution(f, n).iota == virtual_iota_formula(d, n)
               for n in range(k, n_max + 1))


def is_apn_lifting(f: BooleanFunction, n_max: int) -> bool:
    k = f.arity
    if n_max > 12:
        raise CapError("APN check limited to n_max <= 12")
    return all(du(f, n) == 1 << (n - k + 1) for n in range(k, n_max + 1))


# --- aggregate ---------------------------------------------------------------

def ell_pattern(ell_n: Dict[int, int]) -> Optional[Tuple[int, int]]:
    """(a, b) when ell_n = a on multiples of b and 1 elsewhere, else None.

    Returns (1, 1) when every observed value is 1.
    """
    values = set(ell_n.values())
    if values == {1}:
        return (1, 1)
    for b in range(2, max(ell_n) + 1):
        hits = {v for n, v in ell_n.items() if n % b == 0}
        rest = {v for n, v in ell_n.items() if n % b}
        if len(hits) == 1 and rest <= {1} and hits != {1}:
            return (hits.pop(), b)
    return None


def format_pattern(pattern) -> str:
    if pattern is None:
        return "nonperiodic"
    a, b = pattern
    return "1" if a == 1 else f"{a}, {b}"


@dataclass
class Classification:
    f: BooleanFunction
    verdict: str  # "proper" | "almost" | "not_almost"
    ell: Optional[int]
    ell_n: Dict[int, int]
    witness: Optional[Tuple[int, ...]] = None
    virtual: bool = False
    apn: bool = False
    lifting_n_set: List[int] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.f.arity

    @property
    def pattern(self):
        return ell_pattern(self.ell_n) if self.ell_n else None

    def as_dict(self) -> Dict:
        out = {
            "anf": format_anf(self.f),
            "k": self.k,
            "verdict": self.verdict,
            "ell": self.ell,
            "ell_n": [self.ell_n[n] for n in sorted(self.ell_n)],
            "ell_n_from": min(self.ell_n) if self.ell_n else None,
            "pattern": format_pattern(self.pattern) if self.ell_n else None,
            "virtual": self.virtual,
            "apn": self.apn,
            "lifting_n_set": self.lifting_n_set,
        }
        if self.witness is not None:
            out["witness"] = {"word": "".join(map(str, self.witness)),
                              "m": witness_m(self.f, self.witness)}
        return out


def classify(f: BooleanFunction, n_max: int = 16, apn_n_max: int = 10) -> Classification:
    g = restrict_to_diameter(f)
    if diameter(g) == 0:
        raise InputError("constant functions have no diameter to classify")
    k = g.arity
    n_max = max(n_max, k)
    if n_max > MAX_TABLE_N:
        raise CapError(f"n_max limited to {MAX_TABLE_N}")
    ell_n = {n: preimage_distribution(g, n).ell_n for n in range(k, n_max + 1)}
    decision = decide_almost_lifting(g)
    lset = lifting_n_set(g, min(n_max, 20))
    if not decision:
        return Classification(g, "not_almost", None, ell_n, decision.witness,
                              lifting_n_set=lset)
    proper = decide_proper_lifting(g)
    ell = 1 if proper else ell_exact(g)
    return Classification(
        g, "proper" if proper else "almost", ell, ell_n,
        virtual=(not proper) and is_virtual_lifting(g, n_max),
        apn=is_apn_lifting(g, max(k, min(apn_n_max, 12))),
        lifting_n_set=lset,
    )
