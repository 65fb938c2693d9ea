"""Slow, direct reference implementations used to check the package.

Nothing here imports the package: functions are plain Python callables on bit
tuples (x1, ..., xk), and maps are dicts or lists built by explicit loops.
"""
from itertools import product


def bits(v, width):
    return tuple((v >> (width - 1 - i)) & 1 for i in range(width))


def to_int(bs):
    v = 0
    for b in bs:
        v = 2 * v + b
    return v


def values_of(fn, k):
    return [fn(bits(i, k)) for i in range(2 ** k)]


def table_int(fn, k):
    return to_int(values_of(fn, k))


def cyclic_map(fn, k, n):
    out = []
    for x in range(2 ** n):
        xs = bits(x, n)
        ys = [fn(tuple(xs[(j + i) % n] for i in range(k))) for j in range(n)]
        out.append(to_int(ys))
    return out


def open_map(fn, k, m):
    out = []
    for x in range(2 ** m):
        xs = bits(x, m)
        out.append(to_int([fn(xs[j:j + k]) for j in range(m - k + 1)]))
    return out


def preimage_counts(images, size):
    counts = [0] * size
    for y in images:
        counts[y] += 1
    return counts


def is_balanced_open(fn, k, m):
    counts = preimage_counts(open_map(fn, k, m), 2 ** (m - k + 1))
    return all(c == 2 ** (k - 1) for c in counts)


def ell_n(fn, k, n):
    return max(preimage_counts(cyclic_map(fn, k, n), 2 ** n))


def ddt_max(images, n):
    best = 0
    col0 = 0
    for a in range(1, 2 ** n):
        row = [0] * (2 ** n)
        for x in range(2 ** n):
            row[images[x] ^ images[x ^ a]] += 1
        best = max(best, max(row))
        col0 = max(col0, row[0])
    return best, col0


def walsh_max(images, n):
    best = 0
    for b in range(1, 2 ** n):
        for a in range(2 ** n):
            s = 0
            for x in range(2 ** n):
                s += (-1) ** ((bin(a & x).count("1") + bin(b & images[x]).count("1")) & 1)
            best = max(best, abs(s))
    return best


def branch_number(images, n):
    best = 2 * n
    for x in range(2 ** n):
        for y in range(x + 1, 2 ** n):
            best = min(best, bin(x ^ y).count("1") + bin(images[x] ^ images[y]).count("1"))
    return best


def anf_degree(values):
    """Degree via explicit subset sums (coefficient of x^u is sum of f over v <= u)."""
    n = len(values)
    deg = 0
    for u in range(n):
        c = 0
        for v in range(n):
            if v & u == v:
                c ^= values[v]
        if c:
            deg = max(deg, bin(u).count("1"))
    return deg


def depends(values, k, i):
    bit = 1 << (k - i)
    return any(values[x] != values[x ^ bit] for x in range(2 ** k))


def diameter(values, k):
    dep = [i for i in range(1, k + 1) if depends(values, k, i)]
    return 0 if not dep else dep[-1] - dep[0] + 1


def orbit(values, k):
    """Reflection, input complement, output complement (as value lists)."""
    n = 2 ** k
    out = set()
    for r in (False, True):
        for c in (False, True):
            for o in (0, 1):
                vals = []
                for x in range(n):
                    xs = bits(x, k)
                    if c:
                        xs = tuple(1 - b for b in xs)
                    if r:
                        xs = xs[::-1]
                    vals.append(values[to_int(xs)] ^ o)
                out.add(tuple(vals))
    return out


def all_inputs(k):
    return list(product((0, 1), repeat=k))
