"""Slow reference implementations used to cross-check the fast engines.

Nothing here shares code with the engines beyond the data types: embeddings
are found by trying every injection, indivisibility by trying every
partition, and ordinal arithmetic by unfolding the recursive definitions
(successor steps and suprema of fundamental sequences).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .errors import DomainError
from .ordinal import Ordinal

# --- structures ----------------------------------------------------------


def naive_embeddings(pattern, host):
    found = []
    for f in permutations(range(host.size), pattern.size):
        if all(pattern.related(x, y) == host.related(f[x], f[y]) for x in range(pattern.size) for y in range(pattern.size)):
            found.append(f)
    return sorted(found)


def naive_copies(pattern, host):
    return {frozenset(f) for f in naive_embeddings(pattern, host)}


def naive_indivisible(pattern, host):
    masks = [sum(1 << x for x in c) for c in naive_copies(pattern, host)]
    full = (1 << host.size) - 1
    for part in range(1 << host.size):
        rest = full ^ part
        if not any(m & part == m or m & rest == m for m in masks):
            return False
    return True


def naive_components(s):
    """Components by repeated reachability in the symmetric relation."""
    seen = set()
    blocks = []
    for start in range(s.size):
        if start in seen:
            continue
        block = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in range(s.size):
                if y not in block and (s.related(x, y) or s.related(y, x)):
                    block.add(y)
                    frontier.append(y)
        seen |= block
        blocks.append(sorted(block))
    return blocks


def first_homogeneous(coloring, k):
    """Exhaustive: for each class in increasing order, the first k-set in lex order."""
    n = coloring.size
    if k > n or k < 0:
        return None
    if k < 2:
        return tuple(range(k)), 0
    for c in sorted(set(coloring.classes.values())):
        for subset in combinations(range(n), k):
            if all(coloring.color(x, y) == c for x, y in combinations(subset, 2)):
                return subset, int(c)
    return None


def has_monochromatic_triangle(n, color):
    return any(color(a, b) == color(a, c) == color(b, c) for a, b, c in combinations(range(n), 3))


# --- naive posets ----------------------------------------------------------


def naive_sep_leq(P, p, q):
    leq = P.leq
    return all(any(leq(s, r) and leq(s, q) for s in range(P.size)) for r in range(P.size) if leq(r, p))


def naive_is_separative(P):
    leq = P.leq
    for p in range(P.size):
        for q in range(P.size):
            if leq(p, q):
                continue
            # need r <= p incompatible with q
            if not any(leq(r, p) and not any(leq(s, r) and leq(s, q) for s in range(P.size)) for r in range(P.size)):
                return False
    return True


# --- ordinals by transfinite recursion --------------------------------------

WIDTH = 8  # coefficient vectors cover exponents 0..WIDTH-1
SAMPLE = 3


def to_vector(a):
    """Coefficient vector, index = exponent; exponents must be finite."""
    vec = [0] * WIDTH
    for e, c in a.terms:
        if not e.is_finite() or e.to_int() >= WIDTH:
            raise DomainError(f"oracle only covers ordinals below w^{WIDTH}")
        vec[e.to_int()] = c
    return tuple(vec)


def from_vector(vec):
    return Ordinal(tuple((Ordinal.natural(e), c) for e, c in reversed(list(enumerate(vec))) if c))


def _is_zero(v):
    return not any(v)


def _pred(v):
    """Predecessor of a successor ordinal."""
    return (v[0] - 1,) + v[1:]


def _succ(v):
    return (v[0] + 1,) + v[1:]


def _fundamental(v, n):
    """n-th element of the standard fundamental sequence of a limit ordinal."""
    j = next(i for i, c in enumerate(v) if c)
    out = list(v)
    out[j] -= 1
    out[j - 1] = n
    return tuple(out)


def _sup(lo, hi):
    """Supremum of a strictly increasing sequence, read off two late samples.

    Samples agree above some exponent j and grow at j, so the limit bumps
    exponent j + 1 and clears everything below it.
    """
    if lo == hi:
        return lo
    j = max(i for i in range(WIDTH) if lo[i] != hi[i])
    if j + 1 >= WIDTH:
        raise DomainError("oracle width exceeded")
    out = list(hi)
    out[j + 1] += 1
    for i in range(j + 1):
        out[i] = 0
    return tuple(out)


@lru_cache(maxsize=None)
def rec_add(a, b):
    if _is_zero(b):
        return a
    if b[0]:
        return _succ(rec_add(a, _pred(b)))
    return _sup(rec_add(a, _fundamental(b, SAMPLE)), rec_add(a, _fundamental(b, SAMPLE + 1)))


@lru_cache(maxsize=None)
def rec_mul(a, b):
    if _is_zero(b):
        return b
    if b[0]:
        return rec_add(rec_mul(a, _pred(b)), a)
    return _sup(rec_mul(a, _fundamental(b, SAMPLE)), rec_mul(a, _fundamental(b, SAMPLE + 1)))


def vector_less(a, b):
    return tuple(reversed(a)) < tuple(reversed(b))


def oracle_add(a, b):
    return from_vector(rec_add(to_vector(a), to_vector(b)))


def oracle_mul(a, b):
    return from_vector(rec_mul(to_vector(a), to_vector(b)))


def small_ordinals(max_exponent=2, max_coefficient=3):
    """Every ordinal below w^(max_exponent+1) with coefficients up to max_coefficient."""
    result = []

    def build(e, prefix):
        if e < 0:
            result.append(from_vector(tuple(prefix) + (0,) * (WIDTH - len(prefix))))
            return
        for c in range(max_coefficient + 1):
            build(e - 1, [c] + prefix)

    build(max_exponent, [])
    return sorted(result)
