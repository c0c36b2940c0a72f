"""Finite partial orders: compatibility, atoms, density, separative quotients,
products and isomorphism.

Elements are ``0..size-1``. Internally ``below[p]`` is a bitmask of every
``q <= p`` and ``above[p]`` of every ``q >= p``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from . import _search
from ._search import iter_bits
from .errors import CapacityError, DomainError, ParseError

DEFAULT_PRODUCT_CAP = 4096
DEFAULT_ISO_CAP = 12

DENSE = "dense"
SOMEWHERE_DENSE = "somewhere-dense"
NOWHERE_DENSE = "nowhere-dense"


@dataclass(frozen=True)
class FinitePoset:
    size: int
    below: tuple

    def __post_init__(self):
        below = tuple(int(m) for m in self.below)
        n = self.size
        if len(below) != n:
            raise DomainError(f"expected {n} rows, got {len(below)}")
        full = (1 << n) - 1
        for p, m in enumerate(below):
            if m & ~full:
                raise DomainError(f"row {p} mentions elements outside 0..{n - 1}")
            if not (m >> p) & 1:
                raise DomainError(f"not reflexive: {p} <= {p} is missing")
        for p in range(n):
            for q in iter_bits(below[p]):
                if q != p and (below[q] >> p) & 1:
                    raise DomainError(f"not antisymmetric: {q} <= {p} and {p} <= {q}")
                if below[q] & ~below[p]:
                    r = next(iter_bits(below[q] & ~below[p]))
                    raise DomainError(f"not transitive: {r} <= {q} <= {p} but not {r} <= {p}")
        object.__setattr__(self, "below", below)

    @classmethod
    def from_pairs(cls, size, pairs):
        """``pairs`` lists every (i, j) with i <= j, diagonal included."""
        below = [0] * size
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise DomainError(f"pair {[i, j]} is out of range for size {size}")
            below[j] |= 1 << i
        return cls(size, tuple(below))

    @classmethod
    def generated(cls, size, pairs):
        """Reflexive transitive closure of ``pairs``; rejects cycles."""
        below = [1 << p for p in range(size)]
        for i, j in pairs:
            below[j] |= 1 << i
        changed = True
        while changed:
            changed = False
            for p in range(size):
                m = below[p]
                for q in iter_bits(m):
                    m |= below[q]
                if m != below[p]:
                    below[p] = m
                    changed = True
        return cls(size, tuple(below))

    @cached_property
    def above(self):
        up = [0] * self.size
        for p in range(self.size):
            for q in iter_bits(self.below[p]):
                up[q] |= 1 << p
        return tuple(up)

    def leq(self, p, q):
        return (self.below[q] >> p) & 1 == 1

    def matrix(self):
        return [[self.leq(i, j) for j in range(self.size)] for i in range(self.size)]

    def pairs(self):
        return [(i, j) for j in range(self.size) for i in iter_bits(self.below[j])]

    def to_dict(self):
        return {"size": self.size, "leq": [list(p) for p in sorted(self.pairs())]}

    def __repr__(self):
        strict = sorted((i, j) for i, j in self.pairs() if i != j)
        return f"FinitePoset({self.size}, <{strict}>)"


@dataclass(frozen=True)
class SeparativeQuotient:
    quotient: FinitePoset
    class_of: tuple


@dataclass(frozen=True)
class HomogeneityReport:
    downwards_directed: bool
    largest: object
    all_principal_ideals_isomorphic: bool


def chain(n):
    return FinitePoset(n, tuple((1 << (p + 1)) - 1 for p in range(n)))


def antichain(n):
    return FinitePoset(n, tuple(1 << p for p in range(n)))


def _check(P, *elements):
    for p in elements:
        if not (isinstance(p, int) and 0 <= p < P.size):
            raise DomainError(f"element {p!r} is out of range for a poset of size {P.size}")


def _mask(P, subset):
    m = 0
    for s in subset:
        _check(P, s)
        m |= 1 << s
    return m


def compatible(P, p, q):
    _check(P, p, q)
    return P.below[p] & P.below[q] != 0


def atoms(P):
    """Elements below which any two elements are compatible."""
    result = set()
    for p in range(P.size):
        lower = list(iter_bits(P.below[p]))
        if all(P.below[q] & P.below[r] for i, q in enumerate(lower) for r in lower[i + 1:]):
            result.add(p)
    return frozenset(result)


def is_atomic(P):
    at = _mask(P, atoms(P))
    return all(P.below[p] & at for p in range(P.size))


def is_atomless(P):
    return not atoms(P)


def is_dense_subset(P, subset):
    m = _mask(P, subset)
    return all(P.below[p] & m for p in range(P.size))


def density_mode(P, subset):
    m = _mask(P, subset)
    if all(P.below[p] & m for p in range(P.size)):
        return DENSE
    for p in range(P.size):
        if all(P.below[q] & m for q in iter_bits(P.below[p])):
            return SOMEWHERE_DENSE
    return NOWHERE_DENSE


def sep_leq(P, p, q):
    """p <=* q: every r <= p has some s <= r with s <= q."""
    _check(P, p, q)
    return all(P.below[r] & P.below[q] for r in iter_bits(P.below[p]))


def sep_leq_matrix(P):
    return [[all(P.below[r] & P.below[q] for r in iter_bits(P.below[p])) for q in range(P.size)] for p in range(P.size)]


def separative_quotient(P):
    """Quotient by mutual <=*, classes numbered by their smallest member."""
    star = sep_leq_matrix(P)
    class_of = [None] * P.size
    reps = []
    for p in range(P.size):
        for k, r in enumerate(reps):
            if star[p][r] and star[r][p]:
                class_of[p] = k
                break
        else:
            class_of[p] = len(reps)
            reps.append(p)
    below = []
    for b in reps:
        m = 0
        for a_index, a in enumerate(reps):
            if star[a][b]:
                m |= 1 << a_index
        below.append(m)
    return SeparativeQuotient(FinitePoset(len(reps), tuple(below)), tuple(class_of))


def is_separative(P):
    for p in range(P.size):
        for q in range(P.size):
            if not P.leq(p, q) and not any(P.below[r] & P.below[q] == 0 for r in iter_bits(P.below[p])):
                return False
    return True


def product(P, Q, cap=DEFAULT_PRODUCT_CAP):
    """Coordinatewise order on P x Q; element (i, j) has index i*|Q| + j."""
    n = P.size * Q.size
    if n > cap:
        raise CapacityError(f"product of sizes {P.size} and {Q.size} exceeds the cap {cap}")
    below = []
    for i in range(P.size):
        for j in range(Q.size):
            m = 0
            for a in iter_bits(P.below[i]):
                for b in iter_bits(Q.below[j]):
                    m |= 1 << (a * Q.size + b)
            below.append(m)
    return FinitePoset(n, tuple(below))


def power(P, k, cap=DEFAULT_PRODUCT_CAP):
    if k < 1:
        raise DomainError("poset power needs an exponent of at least 1")
    result = P
    for _ in range(k - 1):
        result = product(result, P, cap)
    return result


def restrict(P, subset):
    """Subposet on ``subset`` relabelled in increasing order."""
    elements = sorted(set(subset))
    _mask(P, elements)
    rank = {x: i for i, x in enumerate(elements)}
    below = []
    for x in elements:
        m = 0
        for y in iter_bits(P.below[x]):
            if y in rank:
                m |= 1 << rank[y]
        below.append(m)
    return FinitePoset(len(elements), tuple(below))


def principal_ideal(P, p):
    _check(P, p)
    return restrict(P, iter_bits(P.below[p]))


def poset_isomorphic(P, Q, cap=DEFAULT_ISO_CAP):
    """Order isomorphism witness (tuple, ``f[p]`` the image of ``p``) or None."""
    if max(P.size, Q.size) > cap:
        raise CapacityError(f"poset isomorphism capped at size {cap}, got {max(P.size, Q.size)}")
    if P.size != Q.size:
        return None
    if sorted(map(_popcount, P.below)) != sorted(map(_popcount, Q.below)):
        return None
    init_p = [(_popcount(P.below[x]), _popcount(P.above[x])) for x in range(P.size)]
    init_q = [(_popcount(Q.below[x]), _popcount(Q.above[x])) for x in range(Q.size)]
    return _search.find_isomorphism(P.above, P.below, Q.above, Q.below, init_p, init_q)


def _popcount(m):
    return bin(m).count("1")


def largest_element(P):
    full = (1 << P.size) - 1
    for p in range(P.size):
        if P.below[p] == full:
            return p
    return None


def is_downwards_directed(P):
    return all(P.below[p] & P.below[q] for p in range(P.size) for q in range(p + 1, P.size))


def homogeneity_probe(P, cap=DEFAULT_ISO_CAP):
    """Finite surrogate for homogeneity: a largest element and P isomorphic
    to every principal ideal.

    Over finite posets only the singleton passes, since a proper ideal is
    smaller than P.
    """
    top = largest_element(P)
    homogeneous = top is not None
    for p in range(P.size):
        if not homogeneous:
            break
        ideal = principal_ideal(P, p)
        homogeneous = ideal.size == P.size and poset_isomorphic(P, ideal, cap) is not None
    return HomogeneityReport(is_downwards_directed(P), top, homogeneous)


# --- file format ---------------------------------------------------------


def parse_poset(data):
    if not isinstance(data, dict) or "size" not in data or "leq" not in data:
        raise DomainError('poset file must be an object with "size" and "leq"')
    size = data["size"]
    if not isinstance(size, int) or isinstance(size, bool) or size < 0:
        raise DomainError(f"size must be a non-negative integer, got {size!r}")
    seen = set()
    for item in data["leq"]:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise DomainError(f"malformed pair {item!r}")
        pair = tuple(item)
        if pair in seen:
            raise DomainError(f"duplicate pair {item}")
        seen.add(pair)
    # reflexive pairs may be listed or left implicit
    return FinitePoset.from_pairs(size, seen | {(p, p) for p in range(size)})


def load_poset(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read poset file {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    return parse_poset(data)
