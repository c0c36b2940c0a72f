"""Finite binary relational structures.

A structure is a domain ``0..size-1`` with one binary relation, i.e. a digraph
in which loops are allowed and significant. Values are immutable; every
function here is pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from . import _search
from .errors import CapacityError, DomainError, ParseError

DEFAULT_ISO_CAP = 16


@dataclass(frozen=True)
class BinaryStructure:
    size: int
    pairs: frozenset

    def __post_init__(self):
        if not isinstance(self.size, int) or isinstance(self.size, bool) or self.size < 1:
            raise DomainError(f"structure size must be a positive integer, got {self.size!r}")
        pairs = frozenset((int(u), int(v)) for u, v in self.pairs)
        for u, v in pairs:
            if not (0 <= u < self.size and 0 <= v < self.size):
                raise DomainError(f"pair {[u, v]} lies outside the domain 0..{self.size - 1}")
        object.__setattr__(self, "pairs", pairs)

    @cached_property
    def out_masks(self):
        return tuple(_search.masks_from_pairs(self.size, self.pairs)[0])

    @cached_property
    def in_masks(self):
        return tuple(_search.masks_from_pairs(self.size, self.pairs)[1])

    def related(self, u, v):
        return (self.out_masks[u] >> v) & 1 == 1

    def has_loop(self, u):
        return self.related(u, u)

    def sorted_pairs(self):
        return sorted(self.pairs)

    def out_degree(self, u):
        return bin(self.out_masks[u]).count("1")

    def in_degree(self, u):
        return bin(self.in_masks[u]).count("1")

    def to_dict(self):
        return {"size": self.size, "pairs": [list(p) for p in self.sorted_pairs()]}

    def to_json(self):
        return json.dumps(self.to_dict())

    def __repr__(self):
        return f"BinaryStructure({self.size}, {self.sorted_pairs()})"


@dataclass(frozen=True)
class Partition:
    """Blocks of a partition of ``0..n-1``, ordered by smallest member."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise DomainError("partition has an empty block")
            if seen & b:
                raise DomainError("partition blocks overlap")
            seen |= b
        if seen != set(range(len(seen))):
            raise DomainError("partition blocks do not cover 0..n-1")
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=min)))

    def block_of(self, x):
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise DomainError(f"element {x} is not in the partitioned domain")

    def __len__(self):
        return len(self.blocks)

    def as_lists(self):
        return [sorted(b) for b in self.blocks]


class UnionFind:
    def __init__(self, size):
        self.parents = list(range(size))

    def find(self, x):
        root = x
        while self.parents[root] != root:
            root = self.parents[root]
        while self.parents[x] != root:
            self.parents[x], x = root, self.parents[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller index becomes the root so results are reproducible
            if rb < ra:
                ra, rb = rb, ra
            self.parents[rb] = ra


def structure(size, pairs=()):
    return BinaryStructure(size, frozenset(map(tuple, pairs)))


def rs_closure(s):
    """Diagonal plus the relation plus its inverse."""
    diagonal = {(x, x) for x in range(s.size)}
    return frozenset(diagonal | s.pairs | {(v, u) for u, v in s.pairs})


def rst_closure(s):
    """The smallest equivalence relation containing the relation."""
    parts = components(s)
    return frozenset((x, y) for b in parts.blocks for x in b for y in b)


def components(s):
    uf = UnionFind(s.size)
    for u, v in s.pairs:
        uf.union(u, v)
    groups = {}
    for x in range(s.size):
        groups.setdefault(uf.find(x), set()).add(x)
    return Partition(tuple(groups.values()))


def is_connected(s):
    return len(components(s)) == 1


def complement(s):
    everything = {(u, v) for u in range(s.size) for v in range(s.size)}
    return BinaryStructure(s.size, frozenset(everything - s.pairs))


def disjoint_union(parts):
    """Place the parts side by side with consecutive offsets.

    Returns the union and a tuple mapping each element to the index of the
    part it came from.
    """
    parts = list(parts)
    if not parts:
        raise DomainError("disjoint union of an empty list")
    pairs = set()
    block_index = []
    offset = 0
    for i, p in enumerate(parts):
        pairs |= {(u + offset, v + offset) for u, v in p.pairs}
        block_index.extend([i] * p.size)
        offset += p.size
    return BinaryStructure(offset, frozenset(pairs)), tuple(block_index)


def part_offsets(parts):
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.size
    return offsets


def induced(s, subset):
    """Substructure on ``subset``, relabelled in increasing order."""
    elements = sorted(set(subset))
    if not elements:
        raise DomainError("induced substructure on the empty set")
    for x in elements:
        if not 0 <= x < s.size:
            raise DomainError(f"element {x} is outside the domain 0..{s.size - 1}")
    rank = {x: i for i, x in enumerate(elements)}
    pairs = frozenset((rank[u], rank[v]) for u, v in s.pairs if u in rank and v in rank)
    return BinaryStructure(len(elements), pairs)


def relabel(s, perm):
    """Image of ``s`` under the bijection ``x -> perm[x]``."""
    return BinaryStructure(s.size, frozenset((perm[u], perm[v]) for u, v in s.pairs))


def is_isomorphic(s, t, cap=DEFAULT_ISO_CAP):
    """Return a witness tuple ``f`` (``f[x]`` is the image of ``x``) or None.

    Backtracking over vertices with matching loop flag and degrees, refined by
    colour refinement. Sizes above ``cap`` raise CapacityError.
    """
    if max(s.size, t.size) > cap:
        raise CapacityError(f"isomorphism test capped at size {cap}, got {max(s.size, t.size)}")
    if s.size != t.size or len(s.pairs) != len(t.pairs):
        return None
    return _search.find_isomorphism(s.out_masks, s.in_masks, t.out_masks, t.in_masks)


# --- file format ---------------------------------------------------------


def parse_structure(data):
    """Build a structure from the decoded JSON object ``{"size", "pairs"}``.

    Unsorted pairs are fine; duplicates and out-of-range pairs are rejected
    with a message naming the pair.
    """
    if not isinstance(data, dict) or "size" not in data or "pairs" not in data:
        raise DomainError('structure file must be an object with "size" and "pairs"')
    size = data["size"]
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise DomainError(f"size must be a positive integer, got {size!r}")
    seen = set()
    for item in data["pairs"]:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
            raise DomainError(f"malformed pair {item!r}")
        pair = (item[0], item[1])
        if not (0 <= pair[0] < size and 0 <= pair[1] < size):
            raise DomainError(f"pair {list(pair)} is out of range for size {size}")
        if pair in seen:
            raise DomainError(f"duplicate pair {list(pair)}")
        seen.add(pair)
    return BinaryStructure(size, frozenset(seen))


def loads_structure(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    return parse_structure(data)


def load_structure(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read structure file {path}: {exc.strerror}") from None
    return loads_structure(text)


# --- small named structures ---------------------------------------------


def empty_relation(n):
    return structure(n)


def complete_graph(n):
    return structure(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def strict_order(n):
    return structure(n, [(u, v) for u in range(n) for v in range(n) if u < v])


def inverse_strict_order(n):
    return structure(n, [(u, v) for u in range(n) for v in range(n) if u > v])


def diagonal(n):
    return structure(n, [(u, u) for u in range(n)])


def full_relation(n):
    return structure(n, [(u, v) for u in range(n) for v in range(n)])


def reflexive_order(n):
    return structure(n, [(u, v) for u in range(n) for v in range(n) if u <= v])


def inverse_reflexive_order(n):
    return structure(n, [(u, v) for u in range(n) for v in range(n) if u >= v])


def path_graph(n):
    return structure(n, [p for i in range(n - 1) for p in ((i, i + 1), (i + 1, i))])


def cycle_graph(n):
    if n < 3:
        return path_graph(n)
    edges = [(i, (i + 1) % n) for i in range(n)]
    return structure(n, edges + [(v, u) for u, v in edges])


def arc_plus_isolated(n):
    """One arc 0 -> 1 followed by isolated vertices."""
    return structure(n, [(0, 1)] if n >= 2 else [])


def binary_tree(depth):
    """Complete binary tree digraph with arcs parent -> child.

    Heap numbering: the children of node i are 2i+1 and 2i+2; depth 0 is a
    single root.
    """
    n = 2 ** (depth + 1) - 1
    arcs = [(i, c) for i in range(n) for c in (2 * i + 1, 2 * i + 2) if c < n]
    return structure(n, arcs)
