"""Induced embeddings and copy sets.

An embedding is an injection ``f`` from the pattern domain into the host
domain with ``(x, y)`` related iff ``(f(x), f(y))`` related, loops included.
Embeddings are returned as tuples: ``f[x]`` is the image of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from . import _search
from .errors import DomainError
from .structure import components, complement, disjoint_union, is_connected, part_offsets, rs_closure

DEFAULT_NODE_LIMIT = 10**7


@dataclass(frozen=True)
class CopySet:
    pattern: object
    host: object
    copies: frozenset

    def sorted_copies(self):
        return sorted((sorted(c) for c in self.copies), key=lambda c: (len(c), c))

    def __len__(self):
        return len(self.copies)


def _assignment_order(pattern):
    degree = [pattern.out_degree(v) + pattern.in_degree(v) for v in range(pattern.size)]
    return sorted(range(pattern.size), key=lambda v: (-degree[v], v))


def _loop_candidates(pattern, host):
    with_loop = without_loop = 0
    for w in range(host.size):
        if host.has_loop(w):
            with_loop |= 1 << w
        else:
            without_loop |= 1 << w
    return [with_loop if pattern.has_loop(v) else without_loop for v in range(pattern.size)]


def iter_embeddings(pattern, host, node_limit=DEFAULT_NODE_LIMIT):
    """Unordered stream of embeddings; see :func:`embeddings`."""
    if pattern.size > host.size:
        return iter(())
    return _search.match(
        pattern.out_masks,
        pattern.in_masks,
        host.out_masks,
        host.in_masks,
        host.size,
        _assignment_order(pattern),
        _loop_candidates(pattern, host),
        node_limit=node_limit,
    )


def embeddings(pattern, host, node_limit=DEFAULT_NODE_LIMIT):
    """All embeddings of ``pattern`` into ``host`` in lexicographic order.

    Raises CapacityError once more than ``node_limit`` tentative assignments
    have been made; the result is never truncated.
    """
    return sorted(iter_embeddings(pattern, host, node_limit))


def copies(pattern, host, node_limit=DEFAULT_NODE_LIMIT):
    images = frozenset(frozenset(f) for f in iter_embeddings(pattern, host, node_limit))
    return CopySet(pattern, host, images)


def copies_of_union_oracle(parts, host_parts, node_limit=DEFAULT_NODE_LIMIT):
    """Copies of a disjoint union of connected parts, assembled part by part.

    Every embedding of the union is a choice of host part ``f(i)`` for each
    pattern part ``i`` and an embedding of part ``i`` into host part ``f(i)``,
    such that images of distinct parts are never joined by the reflexive
    symmetric closure of the host relation. The condition is checked
    literally against the assembled host, so distinctness of images also
    follows from it.
    """
    parts = list(parts)
    host_parts = list(host_parts)
    for label, group in (("pattern", parts), ("host", host_parts)):
        if not group:
            raise DomainError(f"{label} part list is empty")
        for i, p in enumerate(group):
            if not is_connected(p):
                raise DomainError(f"{label} part {i} is not connected (components {components(p).as_lists()})")
    pattern, _ = disjoint_union(parts)
    host, _ = disjoint_union(host_parts)
    host_rs = rs_closure(host)
    offsets = part_offsets(host_parts)

    # per (pattern part, host part): embeddings translated into host numbering
    local = {}
    for i, p in enumerate(parts):
        for j, h in enumerate(host_parts):
            local[i, j] = [tuple(x + offsets[j] for x in g) for g in iter_embeddings(p, h, node_limit)]

    found = set()
    for choice in cartesian(range(len(host_parts)), repeat=len(parts)):
        pools = [local[i, j] for i, j in enumerate(choice)]
        if any(not pool for pool in pools):
            continue
        chosen = []

        def extend(i):
            if i == len(parts):
                found.add(frozenset(x for g in chosen for x in g))
                return
            for g in pools[i]:
                if all((a, b) not in host_rs for prev in chosen for a in prev for b in g):
                    chosen.append(g)
                    extend(i + 1)
                    chosen.pop()

        extend(0)
    return CopySet(pattern, host, frozenset(found))


def embeddings_complement_check(pattern, host, node_limit=DEFAULT_NODE_LIMIT):
    """True iff complementing both structures leaves the embedding set unchanged."""
    direct = set(iter_embeddings(pattern, host, node_limit))
    dual = set(iter_embeddings(complement(pattern), complement(host), node_limit))
    return direct == dual
