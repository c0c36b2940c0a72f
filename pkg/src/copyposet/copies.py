"""Posets of copies, avoider families, finite indivisibility, the four-class
pair colouring and prefix checks for the embedding-maximal families.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from itertools import combinations

import numpy as np

from . import structure as st
from ._search import iter_bits
from .embed import DEFAULT_NODE_LIMIT, copies
from .errors import CapacityError, DomainError
from .poset import FinitePoset

DEFAULT_COPY_CAP = 4096
POWER_SET_CAP = 20


@dataclass(frozen=True)
class CopyPoset:
    copy_set: object
    poset: FinitePoset
    labels: tuple

    def label_lists(self):
        return [sorted(a) for a in self.labels]


def poset_of_copies(pattern, host, cap=DEFAULT_COPY_CAP, node_limit=DEFAULT_NODE_LIMIT):
    found = copies(pattern, host, node_limit)
    if len(found) > cap:
        raise CapacityError(f"{len(found)} copies exceed the poset cap {cap}")
    labels = tuple(frozenset(c) for c in found.sorted_copies())
    below = []
    for b in labels:
        m = 0
        for i, a in enumerate(labels):
            if a <= b:
                m |= 1 << i
        below.append(m)
    return CopyPoset(found, FinitePoset(len(labels), tuple(below)), labels)


# --- avoiders and indivisibility ----------------------------------------


def _copy_masks(pattern, host, node_limit):
    if host.size > POWER_SET_CAP:
        raise CapacityError(f"power-set enumeration is capped at host size {POWER_SET_CAP}, got {host.size}")
    return [sum(1 << x for x in c) for c in copies(pattern, host, node_limit).copies]


def _contains_copy(n, copy_masks):
    """Boolean array over all subsets (as bitmasks): does the subset contain a copy?"""
    table = np.zeros(1 << n, dtype=bool)
    if copy_masks:
        table[np.array(copy_masks, dtype=np.int64)] = True
    # superset closure, one coordinate at a time
    for b in range(n):
        view = table.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    return table


@dataclass(frozen=True, eq=False)
class IdealSets:
    """Subsets of the host domain that contain no copy of the pattern.

    ``masks`` is a sorted integer array of subset bitmasks.
    """

    host_size: int
    masks: np.ndarray

    def __contains__(self, subset):
        m = sum(1 << x for x in subset)
        i = np.searchsorted(self.masks, m)
        return bool(i < len(self.masks) and self.masks[i] == m)

    def __len__(self):
        return len(self.masks)

    def subsets(self):
        return [frozenset(iter_bits(int(m))) for m in self.masks]


def avoider_sets(pattern, host, node_limit=DEFAULT_NODE_LIMIT):
    table = _contains_copy(host.size, _copy_masks(pattern, host, node_limit))
    return IdealSets(host.size, np.flatnonzero(~table).astype(np.int64))


def is_ideal_finite(ideal, host):
    """Avoiders closed under union and the whole domain is not an avoider.

    The family is downward closed, so it is union-closed exactly when the
    union of all its members is itself a member.
    """
    full = (1 << host.size) - 1
    members = set(int(m) for m in ideal.masks)
    if full in members:
        return False
    union = 0
    for m in members:
        union |= m
    return union in members


def pattern_indivisible(pattern, host, node_limit=DEFAULT_NODE_LIMIT):
    """Every 2-partition of the host has a part containing a copy."""
    table = _contains_copy(host.size, _copy_masks(pattern, host, node_limit))
    full = (1 << host.size) - 1
    subsets = np.arange(1 << host.size, dtype=np.int64)
    return bool(np.all(table[subsets] | table[full ^ subsets]))


# --- pair colouring ------------------------------------------------------


class PairClass(IntEnum):
    K0 = 0  # unrelated both ways
    K1 = 1  # related both ways
    K2 = 2  # only the arc from the smaller to the larger element
    K3 = 3  # only the arc from the larger to the smaller element


@dataclass(frozen=True)
class RamseyColoring:
    size: int
    classes: dict

    def __post_init__(self):
        expected = set(combinations(range(self.size), 2))
        if set(self.classes) != expected:
            raise DomainError("colouring must assign exactly one class to every pair x < y")

    def color(self, x, y):
        return self.classes[(x, y) if x < y else (y, x)]


def ramsey_coloring(s):
    if any(s.has_loop(x) for x in range(s.size)):
        raise DomainError("structure has loops; remove the diagonal before colouring pairs")
    classes = {}
    for x, y in combinations(range(s.size), 2):
        fwd, bwd = s.related(x, y), s.related(y, x)
        if fwd and bwd:
            c = PairClass.K1
        elif fwd:
            c = PairClass.K2
        elif bwd:
            c = PairClass.K3
        else:
            c = PairClass.K0
        classes[x, y] = c
    return RamseyColoring(s.size, classes)


def coloring_from_function(size, fn):
    return RamseyColoring(size, {(x, y): fn(x, y) for x, y in combinations(range(size), 2)})


def homogeneous_subset(coloring, k):
    """Lexicographically first k-set whose pairs all share one class.

    Classes are tried in order; returns ``(tuple, class)`` or None.
    """
    n = coloring.size
    if k > n or k < 0:
        return None
    if k < 2:
        return tuple(range(k)), PairClass.K0
    present = sorted(set(coloring.classes.values()))
    for c in present:
        adj = [0] * n
        for (x, y), cls in coloring.classes.items():
            if cls == c:
                adj[x] |= 1 << y
                adj[y] |= 1 << x
        clique = _find_clique(adj, k)
        if clique is not None:
            return clique, PairClass(c)
    return None


def _find_clique(adj, k):
    chosen = []

    def extend(cand):
        if len(chosen) == k:
            return True
        if bin(cand).count("1") < k - len(chosen):
            return False
        for v in iter_bits(cand):
            chosen.append(v)
            # only later vertices, so each set is visited once in ascending order
            if extend(adj[v] & cand & ~((2 << v) - 1)):
                return True
            chosen.pop()
        return False

    full = (1 << len(adj)) - 1
    return tuple(chosen) if extend(full) else None


# --- embedding-maximal families -----------------------------------------

MAXIMAL_FAMILIES = {
    "empty": st.empty_relation,
    "complete": st.complete_graph,
    "lt": st.strict_order,
    "gt": st.inverse_strict_order,
    "diag": st.diagonal,
    "full": st.full_relation,
    "le": st.reflexive_order,
    "ge": st.inverse_reflexive_order,
}

NEGATIVE_CONTROLS = {
    "path": st.path_graph,
    "cycle": st.cycle_graph,
    "arc-plus-isolated": st.arc_plus_isolated,
}


def maximal_prefix_check(family, n):
    """Does every nonempty subset of the n-prefix induce the prefix of its own size?

    ``family`` is one of the ids in MAXIMAL_FAMILIES or NEGATIVE_CONTROLS, or
    a callable ``size -> BinaryStructure``.
    """
    if callable(family):
        build = family
    elif family in MAXIMAL_FAMILIES:
        build = MAXIMAL_FAMILIES[family]
    elif family in NEGATIVE_CONTROLS:
        build = NEGATIVE_CONTROLS[family]
    else:
        known = ", ".join(sorted(MAXIMAL_FAMILIES) + sorted(NEGATIVE_CONTROLS))
        raise DomainError(f"unknown family {family!r}; expected one of {known}")
    if not 1 <= n <= 8:
        raise DomainError(f"prefix length must be between 1 and 8, got {n}")
    whole = build(n)
    prefixes = {k: build(k) for k in range(1, n + 1)}
    for mask in range(1, 1 << n):
        sub = st.induced(whole, iter_bits(mask))
        if st.is_isomorphic(sub, prefixes[sub.size]) is None:
            return False
    return True
