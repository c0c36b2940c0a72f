from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as hs

from conftest import structures
from copyposet import oracles
from copyposet import poset as po
from copyposet import structure as st
from copyposet.copies import (
    MAXIMAL_FAMILIES,
    PairClass,
    RamseyColoring,
    avoider_sets,
    coloring_from_function,
    homogeneous_subset,
    is_ideal_finite,
    maximal_prefix_check,
    pattern_indivisible,
    poset_of_copies,
    ramsey_coloring,
)
from copyposet.errors import CapacityError, DomainError

K = st.complete_graph
ARC = st.structure(2, [(0, 1)])


def test_poset_of_copies_examples():
    cp = poset_of_copies(K(2), K(3))
    assert cp.poset == po.antichain(3)
    assert cp.label_lists() == [[0, 1], [0, 2], [1, 2]]
    assert poset_of_copies(st.path_graph(4), st.path_graph(4)).poset.size == 1
    assert poset_of_copies(st.binary_tree(1), st.binary_tree(2)).poset == po.antichain(3)


def test_poset_of_copies_is_ordered_by_inclusion():
    cp = poset_of_copies(st.empty_relation(1), st.empty_relation(3))
    assert cp.poset == po.antichain(3)
    cp = poset_of_copies(st.binary_tree(1), st.binary_tree(3))
    assert cp.poset.size == 7
    with pytest.raises(CapacityError):
        poset_of_copies(st.empty_relation(2), st.empty_relation(8), cap=10)


def test_avoider_examples():
    assert avoider_sets(st.structure(1), st.structure(2)).subsets() == [frozenset()]
    small = avoider_sets(K(2), K(3))
    assert sorted(map(sorted, small.subsets())) == [[], [0], [1], [2]]
    assert len(avoider_sets(ARC, st.structure(2))) == 4
    assert frozenset({0}) in small and frozenset({0, 1}) not in small


def test_ideal_examples():
    assert not is_ideal_finite(avoider_sets(K(2), K(3)), K(3))
    host = st.empty_relation(4)
    assert is_ideal_finite(avoider_sets(st.structure(1), host), host)
    host = st.structure(2)
    assert not is_ideal_finite(avoider_sets(ARC, host), host)


def test_indivisibility_examples():
    assert pattern_indivisible(K(2), K(5))
    assert pattern_indivisible(K(2), K(3))
    assert not pattern_indivisible(K(3), K(4))
    with pytest.raises(CapacityError):
        pattern_indivisible(st.structure(1), st.empty_relation(21))


@given(structures(max_size=3), structures(max_size=6))
def test_indivisibility_matches_exhaustive_partitions(pattern, host):
    assert pattern_indivisible(pattern, host) == oracles.naive_indivisible(pattern, host)


@given(structures(max_size=3), structures(max_size=6))
def test_ideal_implies_indivisible(pattern, host):
    # a partition into two avoiders would put the whole domain in the ideal
    if is_ideal_finite(avoider_sets(pattern, host), host):
        assert pattern_indivisible(pattern, host)


@given(structures(max_size=3), structures(max_size=6))
def test_avoiders_are_downward_closed(pattern, host):
    found = avoider_sets(pattern, host)
    masks = set(int(m) for m in found.masks)
    for m in masks:
        for b in range(host.size):
            assert m & ~(1 << b) in masks
    copy_masks = {sum(1 << x for x in c) for c in oracles.naive_copies(pattern, host)}
    for m in range(1 << host.size):
        assert (m in masks) == (not any(c & m == c for c in copy_masks))


def test_ramsey_coloring_examples():
    col = ramsey_coloring(st.strict_order(3))
    assert set(col.classes.values()) == {PairClass.K2}
    assert set(ramsey_coloring(K(3)).classes.values()) == {PairClass.K1}
    assert set(ramsey_coloring(st.empty_relation(3)).classes.values()) == {PairClass.K0}
    assert ramsey_coloring(st.inverse_strict_order(2)).color(0, 1) == PairClass.K3
    with pytest.raises(DomainError, match="loops"):
        ramsey_coloring(st.diagonal(2))
    with pytest.raises(DomainError):
        RamseyColoring(3, {(0, 1): PairClass.K0})


def test_homogeneous_subset_examples():
    all_k2 = coloring_from_function(5, lambda x, y: PairClass.K2)
    assert homogeneous_subset(all_k2, 5) == ((0, 1, 2, 3, 4), PairClass.K2)
    assert homogeneous_subset(ramsey_coloring(st.strict_order(6)), 3) == ((0, 1, 2), PairClass.K2)
    pentagon = coloring_from_function(5, lambda x, y: PairClass.K1 if (y - x) % 5 in (1, 4) else PairClass.K0)
    assert homogeneous_subset(pentagon, 3) is None
    assert homogeneous_subset(all_k2, 6) is None


@given(structures(max_size=8), hs.integers(2, 5))
def test_homogeneous_subset_matches_exhaustive(s, k):
    loopless = st.structure(s.size, [(u, v) for u, v in s.pairs if u != v])
    col = ramsey_coloring(loopless)
    got = homogeneous_subset(col, k)
    want = oracles.first_homogeneous(col, k)
    assert (None if got is None else (got[0], int(got[1]))) == want


def test_six_points_force_a_monochromatic_triangle():
    pairs = [(a, b) for a in range(6) for b in range(a + 1, 6)]
    for bits in range(1 << len(pairs)):
        colour = {p: (bits >> i) & 1 for i, p in enumerate(pairs)}
        assert oracles.has_monochromatic_triangle(6, lambda x, y: colour[x, y])


def test_maximal_prefix_examples():
    assert maximal_prefix_check("lt", 5)
    assert maximal_prefix_check("diag", 6)
    assert not maximal_prefix_check("path", 5)
    assert not maximal_prefix_check("cycle", 5)
    assert not maximal_prefix_check("arc-plus-isolated", 4)
    assert maximal_prefix_check(st.empty_relation, 3)
    with pytest.raises(DomainError):
        maximal_prefix_check("nonsense", 3)
    with pytest.raises(DomainError):
        maximal_prefix_check("lt", 9)


def test_maximal_families_are_closed_under_subsets():
    # every k-subset of the 5-prefix is a copy of the k-prefix
    for name, build in MAXIMAL_FAMILIES.items():
        whole = build(5)
        for k in range(1, 5):
            assert len(oracles.naive_copies(build(k), whole)) == comb(5, k), name
