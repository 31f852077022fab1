from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import r1_structure, r2_structure, triangle
from strata.core import (KPath, StrataStructure, closure, connected_components, is_k_path,
                         k_connected_components, require_path, truncate, validate_structure)
from strata.errors import MemberNotInStructure, NotAPath


def raw(d, strata, indices):
    return StrataStructure(d, tuple(indices), tuple(tuple(J) for J in strata))


# validation

def test_full_square_is_valid():
    assert validate_structure(raw(2, [(), (0,), (1,), (0, 1)], [0, 1])).ok


def test_missing_singleton_reported():
    rep = validate_structure(raw(2, [(), (0,), (0, 1)], [0, 1]))
    assert not rep.ok
    assert rep.missing() == {(1,)}


def test_missing_edges_reported():
    rep = validate_structure(raw(3, [(), (0,), (1,), (2,), (0, 1, 2)], [0, 1, 2]))
    assert rep.missing() == {(0, 1), (0, 2), (1, 2)}


def test_oversize_and_duplicate_reported():
    rep = validate_structure(raw(1, [(), (0,), (1,), (0, 1), (0, 1)], [0, 1]))
    kinds = {v.kind for v in rep.violations}
    assert {"oversize", "duplicate"} <= kinds


def test_bare_germ_is_valid():
    assert validate_structure(StrataStructure.bare_germ(3)).ok


# closure

def test_closure_examples():
    s = r1_structure()
    assert closure(s, [(1, 2)]) == {(1, 2), (0, 1, 2), (1, 2, 3)}
    assert closure(s, []) == frozenset()
    assert closure(r2_structure(), [(0, 1, 2)]) == {(0, 1, 2)}


def test_closure_rejects_foreign_member():
    with pytest.raises(MemberNotInStructure):
        closure(r1_structure(), [(0, 3)])


# truncation

def test_truncate_examples():
    s = StrataStructure.power_set(range(4), 4)
    t = truncate(s, 3)
    assert set(t.strata) == set(s.strata) - {(0, 1, 2, 3)}
    assert truncate(r1_structure(), 3) == r1_structure()
    assert truncate(StrataStructure.power_set((0, 1), 2), 1).strata == ((), (0,), (1,))


# paths

def test_is_k_path_examples():
    assert is_k_path(r2_structure(), [(0, 2), (1, 2)], 2)
    assert is_k_path(r2_structure(), [(0,)], 1)
    assert not is_k_path(triangle(), [(0, 1), (0, 2)], 2)


def test_require_path_raises():
    with pytest.raises(NotAPath):
        require_path(triangle(), KPath(2, [(0, 1), (0, 2)]))


def test_path_support_and_subsupport():
    g = KPath.of_vertices([0, 2, 1])
    assert g.support() == {(0,), (1,), (2,)}
    assert g.subsupport() == ((0, 2), (1, 2))


# components

def test_k_connected_components_examples():
    assert len(k_connected_components(r1_structure(), [(0, 2), (1, 2)], 2)) == 1
    assert k_connected_components(r1_structure(), [], 2) == []
    two = StrataStructure.create(1, [(0,), (1,)])
    assert len(k_connected_components(two, two.level(1), 1)) == 2


def test_disjoint_edges_make_two_blocks():
    s = StrataStructure.create(3, [(0, 1), (1, 2), (2, 3)], close=True)
    assert len(k_connected_components(s, [(0, 1), (2, 3)], 2)) == 2


# properties on random downward-closed families

@st.composite
def structures(draw, max_n=6, max_d=4):
    n = draw(st.integers(0, max_n))
    d = draw(st.integers(1, max_d))
    pool = [J for k in range(2, d + 1) for J in combinations(range(n), k)]
    tops = draw(st.lists(st.sampled_from(pool), max_size=8)) if pool else []
    return StrataStructure.create(d, [(i,) for i in range(n)] + tops, indices=range(n), close=True)


@settings(max_examples=150, deadline=None)
@given(structures())
def test_generated_structures_validate(s):
    assert validate_structure(s).ok
    assert validate_structure(truncate(s, 3)).ok
    assert truncate(truncate(s, 2), 2) == truncate(s, 2)


@settings(max_examples=150, deadline=None)
@given(structures(), st.data())
def test_closure_laws(s, data):
    A = data.draw(st.sets(st.sampled_from(s.strata), max_size=4))
    B = data.draw(st.sets(st.sampled_from(s.strata), max_size=4))
    cl = closure(s, A)
    assert set(A) <= cl
    assert closure(s, cl) == cl
    assert closure(s, A) <= closure(s, A | B)


@settings(max_examples=150, deadline=None)
@given(structures())
def test_components_match_networkx(s):
    g = nx.Graph()
    g.add_nodes_from(s.indices)
    g.add_edges_from(s.level(2))
    expected = sorted(sorted(c) for c in nx.connected_components(g))
    assert sorted(connected_components(s)) == expected


@settings(max_examples=100, deadline=None)
@given(structures(max_n=5))
def test_two_blocks_are_exactly_the_joinable_classes(s):
    A = s.level(2)[:8]
    blocks = k_connected_components(s, A, 2)
    assert sorted(J for b in blocks for J in b) == sorted(A)
    g = nx.Graph()
    g.add_nodes_from(A)
    for a, b in combinations(A, 2):
        if is_k_path(s, [a, b], 2):
            g.add_edge(a, b)
    assert {frozenset(c) for c in nx.connected_components(g)} == set(blocks)


@settings(max_examples=100, deadline=None)
@given(structures(), st.data())
def test_path_composition_and_reversal(s, data):
    if not s.level(2):
        return
    a, b = data.draw(st.sampled_from(s.level(2)))
    walk = [a, b]
    for _ in range(data.draw(st.integers(0, 5))):
        nbrs = s.neighbours(walk[-1])
        walk.append(data.draw(st.sampled_from(nbrs)))
    g = KPath.of_vertices(walk)
    assert is_k_path(s, g, 1)
    assert is_k_path(s, g.reverse(), 1)
    assert is_k_path(s, g * g.reverse(), 1)
