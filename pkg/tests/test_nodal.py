import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import r1_structure, r2_structure
from strata.blowup import random_sequence
from strata.core import StrataStructure, closure, validate_structure
from strata.errors import InvalidNodalData
from strata.foliation import derive_nodal_data, random_model
from strata.nodal import (NodalData, block_pairs_disjoint_closures, nodal_blocks, require_valid,
                          separating_blocks, uninterrupted_set, validate_nodal_data)

R2_NODAL = NodalData({(0, 2): ((0,), (2,)), (1, 2): ((1,), (2,)), (0, 1, 2): ((0, 1), (2,))})
R1_NODAL = R2_NODAL


def test_r2_data_is_valid():
    assert validate_nodal_data(r2_structure(), R2_NODAL).ok


def test_missing_face_reported():
    bad = NodalData({(0, 1, 2): ((0, 1), (2,))})
    rep = validate_nodal_data(r2_structure(), bad)
    assert not rep.ok
    assert any(v.stratum == (0, 2) for v in rep.violations)
    with pytest.raises(InvalidNodalData):
        require_valid(r2_structure(), bad)


def test_wrong_restriction_reported():
    bad = NodalData({(0, 2): ((0,), (2,)), (1, 2): ((2,), (1,)), (0, 1, 2): ((0, 1), (2,))})
    assert validate_nodal_data(r2_structure(), bad).ok  # swapped sides are the same partition
    worse = NodalData({(0, 1): ((0,), (1,)), (0, 2): ((0,), (2,)), (1, 2): ((1,), (2,)),
                       (0, 1, 2): ((0, 1), (2,))})
    assert not validate_nodal_data(r2_structure(), worse).ok


def test_empty_data_is_valid():
    assert validate_nodal_data(r2_structure(), NodalData()).ok


def test_uninterrupted_examples():
    assert uninterrupted_set(r1_structure(), R1_NODAL) == {(0, 2), (0, 1, 2)}
    assert uninterrupted_set(r2_structure(), R2_NODAL) == set(R2_NODAL.strata())
    assert uninterrupted_set(r2_structure(), NodalData()) == frozenset()


def test_block_examples():
    assert nodal_blocks(r1_structure(), R1_NODAL) == [frozenset({(0, 2), (1, 2)})]
    assert nodal_blocks(r2_structure(), R2_NODAL) == [frozenset({(0, 2), (1, 2)})]
    s = StrataStructure.create(3, [(0, 1), (1, 2), (2, 3)], close=True)
    n = NodalData({(0, 1): ((0,), (1,)), (2, 3): ((2,), (3,))})
    assert len(nodal_blocks(s, n)) == 2


def test_separator_examples():
    rep = separating_blocks(r1_structure(), R1_NODAL)
    assert (len(rep.blocks), rep.n_separating) == (1, 0)
    assert rep.separator_set == frozenset() and rep.residual == r1_structure()
    rep = separating_blocks(r2_structure(), R2_NODAL)
    assert (len(rep.blocks), rep.n_separating) == (1, 1)
    assert rep.separator_set == {(0, 2), (1, 2)}
    assert set(rep.residual.strata) == {(), (0,), (1,), (2,), (0, 1)}
    rep = separating_blocks(r2_structure(), NodalData())
    assert rep.blocks == () and rep.residual == r2_structure()


def _corpus_pairs(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        t = random_sequence(rng.choice((2, 3, 4)), rng.randint(1, 8), rng.randrange(10**9))
        yield t.final, derive_nodal_data(t.final, random_model(t.final.indices, rng))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_separator_invariants(seed):
    for s, n in _corpus_pairs(1, seed):
        rep = separating_blocks(s, n)
        U = rep.uninterrupted
        assert closure(s, U) == U and U <= set(n.strata())
        assert all(J in U for J in s.strata if closure(s, [J]) <= set(n.strata()))
        assert rep.separator_set == {J for J in rep.separator_closure if len(J) == 2}
        assert validate_structure(rep.residual).ok
        assert all((i,) in rep.residual for i in s.indices)
        assert block_pairs_disjoint_closures(s, rep.blocks)
