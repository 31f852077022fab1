import pytest

from strata.blowup import blowup_sequence, parse_centers
from strata.core import StrataStructure
from strata.foliation import NONREAL, ResidueModel, SymbolTable

TABLE = SymbolTable.of("one", "lam", "mu", ("alpha", NONREAL))


def r1_structure():
    return StrataStructure.create(3, [(0, 1, 2), (1, 2, 3)], close=True)


def r1_residues():
    return ResidueModel(TABLE, {0: ("one", 1), 1: ("lam", 1), 2: ("mu", -1), 3: ("alpha", -1)})


def r2_structure():
    return StrataStructure.power_set((0, 1, 2), 3)


def r2_residues():
    return ResidueModel(TABLE, {0: ("one", 1), 1: ("lam", 1), 2: ("mu", -1)})


def triangle():
    return StrataStructure.create(3, [(0, 1), (0, 2), (1, 2)], close=True)


def cone():
    return blowup_sequence(3, parse_centers("P[];P[0];P[0,1];S[0,1,2]")).final


@pytest.fixture
def r1():
    return r1_structure(), r1_residues()


@pytest.fixture
def r2():
    return r2_structure(), r2_residues()
