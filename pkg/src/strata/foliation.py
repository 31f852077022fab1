"""Exact residue models of logarithmic foliations along a normal-crossings divisor.

Every component carries a residue ``scale * symbol`` with a nonzero rational
scale.  Symbols are declared, not computed: the ``real`` ones stand for
positive reals, the full set is linearly independent over Q, and any ratio
between a ``nonreal`` symbol and a different symbol is not real.  Under these
declarations reality, sign and resonance of residue combinations are decidable
with rational arithmetic alone.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import StrataStructure, stratum
from .errors import InputError, NonPositive, UnassignedComponent
from .nodal import NodalData, SignPartition

REAL = "real"
NONREAL = "nonreal"


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str = REAL

    def __post_init__(self):
        if self.kind not in (REAL, NONREAL):
            raise InputError(f"symbol kind must be 'real' or 'nonreal', got {self.kind!r}")


@dataclass(frozen=True)
class SymbolTable:
    symbols: tuple = (Symbol("one", REAL),)

    def __post_init__(self):
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise InputError("symbol names must be unique")
        if not self.symbols or self.symbols[0].kind != REAL:
            raise InputError("symbol 0 is the real unit")

    @classmethod
    def of(cls, *specs) -> "SymbolTable":
        """``SymbolTable.of("one", "lam", ("alpha", "nonreal"))``"""
        out = []
        for sp in specs:
            out.append(Symbol(sp) if isinstance(sp, str) else Symbol(*sp))
        return cls(tuple(out))

    def __getitem__(self, name: str) -> Symbol:
        for s in self.symbols:
            if s.name == name:
                return s
        raise InputError(f"unknown symbol {name!r}")


@dataclass(frozen=True)
class Residue:
    symbol: str
    scale: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale == 0:
            raise InputError("residue scale must be nonzero")


@dataclass(frozen=True)
class ResidueModel:
    table: SymbolTable
    assignment: Mapping = field(default_factory=dict)  # index -> Residue

    def __post_init__(self):
        canon = {}
        for i, r in dict(self.assignment).items():
            if not isinstance(r, Residue):
                r = Residue(*r)
            self.table[r.symbol]
            canon[int(i)] = r
        object.__setattr__(self, "assignment", canon)

    def residue(self, i: int) -> Residue:
        try:
            return self.assignment[i]
        except KeyError:
            raise UnassignedComponent(f"component {i} has no residue") from None

    def kind(self, i: int) -> str:
        return self.table[self.residue(i).symbol].kind


def ratio_is_real(m: ResidueModel, i: int, j: int) -> bool:
    ri, rj = m.residue(i), m.residue(j)
    if ri.symbol == rj.symbol:
        return True
    return m.kind(i) == REAL and m.kind(j) == REAL


@dataclass(frozen=True)
class StratumClass:
    kind: str  # "nodal", "real_saddle", "complex" or "too_small"
    plus: tuple = ()
    minus: tuple = ()

    @property
    def nodal(self) -> bool:
        return self.kind == "nodal"


TOO_SMALL = StratumClass("too_small")
REAL_SADDLE = StratumClass("real_saddle")
COMPLEX = StratumClass("complex")


def classify_stratum(m: ResidueModel, J) -> StratumClass:
    J = stratum(J)
    for i in J:
        m.residue(i)
    if len(J) <= 1:
        return TOO_SMALL
    if any(not ratio_is_real(m, J[0], j) for j in J[1:]):
        return COMPLEX
    # reality of ratios is transitive within a stratum once J[0] is linked to all
    plus = tuple(i for i in J if m.residue(i).scale > 0)
    minus = tuple(i for i in J if m.residue(i).scale < 0)
    if plus and minus:
        return StratumClass("nodal", plus, minus)
    return REAL_SADDLE


def derive_nodal_data(s: StrataStructure, m: ResidueModel) -> NodalData:
    entries = {}
    for J in s.strata:
        if len(J) < 2:
            for i in J:
                m.residue(i)
            continue
        c = classify_stratum(m, J)
        if c.nodal:
            entries[J] = SignPartition(c.plus, c.minus)
    return NodalData(entries)


@dataclass(frozen=True)
class Resonance:
    resonant: bool
    witness: tuple = ()  # nonnegative integer coefficients, aligned with the stratum


def resonance_check(m: ResidueModel, J) -> Resonance:
    """Is some nonzero nonnegative integer combination of the residues of J zero?

    With Q-independent symbols the combination splits per symbol, so a
    resonance exists exactly when one symbol carries residues of both signs.
    """
    J = stratum(J)
    if not J:
        raise ValueError("resonance needs a nonempty stratum")
    res = [m.residue(i) for i in J]
    for a in range(len(J)):
        for b in range(len(J)):
            ra, rb = res[a], res[b]
            if ra.symbol == rb.symbol and ra.scale > 0 > rb.scale:
                p, q = ra.scale, -rb.scale
                # ma * p = mb * q with ma = q * lcm, mb = p * lcm
                den = math.lcm(p.denominator, q.denominator)
                ma, mb = q * den, p * den
                g = math.gcd(int(ma), int(mb))
                coeffs = [0] * len(J)
                coeffs[a], coeffs[b] = int(ma) // g, int(mb) // g
                witness = tuple(coeffs)
                total = {}
                for c, r in zip(witness, res):
                    total[r.symbol] = total.get(r.symbol, 0) + c * r.scale
                assert all(v == 0 for v in total.values())
                return Resonance(True, witness)
    return Resonance(False)


@dataclass(frozen=True)
class CornerCheck:
    simple: bool
    diagnostics: tuple = ()


def is_gh_simple_corner(m: ResidueModel, J) -> CornerCheck:
    r = resonance_check(m, J)
    if not r.resonant:
        return CornerCheck(True)
    return CornerCheck(False, (f"radial/dicritical-type resonance with coefficients {list(r.witness)}; "
                               "the model violates the GH hypothesis",))


def nodal_reduction_steps(lam) -> int:
    """The unique k with k - 1 < lam <= k (blow-ups needed to push a trace node to a corner)."""
    lam = Fraction(lam)
    if lam <= 0:
        raise NonPositive(f"eigenvalue must be positive, got {lam}")
    return math.ceil(lam)


DEFAULT_SYMBOLS = SymbolTable.of("one", "lam", "mu", ("alpha", NONREAL), ("beta", NONREAL))


def random_model(indices, rng: random.Random, table: SymbolTable = DEFAULT_SYMBOLS,
                 nonreal_weight: float = 0.2) -> ResidueModel:
    """A reproducible random residue model; real symbols dominate so nodal blocks are common."""
    real = [s.name for s in table.symbols if s.kind == REAL]
    nonreal = [s.name for s in table.symbols if s.kind == NONREAL]
    out = {}
    for i in indices:
        if nonreal and rng.random() < nonreal_weight:
            name = rng.choice(nonreal)
        else:
            name = rng.choice(real)
        scale = Fraction(rng.randint(1, 5), rng.randint(1, 3)) * rng.choice((1, -1))
        out[i] = Residue(name, scale)
    return ResidueModel(table, out)
