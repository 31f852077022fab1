"""Datum of nodal strata, uninterrupted strata, nodal blocks and the separator set."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .core import (StrataStructure, ValidationReport, Violation, closure,
                   k_connected_components, sorted_strata, stratum, subsets)
from .errors import EquivalenceViolation, InvalidNodalData


@dataclass(frozen=True)
class SignPartition:
    plus: tuple
    minus: tuple

    def __post_init__(self):
        object.__setattr__(self, "plus", stratum(self.plus))
        object.__setattr__(self, "minus", stratum(self.minus))

    def as_set(self) -> frozenset:
        return frozenset((self.plus, self.minus))

    def restrict(self, J) -> "SignPartition":
        J = set(J)
        return SignPartition([i for i in self.plus if i in J], [i for i in self.minus if i in J])


@dataclass(frozen=True)
class NodalData:
    """Nodal strata with their two-sided sign partitions."""

    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        canon = {}
        for J, p in dict(self.entries).items():
            if not isinstance(p, SignPartition):
                p = SignPartition(*p)
            canon[stratum(J)] = p
        object.__setattr__(self, "entries", canon)

    def __contains__(self, J) -> bool:
        return tuple(J) in self.entries

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, J) -> SignPartition:
        return self.entries[tuple(J)]

    def strata(self) -> list:
        return sorted_strata(self.entries)

    def level(self, k: int) -> list:
        return [J for J in self.strata() if len(J) == k]

    def restrict_to(self, s: StrataStructure) -> "NodalData":
        return NodalData({J: p for J, p in self.entries.items() if J in s})


def validate_nodal_data(s: StrataStructure, n: NodalData) -> ValidationReport:
    out = []
    for J in n.strata():
        p = n[J]
        if J not in s:
            out.append(Violation("not-a-stratum", J))
            continue
        if set(p.plus) | set(p.minus) != set(J) or set(p.plus) & set(p.minus):
            out.append(Violation("bad-partition", J, f"{list(p.plus)} | {list(p.minus)}"))
            continue
        if not p.plus or not p.minus:
            out.append(Violation("bad-partition", J, "both sides must be nonempty"))
            continue
        for K in subsets(J, proper=True):
            K = stratum(K)
            both = bool(set(K) & set(p.plus)) and bool(set(K) & set(p.minus))
            if both and K not in n:
                out.append(Violation("missing", K, f"forced by {list(J)}"))
            elif not both and K in n:
                out.append(Violation("spurious", K, f"one-signed inside {list(J)}"))
            elif both and n[K].as_set() != p.restrict(K).as_set():
                out.append(Violation("incoherent", K, f"partition disagrees with {list(J)}"))
    # one report per (kind, stratum)
    seen, unique = set(), []
    for v in out:
        if (v.kind, v.stratum) not in seen:
            seen.add((v.kind, v.stratum))
            unique.append(v)
    return ValidationReport(tuple(unique))


def require_valid(s: StrataStructure, n: NodalData) -> None:
    report = validate_nodal_data(s, n)
    if not report.ok:
        raise InvalidNodalData("; ".join(str(v) for v in report.violations))


def uninterrupted_set(s: StrataStructure, n: NodalData) -> frozenset:
    """N*: nodal strata whose every superset in H is nodal."""
    out = set()
    for J in n.strata():
        if J in s and all(K in n for K in closure(s, [J])):
            out.add(J)
    return frozenset(out)


def nodal_blocks(s: StrataStructure, n: NodalData) -> list:
    """2-connected components of N(2), ordered by least member."""
    return k_connected_components(s, [J for J in n.level(2) if J in s], 2)


@dataclass(frozen=True)
class SeparatorReport:
    blocks: tuple
    separating: tuple  # the separating blocks, in block order
    separator_set: frozenset
    separator_closure: frozenset
    residual: StrataStructure
    uninterrupted: frozenset

    @property
    def n_separating(self) -> int:
        return len(self.separating)

    def is_separating(self, block) -> bool:
        return frozenset(block) in set(self.separating)


def separating_blocks(s: StrataStructure, n: NodalData, check: bool = True) -> SeparatorReport:
    if check:
        require_valid(s, n)
    star = uninterrupted_set(s, n)
    blocks = nodal_blocks(s, n)
    separating = []
    for B in blocks:
        cl = closure(s, B)
        a = B <= star
        b = all(J in n for J in cl)
        c = cl <= star
        if not (a == b == c):
            raise EquivalenceViolation(
                f"block {[list(J) for J in sorted_strata(B)]}: B⊆N* is {a}, Cl(B)⊆N is {b}, "
                f"Cl(B)⊆N* is {c}")
        if a:
            separating.append(B)
    sep = frozenset().union(*separating) if separating else frozenset()
    cl_sep = closure(s, sep)
    residual = s.with_strata(J for J in s.strata if J not in cl_sep)
    return SeparatorReport(tuple(blocks), tuple(separating), sep, cl_sep, residual, star)


def block_pairs_disjoint_closures(s: StrataStructure, blocks) -> bool:
    cls = [closure(s, B) for B in blocks]
    return all(not (x & y) for x, y in combinations(cls, 2))
