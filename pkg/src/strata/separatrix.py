"""Partial separatrices on a foliated model and the coverage check on divisor components.

A model carries trace components (pieces of the singular locus inside a single
divisor component) with an adjacency relation; connected groups of traces are
the partial separatrices.  Removing the separator set splits the divisor into
components, and every component should meet the hosts of some separatrix that
stays inside it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import StrataStructure, connected_components, stratum
from .errors import (DanglingAdjacency, InputError, SeparatrixSpansComponents,
                     UnknownIndex)
from .foliation import ResidueModel, derive_nodal_data
from .nodal import NodalData, require_valid, separating_blocks
from .parity import components_by_parity, components_by_search


@dataclass(frozen=True)
class TraceComponent:
    id: str
    host: int
    adjacent: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "adjacent", frozenset(self.adjacent))


@dataclass(frozen=True)
class FoliatedModel:
    structure: StrataStructure
    nodal: NodalData
    residues: ResidueModel | None = None
    traces: tuple = ()

    @classmethod
    def from_residues(cls, structure, residues, traces=()) -> "FoliatedModel":
        return cls(structure, derive_nodal_data(structure, residues), residues, tuple(traces))

    def __post_init__(self):
        object.__setattr__(self, "traces", tuple(sorted(self.traces, key=lambda t: t.id)))

    def validate(self) -> None:
        require_valid(self.structure, self.nodal)
        ids = {t.id for t in self.traces}
        if len(ids) != len(self.traces):
            raise InputError("trace ids must be unique")
        for t in self.traces:
            if t.host not in self.structure.indices:
                raise UnknownIndex(f"trace {t.id} has unknown host {t.host}")
            for other in t.adjacent:
                if other not in ids:
                    raise DanglingAdjacency(f"trace {t.id} is adjacent to unknown trace {other!r}")


def _trace_graph(m: FoliatedModel) -> dict:
    ids = {t.id for t in m.traces}
    adj = {t.id: set() for t in m.traces}
    for t in m.traces:
        for o in t.adjacent:
            if o not in ids:
                raise DanglingAdjacency(f"trace {t.id} is adjacent to unknown trace {o!r}")
            adj[t.id].add(o)
            adj[o].add(t.id)
    return adj


def partial_separatrices(m: FoliatedModel) -> list:
    """Connected components of the trace adjacency graph, as sorted lists of ids."""
    adj = _trace_graph(m)
    seen, out = set(), []
    for tid in sorted(adj):
        if tid in seen:
            continue
        comp, queue = [], deque([tid])
        seen.add(tid)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        out.append(sorted(comp))
    return out


def component_map(m: FoliatedModel, mode: str = "parity") -> dict:
    """Map each divisor component to ``c0, c1, ...`` (components ordered by least index).

    ``mode="parity"`` reads components off the parity signature (needs a simply
    connected structure) and cross-checks against graph search; ``mode="bfs"``
    uses graph search only.
    """
    s = m.structure
    report = separating_blocks(s, m.nodal)
    searched = components_by_search(report.residual)
    if mode == "parity":
        by_parity = components_by_parity(s, m.nodal).components
        if tuple(sorted(by_parity)) != tuple(sorted(searched)):
            raise AssertionError(f"parity components {by_parity} disagree with search {searched}")
    elif mode != "bfs":
        raise ValueError(f"unknown mode {mode!r}")
    out = {}
    for k, comp in enumerate(sorted(searched)):
        for i in comp:
            out[i] = f"c{k}"
    return out


@dataclass(frozen=True)
class CoverageVerdict:
    component: str
    members: tuple
    passed: bool
    witnesses: tuple = ()  # separatrices (as id lists) whose hosts lie in this component


@dataclass(frozen=True)
class CoverageReport:
    verdicts: tuple

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failing(self) -> list:
        return [v for v in self.verdicts if not v.passed]


def camacho_sad_check(m: FoliatedModel, mode: str = "parity") -> CoverageReport:
    m.validate()
    cmap = component_map(m, mode)
    by_id = {t.id: t for t in m.traces}
    owner = {}
    for sep in partial_separatrices(m):
        comps = {cmap[by_id[t].host] for t in sep}
        if len(comps) > 1:
            raise SeparatrixSpansComponents(
                f"separatrix {sep} has hosts in components {sorted(comps)}")
        owner.setdefault(comps.pop(), []).append(sep)
    members = {}
    for i, c in cmap.items():
        members.setdefault(c, []).append(i)
    verdicts = []
    for c in sorted(members, key=lambda c: int(c[1:])):
        w = tuple(tuple(x) for x in owner.get(c, ()))
        verdicts.append(CoverageVerdict(c, tuple(sorted(members[c])), bool(w), w))
    return CoverageReport(tuple(verdicts))


def connected_outside(s: StrataStructure, A, i: int, j: int) -> bool:
    """Is there a walk from i to j using only edges of H(2) outside A?"""
    for x in (i, j):
        if x not in s.indices:
            raise UnknownIndex(f"index {x} is not a divisor component")
    A = {stratum(J) for J in A}
    for J in A:
        if len(J) != 2 or J not in s:
            raise ValueError(f"{list(J)} is not in H(2)")
    if i == j:
        return True
    adj = s.adjacency()
    seen, queue = {i}, deque([i])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in seen or stratum((u, v)) in A:
                continue
            if v == j:
                return True
            seen.add(v)
            queue.append(v)
    return False


def _components_outside(s: StrataStructure, A) -> list:
    A = {stratum(J) for J in A}
    return connected_components(s.with_strata(J for J in s.strata if len(J) < 2 or
                                              (len(J) == 2 and J not in A)))


@dataclass(frozen=True)
class EquivalenceReport:
    failing_pairs: tuple
    nod_components: tuple
    sep_components: tuple
    bijection: dict | None  # nod component (as tuple) -> sep component, when one exists

    @property
    def holds(self) -> bool:
        return not self.failing_pairs and self.bijection is not None


def nod_vs_sep_equivalence(s: StrataStructure, n: NodalData) -> EquivalenceReport:
    """Compare connectivity outside the nodal edges with connectivity outside the separator."""
    require_valid(s, n)
    nod2 = [J for J in n.level(2) if J in s]
    sep = separating_blocks(s, n).separator_set
    failing = []
    for a in s.indices:
        for b in s.indices:
            if a < b and connected_outside(s, nod2, a, b) != connected_outside(s, sep, a, b):
                failing.append((a, b))
    nod_comps = tuple(tuple(c) for c in _components_outside(s, nod2))
    sep_comps = tuple(tuple(c) for c in _components_outside(s, sep))
    bijection = {}
    for c in nod_comps:
        hosts = [d for d in sep_comps if set(c) <= set(d)]
        if len(hosts) != 1:
            bijection = None
            break
        bijection[c] = hosts[0]
    if bijection is not None and not (
            len(set(bijection.values())) == len(nod_comps) == len(sep_comps)):
        bijection = None
    return EquivalenceReport(tuple(failing), nod_comps, sep_comps, bijection)
