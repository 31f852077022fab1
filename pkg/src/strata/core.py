"""Combinatorial strata structures: downward-closed set systems over an index set.

A stratum is stored as a strictly increasing tuple of integer indices, so set
equality is tuple equality.  Structures are immutable; every operation here is
a pure function.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import MemberNotInStructure, NotAPath

Stratum = tuple  # tuple[int, ...], strictly increasing


def stratum(members: Iterable[int]) -> Stratum:
    return tuple(sorted(set(int(m) for m in members)))


def stratum_key(J: Stratum):
    """Ordering used for every deterministic listing: size first, then lexicographic."""
    return (len(J), J)


def sorted_strata(strata: Iterable[Stratum]) -> list:
    return sorted(strata, key=stratum_key)


def subsets(J: Stratum, proper: bool = False):
    top = len(J) if not proper else len(J) - 1
    for r in range(top + 1):
        yield from combinations(J, r)


@dataclass(frozen=True)
class StrataStructure:
    """The set H of strata over the index set I, in ambient dimension ``dimension``.

    Construct through :meth:`create` unless you deliberately want to keep a
    non-canonical listing around (for example to hand it to
    :func:`validate_structure`).
    """

    dimension: int
    indices: tuple
    strata: tuple
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.strata))

    @classmethod
    def create(cls, dimension: int, strata: Iterable[Iterable[int]], indices=None,
               close: bool = False) -> "StrataStructure":
        """Canonical constructor.

        ``close=True`` adds every subset of every listed stratum, which is the
        convenient way to describe a structure by its maximal strata.  The
        empty stratum is always present.
        """
        canon = {stratum(J) for J in strata} | {()}
        if close:
            canon = {K for J in canon for K in subsets(J)}
        if indices is None:
            indices = {i for J in canon for i in J}
        return cls(int(dimension), tuple(sorted(set(indices))), tuple(sorted_strata(canon)))

    @classmethod
    def power_set(cls, indices: Iterable[int], dimension: int | None = None):
        idx = stratum(indices)
        return cls.create(len(idx) if dimension is None else dimension, [idx], idx, close=True)

    @classmethod
    def bare_germ(cls, dimension: int) -> "StrataStructure":
        return cls(int(dimension), (), ((),))

    def __contains__(self, J) -> bool:
        return tuple(J) in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self.strata)

    def level(self, k: int) -> list:
        """H(k): the strata with exactly k members, in canonical order."""
        return [J for J in self.strata if len(J) == k]

    @property
    def max_size(self) -> int:
        return max((len(J) for J in self._members), default=0)

    def neighbours(self, i: int) -> list:
        return sorted(j for J in self.strata if len(J) == 2 and i in J for j in J if j != i)

    def adjacency(self) -> dict:
        adj = {i: [] for i in self.indices}
        for a, b in self.level(2):
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        for v in adj.values():
            v.sort()
        return adj

    def with_strata(self, strata: Iterable[Stratum]) -> "StrataStructure":
        """Same I and dimension, different H."""
        return StrataStructure(self.dimension, self.indices, tuple(sorted_strata(set(strata))))


class Violation(NamedTuple):
    kind: str
    stratum: Stratum
    detail: str = ""

    def __str__(self):
        return f"{self.kind} {list(self.stratum)}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def missing(self) -> set:
        return {v.stratum for v in self.violations if v.kind == "missing"}


def validate_structure(s: StrataStructure) -> ValidationReport:
    """List every violated structural invariant; an empty report means valid."""
    out = []
    if s.dimension < 1:
        out.append(Violation("dimension", (), f"dimension must be positive, got {s.dimension}"))
    seen = set()
    index_set = set(s.indices)
    for J in s.strata:
        J = tuple(J)
        if any(a >= b for a, b in zip(J, J[1:])):
            out.append(Violation("non-canonical", J, "members must be strictly increasing"))
        if J in seen:
            out.append(Violation("duplicate", J))
        seen.add(J)
        if len(J) > s.dimension:
            out.append(Violation("oversize", J, f"{len(J)} > dimension {s.dimension}"))
        stray = set(J) - index_set
        if stray:
            out.append(Violation("unknown-index", J, f"indices {sorted(stray)} not in I"))
    required = {()} | {(i,) for i in s.indices}
    for J in seen:
        required.update(stratum(K) for K in subsets(stratum(J), proper=True))
    for J in sorted_strata(required - seen):
        detail = "singleton of I" if len(J) == 1 and J[0] in index_set else "subset of a stratum"
        out.append(Violation("missing", J, detail))
    return ValidationReport(tuple(out))


def _check_members(s: StrataStructure, A: Iterable[Stratum]) -> list:
    A = [tuple(J) for J in A]
    for J in A:
        if J not in s:
            raise MemberNotInStructure(f"{list(J)} is not a stratum of the structure")
    return A


def closure(s: StrataStructure, A: Iterable[Stratum]) -> frozenset:
    """Cl_H(A): every stratum containing some member of A."""
    A = set(_check_members(s, A))
    if not A:
        return frozenset()
    return frozenset(K for K in s.strata if any(set(J) <= set(K) for J in A))


def truncate(s: StrataStructure, k: int) -> StrataStructure:
    if k < 1:
        raise ValueError("truncation level must be at least 1")
    return s.with_strata(J for J in s.strata if len(J) <= k)


@dataclass(frozen=True)
class KPath:
    k: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(stratum(J) for J in self.entries))
        if not self.entries:
            raise ValueError("a path has at least one entry")

    @classmethod
    def of_vertices(cls, vertices: Sequence[int]) -> "KPath":
        return cls(1, tuple((v,) for v in vertices))

    @property
    def length(self) -> int:
        return len(self.entries) - 1

    @property
    def start(self):
        return self.entries[0]

    @property
    def end(self):
        return self.entries[-1]

    def support(self) -> frozenset:
        return frozenset(self.entries)

    def subsupport(self) -> tuple:
        return tuple(stratum(a + b) for a, b in zip(self.entries, self.entries[1:]))

    def vertices(self) -> tuple:
        if self.k != 1:
            raise ValueError("vertices() is defined for 1-paths only")
        return tuple(J[0] for J in self.entries)

    def reverse(self) -> "KPath":
        return KPath(self.k, self.entries[::-1])

    def __mul__(self, other: "KPath") -> "KPath":
        if self.k != other.k or self.end != other.start:
            raise ValueError("paths do not compose")
        return KPath(self.k, self.entries + other.entries[1:])


def is_k_path(s: StrataStructure, seq, k: int) -> bool:
    entries = [stratum(J) for J in (seq.entries if isinstance(seq, KPath) else seq)]
    if not entries:
        return False
    for J in entries:
        if len(J) != k or J not in s:
            return False
    for a, b in zip(entries, entries[1:]):
        u = stratum(a + b)
        if len(u) != k + 1 or u not in s:
            return False
    return True


def require_path(s: StrataStructure, path: KPath) -> KPath:
    if not is_k_path(s, path, path.k):
        raise NotAPath(f"{[list(J) for J in path.entries]} is not a {path.k}-path")
    return path


def k_connected_components(s: StrataStructure, A: Iterable[Stratum], k: int) -> list:
    """Partition A ⊆ H(k) into maximal k-connected pieces (paths supported in A).

    Components are frozensets, listed by their least member.
    """
    A = _check_members(s, A)
    for J in A:
        if len(J) != k:
            raise ValueError(f"{list(J)} does not have {k} members")
    members = set(A)
    adj = {J: set() for J in members}
    for K in s.strata:
        if len(K) != k + 1:
            continue
        faces = [F for F in combinations(K, k) if F in members]
        for a, b in combinations(faces, 2):
            adj[a].add(b)
            adj[b].add(a)
    comps = []
    seen = set()
    for J in sorted_strata(members):
        if J in seen:
            continue
        comp = {J}
        queue = deque([J])
        seen.add(J)
        while queue:
            cur = queue.popleft()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    comp.add(nxt)
                    queue.append(nxt)
        comps.append(frozenset(comp))
    return comps


def connected_components(s: StrataStructure) -> list:
    """1-connected components of H, as sorted lists of indices."""
    return [sorted(J[0] for J in comp) for comp in k_connected_components(s, s.level(1), 1)]


def is_one_connected(s: StrataStructure) -> bool:
    return len(connected_components(s)) <= 1


def bfs_path(s: StrataStructure, start: int, goal: int, allowed_edges=None) -> list | None:
    """Shortest vertex walk from start to goal, optionally restricted to an edge set."""
    adj = s.adjacency()
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            out = []
            while u is not None:
                out.append(u)
                u = prev[u]
            return out[::-1]
        for v in adj.get(u, ()):
            if v in prev:
                continue
            if allowed_edges is not None and stratum((u, v)) not in allowed_edges:
                continue
            prev[v] = u
            queue.append(v)
    return None
