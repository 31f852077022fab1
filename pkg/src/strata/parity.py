"""Crossing parities of 1-paths through nodal separating blocks, and component counting.

Each separating block B two-colours the vertices of a simply connected
structure: the parity of the number of B-edges crossed by any walk from a base
vertex.  Stacking the colourings of all separating blocks gives the signature
map Phi; its fibres are the connected components of the residual structure.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import (KPath, StrataStructure, bfs_path, connected_components,
                   is_one_connected, require_path, stratum)
from .errors import NotConnected, ParityInconsistent
from .nodal import NodalData, separating_blocks

EVEN, ODD = 0, 1


def crossing_count(s: StrataStructure, block, gamma: KPath) -> int:
    """Number of subsupport entries of ``gamma`` lying in ``block``."""
    if not isinstance(gamma, KPath):
        gamma = KPath.of_vertices(gamma)
    require_path(s, gamma)
    block = {stratum(J) for J in block}
    return sum(1 for J in gamma.subsupport() if J in block)


@dataclass(frozen=True)
class ParityColoring:
    base: int
    block: frozenset
    side: dict  # index -> EVEN / ODD

    def even(self) -> list:
        return sorted(i for i, v in self.side.items() if v == EVEN)

    def odd(self) -> list:
        return sorted(i for i, v in self.side.items() if v == ODD)


@dataclass(frozen=True)
class Inconsistent:
    """An edge whose endpoints received contradictory parities."""

    edge: tuple
    base: int
    block: frozenset


def block_parity_coloring(s: StrataStructure, block, i0: int):
    """Two-colour H(1) by crossing parity from ``i0``; returns Inconsistent on a clash."""
    if not is_one_connected(s):
        raise NotConnected("parity colouring needs a 1-connected structure")
    block = frozenset(stratum(J) for J in block)
    adj = s.adjacency()
    side = {i0: EVEN}
    queue = deque([i0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            want = side[u] ^ (stratum((u, v)) in block)
            if v not in side:
                side[v] = want
                queue.append(v)
    for a, b in s.level(2):
        if side[a] ^ side[b] != ((a, b) in block):
            return Inconsistent((a, b), i0, block)
    return ParityColoring(i0, block, side)


@dataclass(frozen=True)
class ComponentReport:
    blocks: int
    separating: int
    components: tuple  # tuple of sorted index tuples
    signature: dict  # index -> bit tuple
    provenance: str

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def matches_theorem(self) -> bool:
        return self.count == self.separating + 1


def components_by_parity(s: StrataStructure, n: NodalData,
                         provenance: str = "caller-asserted") -> ComponentReport:
    """Components of the residual structure read off the parity signature.

    Simple connectivity of ``s`` is a precondition that is not re-checked;
    ``provenance`` records who vouches for it.
    """
    report = separating_blocks(s, n)
    if not s.indices:
        return ComponentReport(len(report.blocks), 0, (), {}, provenance)
    i0 = min(s.indices)
    colorings = []
    for B in report.separating:
        col = block_parity_coloring(s, B, i0)
        if isinstance(col, Inconsistent):
            raise ParityInconsistent(f"edge {list(col.edge)} breaks the parity of a separating block")
        colorings.append(col)
    signature = {i: tuple(c.side[i] for c in colorings) for i in s.indices}
    fibres = {}
    for i in s.indices:
        fibres.setdefault(signature[i], []).append(i)
    comps = tuple(sorted(tuple(sorted(v)) for v in fibres.values()))
    return ComponentReport(len(report.blocks), len(report.separating), comps, signature, provenance)


def components_by_search(residual: StrataStructure) -> tuple:
    """Plain graph search over the residual dual graph (the independent check)."""
    return tuple(tuple(c) for c in connected_components(residual))


def odd_class_witness(s: StrataStructure, block, i0: int, j: int) -> KPath | None:
    """A 1-path from i0 to j crossing ``block`` exactly once, or None if j is even.

    Built by splicing two block-avoiding walks around one block edge.
    """
    col = block_parity_coloring(s, block, i0)
    if isinstance(col, Inconsistent) or col.side[j] == EVEN:
        return None
    block = col.block
    free_edges = {J for J in s.level(2) if J not in block}
    for a, b in sorted(block):
        if col.side[a] == ODD:
            a, b = b, a
        head = bfs_path(s, i0, a, free_edges)
        tail = bfs_path(s, b, j, free_edges)
        if head is not None and tail is not None:
            return KPath.of_vertices(head + tail)
    return None
