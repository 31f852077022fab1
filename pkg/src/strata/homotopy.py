"""Bounded search for sequences of elementary homotopies between 1-paths.

Paths are handled as tuples of vertex indices.  The three local rewrites are a
backtrack ``(a, b, a) <-> (a)`` and a triangle exchange ``(a, b) <-> (a, c, b)``
over a 3-stratum ``{a, b, c}``; the identity rewrite never needs to be
explored.  The word problem is undecidable in general, so the search is a
bidirectional breadth-first search capped by the number of expanded paths.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .core import KPath, StrataStructure, is_k_path, stratum
from .errors import EndpointMismatch, NotAPath

DEFAULT_BUDGET = 100_000

INSERT_BACKTRACK = "insert_backtrack"
REMOVE_BACKTRACK = "remove_backtrack"
EXPAND_TRIANGLE = "expand_triangle"
CONTRACT_TRIANGLE = "contract_triangle"


def default_budget(fallback: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("STRATA_BUDGET")
    return int(raw) if raw else fallback


class Move(NamedTuple):
    """One rewrite at ``position`` (index of the first untouched entry).

    ``vertex`` is the inserted vertex for the two growing moves and ``None``
    for the shrinking ones.
    """

    kind: str
    position: int
    vertex: int | None = None


@dataclass(frozen=True)
class HomotopySearch:
    found: bool
    moves: tuple = ()
    explored: int = 0

    @property
    def status(self) -> str:
        return "equivalent" if self.found else "not_found_within_budget"


class _Complex:
    def __init__(self, s: StrataStructure, allowed):
        self.allowed = allowed
        self.adj = {}
        for a, b in s.level(2):
            if a in allowed and b in allowed:
                self.adj.setdefault(a, set()).add(b)
                self.adj.setdefault(b, set()).add(a)
        self.apex = {}
        for a, b, c in s.level(3):
            if a in allowed and b in allowed and c in allowed:
                for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
                    self.apex.setdefault((x, y), set()).add(z)
                    self.apex.setdefault((y, x), set()).add(z)

    def successors(self, p: tuple):
        n = len(p)
        for t in range(n):
            for v in sorted(self.adj.get(p[t], ())):
                yield Move(INSERT_BACKTRACK, t, v), p[: t + 1] + (v, p[t]) + p[t + 1:]
        for t in range(n - 2):
            if p[t] == p[t + 2]:
                yield Move(REMOVE_BACKTRACK, t), p[: t + 1] + p[t + 3:]
        for t in range(n - 1):
            for c in sorted(self.apex.get((p[t], p[t + 1]), ())):
                yield Move(EXPAND_TRIANGLE, t, c), p[: t + 1] + (c,) + p[t + 1:]
        for t in range(n - 2):
            a, c, b = p[t], p[t + 1], p[t + 2]
            if a != b and c in self.apex.get((a, b), ()):
                yield Move(CONTRACT_TRIANGLE, t), p[: t + 1] + p[t + 2:]


def apply_move(s: StrataStructure, path, move: Move) -> tuple:
    """Apply one move, checking that it is legal in ``s``."""
    p = tuple(path)
    t = move.position
    if move.kind == INSERT_BACKTRACK:
        q = p[: t + 1] + (move.vertex, p[t]) + p[t + 1:]
    elif move.kind == REMOVE_BACKTRACK:
        if p[t] != p[t + 2]:
            raise ValueError(f"no backtrack at position {t} of {p}")
        q = p[: t + 1] + p[t + 3:]
    elif move.kind == EXPAND_TRIANGLE:
        a, b, c = p[t], p[t + 1], move.vertex
        if len({a, b, c}) != 3 or stratum((a, b, c)) not in s:
            raise ValueError(f"no triangle over {(a, b)} with apex {c}")
        q = p[: t + 1] + (c,) + p[t + 1:]
    elif move.kind == CONTRACT_TRIANGLE:
        a, c, b = p[t], p[t + 1], p[t + 2]
        if len({a, b, c}) != 3 or stratum((a, b, c)) not in s:
            raise ValueError(f"no triangle through {(a, c, b)}")
        q = p[: t + 1] + p[t + 2:]
    else:
        raise ValueError(f"unknown move {move.kind!r}")
    if not is_k_path(s, [(v,) for v in q], 1):
        raise ValueError(f"move {move} does not produce a 1-path")
    return q


def replay(s: StrataStructure, path, moves) -> tuple:
    p = tuple(path)
    for m in moves:
        p = apply_move(s, p, m)
    return p


def _inverse(before: tuple, move: Move) -> Move:
    """The move undoing ``move``, expressed on the path it produced."""
    t = move.position
    if move.kind == INSERT_BACKTRACK:
        return Move(REMOVE_BACKTRACK, t)
    if move.kind == REMOVE_BACKTRACK:
        return Move(INSERT_BACKTRACK, t, before[t + 1])
    if move.kind == EXPAND_TRIANGLE:
        return Move(CONTRACT_TRIANGLE, t)
    return Move(EXPAND_TRIANGLE, t, before[t + 1])


def _as_vertices(gamma) -> tuple:
    if isinstance(gamma, KPath):
        if gamma.k != 1:
            raise NotAPath("homotopies act on 1-paths")
        return gamma.vertices()
    out = []
    for v in gamma:
        if isinstance(v, (tuple, list)):
            if len(v) != 1:
                raise NotAPath(f"{v} is not a singleton stratum")
            v = v[0]
        out.append(int(v))
    return tuple(out)


def elementary_homotopy_search(s: StrataStructure, gamma1, gamma2, A=None,
                               budget: int | None = None) -> HomotopySearch:
    """Look for a chain of elementary homotopies turning ``gamma1`` into ``gamma2``.

    ``A`` is the allowed support (singleton strata or bare indices); every
    intermediate path stays inside it.  ``budget`` caps the number of
    expanded paths over both search directions.
    """
    budget = default_budget() if budget is None else budget
    p1, p2 = _as_vertices(gamma1), _as_vertices(gamma2)
    for p in (p1, p2):
        if not is_k_path(s, [(v,) for v in p], 1):
            raise NotAPath(f"{list(p)} is not a 1-path")
    if p1[0] != p2[0] or p1[-1] != p2[-1]:
        raise EndpointMismatch(f"{list(p1)} and {list(p2)} do not join the same strata")
    if A is None:
        allowed = set(s.indices)
    else:
        allowed = {a[0] if isinstance(a, (tuple, list)) else int(a) for a in A}
    if not (set(p1) | set(p2)) <= allowed:
        raise ValueError("path support is not contained in the allowed set")
    if p1 == p2:
        return HomotopySearch(True, (), 0)

    cx = _Complex(s, allowed)
    # parent maps: path -> (previous path, move from previous to this path)
    fwd = {p1: None}
    bwd = {p2: None}
    qf, qb = deque([p1]), deque([p2])
    explored = 0
    while qf and qb and explored < budget:
        forward = len(qf) <= len(qb)
        queue, mine, other = (qf, fwd, bwd) if forward else (qb, bwd, fwd)
        cur = queue.popleft()
        explored += 1
        for move, nxt in cx.successors(cur):
            if nxt in mine:
                continue
            mine[nxt] = (cur, move)
            if nxt in other:
                return HomotopySearch(True, _stitch(fwd, bwd, nxt), explored)
            queue.append(nxt)
    return HomotopySearch(False, (), explored)


def _stitch(fwd: dict, bwd: dict, meet: tuple) -> tuple:
    head = []
    p = meet
    while fwd[p] is not None:
        prev, move = fwd[p]
        head.append(move)
        p = prev
    head.reverse()
    tail = []
    p = meet
    while bwd[p] is not None:
        prev, move = bwd[p]
        # bwd stores prev -> p; we need p -> prev
        tail.append(_inverse(prev, move))
        p = prev
    return tuple(head + tail)
