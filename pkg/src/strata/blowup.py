"""Combinatorial standard blow-ups of strata structures.

Blowing up a center Y replaces H by

    (H minus Z) union { J + {new} : J in B }

where Z holds the strata swallowed by Y and B the strata whose closure meets Y
without being contained in it.  Centers are either a general point inside an
open stratum, the closure of a stratum E_J, or an explicit (Z, B) pair for
geometric situations the combinatorics cannot infer on its own.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .core import (StrataStructure, closure, is_one_connected, sorted_strata,
                   stratum, subsets)
from .errors import InputError, InvalidCenter


@dataclass(frozen=True)
class FreePoint:
    """A general closed point of the open stratum S_host."""

    host: tuple

    def __post_init__(self):
        object.__setattr__(self, "host", stratum(self.host))

    def __str__(self):
        return "P[" + ",".join(map(str, self.host)) + "]"


@dataclass(frozen=True)
class StratumCenter:
    """The closed stratum E_core, with at least two components in core."""

    core: tuple

    def __post_init__(self):
        object.__setattr__(self, "core", stratum(self.core))

    def __str__(self):
        return "S[" + ",".join(map(str, self.core)) + "]"


@dataclass(frozen=True)
class ExplicitCenter:
    """Caller-supplied Z and B sets, checked against the structural constraints."""

    z_set: frozenset
    b_set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "z_set", frozenset(stratum(J) for J in self.z_set))
        object.__setattr__(self, "b_set", frozenset(stratum(J) for J in self.b_set))

    def __str__(self):
        return "X"


_CENTER_RE = re.compile(r"^\s*([PS])\s*\[\s*([0-9,\s]*)\]\s*$")


def parse_center(spec: str):
    """Parse ``P[...]`` / ``S[...]`` into a center object."""
    m = _CENTER_RE.match(spec)
    if not m:
        raise InputError(f"bad center spec {spec!r}; expected P[i,...] or S[i,...]")
    body = m.group(2).strip()
    members = [int(x) for x in body.split(",") if x.strip()] if body else []
    return FreePoint(members) if m.group(1) == "P" else StratumCenter(members)


def parse_centers(specs: str) -> list:
    return [parse_center(p) for p in specs.split(";") if p.strip()]


@dataclass(frozen=True)
class CenterData:
    z_set: frozenset
    b_set: frozenset
    a_set: frozenset
    case: str  # "a", "b" or "c"

    def a_structure(self, dimension: int) -> StrataStructure:
        """A_Y as a strata structure over its own singletons."""
        return StrataStructure.create(dimension, self.a_set)


@dataclass(frozen=True)
class BlowupOutcome:
    center: object
    new_structure: StrataStructure
    fresh_index: int
    z_set: frozenset
    b_set: frozenset
    a_set: frozenset
    case: str


@dataclass(frozen=True)
class BlowupTrace:
    dimension: int
    steps: tuple  # (center, outcome) pairs
    initial: StrataStructure

    @property
    def final(self) -> StrataStructure:
        return self.steps[-1][1].new_structure if self.steps else self.initial

    def structures(self) -> list:
        """Every structure along the trace, the starting germ included."""
        return [self.initial] + [o.new_structure for _, o in self.steps]

    @property
    def centers(self) -> list:
        return [c for c, _ in self.steps]


def _case_from_z(z_set) -> str:
    sizes = {len(J) for J in z_set if len(J) <= 3}
    if 2 in sizes:
        return "c"
    if 3 in sizes:
        return "b"
    return "a"


def compute_center_data(s: StrataStructure, c) -> CenterData:
    if isinstance(c, FreePoint):
        J = c.host
        if J not in s:
            raise InvalidCenter(f"host {list(J)} is not a stratum")
        if len(J) >= s.dimension:
            raise InvalidCenter(f"host {list(J)} is a point stratum; blow it up as S{list(J)}")
        b = frozenset(stratum(K) for K in subsets(J))
        return CenterData(frozenset(), b, frozenset(K for K in b if len(K) <= 2), "a")

    if isinstance(c, StratumCenter):
        J0 = c.core
        if len(J0) < 2:
            raise InvalidCenter(f"stratum center {list(J0)} needs at least two components")
        if J0 not in s:
            raise InvalidCenter(f"core {list(J0)} is not a stratum")
        z = closure(s, [J0])
        b = frozenset(J for J in s.strata if J not in z and stratum(J + J0) in s)
        a = frozenset(K for K in s.strata if len(K) <= 2 and stratum(K + J0) in s)
        case = {2: "c", 3: "b"}.get(len(J0), "a")
        return CenterData(z, b, a, case)

    if isinstance(c, ExplicitCenter):
        z, b = c.z_set, c.b_set
        for J in z | b:
            if J not in s:
                raise InvalidCenter(f"{list(J)} is not a stratum")
        if z & b:
            raise InvalidCenter("Z and B overlap")
        if () not in b:
            raise InvalidCenter("B must contain the empty stratum")
        if closure(s, z) != z:
            raise InvalidCenter("Z is not closed under taking larger strata")
        for J in b:
            if any(stratum(K) not in b for K in subsets(J, proper=True)):
                raise InvalidCenter(f"B is not closed under subsets at {list(J)}")
            if len(J) >= s.dimension:
                raise InvalidCenter(f"{list(J)} in B leaves no room for the exceptional divisor")
        a = frozenset(J for J in z | b if len(J) <= 2)
        if not is_one_connected(StrataStructure.create(s.dimension, a)):
            raise InvalidCenter("A_Y is not 1-connected")
        return CenterData(z, b, a, _case_from_z(z))

    raise InvalidCenter(f"unsupported center {c!r}")


def apply_blowup(s: StrataStructure, c) -> BlowupOutcome:
    data = compute_center_data(s, c)
    fresh = max(s.indices) + 1 if s.indices else 0
    kept = [J for J in s.strata if J not in data.z_set]
    added = []
    for J in data.b_set:
        K = J + (fresh,)
        # |J| < |J ∪ J0| <= d for stratum centers, |J| < d by the host check otherwise
        assert len(K) <= s.dimension, f"{K} exceeds dimension {s.dimension}"
        added.append(K)
    new = StrataStructure(s.dimension, s.indices + (fresh,), tuple(sorted_strata(kept + added)))
    return BlowupOutcome(c, new, fresh, data.z_set, data.b_set, data.a_set, data.case)


def blowup_sequence(d: int, centers) -> BlowupTrace:
    """Apply ``centers`` in order, starting from the bare germ of dimension ``d``."""
    if d < 1:
        raise InvalidCenter("dimension must be positive")
    s = StrataStructure.bare_germ(d)
    initial = s
    steps = []
    for t, c in enumerate(centers):
        if isinstance(c, str):
            c = parse_center(c)
        origin = isinstance(c, FreePoint) and c.host == ()
        if t == 0 and not origin:
            raise InvalidCenter("the first center must be the origin P[]", step=t)
        if t > 0 and origin:
            raise InvalidCenter("P[] after the first step would disconnect the divisor", step=t)
        try:
            out = apply_blowup(s, c)
        except InvalidCenter as exc:
            raise InvalidCenter(str(exc), step=t) from None
        steps.append((c, out))
        s = out.new_structure
    return BlowupTrace(d, tuple(steps), initial)


def candidate_centers(s: StrataStructure) -> list:
    """Every FreePoint (nonempty host) and StratumCenter valid for ``s``."""
    out = [FreePoint(J) for J in s.strata if 1 <= len(J) < s.dimension]
    out += [StratumCenter(J) for J in s.strata if len(J) >= 2]
    return out


def random_sequence(d: int, n_blowups: int, seed: int) -> BlowupTrace:
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if n_blowups < 1:
        raise ValueError("at least one blow-up is required")
    rng = random.Random(seed)
    initial = StrataStructure.bare_germ(d)
    out = apply_blowup(initial, FreePoint(()))
    steps = [(out.center, out)]
    for _ in range(n_blowups - 1):
        c = rng.choice(candidate_centers(out.new_structure))
        out = apply_blowup(out.new_structure, c)
        steps.append((c, out))
    return BlowupTrace(d, tuple(steps), initial)
