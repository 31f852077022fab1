"""Seeded random instances: blow-up traces, residue models and separatrix annotations."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .blowup import BlowupTrace, random_sequence
from .core import StrataStructure
from .foliation import DEFAULT_SYMBOLS, ResidueModel, random_model
from .nodal import separating_blocks
from .parity import components_by_search
from .separatrix import FoliatedModel, TraceComponent

DIMENSIONS = (2, 3, 4)


@dataclass(frozen=True)
class Instance:
    seed: int
    trace: BlowupTrace
    residues: ResidueModel

    @property
    def structure(self) -> StrataStructure:
        return self.trace.final


def instance_seed(base: int, k: int) -> int:
    return base * 1_000_003 + k


def random_instance(seed: int, dims=DIMENSIONS, max_blowups: int = 8) -> Instance:
    rng = random.Random(seed)
    d = rng.choice(tuple(dims))
    n = rng.randint(1, max_blowups)
    trace = random_sequence(d, n, rng.randrange(2**32))
    return Instance(seed, trace, random_model(trace.final.indices, rng, DEFAULT_SYMBOLS))


def corpus(count: int, seed: int, dims=DIMENSIONS, max_blowups: int = 8) -> list:
    return [random_instance(instance_seed(seed, k), dims, max_blowups) for k in range(count)]


def attach_separatrices(s: StrataStructure, residues: ResidueModel, rng: random.Random,
                        drop: int = 0) -> FoliatedModel:
    """One separatrix of one or two trace pieces inside every component of the residual.

    ``drop`` removes that many separatrices (chosen at random), which is how
    the failing side of the coverage check gets exercised.
    """
    base = FoliatedModel.from_residues(s, residues)
    comps = components_by_search(separating_blocks(s, base.nodal).residual)
    groups = []
    for comp in comps:
        pieces = rng.randint(1, 2)
        groups.append([rng.choice(comp) for _ in range(pieces)])
    for _ in range(min(drop, len(groups))):
        groups.pop(rng.randrange(len(groups)))
    traces, k = [], 0
    for hosts in groups:
        ids = [f"t{k + m}" for m in range(len(hosts))]
        k += len(hosts)
        for m, h in enumerate(hosts):
            adj = {ids[x] for x in (m - 1, m + 1) if 0 <= x < len(ids)}
            traces.append(TraceComponent(ids[m], h, frozenset(adj)))
    return FoliatedModel(s, base.nodal, residues, tuple(traces))
