"""Local control invariants of a hypersurface against a normal-crossings divisor.

The input is the cotangent subspace orthogonal to the strict tangent space,
given by spanning rows in coordinates where the divisor is x_1 ... x_e = 0.
Everything is exact rational elimination; the multiplicity is supplied by
the caller.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import IndexOutOfRange, InputError, UnclassifiedTSequence
from .linalg import rational_rank

SIMPLE_THRESHOLD = (1, 2, 0)


@dataclass(frozen=True)
class CovectorSpace:
    n: int
    e: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        if not 1 <= self.e <= self.n:
            raise InputError(f"need 1 <= e <= n, got e={self.e}, n={self.n}")
        if any(len(r) != self.n for r in rows):
            raise InputError(f"every row must have {self.n} entries")
        object.__setattr__(self, "rows", rows)

    @property
    def rank(self) -> int:
        return rational_rank(self.rows)

    @property
    def d(self) -> int:
        """Dimension of the strict tangent space."""
        return self.n - self.rank


def _coordinate_rows(n: int, J) -> list:
    return [[1 if c == j - 1 else 0 for c in range(n)] for j in sorted(J)]


def t_value(u: CovectorSpace, J) -> int:
    """dim(rowspan(u) ∩ span{dx_j : j in J}); J is 1-based inside {1..e}."""
    J = set(J)
    for j in J:
        if not 1 <= j <= u.e:
            raise IndexOutOfRange(f"{j} is outside 1..{u.e}")
    if not J:
        return 0
    coords = _coordinate_rows(u.n, J)
    return u.rank + len(J) - rational_rank(list(u.rows) + coords)


def t_sequence(u: CovectorSpace) -> tuple:
    """Lexicographically largest t-sequence over all maximal chains, and one realising chain.

    A chain {1..e} = J_1 ⊋ J_2 ⊋ ... ⊋ J_e is encoded by the order in which
    indices are dropped; all e! chains are tried.
    """
    best, best_chain = None, None
    full = tuple(range(1, u.e + 1))
    for order in permutations(full):
        chain = [tuple(sorted(set(full) - set(order[:k]))) for k in range(u.e)]
        seq = tuple(t_value(u, J) for J in chain)
        if best is None or seq > best:
            best, best_chain = seq, tuple(chain)
    return best, best_chain


def theta(u: CovectorSpace) -> int:
    return t_value(u, range(1, u.e + 1))


def zeta(u: CovectorSpace) -> int:
    d = u.d
    if d <= 1:
        return 0
    t, _ = t_sequence(u)
    if d == 2:
        if t[0] == 0:
            return 0
        if u.e == 3 and t == (1, 0, 0):
            return 1
        if u.e >= 2 and t in ((1, 0), (1, 1, 0)):
            return 2
        if u.e >= 2 and t in ((1, 1), (1, 1, 1)):
            return 3
    raise UnclassifiedTSequence(f"no zeta value for d={d}, e={u.e}, t={t}")


@dataclass(frozen=True, order=True)
class ControlInvariant:
    nu: int
    d: int
    zeta: int

    def as_tuple(self) -> tuple:
        return (self.nu, self.d, self.zeta)

    @property
    def locally_simple(self) -> bool:
        return self.as_tuple() <= SIMPLE_THRESHOLD


def control_invariant(u: CovectorSpace, nu: int) -> ControlInvariant:
    if nu < 0:
        raise InputError("multiplicity must be nonnegative")
    if nu == 0:
        return ControlInvariant(0, 0, 0)
    return ControlInvariant(nu, u.d, zeta(u))


def compare_invariants(a, b) -> int:
    """-1, 0 or 1 in the lexicographic order."""
    a = a.as_tuple() if isinstance(a, ControlInvariant) else tuple(a)
    b = b.as_tuple() if isinstance(b, ControlInvariant) else tuple(b)
    return (a > b) - (a < b)
