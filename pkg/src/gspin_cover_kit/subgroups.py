"""Distinguished subgroups of the covered torus at square-class resolution."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

import numpy as np

from .covertorus import commutator
from .localfield import ONE, FieldElement, LocalField
from .rootdata import Basis, BoundExceeded, TorusElement

Predicate = Callable[[TorusElement], bool]

MAX_UNIVERSE = 4096


class Tag(enum.Enum):
    T2 = "T2"
    TM = "TM"
    CENTER_TORUS = "CENTER_TORUS"
    CENTER_GROUP = "CENTER_GROUP"
    CENTRALIZER_K = "CENTRALIZER_K"


def _a(t: TorusElement) -> tuple[FieldElement, ...]:
    return t.to(Basis.CONVENIENT).a


def _same_class(x: FieldElement, y: FieldElement) -> bool:
    return (x / y).is_square()


def in_T2(t: TorusElement) -> bool:
    return all(x.is_square() for x in _a(t))


def in_Tm(t: TorusElement) -> bool:
    a = _a(t)
    n = len(a)
    # pairs (a_{n-2i-1}, a_{n-2i}) with 1-based indices
    return all(_same_class(a[n - 2 * i - 2], a[n - 2 * i - 1]) for i in range(n // 2))


def center_torus_membership(t: TorusElement) -> bool:
    a = _a(t)
    if not a:
        return True
    if len(a) % 2 == 0:
        return all(x.is_square() for x in a)
    return all(_same_class(x, a[0]) for x in a)


def center_group_membership(t: TorusElement) -> bool:
    """Image of beta_1^vee for k = n: every GL coordinate a_i is trivial."""
    return all(x == ONE for x in _a(t))


def centralizer_K_membership(t: TorusElement) -> bool:
    """Centralizer of the unit torus: a_i in O* F*^2 and d in O* (F*)^{2/gcd(2,n+1)}."""
    a = _a(t)
    if not a:
        return True
    if len(a) % 2 == 0:
        return all(x.v % 2 == 0 for x in a)
    return all((x.v - a[0].v) % 2 == 0 for x in a)


PREDICATES: dict[Tag, Predicate] = {
    Tag.T2: in_T2,
    Tag.TM: in_Tm,
    Tag.CENTER_TORUS: center_torus_membership,
    Tag.CENTER_GROUP: center_group_membership,
    Tag.CENTRALIZER_K: centralizer_K_membership,
}


@dataclass(frozen=True)
class SubgroupSpec:
    tag: Tag
    n: int
    field: LocalField

    def contains(self, t: TorusElement) -> bool:
        if t.n != self.n:
            raise ValueError("rank mismatch")
        return PREDICATES[self.tag](t)

    def members(self, valuations=(0, 1)) -> list[TorusElement]:
        return [t for t in torus_universe(self.field, self.n, valuations) if self.contains(t)]


def torus_universe(F: LocalField, n: int, valuations=(0, 1)) -> list[TorusElement]:
    """All torus elements (CONVENIENT basis) with coordinates in the given valuations."""
    vals = F.elements(valuations)
    if len(vals) ** (n + 1) > MAX_UNIVERSE:
        raise BoundExceeded(f"torus universe of size {len(vals) ** (n + 1)} exceeds {MAX_UNIVERSE}")
    return [TorusElement(c, Basis.CONVENIENT) for c in product(vals, repeat=n + 1)]


def unit_torus(F: LocalField, n: int) -> list[TorusElement]:
    """Model of the compact torus T(O): all coordinates of valuation zero."""
    return [t for t in torus_universe(F, n, (0,)) if all(x.v == 0 for x in t.coords)]


# -- vectorized commutator -------------------------------------------------


def _hilbert_table(F: LocalField) -> np.ndarray:
    if F.is_real:
        reps = [FieldElement(0, c) for c in (0, 1)]
    else:
        reps = [FieldElement(k >> 1, k & 1) for k in range(4)]
    return np.array([[F.hilbert(x, y) for y in reps] for x in reps], dtype=np.int8)


def _codes(F: LocalField, elems: Iterable[TorusElement]) -> np.ndarray:
    rows = [[x.c if F.is_real else x.code for x in _a(t)] for t in elems]
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1)


def commutator_matrix(F: LocalField, left: list[TorusElement], right: list[TorusElement]) -> np.ndarray:
    """M[i, j] = [left_i, right_j]_sigma, computed from square-class codes."""
    H = _hilbert_table(F)
    A, B = _codes(F, left), _codes(F, right)
    M = np.ones((len(left), len(right)), dtype=np.int8)
    if A.shape[1] == 0:
        return M
    for i in range(A.shape[1]):
        M *= H[A[:, i][:, None], B[:, i][None, :]]
    detA = np.bitwise_xor.reduce(A, axis=1)
    detB = np.bitwise_xor.reduce(B, axis=1)
    M *= H[detA[:, None], detB[None, :]]
    return M


def brute_centralizer(F: LocalField, S: list[TorusElement], n: int, valuations=(0, 1)) -> list[TorusElement]:
    """Elements of the bounded square-class torus commuting (in the cover) with all of S."""
    U = torus_universe(F, n, valuations)
    if not S:
        return U
    M = commutator_matrix(F, U, S)
    keep = np.all(M == 1, axis=1)
    return [t for t, k in zip(U, keep) if k]


@dataclass
class AbelianReport:
    abelian: bool
    maximal: bool
    members: int
    universe: int
    extension_witness: list | None = None

    @property
    def maximal_abelian(self) -> bool:
        return self.abelian and self.maximal


def is_maximal_abelian(F: LocalField, predicate: Predicate, n: int, valuations=(0, 1)) -> AbelianReport:
    """Decide maximality by searching for a commuting non-member."""
    U = torus_universe(F, n, valuations)
    members = [t for t in U if predicate(t)]
    others = [t for t in U if not predicate(t)]
    abelian = bool(np.all(commutator_matrix(F, members, members) == 1)) if members else True
    witness = None
    if others and members:
        commuting = np.all(commutator_matrix(F, others, members) == 1, axis=1)
        hits = np.flatnonzero(commuting)
        if len(hits):
            witness = others[int(hits[0])].tokens()
    elif others:
        witness = others[0].tokens()
    return AbelianReport(abelian, witness is None, len(members), len(U), witness)


def index_in_torus(F: LocalField, tag: Tag, n: int) -> int:
    """[T : H] at square-class resolution, as a count ratio over one period of valuations."""
    U = torus_universe(F, n, (0, 1))
    inside = sum(1 for t in U if PREDICATES[tag](t))
    return len(U) // inside


def scalar_commutator_matrix(F: LocalField, left, right) -> np.ndarray:
    return np.array([[commutator(F, x, y) for y in right] for x in left], dtype=np.int8)
