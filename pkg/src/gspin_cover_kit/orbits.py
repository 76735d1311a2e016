"""Orthogonal partitions of 2n+1 and the combinatorics attached to them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

from .localfield import FieldElement, LocalField
from .rootdata import BoundExceeded, Root, TorusElement, Basis, positive_roots, root_character

ORBIT_BOUND = 12


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class OrthogonalPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise PartitionError("parts must be positive")
        if sum(parts) % 2 == 0:
            raise PartitionError(f"{parts} does not partition an odd number")
        for part, mult in Counter(parts).items():
            if part % 2 == 0 and mult % 2:
                raise PartitionError(f"even part {part} occurs {mult} times")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return (self.total - 1) // 2

    def __str__(self):
        out = []
        for part, mult in sorted(Counter(self.parts).items(), reverse=True):
            out.append(f"{part}^{mult}" if mult > 1 else str(part))
        return "(" + " ".join(out) + ")"

    @classmethod
    def parse(cls, text: str) -> OrthogonalPartition:
        """Accepts "3,1,1", "3 1 1" or exponent form "3 1^2"."""
        parts = []
        for tok in text.replace(",", " ").replace("(", " ").replace(")", " ").split():
            base, _, mult = tok.partition("^")
            parts.extend([int(base)] * (int(mult) if mult else 1))
        return cls(tuple(parts))


def is_admissible(parts: Sequence[int]) -> bool:
    try:
        OrthogonalPartition(tuple(parts))
        return True
    except PartitionError:
        return False


def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def enumerate_orbits(n: int, bound: int = ORBIT_BOUND) -> list[OrthogonalPartition]:
    if n < 0:
        raise PartitionError("rank must be non-negative")
    if n > bound:
        raise BoundExceeded(f"orbit enumeration limited to n <= {bound}, got n={n}")
    return [OrthogonalPartition(p) for p in _partitions(2 * n + 1, 2 * n + 1) if is_admissible(p)]


def _same_total(O: OrthogonalPartition, O2: OrthogonalPartition):
    if O.total != O2.total:
        raise PartitionError(f"cannot compare partitions of {O.total} and {O2.total}")


def dominates(O: OrthogonalPartition, O2: OrthogonalPartition) -> bool:
    """Prefix-sum dominance O >= O2."""
    _same_total(O, O2)
    m = min(len(O.parts), len(O2.parts))
    s, s2 = list(accumulate(O.parts)), list(accumulate(O2.parts))
    return all(s[l] >= s2[l] for l in range(m))


def gtorncw(O: OrthogonalPartition, O2: OrthogonalPartition) -> bool:
    """O is strictly greater than O2 or not comparable to it."""
    if dominates(O, O2):
        return O != O2
    return not dominates(O2, O)


def O0(n: int) -> OrthogonalPartition:
    if n < 1:
        raise PartitionError("O0 needs n >= 1")
    return OrthogonalPartition((2,) * n + (1,)) if n % 2 == 0 else OrthogonalPartition((2,) * (n - 1) + (1, 1, 1))


def O1(n: int) -> OrthogonalPartition:
    if n < 1:
        raise PartitionError("O1 needs n >= 1")
    return OrthogonalPartition((3,) + (1,) * (2 * n - 2))


@dataclass
class ReductionReport:
    n: int
    holds: bool
    above_O0: list[OrthogonalPartition]
    counterexample: OrthogonalPartition | None = None


def check_reduction(n: int) -> ReductionReport:
    """Every O with O gtorncw O0 satisfies O >= O1."""
    lo, hi = O0(n), O1(n)
    above = [O for O in enumerate_orbits(n) if gtorncw(O, lo)]
    bad = next((O for O in above if not dominates(O, hi)), None)
    return ReductionReport(n, bad is None, above, bad)


def hasse_edges(n: int) -> list[tuple[OrthogonalPartition, OrthogonalPartition]]:
    """Covering relations of the dominance order (upper, lower)."""
    orbits = enumerate_orbits(n)
    less = {(a, b) for a in orbits for b in orbits if a != b and dominates(a, b)}
    edges = []
    for a, b in less:
        if not any((a, c) in less and (c, b) in less for c in orbits):
            edges.append((a, b))
    return sorted(edges, key=lambda e: (e[0].parts, e[1].parts), reverse=True)


# -- weights and V_O -------------------------------------------------------------


def weight_multiset(O: OrthogonalPartition) -> list[int]:
    return sorted((r - 2 * j + 1 for r in O.parts for j in range(1, r + 1)), reverse=True)


def h_orbit(O: OrthogonalPartition) -> tuple[int, ...]:
    weights = tuple(weight_multiset(O)[: O.n])
    assert all(w >= 0 for w in weights), weights
    return weights


def j_alpha(O: OrthogonalPartition, alpha: Root) -> int:
    l = h_orbit(O)
    alpha.check(O.n)
    i, j = alpha.i - 1, alpha.j - 1
    if alpha.kind == "diff":
        return l[i - 1] - l[j - 1]
    if alpha.kind == "sum":
        return l[i - 1] + l[j - 1]
    return l[i - 1]


def j_alpha_via_pairing(O: OrthogonalPartition, alpha: Root) -> int:
    """Same weight computed by evaluating alpha on the cocharacter sum_i l_i eta_i^vee."""
    n = O.n
    l = h_orbit(O)
    # pi^{l_i} in each GL coordinate; the valuation of alpha(h) is the weight
    t = TorusElement.convenient([FieldElement(x, 0) for x in l], FieldElement(0, 0)).to(Basis.ALPHA)
    return root_character(alpha, t).v


def v_orbit(O: OrthogonalPartition) -> list[Root]:
    return [a for a in positive_roots(O.n) if j_alpha(O, a) >= 2]


def u1_roots(n: int) -> list[Root]:
    """Roots of the unipotent radical of the parabolic with Levi GL_1 x G_{n-1}: those involving e_2."""
    return [a for a in positive_roots(n) if a.i == 2]


# -- generic stabilizers ----------------------------------------------------------


def generic_stabilizer_type(o: int, e: int, m: int) -> str:
    """Lie type of the generic stabilizer for the shape (3^o 2^e 1^{m-o-e})."""
    if e % 2:
        raise PartitionError("e must be even")
    if min(o, e, m) < 0 or o + e > m:
        raise PartitionError(f"inconsistent shape o={o}, e={e}, m={m}")
    if o % 2:
        factors = [("B", (o - 1) // 2), ("C", e // 2), ("D", (m - o - e) // 2)]
    else:
        factors = [("D", o // 2), ("C", e // 2), ("D", (m - o - e - 1) // 2)]
    out = []
    for kind, rank in factors:
        if rank <= 0:
            continue
        out.append("D1 (torus GL1)" if (kind, rank) == ("D", 1) else f"{kind}{rank}")
    return " x ".join(out) if out else "trivial"


# -- length form ------------------------------------------------------------------


@dataclass(frozen=True)
class LengthValue:
    is_zero: bool
    value: Fraction
    square_class: FieldElement | None


def length_form(b: Sequence, F: LocalField | None = None) -> LengthValue:
    """l(b) = sum_i b_i b_{l+1-i} on exact rationals, with the square class of a nonzero value."""
    xs = [Fraction(x) for x in b]
    total = sum((xs[i] * xs[-1 - i] for i in range(len(xs))), Fraction(0))
    if total == 0:
        return LengthValue(True, total, None)
    return LengthValue(False, total, F.from_rational(total) if F is not None else None)
