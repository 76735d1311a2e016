from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gspin_cover_kit import orbits as orb
from gspin_cover_kit.localfield import FieldElement, LocalField
from gspin_cover_kit.orbits import OrthogonalPartition as P
from gspin_cover_kit.orbits import PartitionError
from gspin_cover_kit.rootdata import BoundExceeded, Root, positive_roots


def parts(n):
    return {O.parts for O in orb.enumerate_orbits(n)}


def _brute_orthogonal(total):
    # all partitions of total, filtered by the parity rule, built independently of the library
    def gen(rest, top):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, top), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail

    out = set()
    for p in gen(total, total):
        if all(p.count(k) % 2 == 0 for k in set(p) if k % 2 == 0):
            out.add(p)
    return out


def test_enumeration_examples():
    assert parts(0) == {(1,)}
    assert parts(1) == {(3,), (1, 1, 1)}
    assert parts(2) == {(5,), (3, 1, 1), (2, 2, 1), (1, 1, 1, 1, 1)}


@pytest.mark.parametrize("n", range(0, 7))
def test_enumeration_matches_brute_force(n):
    assert parts(n) == _brute_orthogonal(2 * n + 1)


def test_partition_validation():
    for bad in [(4, 1), (3, 2), (2, 1, 1, 1), (2, 2), (0, 3)]:
        with pytest.raises(PartitionError):
            P(bad)
    assert orb.is_admissible((2, 2, 1)) and not orb.is_admissible((2, 1))
    assert P.parse("3 1^2") == P((3, 1, 1)) == P.parse("3,1,1") == P.parse("(1 1 3)")
    assert str(P((3, 1, 1))) == "(3 1^2)"
    with pytest.raises(BoundExceeded):
        orb.enumerate_orbits(13)


def test_dominance_examples():
    assert orb.dominates(P((5,)), P((3, 1, 1)))
    assert orb.dominates(P((3, 1, 1)), P((2, 2, 1)))
    O = P((2, 2, 1))
    assert not orb.gtorncw(O, O)
    with pytest.raises(PartitionError):
        orb.dominates(P((3,)), P((5,)))


@pytest.mark.parametrize("n", range(1, 6))
def test_dominance_is_partial_order(n):
    Os = orb.enumerate_orbits(n)
    for a in Os:
        assert orb.dominates(a, a)
        for b in Os:
            if a != b and orb.dominates(a, b):
                assert not orb.dominates(b, a)
            for c in Os:
                if orb.dominates(a, b) and orb.dominates(b, c):
                    assert orb.dominates(a, c)


def test_distinguished_orbits():
    assert orb.O0(2) == P((2, 2, 1))
    assert orb.O0(3) == P((2, 2, 1, 1, 1))
    assert orb.O1(2) == P((3, 1, 1))
    with pytest.raises(PartitionError):
        orb.O0(0)


@pytest.mark.parametrize("n", range(1, 7))
def test_reduction(n):
    rep = orb.check_reduction(n)
    assert rep.holds and rep.counterexample is None
    assert orb.O1(n) in rep.above_O0


def test_reduction_witnesses_n2():
    assert set(orb.check_reduction(2).above_O0) == {P((5,)), P((3, 1, 1))}


def test_hasse_edges_n2():
    edges = {(a.parts, b.parts) for a, b in orb.hasse_edges(2)}
    assert edges == {((5,), (3, 1, 1)), ((3, 1, 1), (2, 2, 1)), ((2, 2, 1), (1, 1, 1, 1, 1))}


def test_weights():
    assert orb.h_orbit(P((3, 1, 1))) == (2, 0)
    assert orb.h_orbit(P((2, 2, 1))) == (1, 1)
    assert orb.h_orbit(P((5,))) == (4, 2)
    assert sorted(orb.weight_multiset(P((3, 1, 1)))) == [-2, 0, 0, 0, 2]


def test_v_orbit_examples():
    O = P((2, 2, 1))
    j = {str(a): orb.j_alpha(O, a) for a in positive_roots(2)}
    assert j == {"e2-e3": 0, "e2+e3": 2, "e2": 1, "e3": 1}
    assert orb.v_orbit(O) == [Root("sum", 2, 3)]
    assert orb.v_orbit(P((1,) * 7)) == []


@pytest.mark.parametrize("n", range(2, 7))
def test_v_orbit_of_O1_is_U1(n):
    assert set(orb.v_orbit(orb.O1(n))) == set(orb.u1_roots(n))


@pytest.mark.parametrize("n", range(1, 5))
def test_weights_via_pairing(n):
    for O in orb.enumerate_orbits(n):
        for a in positive_roots(n):
            assert orb.j_alpha(O, a) == orb.j_alpha_via_pairing(O, a)


def test_stabilizer_types():
    n = 4
    assert orb.generic_stabilizer_type(1, 0, 2 * n - 1) == "D3"
    assert orb.generic_stabilizer_type(2, 0, 2) == "D1 (torus GL1)"
    assert orb.generic_stabilizer_type(1, 2, 3) == "C1"
    assert orb.generic_stabilizer_type(0, 0, 0) == "trivial"
    with pytest.raises(PartitionError):
        orb.generic_stabilizer_type(1, 1, 3)
    with pytest.raises(PartitionError):
        orb.generic_stabilizer_type(3, 0, 2)


def test_length_form():
    assert orb.length_form([1, 0, 1]).value == 2
    z = orb.length_form([1, 0, 0])
    assert z.is_zero and z.square_class is None
    F = LocalField(3)
    v = orb.length_form([Fraction(1, 2), 3, 1], F)
    assert v.value == Fraction(10)
    assert v.square_class == FieldElement(0, 0)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_length_form_is_symmetric_under_reversal(b):
    assert orb.length_form(b).value == orb.length_form(list(reversed(b))).value
