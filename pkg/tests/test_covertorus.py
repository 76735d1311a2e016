import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gspin_cover_kit import covertorus as ct
from gspin_cover_kit.localfield import ONE, PI, U, FieldElement, LocalField
from gspin_cover_kit.rootdata import (
    Basis,
    BoundExceeded,
    RootError,
    TorusElement,
    coroot_word,
    embed_levi,
    longest_element,
    simple_root,
    w0_conjugate,
)

from strategies import field_elements, ranked_torus_pair, torus_elements

F3 = LocalField(3)
FIELDS = [LocalField(3), LocalField(5), LocalField(7)]


def alpha(*tokens):
    return TorusElement(tuple(FieldElement.parse(s) for s in tokens))


def test_rank_zero_is_trivial():
    for x, y in product(F3.elements((-1, 0, 1, 2)), repeat=2):
        assert ct.sigma_torus(F3, TorusElement((x,)), TorusElement((y,))) == 1


def test_documented_sigma_values():
    t = alpha("1:0", "0:0")  # alpha_1^vee(3)
    assert ct.sigma_torus(F3, t, t) == -1
    assert ct.sigma_torus(F3, alpha("1:1", "0:1"), alpha("1:1", "0:1")) == -1
    sq = alpha("2:0", "0:0", "1:1")
    assert ct.sigma_torus(F3, sq, alpha("1:1", "1:0", "1:1")) == 1


def test_factor_breakdown_multiplies_to_sigma():
    t, t2 = alpha("1:0", "0:1", "1:1"), alpha("0:1", "1:0", "1:1")
    s = 1
    for _, v in ct.sigma_factors(F3, t, t2):
        s *= v
    assert s == ct.sigma_torus(F3, t, t2)
    with pytest.raises(RootError):
        ct.sigma_torus(F3, alpha("0:0"), alpha("0:0", "0:0"))


def test_cover_multiplication():
    t = alpha("1:0", "0:0")
    x = ct.lift(t)
    prod = ct.multiply(F3, x, x)
    assert prod == ct.CoverTorusElement(t * t, -1)
    for t in ct.torus_elements(F3, 2):
        y = ct.lift(t)
        assert ct.multiply(F3, y, ct.inverse(F3, y)) == ct.lift(TorusElement.identity(2))
    zeta = ct.CoverTorusElement(TorusElement.identity(1), -1)
    assert ct.multiply(F3, zeta, x) == ct.multiply(F3, x, zeta)


@pytest.mark.parametrize("F", FIELDS[:2], ids=str)
@pytest.mark.parametrize("n", [0, 1, 2])
def test_closed_form_matches_relation_rewriter(F, n):
    for t, t2 in product(ct.torus_elements(F, n), repeat=2):
        assert ct.sigma_from_relations(F, t, t2) == ct.sigma_torus(F, t, t2)


@given(st.sampled_from(FIELDS), ranked_torus_pair(3))
def test_rewriter_agrees_on_random_valuations(F, data):
    _, t, t2 = data
    assert ct.sigma_from_relations(F, t, t2) == ct.sigma_torus(F, t, t2)


@given(st.sampled_from(FIELDS), st.integers(0, 3).flatmap(lambda n: st.tuples(*[torus_elements(n)] * 3)))
def test_cocycle_identity_property(F, triple):
    a, b, c = triple
    s = lambda x, y: ct.sigma_torus(F, x, y)  # noqa: E731
    assert s(a, b) * s(a * b, c) == s(a, b * c) * s(b, c)


def test_commutator_examples():
    n = 3
    b = TorusElement.convenient([PI, ONE, ONE])
    b2 = TorusElement.convenient([ONE, U, ONE])
    assert ct.commutator(F3, b, b2) == -1
    # squares commute
    for t, t2 in product(ct.torus_elements(F3, 2), repeat=2):
        assert ct.commutator(F3, t * t, t2 * t2) == 1


@given(st.sampled_from(FIELDS), ranked_torus_pair(3, Basis.CONVENIENT))
def test_commutator_formula_property(F, data):
    _, b, b2 = data
    assert ct.commutator(F, b, b2) == ct.sigma_torus(F, b, b2) * ct.sigma_torus(F, b2, b)


def test_sigma_convenient_examples():
    assert ct.sigma_convenient(F3, TorusElement.convenient([PI, ONE]), TorusElement.convenient([ONE, U])) == 1
    assert ct.sigma_convenient(F3, TorusElement.convenient([PI, ONE]), TorusElement.convenient([U, ONE])) == -1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sigma_convenient_on_gl_block(n):
    # the GL_n formula is the restriction of sigma to elements with t1 = 1
    els = F3.elements((0, 1))
    for a, a2 in product(product(els, repeat=n), repeat=2):
        x, y = TorusElement.convenient(a), TorusElement.convenient(a2)
        assert ct.sigma_convenient(F3, x, y) == ct.sigma_torus(F3, x, y)


def test_sigma_mixed_examples():
    F = F3
    for k, n in [(1, 2), (2, 2), (1, 3)]:
        for a in product(F.elements((0, 1)), repeat=k):
            for h in ct.torus_elements(F, n - k):
                first, second = ct.sigma_mixed(F, a, h, k, n)
                assert first == 1
                if k == n:
                    assert second == 1
    h = TorusElement((PI, ONE))
    assert ct.sigma_mixed(F, [U], h, 1, 2) == (1, -1)
    with pytest.raises(RootError):
        ct.sigma_mixed(F, [], h, 3, 2)


def test_block_sigma_center_factor_is_trivial():
    # k = n: the G_0 factor is beta_1^vee(t1), Upsilon = t1^-2, so c(Upsilon(h), .) = 1
    n = 2
    for t1, t1b in product(F3.elements((0, 1)), repeat=2):
        for b, b2 in product(product(F3.elements((0, 1)), repeat=n), repeat=2):
            h, h2 = TorusElement((t1,)), TorusElement((t1b,))
            assert ct.block_sigma(F3, n, b, h, b2, h2, n) == ct.sigma_torus(
                F3, embed_levi(n, b, h, n), embed_levi(n, b2, h2, n)
            )


@given(
    st.sampled_from(FIELDS[:2]),
    st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))),
    st.data(),
)
def test_block_sigma_property(F, nk, data):
    n, k = nk
    b = data.draw(st.lists(field_elements, min_size=k, max_size=k))
    b2 = data.draw(st.lists(field_elements, min_size=k, max_size=k))
    h = data.draw(torus_elements(n - k))
    h2 = data.draw(torus_elements(n - k))
    want = ct.sigma_torus(F, embed_levi(k, b, h, n), embed_levi(k, b2, h2, n))
    assert ct.block_sigma(F, k, b, h, b2, h2, n) == want


def test_split_on_squares():
    # every Hilbert argument is a square, so s restricted to T^2 is a homomorphism
    for n in (1, 2, 3):
        squares = [t * t for t in ct.torus_elements(F3, n)]
        for t, t2 in product(squares[:32], repeat=2):
            assert ct.sigma_torus(F3, t, t2) == 1


# -- Weyl conjugation --------------------------------------------------------


def test_center_fixed_by_simple_conjugation():
    for n in (1, 2, 3):
        for t1 in F3.elements((0, 1)):
            z = TorusElement.convenient([ONE] * n, t1)
            for i in range(2, n + 2):
                assert ct.conjugate_by_simple(F3, i, ct.lift(z)) == ct.lift(z)


def test_short_root_conjugation_example():
    n = 2
    for y in F3.elements((-1, 0, 1, 2)):
        x = ct.lift(coroot_word(simple_root(n + 1, n), y, n))
        got = ct.conjugate_by_simple(F3, n + 1, x)
        assert got == ct.lift(coroot_word(simple_root(n + 1, n), y.inverse(), n))


def test_gl_generator_fixes_g_factor():
    n, k = 3, 2
    for h in ct.torus_elements(F3, n - k):
        t = embed_levi(k, [ONE] * k, h, n)
        for i in range(2, k + 1):
            assert ct.conjugate_by_simple(F3, i, ct.lift(t)) == ct.lift(t)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_conjugation_is_automorphism(n):
    rng = random.Random(n)
    els = ct.torus_elements(F3, n, (-1, 0, 1))
    for _ in range(200):
        x = ct.lift(rng.choice(els), rng.choice((1, -1)))
        y = ct.lift(rng.choice(els), rng.choice((1, -1)))
        i = rng.randrange(2, n + 2)
        lhs = ct.conjugate_by_simple(F3, i, ct.multiply(F3, x, y))
        rhs = ct.multiply(F3, ct.conjugate_by_simple(F3, i, x), ct.conjugate_by_simple(F3, i, y))
        assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_w0_word_conjugation_matches_coordinates(n):
    word = longest_element(n).reduced_word()
    for t in ct.torus_elements(F3, n):
        got = ct.conjugate_by_word(F3, word, ct.lift(t))
        assert got.t == w0_conjugate(t)


def test_conjugation_rejects_bad_index():
    with pytest.raises(RootError):
        ct.conjugate_by_simple(F3, 1, ct.lift(TorusElement.identity(2)))


# -- exhaustive verification -------------------------------------------------------


def test_verify_cocycle_examples():
    assert ct.verify_cocycle(LocalField(3), 1).passed
    rep = ct.verify_cocycle(LocalField(5), 2)
    assert rep.passed and rep.class_invariant and rep.checked == 64**3


def test_verify_cocycle_negative_control():
    t = TorusElement.identity(2)
    rep = ct.verify_cocycle(F3, 2, sigma=ct.flipped_sigma(F3, (t, t)))
    assert not rep.passed and rep.witness is not None
    assert rep.to_json()["witness"] == rep.witness


def test_verify_cocycle_bound():
    with pytest.raises(BoundExceeded):
        ct.verify_cocycle(F3, 3, max_triples=1000)


def test_verify_cocycle_real():
    R = LocalField("real")
    assert ct.verify_cocycle(R, 3).passed


def test_sampled_cocycle():
    rep = ct.sample_cocycle(LocalField(7), 5, 300, random.Random(0))
    assert rep.passed and rep.checked == 300
    t = TorusElement.identity(1)
    bad = ct.sample_cocycle(F3, 1, 5000, random.Random(0), (0,), sigma=ct.flipped_sigma(F3, (t, t)))
    assert not bad.passed


def test_class_code_round_trip():
    for n in (0, 1, 2):
        for t in ct.torus_elements(F3, n):
            assert ct.element_from_code(F3, ct.class_code(F3, t), n) == t
