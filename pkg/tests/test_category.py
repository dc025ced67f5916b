from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oirep.category import (
    CompositionError,
    PreconditionError,
    OrdMorphism,
    alpha,
    boundary,
    compose,
    compose_all,
    embed,
    enumerate_morphisms,
    factorize,
    factorizations,
    fixes_extreme,
    index_of,
    mirror,
    parse_morphism,
    pushout,
    rho,
    submerge,
)


@st.composite
def morphisms(draw, max_target=7):
    n = draw(st.integers(0, max_target))
    m = draw(st.integers(0, n))
    values = draw(st.sets(st.integers(1, n), min_size=m, max_size=m)) if n else set()
    return OrdMorphism(m, n, tuple(sorted(values)))


@st.composite
def composable(draw, count=3, max_target=8):
    n = draw(st.integers(0, max_target))
    out, tgt = [], n
    for _ in range(count):
        src = draw(st.integers(0, tgt))
        vals = sorted(draw(st.sets(st.integers(1, tgt), min_size=src, max_size=src))) if tgt else []
        out.append(OrdMorphism(src, tgt, tuple(vals)))
        tgt = src
    return out  # out[0] is outermost


def test_counts_against_combinations():
    for m in range(8):
        for n in range(8):
            brute = list(combinations(range(1, n + 1), m))
            mors = enumerate_morphisms(m, n)
            assert [f.values for f in mors] == brute
            assert len(mors) == comb(n, m)


def test_alpha_misses_index():
    for n in range(6):
        for i in range(1, n + 2):
            assert alpha(n, i).missing() == [i]
    assert rho("a", 3) == alpha(3, 1)
    assert rho("b", 3) == alpha(3, 4)


def test_rejects_bad_data():
    with pytest.raises(ValueError):
        OrdMorphism(2, 3, (2, 2))
    with pytest.raises(ValueError):
        OrdMorphism(1, 2, (3,))
    with pytest.raises(CompositionError):
        compose(alpha(2, 1), alpha(2, 1))


@given(composable())
def test_composition_associative(fs):
    h, g, f = fs
    assert compose(compose(h, g), f) == compose(h, compose(g, f))
    assert compose(h, OrdMorphism.identity(h.source)) == h


@given(morphisms())
def test_factorize_rebuilds(f):
    facs = factorize(f)
    assert len(facs) == f.degree
    if facs:
        assert compose_all(facs) == f
    assert all(g.degree == 1 for g in facs)


def test_factorizations_count_is_multinomial():
    # one word per order in which the three missing points are inserted
    for n in range(4):
        for f in enumerate_morphisms(n, n + 3):
            assert len(factorizations(f)) == 6


def test_quadratic_relation_exhaustive():
    for n in range(6):
        for q in range(2, n + 3):
            for p in range(1, q):
                assert compose(alpha(n + 1, q), alpha(n, p)) == compose(alpha(n + 1, p), alpha(n, q - 1))


@given(morphisms(), st.sampled_from("ab"))
def test_submerge_embed(f, side):
    assert submerge(side, embed(side, f)) == f
    assert fixes_extreme(side, embed(side, f))


@given(morphisms())
def test_mirror_involution(f):
    assert mirror(mirror(f)) == f
    assert mirror(embed("a", f)) == embed("b", mirror(f))


@given(morphisms())
def test_text_round_trip(f):
    assert parse_morphism(str(f)) == f


def test_identity_text():
    assert str(OrdMorphism.identity(3)) == "3->3:id"
    assert parse_morphism("1->3:[2]") == OrdMorphism(1, 3, (2,))


@given(st.data())
def test_pushout_commutes(data):
    f1 = data.draw(morphisms(max_target=5))
    n = f1.source
    m2 = data.draw(st.integers(n, n + 3))
    vals = sorted(data.draw(st.sets(st.integers(1, m2), min_size=n, max_size=n))) if m2 else []
    f2 = OrdMorphism(n, m2, tuple(vals))
    g1, g2 = pushout(f1, f2)
    assert compose(g1, f1) == compose(g2, f2)
    assert g1.target <= f1.target + f2.target - n


def test_index_of_matches_enumeration():
    for m, n in product(range(5), range(7)):
        for k, f in enumerate(enumerate_morphisms(m, n)):
            assert index_of(f) == k


@given(morphisms(), st.sampled_from("ab"))
def test_raise_then_submerge_is_lower(f, side):
    if f.target == 0 or fixes_extreme(side, f):
        with pytest.raises(PreconditionError):
            boundary(side, "lower", f)
        return
    up = boundary(side, "raise", f)
    assert fixes_extreme(side, up)
    assert submerge(side, up) == boundary(side, "lower", f)
