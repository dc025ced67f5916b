import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oirep.adjunctions import torsion_presentation
from oirep.functors import ses_from_seeds
from oirep.linalg import Matrix, rank
from oirep.modules import (
    PresentedModule,
    evaluate_presentation,
    free_module,
    free_presentation,
    free_sum_module,
    is_exact_at,
    is_isomorphic,
    kernel_submodule,
    presented_map_to_levels,
    random_presented,
    resize,
)
from oirep.nakayama import (
    PresentedMap,
    injective_copresentation,
    injective_module,
    inverse_nakayama,
    inverse_nakayama_direct_dims,
    inverse_on_injective_map,
    l_presentation,
    nakayama,
    nakayama_data,
    nakayama_on_map,
    nu_adjunction_row,
    nu_inverse_roundtrip,
    presentation_from_truncated,
    random_findim,
    saturation_evidence,
    simple_saturated,
)

seeds = st.integers(0, 10_000)


def test_nu_of_free_is_dual():
    for n in range(4):
        nu = nakayama(free_presentation(n), 6)
        assert nu.dims == [comb(n, m) for m in range(7)]
        assert is_isomorphic(nu, resize(injective_module(n, n + 1), 6)).verdict == "ISO"


def test_nu_kills_torsion():
    assert nakayama(torsion_presentation(), 5).is_zero()


@given(seeds)
def test_inverse_dims_two_routes(seed):
    X = random_findim(random.Random(seed), max_support=3, max_dim=2)
    assert inverse_nakayama(X, 5).dims == inverse_nakayama_direct_dims(X, 5)


@pytest.mark.parametrize("n", range(4))
def test_inverse_of_injective_is_free(n):
    Y = inverse_nakayama(injective_module(n, n + 1), 6)
    assert is_isomorphic(Y, free_module(n, 6)).verdict == "ISO"


@given(seeds)
def test_roundtrip(seed):
    X = random_findim(random.Random(seed), max_support=3, max_dim=2)
    v, diag = nu_inverse_roundtrip(X)
    assert v.verdict == "ISO"


def _free_map_levels(phi, N):
    """nu^{-1} f as levelwise matrices between the free modules on its degrees."""
    P = phi.source
    Q = evaluate_presentation(P, N)
    W = free_sum_module(phi.target.gens, N)
    imgs = []
    for j, b in enumerate(P.gens):
        v = []
        for k, bp in enumerate(phi.target.gens):
            e = phi.images.get((j, k))
            v.extend(e.coeffs if e is not None else [0] * comb(b, bp))
        imgs.append(Matrix([[x] for x in v], 1))
    return Q.module, presented_map_to_levels(P, Q, W, imgs)


@given(seeds)
def test_inverse_is_kernel_of_inverse_copresentation(seed):
    # left exactness: nu^{-1} X = ker(nu^{-1} I^0 -> nu^{-1} I^1), levelwise
    X = random_findim(random.Random(seed), max_support=3, max_dim=2)
    C = injective_copresentation(X)
    phi = inverse_on_injective_map(C.map, C.hull_degrees, C.cohull_degrees)
    F0, maps = _free_map_levels(phi, 6)
    assert kernel_submodule(F0, maps).module.dims == inverse_nakayama(X, 6).dims


def test_roundtrip_negative_control():
    # replacing nu^{-1} f by zero must break the round trip whenever I^1 is nonzero
    rng = random.Random(5)
    tested = 0
    for _ in range(12):
        X = random_findim(rng)
        C = injective_copresentation(X)
        if not C.cohull_degrees:
            continue
        phi = inverse_on_injective_map(C.map, C.hull_degrees, C.cohull_degrees)
        bad = PresentedMap(phi.source, phi.target, {})
        src, dst = nakayama_data(bad.source, X.N), nakayama_data(bad.target, X.N)
        K = kernel_submodule(src.module, nakayama_on_map(bad, src, dst)).module
        assert is_isomorphic(resize(X, X.N), K).verdict != "ISO"
        tested += 1
    assert tested >= 3


@given(seeds)
def test_nu_adjunction(seed):
    rng = random.Random(seed)
    P = random_presented(rng, max_gen_degree=2, max_gens=2, max_rels=1, rel_gap=1)
    X = random_findim(rng, max_support=3, max_dim=2)
    row = nu_adjunction_row(P, X)
    assert row.left_dim == row.right_dim


@given(seeds)
def test_nu_right_exact_on_free_cover(seed):
    # nu F1 -> nu F0 -> nu P -> 0 for the presentation F1 -> F0 -> P
    rng = random.Random(seed)
    P = random_presented(rng, max_gen_degree=2, max_gens=2, max_rels=2, rel_gap=1)
    F0 = PresentedModule(P.gens, [], {})
    F1 = PresentedModule(P.rels, [], {})
    rel = PresentedMap(F1, F0, dict(P.entries))
    proj = PresentedMap(F0, P, {(j, j): _identity(b) for j, b in enumerate(P.gens)})
    d1, d0, dp = (nakayama_data(x, 4) for x in (F1, F0, P))
    f = nakayama_on_map(rel, d1, d0)
    g = nakayama_on_map(proj, d0, dp)
    assert is_exact_at(f, g, d0.module.dims)
    assert all(rank(m) == dp.module.dims[n] for n, m in enumerate(g))


def _identity(b):
    from oirep.algebra import AlgebraElement
    from oirep.category import OrdMorphism

    return AlgebraElement.basis(OrdMorphism.identity(b))


def test_presentation_from_truncated_recovers_module():
    M = free_module(1, 6)
    seeds_ = [(2, [1, -1])]
    S = ses_from_seeds(M, seeds_).A
    P = presentation_from_truncated(S).presentation
    assert is_isomorphic(evaluate_presentation(P, 6).module, S).verdict == "ISO"


def test_l1_and_l2():
    L1 = simple_saturated(1, 8)
    assert L1.module.dims[1:] == [m - 1 for m in range(1, 9)]
    L2 = simple_saturated(2, 6)
    terms = {str(f): c for c, f in L2.generator_terms()}
    assert L2.generator_level == 4 and L2.generates
    assert terms == {"2->4:[1,3]": 1, "2->4:[1,4]": -1, "2->4:[2,3]": -1, "2->4:[2,4]": 1}


@pytest.mark.parametrize("n", range(3))
def test_nu_of_simple_saturated_is_simple(n):
    nu = nakayama(l_presentation(n, 2 * n + 2), 5)
    assert nu.dims == [1 if m == n else 0 for m in range(6)]


@pytest.mark.parametrize("n", [1, 2])
def test_saturation_small(n):
    r = saturation_evidence(n, 6)
    assert r.verdict == "PASS"
    assert set(r.hom_to_n.values()) == {1} and set(r.hom_to_n_minus_1.values()) == {0}
    assert r.hom_c == n
