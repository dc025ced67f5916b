import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oirep.category import rho
from oirep.functors import (
    FUNCTOR_NAMES,
    Coinduction,
    Derivative,
    Gamma,
    KernelFunctor,
    NegativeShift,
    Shift,
    exactness_profile,
    get_functor,
    random_short_exact,
)
from oirep.linalg import rank
from oirep.modules import (
    free_module,
    hom_truncated,
    identity_map,
    is_homomorphism,
    is_isomorphic,
    levelwise_compose,
    random_module,
    truncate,
    validate,
)

seeds = st.integers(0, 10_000)
sides = st.sampled_from("ab")
# functors whose values are computed from the window alone
WINDOW = [n for n in FUNCTOR_NAMES if not n.startswith("Psi")]


@given(seeds, sides)
def test_shift_is_pullback(seed, side):
    V = random_module(random.Random(seed), 4, max_dim=2)
    S = Shift(side)(V).module
    assert S.dims == V.dims[1:]
    for n in range(S.N):
        for i in range(1, n + 2):
            j = i + 1 if side == "a" else i
            assert S.gen(n, i) == V.gen(n + 1, j)


@given(seeds, sides)
def test_kernel_and_derivative_dims(seed, side):
    V = random_module(random.Random(seed), 4, max_dim=3)
    K = KernelFunctor(side)(V).module
    D = Derivative(side)(V).module
    for n in range(4):
        r = rank(V.morphism_matrix(rho(side, n)))
        assert K.dims[n] == V.dims[n] - r
        assert D.dims[n] == V.dims[n + 1] - r


@pytest.mark.parametrize("name", WINDOW)
def test_values_are_lawful_and_truncations_match(name):
    F = get_functor(name)
    rng = random.Random(5)
    for _ in range(5):
        V = random_module(rng, 5, max_dim=2)
        res = F(V)
        assert validate(res.module) == []
        assert res.truncation == res.module.N == F.out_truncation(5)


@pytest.mark.parametrize("name", WINDOW)
def test_functoriality_on_maps(name):
    F = get_functor(name)
    rng = random.Random(11)
    checked = 0
    for _ in range(6):
        U = random_module(rng, 4, max_dim=2)
        V = random_module(rng, 4, max_dim=2)
        W = random_module(rng, 4, max_dim=2)
        H1, H2 = hom_truncated(U, V), hom_truncated(V, W)
        rU, rV, rW = F(U), F(V), F(W)
        assert F.on_map(identity_map(U), rU, rU) == identity_map(rU.module)
        if not (H1.dim and H2.dim):
            continue
        phi = H1.combine([rng.randint(-2, 2) for _ in range(H1.dim)])
        psi = H2.combine([rng.randint(-2, 2) for _ in range(H2.dim)])
        Fphi, Fpsi = F.on_map(phi, rU, rV), F.on_map(psi, rV, rW)
        assert is_homomorphism(rU.module, rV.module, Fphi)
        assert F.on_map(levelwise_compose(psi, phi), rU, rW) == levelwise_compose(Fpsi, Fphi)
        checked += 1
    assert checked


@pytest.mark.parametrize("side", "ab")
def test_gamma_of_free(side):
    for m in range(4):
        G = Gamma(side)(free_module(m, 6)).module
        assert is_isomorphic(G, free_module(m + 1, 6)).verdict == "ISO"


def test_negative_shift_truncation():
    for side in "ab":
        res = NegativeShift(side)(free_module(2, 5))
        assert res.truncation == 6 and validate(res.module) == []


@given(seeds, sides, st.sampled_from(["S", "G", "Q", "B"]))
def test_exact_functors_preserve_exactness(seed, side, tag):
    ses = random_short_exact(random.Random(seed), 5)
    p = exactness_profile(get_functor(tag + side), ses)
    assert p.injective and p.middle and p.surjective


@given(seeds, sides)
def test_one_sided_exactness(seed, side):
    ses = random_short_exact(random.Random(seed), 5)
    assert exactness_profile(get_functor("K" + side), ses).left_exact
    assert exactness_profile(get_functor("R" + side), ses).left_exact
    assert exactness_profile(get_functor("D" + side), ses).right_exact


@pytest.mark.parametrize("name,attr", [("Ka", "surjective"), ("Da", "injective"),
                                       ("Kb", "surjective"), ("Db", "injective")])
def test_missing_side_fails_somewhere(name, attr):
    F = get_functor(name)
    hits = [k for k in range(20) if not getattr(exactness_profile(F, random_short_exact(random.Random(k), 6)), attr)]
    assert hits


def test_coinduction_of_zero_level():
    V = truncate(free_module(0, 4), 3)
    res = Coinduction("a")(V)
    assert validate(res.module) == []


@pytest.mark.parametrize("m", range(3))
def test_psi_of_free(m):
    from oirep.functors import Psi
    from oirep.modules import direct_sum_many

    res = Psi("a")(free_module(m, 2 * m + 4))
    R = res.truncation
    target = direct_sum_many([free_module(m - s, R) for s in range(1, m + 1)], R)
    assert is_isomorphic(res.module, target).verdict == "ISO"


@pytest.mark.parametrize("side", "ab")
def test_psi_right_exact_on_presented(side):
    from oirep.functors import Psi, ses_from_seeds
    from oirep.modules import evaluate_presentation, random_presented

    rng = random.Random(2)
    for _ in range(2):
        B = evaluate_presentation(random_presented(rng, max_gen_degree=2, max_gens=2, max_rels=1, rel_gap=1), 9).module
        n = min(k for k in range(4) if B.dims[k]) if any(B.dims[:4]) else None
        if n is None:
            continue
        ses = ses_from_seeds(B, [(n, [1] * B.dims[n])])
        assert exactness_profile(Psi(side), ses).right_exact


@pytest.mark.parametrize("side", "ab")
def test_guarded_and_plain_negative_shift_differ(side):
    V = free_module(0, 4)
    B = get_functor("B" + side)(V).module
    Bp = get_functor("B'" + side)(V).module
    assert B.dims == Bp.dims
    assert is_isomorphic(B, Bp).verdict == "NOT_ISO"
    assert is_isomorphic(Shift(side)(B).module, V).verdict == "ISO"
