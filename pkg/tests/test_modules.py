import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oirep.category import compose, enumerate_morphisms
from oirep.linalg import Matrix, rref_naive, span_contains
from oirep.modules import (
    InvariantError,
    PresentedModule,
    TruncationError,
    direct_sum,
    evaluate_presentation,
    free_module,
    free_presentation,
    hom_from_presentation,
    hom_truncated,
    is_homomorphism,
    is_isomorphic,
    quotient,
    random_module,
    random_presented,
    submodule_generate,
    validate,
)

seeds = st.integers(0, 10_000)


def brute_hom_dim(V, W):
    """Unknowns: all entries of phi_0..phi_N; one equation per entry of
    phi_t V(f) - W(f) phi_s for every morphism f (not only the generators)."""
    offs, tot = [], 0
    for a, b in zip(V.dims, W.dims):
        offs.append(tot)
        tot += a * b
    eqs = []
    for s in range(V.N + 1):
        for t in range(s + 1, V.N + 1):
            for f in enumerate_morphisms(s, t):
                A, B = V.morphism_matrix(f), W.morphism_matrix(f)
                for r in range(W.dims[t]):
                    for c in range(V.dims[s]):
                        row = [0] * tot
                        for k in range(V.dims[t]):
                            row[offs[t] + r * V.dims[t] + k] += A.rows[k][c]
                        for k in range(W.dims[s]):
                            row[offs[s] + k * V.dims[s] + c] -= B.rows[r][k]
                        eqs.append(row)
    if not eqs:
        return tot
    return tot - len(rref_naive(Matrix(eqs, tot))[1])


@given(seeds)
def test_random_module_is_lawful(seed):
    V = random_module(random.Random(seed), 5)
    assert validate(V) == []


@given(seeds)
def test_action_is_functorial(seed):
    rng = random.Random(seed)
    V = random_module(rng, 5, max_dim=2)
    for _ in range(10):
        a = rng.randint(0, 3)
        b = rng.randint(a, 4)
        c = rng.randint(b, 5)
        f = rng.choice(enumerate_morphisms(a, b))
        g = rng.choice(enumerate_morphisms(b, c))
        assert V.morphism_matrix(compose(g, f)) == V.morphism_matrix(g) @ V.morphism_matrix(f)


def test_free_module_dims():
    for n in range(4):
        M = free_module(n, 6)
        assert M.dims == [comb(m, n) for m in range(7)]
        assert validate(M) == []


@given(seeds)
def test_hom_matches_brute_force(seed):
    rng = random.Random(seed)
    V = random_module(rng, 3, max_dim=2)
    W = random_module(rng, 3, max_dim=2)
    H = hom_truncated(V, W)
    assert H.dim == brute_hom_dim(V, W)
    for phi in H.basis:
        assert is_homomorphism(V, W, phi)


@given(seeds, st.integers(0, 3))
def test_yoneda(seed, n):
    W = random_module(random.Random(seed), 5, max_dim=2)
    H = hom_from_presentation(free_presentation(n), W)
    assert H.dim == W.dims[n]


def test_invalid_module_rejected():
    from oirep.modules import TruncatedModule

    with pytest.raises(InvariantError):
        TruncatedModule(1, [1, 1], {})


@given(seeds)
def test_submodule_and_quotient_dims(seed):
    rng = random.Random(seed)
    V = random_module(rng, 4, max_dim=3)
    lv = [n for n in range(5) if V.dims[n]]
    if not lv:
        return
    n = rng.choice(lv)
    U = submodule_generate(V, [(n, [rng.randint(-1, 1) for _ in range(V.dims[n])])])
    Q = quotient(V, U)
    assert validate(U.module) == [] and validate(Q.module) == []
    for m in range(5):
        assert U.module.dims[m] + Q.module.dims[m] == V.dims[m]
        if m < 4:
            # closed under the action
            assert all(span_contains(U.bases[m + 1], V.gen(m, i) @ U.bases[m]) for i in range(1, m + 2))


@given(seeds)
def test_direct_sum_iso_swap(seed):
    rng = random.Random(seed)
    V = random_module(rng, 3, max_dim=2)
    W = random_module(rng, 3, max_dim=2)
    assert is_isomorphic(direct_sum(V, W), direct_sum(W, V)).verdict == "ISO"


def test_not_iso_on_dims():
    v = is_isomorphic(free_module(1, 3), free_module(2, 3))
    assert v.verdict == "NOT_ISO"


def test_free_presentation_evaluates_to_free_module():
    for n in range(3):
        Q = evaluate_presentation(free_presentation(n), 5)
        assert is_isomorphic(Q.module, free_module(n, 5)).verdict == "ISO"
    with pytest.raises(TruncationError):
        evaluate_presentation(free_presentation(4), 3)


@given(seeds)
def test_presented_hom_matches_truncated(seed):
    # generators in degree <= 2, relations <= 3: Hom out of the presentation is determined on levels <= 3
    rng = random.Random(seed)
    P = random_presented(rng, max_gen_degree=2, max_rels=2, rel_gap=1)
    W = random_module(rng, 4, max_dim=2)
    V = evaluate_presentation(P, 4).module
    assert hom_from_presentation(P, W).dim == hom_truncated(V, W).dim


def test_presented_module_checks_entries():
    from oirep.algebra import AlgebraElement
    from oirep.category import alpha

    with pytest.raises(InvariantError):
        PresentedModule([1], [2], {(0, 0): AlgebraElement.basis(alpha(2, 1))})


def test_exact_flag():
    # a window Hom is only certified when the codomain vanishes at the top level
    V = free_module(0, 2)
    assert not hom_truncated(V, V).exact
    from oirep.modules import random_finite_support

    X = random_finite_support(random.Random(3), 4, 2)
    assert hom_truncated(free_module(0, 4), X).exact
    assert hom_from_presentation(free_presentation(0), V).exact
