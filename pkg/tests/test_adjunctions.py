import random

import pytest

from oirep.adjunctions import (
    PAIRS,
    check_adjoint_pair,
    check_composite_isos,
    codomain_sample,
    sq_naturality,
    standard_sample,
    verify_adjunctions,
)
from oirep.functors import Coinduction, Gamma, Shift
from oirep.modules import free_module, hom_truncated, random_module, resize, support_top, truncate


@pytest.mark.parametrize("side", "ab")
def test_all_pairs_small_sample(side):
    reps = verify_adjunctions(side, N=6, seed=3, n_random=4)
    assert [r.pair for r in reps] == [f"({a},{b})" for a, b in PAIRS]
    for rep in reps:
        assert rep.passed, [(r.domain, r.codomain, r.left_dim, r.right_dim) for r in rep.rows if r.verdict != "PASS"]
        assert any(r.left_dim for r in rep.rows)


@pytest.mark.parametrize("side", "ab")
def test_yoneda_closed_forms(side):
    # Hom(G M(m), W) = W_{m+1} and Hom(S M(m), W) = dim (Q W)_m = W_m + W_{m-1}
    for _, W in codomain_sample(17, 6, 8, support=3):
        T = max(support_top(W) + 1, 4)
        for m in range(4):
            GM = truncate(Gamma(side)(free_module(m, T + 1)).module, T)
            assert hom_truncated(GM, resize(W, T)).dim == W.dims[m + 1]
            SM = Shift(side)(free_module(m, T + 1)).module
            expect = W.dims[m] + (W.dims[m - 1] if m else 0)
            assert hom_truncated(SM, resize(W, T)).dim == expect
            QW = Coinduction(side)(resize(W, T + 1)).module
            assert QW.dims[m] == expect


def test_single_pair_row_fields():
    V = free_module(1, 7)
    _, W = codomain_sample(5, 1, 10, support=2)[0]
    row = check_adjoint_pair("G", "S", "a", V, W, "M(1)", "W")
    assert row.exact and row.left_dim == row.right_dim == W.dims[2]


@pytest.mark.parametrize("side", "ab")
def test_composite_isos(side):
    rows = check_composite_isos(side, standard_sample(side, 5, 2, n_random=3))
    assert rows and all(r.verdict == "ISO" and r.witness == "supplied witness" for r in rows)


@pytest.mark.parametrize("side", "ab")
def test_sq_bijection_is_natural(side):
    rng = random.Random(8)
    V = random_module(rng, 6, max_dim=2)
    _, W = codomain_sample(9, 1, 6, support=2)[0]
    ok, done = sq_naturality(side, V, W, seed=4, count=5)
    assert ok
