"""
The acceptance suite: fourteen numbered checks, each printing one verdict line
followed by indented detail lines.

All randomness comes from ``random.Random(derive_seed(seed, k))`` so that a
run is reproducible from the single user seed.  Output carries no timings,
which keeps it byte-identical across runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .adjunctions import (
    check_composite_isos,
    ideal_quotient_presentation,
    standard_sample,
    torsion_presentation,
    verify_adjunctions,
)
from .algebra import verify_lemma
from .category import (
    OrdMorphism,
    alpha,
    compose,
    embed,
    enumerate_morphisms,
    factorizations,
    submerge,
)
from .functors import (
    Coinduction,
    Composite,
    Gamma,
    KernelFunctor,
    NegativeShift,
    Psi,
    RFunctor,
    Shift,
    StabilizationError,
    exactness_profile,
    get_functor,
    random_short_exact,
    ses_from_seeds,
)
from .linalg import Matrix, is_invertible, rank
from .modules import (
    direct_sum,
    direct_sum_many,
    evaluate_presentation,
    free_module,
    free_presentation,
    is_exact_at,
    is_isomorphic,
    quotient,
    random_module,
    random_presented,
    short_exact_check,
    submodule_from_subspaces,
    truncate,
)
from .nakayama import (
    l_presentation,
    nakayama,
    nu_adjunction_row,
    nu_inverse_roundtrip,
    random_findim,
    saturation_evidence,
    simple_saturated,
)
from .torsion import NOT_TORSION, TORSION, is_torsion_module, torsion_witness


def derive_seed(seed: int, k: int) -> int:
    """Seed for criterion k; plain arithmetic so it is stable across Python versions."""
    return seed * 1000 + k


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    summary: str
    details: list = field(default_factory=list)

    def line(self) -> str:
        return f"criterion {self.number:2d} [{'PASS' if self.passed else 'FAIL'}] {self.title}: {self.summary}"


def _mark(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# ---------------------------------------------------------------------------
# 1-3: the category


def c1(seed: int, N: int) -> Criterion:
    checked, bad = 0, []
    for n in range(7):
        for f in enumerate_morphisms(n, n + 2):
            p, q = [i for i in range(1, n + 3) if i not in f.values]
            expected = {(alpha(n + 1, q), alpha(n, p)), (alpha(n + 1, p), alpha(n, q - 1))}
            facs = factorizations(f)
            same = compose(alpha(n + 1, q), alpha(n, p)) == compose(alpha(n + 1, p), alpha(n, q - 1)) == f
            if facs != expected or len(facs) != 2 or not same:
                bad.append(str(f))
            checked += 1
    return Criterion(1, "quadratic relations", not bad,
                     f"{checked} morphisms [n]->[n+2], n <= 6, each with exactly two factorizations",
                     [f"mismatch at {b}" for b in bad[:5]])


def c2(seed: int, N: int) -> Criterion:
    bad = [(m, n) for m in range(11) for n in range(11) if len(enumerate_morphisms(m, n)) != comb(n, m)]
    return Criterion(2, "morphism counts", not bad, "|C([m],[n])| = C(n, m) for m, n <= 10",
                     [f"count mismatch at {b}" for b in bad])


def c3(seed: int, N: int) -> Criterion:
    counts = [0, 0, 0, 0]
    bad = []
    for m in range(6):
        for n in range(m, 9):
            for f in enumerate_morphisms(m, n):
                for s in "ab":
                    counts[0] += 1
                    if submerge(s, embed(s, f)) != f:
                        bad.append(("pi iota", s, str(f)))
                counts[1] += 1
                if embed("a", embed("b", f)) != embed("b", embed("a", f)):
                    bad.append(("iota commute", str(f)))
                if m >= 2:
                    counts[2] += 1
                    if submerge("a", submerge("b", f)) != submerge("b", submerge("a", f)):
                        bad.append(("pi commute", str(f)))
                if m >= 1:
                    counts[3] += 1
                    g = f
                    for _ in range(m):
                        g = embed("a", submerge("b", g))
                    if g != OrdMorphism(m, n, tuple(range(1, m + 1))):
                        bad.append(("iota_a pi_b iterate", str(f)))
    det = [f"identity {k + 1}: {c} checks" for k, c in enumerate(counts)] + [f"failure {b}" for b in bad[:5]]
    return Criterion(3, "embedding and submerging identities", not bad,
                     f"four identities on all morphisms with source <= 5, target <= 8 ({sum(counts)} checks)", det)


# ---------------------------------------------------------------------------
# 4: ideals


def c4(seed: int, N: int) -> Criterion:
    det, ok = [], True
    for lem, L in (("2.2", 7), ("2.3", 7), ("3.6", 6), ("4.8", 7)):
        rows = verify_lemma(lem, L)
        good = all(r.ok for r in rows)
        ok &= good
        det.append(f"lemma {lem} at levels <= {L}: {sum(r.ok for r in rows)}/{len(rows)} slices agree")
        det += [f"  FAIL {r.label} ({r.source},{r.target}): {r.lhs_dim} vs {r.rhs_dim}" for r in rows if not r.ok][:5]
    return Criterion(4, "ideal generation", ok, "generated ideals equal their extensional descriptions", det)


# ---------------------------------------------------------------------------
# 5-10: functors


def four_term_exact(side: str, V) -> bool:
    """0 -> K V -> V -> S V -> D V -> 0 on levels 0..N-1."""
    K = KernelFunctor(side)(V)
    S = Shift(side)(V)
    from .functors import Derivative

    D = Derivative(side)(V)
    T = S.truncation
    inc = K.provenance["inclusion"]
    unit = S.provenance["unit"]
    proj = D.provenance["projection"]
    Vt = truncate(V, T)
    return (all(rank(inc[n]) == K.module.dims[n] for n in range(T + 1))
            and is_exact_at(inc, unit, Vt.dims)
            and is_exact_at(unit, proj, S.module.dims)
            and all(rank(proj[n]) == D.module.dims[n] for n in range(T + 1)))


def shifted_ideal_witness(side: str, n: int, T: int):
    """S I e_n ~ M(n): beta: [n] -> [m] goes to beta shifted up (side a) or kept (side b) in [m+1]."""
    M = free_module(n, T + 1)
    from .algebra import named_ideal_slice

    spans = [named_ideal_slice("Ia" if side == "a" else "Ib", n, m).basis.T if m >= n else Matrix.zeros(0, 0)
             for m in range(T + 2)]
    spans = [s if m >= n else Matrix.zeros(M.dims[m], 0) for m, s in enumerate(spans)]
    sub = submodule_from_subspaces(M, spans)
    SI = Shift(side)(sub.module).module
    wit = []
    for m in range(T + 1):
        cols = []
        src = enumerate_morphisms(n, m)
        idx = {f.values: k for k, f in enumerate(enumerate_morphisms(n, m + 1))}
        for b in src:
            vals = tuple(x + 1 for x in b.values) if side == "a" else b.values
            v = [0] * M.dims[m + 1]
            v[idx[vals]] = 1
            cols.append(v)
        amb = Matrix.from_columns(cols, M.dims[m + 1]) if cols else Matrix.zeros(M.dims[m + 1], 0)
        from .modules import coords_in

        wit.append(coords_in(sub.bases[m + 1], sub.pivots[m + 1], amb))
    return SI, free_module(n, T), wit


def c5(seed: int, N: int) -> Criterion:
    det, ok = [], True
    for side in "ab":
        rng = random.Random(derive_seed(seed, 5))
        good = sum(four_term_exact(side, random_module(rng, N, max_dim=2)) for _ in range(20))
        ok &= good == 20
        det.append(f"side {side}: four-term sequence exact on {good}/20 seeded modules")
        for n in range(1, 5):
            SI, M, wit = shifted_ideal_witness(side, n, N)
            v = is_isomorphic(M, SI, witness=wit)
            good = v.verdict == "ISO" and v.reason == "supplied witness"
            ok &= good
            det.append(f"side {side}: S I e_{n} ~ M({n}) with explicit witness: {_mark(good)}")
    return Criterion(5, "four-term sequence and S I e_n", ok, "both sides, 20 seeded modules, n = 1..4", det)


def aug_colimit(n: int, T: int) -> tuple[list, bool]:
    """dims of M(n)/Aug M(n) on levels <= T and whether the rho^b links are isomorphisms from level n on."""
    from .algebra import named_ideal_slice

    M = free_module(n, T)
    spans = [named_ideal_slice("Aug", n, m).basis.T if m >= n else Matrix.zeros(M.dims[m], 0) for m in range(T + 1)]
    Q = quotient(M, submodule_from_subspaces(M, spans)).module
    links = all(is_invertible(Q.gen(r, r + 1)) for r in range(n, T))
    return Q.dims, links


def c6(seed: int, N: int) -> Criterion:
    det, ok = [], True
    for side in "ab":
        good = 0
        for m in range(6):
            V = free_module(m, 8)
            G = Gamma(side)(V).module
            good += is_isomorphic(G, free_module(m + 1, 8)).verdict == "ISO"
        ok &= good == 6
        det.append(f"side {side}: Gamma M(m) ~ M(m+1) at N=8 for {good}/6 values m <= 5")
    for m in range(5):
        T = 2 * m + 4
        try:
            res = Psi("a")(free_module(m, T))
        except StabilizationError as e:
            ok = False
            det.append(f"Psi_a M({m}) did not stabilize: {e}")
            continue
        R = res.truncation
        target = direct_sum_many([free_module(m - s, R) for s in range(1, m + 1)], R)
        iso = is_isomorphic(res.module, target).verdict == "ISO"
        r0 = max(res.diagnostics["r0"], default=0)
        good = iso and r0 <= m
        ok &= good
        det.append(f"Psi_a M({m}) ~ sum M({m}-s) on levels <= {R}: {_mark(iso)}, stabilization r0 = {r0} <= {m}")
    for n in range(6):
        dims, links = aug_colimit(n, n + 3)
        good = links and all(d == 1 for d in dims[n:])
        ok &= good
        det.append(f"M({n})/Aug M({n}) dims {dims}, links iso from level {n}: {_mark(good)}")
    return Criterion(6, "Gamma, Psi and the augmentation colimit", ok, "free modules", det)


def c7(seed: int, N: int) -> Criterion:
    det, ok, total = [], True, 0
    for side in "ab":
        for rep in verify_adjunctions(side, N=N, seed=derive_seed(seed, 7)):
            n = len(rep.rows)
            total += n
            good = rep.passed and n >= 20
            ok &= good
            nonzero = sum(1 for r in rep.rows if r.left_dim)
            det.append(f"side {side} {rep.pair:10s} {n} cells, {nonzero} nonzero, all exact and equal: {_mark(good)}")
            det += [f"  FAIL {r.domain} -> {r.codomain}: {r.left_dim} vs {r.right_dim} exact={r.exact}"
                    for r in rep.rows if r.verdict != "PASS"][:3]
    return Criterion(7, "adjunction dimension equalities", ok, f"six pairs, both sides, {total} Hom cells", det)


def c8(seed: int, N: int) -> Criterion:
    det, ok = [], True
    for side in "ab":
        rows = check_composite_isos(side, standard_sample(side, N, derive_seed(seed, 8)))
        by = {}
        for r in rows:
            by.setdefault(r.claim, []).append(r.verdict == "ISO")
        for claim, v in by.items():
            ok &= all(v)
            det.append(f"{claim}: {sum(v)}/{len(v)} with canonical witness")
    return Criterion(8, "composite isomorphisms", ok, "S B = Id, D Gamma = Id, K Q = B", det)


EXACT = ("S", "G", "Q", "B")
LEFT_EXACT = ("K", "R")
RIGHT_EXACT = ("D", "Psi")


def _psi_ses(rng, T: int = 9):
    P = random_presented(rng, max_gen_degree=2, max_gens=2, max_rels=1, rel_gap=1)
    B = evaluate_presentation(P, T).module
    lv = [n for n in range(4) if B.dims[n]]
    n = rng.choice(lv)
    return ses_from_seeds(B, [(n, [rng.randint(-1, 1) for _ in range(B.dims[n])])])


def exactness_table(seed: int, N: int, count: int = 10):
    """Profiles of every functor on seeded short exact sequences.

    Psi needs modules whose colimits stabilize, so it runs on sequences of
    finitely presented modules at truncation 9; the others use random
    truncated modules at N.
    """
    rng = random.Random(derive_seed(seed, 9))
    plain = [random_short_exact(rng, N) for _ in range(count)]
    rng = random.Random(derive_seed(seed, 90))
    psi = [_psi_ses(rng) for _ in range(count)]
    table = {}
    for side in "ab":
        for tag in EXACT + LEFT_EXACT + RIGHT_EXACT:
            F = Psi(side) if tag == "Psi" else get_functor(tag + side)
            table[(tag, side)] = [exactness_profile(F, s) for s in (psi if tag == "Psi" else plain)]
    return table


def c9(seed: int, N: int) -> Criterion:
    table = exactness_table(seed, N)
    det, ok = [], True
    for (tag, side), profs in table.items():
        if tag in EXACT:
            good = all(p.left_exact and p.right_exact for p in profs)
            kind = "exact"
        elif tag in LEFT_EXACT:
            good = all(p.left_exact for p in profs)
            kind = "left exact"
        else:
            good = all(p.right_exact for p in profs)
            kind = "right exact"
        ok &= good
        miss_r = sum(not p.surjective for p in profs)
        miss_l = sum(not p.injective for p in profs)
        det.append(f"{tag}{side}: {kind} on {len(profs)} sequences: {_mark(good)}"
                   f" (F(g) not onto: {miss_r}, F(f) not injective: {miss_l})")
    # genuine failures of the missing side
    for tag, attr in (("K", "surjective"), ("D", "injective")):
        found = [i for i, p in enumerate(table[(tag, "a")]) if not getattr(p, attr)]
        where = f"sequence #{found[0]}" if found else "none in the seeded sample"
        if not found:
            # widen: more seeds, then a larger truncation
            rng = random.Random(derive_seed(seed, 91))
            for T in (N, N + 2):
                for k in range(40):
                    p = exactness_profile(get_functor(tag + "a"), random_short_exact(rng, T))
                    if not getattr(p, attr):
                        found = [k]
                        where = f"widened search: sample {k} at truncation {T}"
                        break
                if found:
                    break
        ok &= bool(found)
        side_name = "right" if tag == "K" else "left"
        det.append(f"{tag}a fails {side_name} exactness: {where}")
    return Criterion(9, "exactness table", ok, "10 seeded short exact sequences per functor and side", det)


def c10(seed: int, N: int) -> Criterion:
    det, ok = [], True
    for side in "ab":
        sample = standard_sample(side, N, derive_seed(seed, 10))
        q_ok = r_ok = 0
        for name, V in sample:
            Q = Coinduction(side)(V)
            B = truncate(NegativeShift(side)(V).module, Q.truncation)
            q_ok += short_exact_check(B, Q.module, V, Q.provenance["ses_in"], Q.provenance["ses_out"])
            R = RFunctor(side)(V)
            SK = truncate(Composite(Shift(side), KernelFunctor(side))(V).module, R.truncation)
            r_ok += short_exact_check(truncate(V, R.truncation), R.module, SK,
                                      R.provenance["ses_in"], R.provenance["ses_out"])
        ok &= q_ok == r_ok == len(sample)
        det.append(f"side {side}: 0 -> B V -> Q V -> V -> 0 exact on {q_ok}/{len(sample)}")
        det.append(f"side {side}: 0 -> V -> R V -> S K V -> 0 exact on {r_ok}/{len(sample)}")
        for n in range(4):
            QM = Coinduction(side)(free_module(n, N)).module
            quo = evaluate_presentation(ideal_quotient_presentation(side, n), N).module
            good = is_isomorphic(QM, direct_sum(free_module(n, N), quo)).verdict == "ISO"
            ok &= good
            det.append(f"side {side}: Q M({n}) ~ M({n}) + M({n + 1})/I M({n + 1}): {_mark(good)}")
    return Criterion(10, "coinduction and R sequences", ok, "standard sample, both sides", det)


# ---------------------------------------------------------------------------
# 11-13: torsion and Nakayama


def c11(seed: int, N: int) -> Criterion:
    det = []
    Wp = torsion_presentation()
    W = evaluate_presentation(Wp, 5).module
    dims_ok = W.dims == [0, 1, 1, 1, 1, 1]
    det.append(f"W dims at N=5: {W.dims}: {_mark(dims_ok)}")
    v = is_torsion_module(Wp, 5)
    tor_ok = v.kind == TORSION
    det.append(f"is_torsion_module(W, 5): {v.kind}, generator witness {v.witnesses}")
    # one witness per level; level 5 needs one more level of room
    W6 = evaluate_presentation(Wp, 6).module
    lv_ok = True
    for n in range(1, 6):
        w = torsion_witness(W6, n, [1], 6)
        lv_ok &= w.kind == TORSION
        det.append(f"  level {n}: {w}")
    nu = nakayama(Wp, 5)
    nu_ok = nu.is_zero()
    det.append(f"nu W dims {nu.dims}: {_mark(nu_ok)}")
    free_ok = True
    for n in range(4):
        fv = is_torsion_module(free_presentation(n), 6)
        free_ok &= fv.kind == NOT_TORSION
        det.append(f"M({n}): {fv}")
    ok = dims_ok and tor_ok and lv_ok and nu_ok and free_ok
    return Criterion(11, "torsion", ok, "W is torsion with witnesses, nu W = 0, free modules are not", det)


L2_EXPECTED = {(2, 4): 1, (2, 3): -1, (1, 3): 1, (1, 4): -1}


def c12(seed: int, N: int) -> Criterion:
    det, ok = [], True
    L1 = simple_saturated(1, 8)
    l1_ok = all(L1.module.dims[m] == m - 1 for m in range(1, 9))
    ok &= l1_ok
    det.append(f"L^1 dims {L1.module.dims}: m - 1 for 1 <= m <= 8: {_mark(l1_ok)}")
    L2 = simple_saturated(2, 6)
    terms = {f.values: c for c, f in L2.generator_terms()}
    sign = 1 if terms.get((2, 4), 0) > 0 else -1
    g_ok = L2.generator_level == 4 and {k: sign * c for k, c in terms.items()} == L2_EXPECTED
    ok &= g_ok
    shown = " ".join(f"{'+' if c > 0 else '-'}{abs(c)}*{k}" for k, c in sorted(terms.items()))
    det.append(f"L^2 generator at level {L2.generator_level}: {shown}: {_mark(g_ok)}")
    for n in range(4):
        for T in (6, 8):
            r = saturation_evidence(n, T)
            good = r.verdict == "PASS"
            ok &= good
            if n == 0:
                det.append(f"n=0 N={T}: {r.verdict} (no maps f_i)")
                continue
            det.append(f"n={n} N={T}: {r.verdict} Hom(L,M(n)) {r.hom_to_n} Hom(L,M(n-1)) {r.hom_to_n_minus_1}"
                       f" Hom(C,M(n-1)) = {r.hom_c}; window route {r.truncated_route}"
                       f" {r.truncated_to_n} {r.truncated_to_n_minus_1}")
    return Criterion(12, "simple saturated modules", ok, "L^1 dims, L^2 generator, saturation and Hom(C, M(n-1))", det)


def c13(seed: int, N: int) -> Criterion:
    det, ok = [], True
    rng = random.Random(derive_seed(seed, 13))
    rows = []
    for _ in range(10):
        P = random_presented(rng, max_gen_degree=3, max_gens=2, max_rels=2, rel_gap=1)
        X = random_findim(rng)
        rows.append(nu_adjunction_row(P, X))
    adj_ok = all(r.verdict == "PASS" for r in rows)
    ok &= adj_ok
    det.append(f"(nu, nu^-1) rows: {[(r.left_dim, r.right_dim) for r in rows]}: {_mark(adj_ok)}")
    rng = random.Random(derive_seed(seed, 130))
    iso = 0
    for _ in range(10):
        X = random_findim(rng)
        v, d = nu_inverse_roundtrip(X)
        iso += v.verdict == "ISO"
        det.append(f"  X dims {X.dims}: {v.verdict} (hull {d['hull']}, cohull {d['cohull']})")
    ok &= iso == 10
    det.insert(1, f"nu nu^-1 X ~ X on {iso}/10 seeded modules (support <= 4, dims <= 3)")
    for n in range(3):
        dims = []
        for T in (2 * n + 2, 2 * n + 4):
            dims.append(nakayama(l_presentation(n, T), 5).dims)
        expect = [1 if m == n else 0 for m in range(6)]
        good = dims[0] == dims[1] == expect
        ok &= good
        det.append(f"nu L^{n} dims {dims[0]} (presentations at {2 * n + 2} and {2 * n + 4} agree): {_mark(good)}")
    return Criterion(13, "Nakayama functors", ok, "adjunction rows, nu nu^-1 = Id, nu L^n simple", det)


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13]


def run(seed: int = 7, truncation: int = 6, only=None, emit=print) -> list[Criterion]:
    """Run criteria 1-13 (14 is a property of this run itself) and emit their lines."""
    out = []
    for k, fn in enumerate(CRITERIA, 1):
        if only and k not in only:
            continue
        c = fn(seed, truncation)
        out.append(c)
        emit(c.line())
        for d in c.details:
            emit("    " + d)
    return out
