"""
Hom-dimension checks of adjoint pairs and the canonical-witness checks of
the composite isomorphisms.

Every Hom used here is exact: the codomain either has finite support (and is
truncated where it vanishes) or the domain is finitely presented.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .category import alpha, rho
from .functors import (
    Coinduction,
    Composite,
    Derivative,
    FunctorResult,
    Gamma,
    KernelFunctor,
    NegativeShift,
    Psi,
    RFunctor,
    Shift,
    StabilizationError,
)
from .algebra import AlgebraElement
from .linalg import Matrix, vstack
from .modules import (
    HomSpace,
    PresentedModule,
    TruncatedModule,
    coords_in,
    evaluate_presentation,
    free_module,
    free_presentation,
    hom_from_presentation,
    hom_truncated,
    is_homomorphism,
    is_isomorphic,
    random_finite_support,
    random_module,
    random_presented,
    resize,
    support_top,
    truncate,
)


class PolicyError(RuntimeError):
    """A Hom space needed for a comparison is not exact under the chosen policy."""


PAIRS = [("Psi", "G"), ("G", "S"), ("S", "Q"), ("Q", "R"), ("D", "B"), ("B", "SK")]


def make_functor(tag: str, side: str):
    return {
        "Psi": lambda: Psi(side),
        "G": lambda: Gamma(side),
        "S": lambda: Shift(side),
        "Q": lambda: Coinduction(side),
        "R": lambda: RFunctor(side),
        "D": lambda: Derivative(side),
        "B": lambda: NegativeShift(side),
        "K": lambda: KernelFunctor(side),
        "SK": lambda: Composite(Shift(side), KernelFunctor(side)),
    }[tag]()


@dataclass
class AdjunctionRow:
    pair: str
    side: str
    domain: str
    codomain: str
    left_dim: int
    right_dim: int
    exact: bool

    @property
    def verdict(self) -> str:
        return "PASS" if self.exact and self.left_dim == self.right_dim else "FAIL"


@dataclass
class AdjunctionReport:
    pair: str
    side: str
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.rows) and all(r.verdict == "PASS" for r in self.rows)


def _exact_hom(V: TruncatedModule, W: TruncatedModule) -> HomSpace:
    """Hom(V, W) for W of finite support, both cut at the first level above W's support."""
    s = support_top(W)
    T = max(s + 1, 1)
    if W.N < T or V.N < T:
        raise PolicyError(f"need truncation {T} (codomain support {s}); have V:{V.N} W:{W.N}")
    H = hom_truncated(truncate(V, T), resize(W, T))
    if not H.exact:
        raise PolicyError("codomain does not vanish at the comparison level")
    return H


def check_adjoint_pair(left: str, right: str, side: str, V, W: TruncatedModule,
                       vname: str = "V", wname: str = "W", psi_levels=(8, 10, 12)) -> AdjunctionRow:
    """Compare dim Hom(F V, W) with dim Hom(V, G W) for F = left, G = right.

    ``W`` must have finite support and enough padding for G.  For the pair
    (Psi, Gamma) ``V`` must be a PresentedModule; otherwise it is a truncated
    module whose truncation covers the comparison window.
    """
    F = make_functor(left, side)
    G = make_functor(right, side)
    s = support_top(W)
    if left == "Psi":
        if not isinstance(V, PresentedModule):
            raise PolicyError("the (Psi, Gamma) check needs a presented domain")
        # left: Psi of the evaluated presentation, wide enough to cover W
        FV = None
        for N in psi_levels:
            try:
                res = F(evaluate_presentation(V, N).module)
            except StabilizationError:
                continue
            if res.truncation >= s + 1:
                FV = res.module
                break
        if FV is None:
            raise PolicyError("Psi did not stabilize on enough levels")
        left_H = _exact_hom(FV, W)
        GW = G(resize(W, max(W.N, V.max_degree()))).module
        right_H = hom_from_presentation(V, GW)
    else:
        FV = F(V).module
        left_H = _exact_hom(FV, W)
        GW = G(W).module
        right_H = _exact_hom(V, GW)
    return AdjunctionRow(f"({F.label},{G.label})", side, vname, wname, left_H.dim, right_H.dim,
                         left_H.exact and right_H.exact)


# ---------------------------------------------------------------------------
# samples


def ideal_quotient_presentation(side: str, n: int) -> PresentedModule:
    """M(n+1) / I M(n+1): one generator in degree n+1 killed by rho."""
    r = rho(side, n + 1)
    return PresentedModule([n + 1], [n + 2], {(0, 0): AlgebraElement.basis(r)}, f"M({n + 1})/I{side}")


def torsion_presentation() -> PresentedModule:
    """W = coker(M(2) -> M(1), e_2 -> alpha_{1,1})."""
    return PresentedModule([1], [2], {(0, 0): AlgebraElement.basis(alpha(1, 1))}, "W")


def standard_sample(side: str, N: int, seed: int, n_random: int = 20) -> list[tuple[str, TruncatedModule]]:
    """Free modules M(n) (n <= 3), M(n+1)/I M(n+1) (n <= 2), W and seeded random modules."""
    out = [(f"M({n})", free_module(n, N)) for n in range(4)]
    for n in range(3):
        P = ideal_quotient_presentation(side, n)
        out.append((P.name, evaluate_presentation(P, N).module))
    out.append(("W", evaluate_presentation(torsion_presentation(), N).module))
    rng = random.Random(seed)
    for k in range(n_random):
        out.append((f"rand{k}", random_module(rng, N, max_dim=2)))
    return out


def presented_sample(side: str, seed: int, n_random: int = 13) -> list[tuple[str, PresentedModule]]:
    out = [(f"M({n})", free_presentation(n)) for n in range(4)]
    for n in range(3):
        P = ideal_quotient_presentation(side, n)
        out.append((P.name, P))
    out.append(("W", torsion_presentation()))
    rng = random.Random(seed)
    for k in range(n_random):
        out.append((f"pres{k}", random_presented(rng, max_gen_degree=2, max_gens=2, max_rels=2, rel_gap=1)))
    return out


def codomain_sample(seed: int, count: int, N: int, support: int = 2) -> list[tuple[str, TruncatedModule]]:
    rng = random.Random(seed)
    return [(f"fs{k}", random_finite_support(rng, N, rng.randint(0, support), max_dim=2)) for k in range(count)]


def verify_adjunctions(side: str, N: int = 6, seed: int = 0, n_random: int = 20, pairs=None) -> list[AdjunctionReport]:
    """Run every adjacent pair over the standard sample on one side."""
    pairs = pairs or PAIRS
    reports = []
    for left, right in pairs:
        rep = AdjunctionReport(f"({left},{right})", side)
        if left == "Psi":
            doms = presented_sample(side, seed)
            cods = codomain_sample(seed + 101, len(doms), N + 4, support=2)
        else:
            doms = standard_sample(side, N, seed, n_random)
            cods = codomain_sample(seed + 101, len(doms), N + 4, support=min(2, N - 4) if N > 5 else 1)
        for (vn, V), (wn, W) in zip(doms, cods):
            if left != "Psi":
                need = support_top(W) + 3
                if V.N < need:
                    raise PolicyError(f"sample truncation {V.N} too small for codomain support")
            row = check_adjoint_pair(left, right, side, V, W, vn, wn)
            rep.rows.append(row)
        reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# composite isomorphisms with canonical witnesses


@dataclass
class IsoRow:
    claim: str
    side: str
    module: str
    verdict: str
    witness: str


def sb_witness(V: TruncatedModule) -> list:
    return [Matrix.identity(d) for d in V.dims]


def dg_witness(side: str, V: TruncatedModule, res: FunctorResult) -> list:
    """V_n -> (D Gamma V)_n: include V_n as its summand of (Gamma V)_{n+1}, then project."""
    G = Gamma(side)
    Q = res.provenance["quotient"]
    out = []
    for n in range(res.truncation + 1):
        levels = G.summand_levels(n + 1)
        s = 0 if side == "a" else n
        offs = sum(V.dims[x] for x in levels[:s])
        total = sum(V.dims[x] for x in levels)
        inc = Matrix([[1 if r == offs + c else 0 for c in range(V.dims[n])] for r in range(total)], V.dims[n])
        out.append(Q.projections[n] @ inc)
    return out


def kq_witness(V: TruncatedModule, kq: FunctorResult) -> list:
    """(B V)_n = V_{n-1} -> (K Q V)_n, w -> (0, w)."""
    sub = kq.provenance["submodule"]
    out = []
    for n in range(kq.truncation + 1):
        dn = V.dims[n]
        dn1 = V.dims[n - 1] if n else 0
        inc = vstack([Matrix.zeros(dn, dn1), Matrix.identity(dn1)])
        out.append(coords_in(sub.bases[n], sub.pivots[n], inc))
    return out


def check_composite_isos(side: str, sample) -> list[IsoRow]:
    rows = []
    for name, V in sample:
        SB = Shift(side)(NegativeShift(side)(V).module).module
        v = is_isomorphic(V, SB, witness=sb_witness(V))
        rows.append(IsoRow(f"S{side}B{side} = Id", side, name, v.verdict, v.reason))

        dg = Derivative(side)(Gamma(side)(V).module)
        Vt = truncate(V, dg.truncation)
        v = is_isomorphic(Vt, dg.module, witness=dg_witness(side, V, dg))
        rows.append(IsoRow(f"D{side}G{side} = Id", side, name, v.verdict, v.reason))

        kq = KernelFunctor(side)(Coinduction(side)(V).module)
        B = truncate(NegativeShift(side)(V).module, kq.truncation)
        v = is_isomorphic(B, kq.module, witness=kq_witness(V, kq))
        rows.append(IsoRow(f"K{side}Q{side} = B{side}", side, name, v.verdict, v.reason))
    return rows


# ---------------------------------------------------------------------------
# the explicit (S, Q) bijection and its naturality


def sq_transpose(side: str, V: TruncatedModule, psi) -> list:
    """Hom(S V, W) -> Hom(V, Q W): psi -> Q(psi) after the unit v -> (rho v, v)."""
    out = []
    for n in range(len(psi)):
        top = psi[n] @ V.morphism_matrix(rho(side, n))
        if n == 0:
            out.append(top)
        else:
            out.append(vstack([top, psi[n - 1]]))
    return out


def sq_naturality(side: str, V: TruncatedModule, W: TruncatedModule, seed: int, count: int = 10) -> tuple[bool, int]:
    """Check transpose(psi . S chi) = transpose(psi) . chi for random maps chi: V' -> V.

    V' ranges over random modules; psi over random elements of Hom(S V, W).
    Returns (all checks held, number of maps checked).
    """
    rng = random.Random(seed)
    T = support_top(W) + 1
    SV = Shift(side)(V).module
    Hs = hom_truncated(truncate(SV, T), resize(W, T))
    if Hs.dim == 0:
        return True, 0
    QW = Coinduction(side)(resize(W, T + 1)).module
    ok = True
    done = 0
    tries = 0
    while done < count and tries < 20 * count:
        tries += 1
        Vp = random_module(rng, V.N, max_dim=2)
        Hc = hom_truncated(Vp, V)
        if Hc.dim == 0:
            continue
        chi = Hc.combine([rng.randint(-2, 2) for _ in range(Hc.dim)])
        psi = Hs.combine([rng.randint(-2, 2) for _ in range(Hs.dim)])
        # psi . S(chi), as a map S V' -> W
        Schi = [chi[n + 1] for n in range(T + 1)]
        lhs = sq_transpose(side, Vp, [psi[n] @ Schi[n] for n in range(T + 1)])
        rhs = [a @ b for a, b in zip(sq_transpose(side, V, psi), chi)]
        ok &= all(a == b for a, b in zip(lhs, rhs))
        phi = sq_transpose(side, V, psi)
        ok &= is_homomorphism(truncate(V, T), truncate(QW, T), phi)
        done += 1
    return ok, done
