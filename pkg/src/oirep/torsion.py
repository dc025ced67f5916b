"""
Torsion elements and torsion modules, decided by explicit witnesses.

A vector v in V_n is torsion when some morphism alpha out of [n] kills it.
Searches are bounded by a level budget, so a failed search is only evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import OrdMorphism, enumerate_morphisms
from .linalg import Matrix, hstack, image_basis, kernel_basis
from .modules import (
    PresentedModule,
    TruncatedModule,
    TruncationError,
    evaluate_presentation,
    submodule_generate,
)

TORSION = "TORSION"
NOT_TORSION = "NOT_TORSION"
NOT_TORSION_UP_TO = "NOT_TORSION_UP_TO"
TORSION_SUBMODULE = "TORSION_SUBMODULE"
UNKNOWN = "UNKNOWN"


@dataclass
class TorsionVerdict:
    kind: str
    budget: int
    witness: OrdMorphism | None = None
    level: int | None = None
    subspaces: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)  # per generator / level: (level, morphism or None)
    certificate: str = ""

    def __str__(self) -> str:
        if self.kind == TORSION and self.witness is not None:
            return f"{TORSION}(witness {self.witness})"
        if self.kind == NOT_TORSION_UP_TO:
            return f"{NOT_TORSION_UP_TO}({self.level})"
        if self.kind == TORSION_SUBMODULE:
            return f"{TORSION_SUBMODULE}(dims {[b.ncols for b in self.subspaces]})"
        if self.certificate:
            return f"{self.kind} ({self.certificate})"
        return self.kind


def _check_budget(V: TruncatedModule, n: int, L: int) -> None:
    if L > V.N or n > V.N:
        raise TruncationError(f"budget {L} / level {n} exceeds truncation {V.N}")


def torsion_witness(V: TruncatedModule, n: int, v, L: int) -> TorsionVerdict:
    """First morphism [n] -> [m], m <= L, killing v (by target, then lexicographic)."""
    _check_budget(V, n, L)
    v = list(v)
    if not any(v):
        return TorsionVerdict(TORSION, L, OrdMorphism.identity(n), n)
    for m in range(n + 1, L + 1):
        for f in enumerate_morphisms(n, m):
            if not any(V.morphism_matrix(f).apply(v)):
                return TorsionVerdict(TORSION, L, f, n)
    return TorsionVerdict(NOT_TORSION_UP_TO, L, level=L)


def witnessed_torsion_span(V: TruncatedModule, n: int, L: int) -> Matrix:
    """Span of all v in V_n killed by some morphism into a level <= L.

    A vector killed by f: [n] -> [m] is also killed by g f for every g into
    [L], so the kernels of the morphisms into [L] already cover every witness.
    The span is inside the torsion part because torsion elements form a
    subspace.
    """
    if n >= L:
        return Matrix.zeros(V.dims[n], 0)
    kers = [kernel_basis(V.morphism_matrix(f)) for f in enumerate_morphisms(n, L)]
    return image_basis(hstack(kers, V.dims[n]))


def torsion_submodule_lower(V: TruncatedModule, L: int) -> TorsionVerdict:
    """A submodule contained in the torsion part, monotone in L."""
    _check_budget(V, 0, L)
    seeds = []
    for n in range(L + 1):
        B = witnessed_torsion_span(V, n, L)
        for col in B.columns():
            seeds.append((n, col))
    sub = submodule_generate(V, seeds)
    return TorsionVerdict(TORSION_SUBMODULE, L, subspaces=list(sub.bases))


def free_injectivity_certificate(V: TruncatedModule, L: int) -> bool:
    """All generator matrices injective on levels < L."""
    from .linalg import rank

    return all(rank(V.gen(n, i)) == V.dims[n] for n in range(min(L, V.N)) for i in range(1, n + 2))


def is_torsion_module(P: PresentedModule, L: int, use_nakayama: bool = True) -> TorsionVerdict:
    """TORSION if every generator is witnessed within L.

    NOT_TORSION needs a certificate: either the presentation is free (all
    generator matrices of a free module are injective, checked up to L) or
    nu P is nonzero, which rules out torsion because nu kills torsion modules.
    """
    if P.max_degree() > L:
        raise TruncationError(f"presentation degrees up to {P.max_degree()} exceed budget {L}")
    Q = evaluate_presentation(P, L)
    V = Q.module
    wits = []
    all_found = True
    for j, b in enumerate(P.gens):
        # image of generator j in the quotient
        e = [0] * Q.ambient.dims[b]
        e[_generator_offset(P, j, b)] = 1
        v = Q.projections[b].apply(e)
        w = torsion_witness(V, b, v, L)
        wits.append((b, w.witness))
        all_found &= w.kind == TORSION
    if all_found:
        return TorsionVerdict(TORSION, L, witnesses=wits)
    if not P.rels or all(e.is_zero() for e in P.entries.values()):
        if free_injectivity_certificate(V, L):
            return TorsionVerdict(NOT_TORSION, L, witnesses=wits, certificate="free module: injective generator matrices")
    if use_nakayama:
        from .nakayama import nakayama

        nu = nakayama(P, max(P.gens))
        if not nu.is_zero():
            return TorsionVerdict(NOT_TORSION, L, witnesses=wits, certificate=f"nu is nonzero (dims {nu.dims})")
    return TorsionVerdict(UNKNOWN, L, witnesses=wits)


def _generator_offset(P: PresentedModule, j: int, b: int) -> int:
    """Coordinate of e_j (the identity of [b]) in the free cover at level b."""
    from math import comb

    return sum(comb(b, P.gens[k]) for k in range(j))
