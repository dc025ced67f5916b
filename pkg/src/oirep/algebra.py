"""
Slices of the category algebra: the span of all morphisms [m] -> [n] with
the morphisms of ``enumerate_morphisms(m, n)`` as basis, and ideals stored
levelwise as subspaces of those spans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .category import (
    OrdMorphism,
    PreconditionError,
    alpha,
    check_side,
    compose,
    enumerate_morphisms,
    morphism_index,
    submerge,
)
from .linalg import Matrix, get_field, kernel_basis, row_basis, vstack


@dataclass(frozen=True)
class AlgebraElement:
    """A linear combination of morphisms [source] -> [target]."""

    source: int
    target: int
    coeffs: tuple = field(default=())

    def __post_init__(self):
        if len(self.coeffs) != comb(self.target, self.source):
            raise ValueError("coefficient vector has the wrong length")

    @classmethod
    def from_terms(cls, m: int, n: int, terms) -> AlgebraElement:
        """``terms`` is an iterable of (coefficient, morphism)."""
        F = get_field()
        idx = morphism_index(m, n)
        v = [0] * len(idx)
        for c, f in terms:
            if (f.source, f.target) != (m, n):
                raise ValueError(f"term {f} does not live in ({m},{n})")
            v[idx[f.values]] = F(v[idx[f.values]] + c)
        return cls(m, n, tuple(v))

    @classmethod
    def basis(cls, f: OrdMorphism) -> AlgebraElement:
        return cls.from_terms(f.source, f.target, [(1, f)])

    def terms(self) -> list[tuple]:
        mors = enumerate_morphisms(self.source, self.target)
        return [(c, mors[k]) for k, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("cannot add elements of different slices")
        F = get_field()
        return AlgebraElement(self.source, self.target, tuple(F(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + other.scale(-1)

    def scale(self, c) -> AlgebraElement:
        F = get_field()
        return AlgebraElement(self.source, self.target, tuple(F(c * a) for a in self.coeffs))

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        """Algebra product: composition where defined, zero otherwise."""
        if other.target != self.source:
            return AlgebraElement(other.source, self.target, (0,) * comb(self.target, other.source))
        terms = [(a * b, compose(g, f)) for a, g in self.terms() for b, f in other.terms()]
        return AlgebraElement.from_terms(other.source, self.target, terms)

    def __str__(self) -> str:
        from .linalg import render_scalar

        parts = [f"{render_scalar(c)}*{f}" for c, f in self.terms()]
        return " + ".join(parts) if parts else f"0@{self.source}->{self.target}"


@lru_cache(maxsize=None)
def left_mult_matrix(g: OrdMorphism, m: int) -> Matrix:
    """Matrix of x -> g x from span(m, g.source) to span(m, g.target)."""
    src = enumerate_morphisms(m, g.source)
    idx = morphism_index(m, g.target)
    M = [[0] * len(src) for _ in range(len(idx))]
    for j, f in enumerate(src):
        M[idx[compose(g, f).values]][j] = 1
    return Matrix(M, len(src))


@lru_cache(maxsize=None)
def right_mult_matrix(h: OrdMorphism, n: int) -> Matrix:
    """Matrix of x -> x h from span(h.target, n) to span(h.source, n)."""
    src = enumerate_morphisms(h.target, n)
    idx = morphism_index(h.source, n)
    M = [[0] * len(src) for _ in range(len(idx))]
    for j, f in enumerate(src):
        M[idx[compose(f, h).values]][j] = 1
    return Matrix(M, len(src))


class IdealSlice:
    """A subspace of span(m, n), kept as canonical RREF rows."""

    __slots__ = ("source", "target", "basis")

    def __init__(self, source: int, target: int, rows: Matrix | None = None):
        self.source = source
        self.target = target
        d = comb(target, source) if source <= target else 0
        if rows is None:
            rows = Matrix.zeros(0, d)
        if rows.ncols != d:
            raise ValueError("slice basis has the wrong width")
        self.basis = row_basis(rows)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def ambient_dim(self) -> int:
        return self.basis.ncols

    def contains(self, vectors: Matrix) -> bool:
        """Are the rows of ``vectors`` inside this slice?"""
        if vectors.nrows == 0:
            return True
        return row_basis(vstack([self.basis, vectors])).nrows == self.dim

    def __eq__(self, other) -> bool:
        return (isinstance(other, IdealSlice) and (self.source, self.target) == (other.source, other.target)
                and self.basis == other.basis)

    __hash__ = None

    def __repr__(self) -> str:
        return f"IdealSlice(({self.source},{self.target}), dim={self.dim}/{self.ambient_dim})"


def _span_of(m: int, n: int, pred) -> IdealSlice:
    mors = enumerate_morphisms(m, n)
    rows = [[1 if k == j else 0 for k in range(len(mors))] for j, f in enumerate(mors) if pred(f)]
    return IdealSlice(m, n, Matrix(rows, len(mors)))


def named_ideal_slice(name: str, m: int, n: int) -> IdealSlice:
    """Level (m, n) of Ia, Ib or the augmentation ideal Aug."""
    if name in ("Ia", "Ib"):
        if m < 1:
            raise PreconditionError(f"{name} is an ideal of the positive part; source must be >= 1")
        if name == "Ia":
            return _span_of(m, n, lambda f: f.values[0] != 1)
        return _span_of(m, n, lambda f: f.values[-1] != n)
    if name == "Aug":
        mors = enumerate_morphisms(m, n)
        d = len(mors)
        rows = [[1 if k == 0 else (-1 if k == j else 0) for k in range(d)] for j in range(1, d)]
        return IdealSlice(m, n, Matrix(rows, d))
    raise ValueError(f"unknown ideal {name!r}")


def ideal_closure(generators, kind: str, max_level: int, positive: bool = False) -> dict:
    """Smallest family of slices containing ``generators`` and closed under
    left, right or two-sided multiplication by morphisms with target <= max_level.

    With ``positive`` only sources >= 1 are used (ideals of the positive part).
    Returns a dict (m, n) -> IdealSlice for 0 <= m <= n <= max_level.
    """
    if kind not in ("left", "right", "two_sided"):
        raise ValueError(f"kind must be left, right or two_sided, got {kind!r}")
    lo = 1 if positive else 0
    rows: dict[tuple[int, int], list[Matrix]] = {}
    for m in range(lo, max_level + 1):
        for n in range(m, max_level + 1):
            rows[(m, n)] = []
    for g in generators:
        if g.target <= max_level and g.source >= lo:
            rows[(g.source, g.target)].append(Matrix([list(g.coeffs)], len(g.coeffs)))
    slices = {k: IdealSlice(k[0], k[1], vstack(v, comb(k[1], k[0]))) for k, v in rows.items()}

    def left_sweep() -> bool:
        grew = False
        for m in range(lo, max_level + 1):
            for n in range(m, max_level):
                S = slices[(m, n)]
                if S.dim == 0:
                    continue
                imgs = [(left_mult_matrix(alpha(n, i), m) @ S.basis.T).T for i in range(1, n + 2)]
                T = slices[(m, n + 1)]
                new = IdealSlice(m, n + 1, vstack([T.basis] + imgs))
                if new.dim > T.dim:
                    slices[(m, n + 1)] = new
                    grew = True
        return grew

    def right_sweep() -> bool:
        grew = False
        for n in range(lo, max_level + 1):
            for m in range(n, lo, -1):
                S = slices[(m, n)]
                if S.dim == 0:
                    continue
                imgs = [(right_mult_matrix(alpha(m - 1, i), n) @ S.basis.T).T for i in range(1, m + 1)]
                T = slices[(m - 1, n)]
                new = IdealSlice(m - 1, n, vstack([T.basis] + imgs))
                if new.dim > T.dim:
                    slices[(m - 1, n)] = new
                    grew = True
        return grew

    while True:
        grew = False
        if kind in ("left", "two_sided"):
            grew |= left_sweep()
        if kind in ("right", "two_sided"):
            grew |= right_sweep()
        if not grew or kind != "two_sided":
            break
    return slices


def named_generators(name: str, max_level: int) -> list[AlgebraElement]:
    """Standard generating sets: alpha_{n,1}, alpha_{n,n+1}, or the
    differences alpha_{m,1} - alpha_{m,2} / alpha_{m,m} - alpha_{m,m+1}."""
    out = []
    for n in range(1, max_level):
        if name == "Ia":
            out.append(AlgebraElement.basis(alpha(n, 1)))
        elif name == "Ib":
            out.append(AlgebraElement.basis(alpha(n, n + 1)))
        elif name == "diff_a":
            out.append(AlgebraElement.basis(alpha(n, 1)) - AlgebraElement.basis(alpha(n, 2)))
        elif name == "diff_b":
            out.append(AlgebraElement.basis(alpha(n, n)) - AlgebraElement.basis(alpha(n, n + 1)))
        else:
            raise ValueError(f"unknown generator family {name!r}")
    return out


def aug_generators(max_level: int) -> list[AlgebraElement]:
    out = []
    for m in range(max_level + 1):
        for n in range(m + 1, max_level + 1):
            mors = enumerate_morphisms(m, n)
            for f in mors[1:]:
                out.append(AlgebraElement.basis(mors[0]) - AlgebraElement.basis(f))
    return out


def submerge_kernel_slice(side: str, m: int, n: int) -> IdealSlice:
    """Kernel at (m, n) of the linear map alpha -> submerge(side, alpha)."""
    check_side(side)
    if m < 1:
        raise PreconditionError("the submersion map is defined for source >= 1")
    groups: dict = {}
    for j, f in enumerate(enumerate_morphisms(m, n)):
        groups.setdefault(submerge(side, f), []).append(j)
    d = comb(n, m)
    rows = []
    for members in groups.values():
        for j in members[1:]:
            r = [0] * d
            r[members[0]] = 1
            r[j] = -1
            rows.append(r)
    return IdealSlice(m, n, Matrix(rows, d))


def guarded_submerge_kernel_slice(side: str, m: int, n: int) -> IdealSlice:
    """Kernel at (m, n) of the map sending alpha to its submersion when alpha
    fixes the extreme point and to 0 otherwise."""
    from .category import fixes_extreme

    check_side(side)
    if m < 1:
        raise PreconditionError("the guarded submersion map is defined for source >= 1")
    return _span_of(m, n, lambda f: not fixes_extreme(side, f))


def f_kernel_slice(n: int, i: int, m: int) -> IdealSlice:
    """Level m of K_i: elements of span(n, m) killed by right multiplication with alpha_{n-1,i}."""
    if n < 1 or not 1 <= i <= n:
        raise ValueError(f"index i={i} out of range for n={n}")
    R = right_mult_matrix(alpha(n - 1, i), m)
    return IdealSlice(n, m, kernel_basis(R).T)


def factor_through_slice(side: str, m: int, n: int, through: str) -> IdealSlice:
    """span{g rho_m} (``through='left'``) or span{rho_{n-1} h} (``'right'``) at (m, n)."""
    from .category import rho

    d = comb(n, m)
    idx = morphism_index(m, n)
    rows = []
    if through == "left":
        r = rho(side, m)
        fs = [compose(g, r) for g in enumerate_morphisms(m + 1, n)]
    else:
        r = rho(side, n - 1) if n >= 1 else None
        fs = [compose(r, h) for h in enumerate_morphisms(m, n - 1)] if r is not None else []
    for f in fs:
        row = [0] * d
        row[idx[f.values]] = 1
        rows.append(row)
    return IdealSlice(m, n, Matrix(rows, d))


@dataclass
class IdealCheckRow:
    lemma: str
    label: str
    source: int
    target: int
    lhs_dim: int
    rhs_dim: int
    ok: bool

    @property
    def verdict(self) -> str:
        return "PASS" if self.ok else "FAIL"


LEMMAS = ("2.2", "2.3", "3.6", "4.8")


def _compare(lemma, label, closure: dict, target, keys) -> list[IdealCheckRow]:
    out = []
    for (m, n) in keys:
        A, B = closure[(m, n)], target(m, n)
        out.append(IdealCheckRow(lemma, label, m, n, A.dim, B.dim, A == B))
    return out


def verify_lemma(lemma: str, max_level: int) -> list[IdealCheckRow]:
    """Generated ideals against their extensional descriptions, one row per slice."""
    L = max_level
    pos = [(m, n) for m in range(1, L + 1) for n in range(m, L + 1)]
    rows = []
    if lemma == "2.2":
        for name in ("Ia", "Ib"):
            cl = ideal_closure(named_generators(name, L), "two_sided", L, positive=True)
            rows += _compare(lemma, f"{name} two-sided", cl, lambda m, n, s=name: named_ideal_slice(s, m, n), pos)
    elif lemma == "2.3":
        for name, side in (("Ia", "a"), ("Ib", "b")):
            for kind in ("left", "right"):
                cl = ideal_closure(named_generators(name, L), kind, L, positive=True)
                rows += _compare(lemma, f"{name} {kind}", cl, lambda m, n, s=name: named_ideal_slice(s, m, n), pos)
            # the slice is spanned by morphisms factoring through rho_m
            fac = {(m, n): factor_through_slice(side, m, n, "left") for (m, n) in pos}
            rows += _compare(lemma, f"{name} via rho", fac, lambda m, n, s=name: named_ideal_slice(s, m, n), pos)
    elif lemma == "3.6":
        for name, side in (("diff_a", "a"), ("diff_b", "b")):
            cl = ideal_closure(named_generators(name, L), "left", L, positive=True)
            rows += _compare(lemma, f"{name} left", cl, lambda m, n, s=side: submerge_kernel_slice(s, m, n), pos)
    elif lemma == "4.8":
        for n in range(1, min(3, L - 1) + 1):
            for i in range(1, n + 1):
                g = AlgebraElement.basis(alpha(n, i)) - AlgebraElement.basis(alpha(n, i + 1))
                cl = ideal_closure([g], "two_sided", L)
                keys = [(n, m) for m in range(n, L + 1)]
                rows += _compare(lemma, f"K_{i} (n={n})", cl,
                                 lambda s, m, n=n, i=i: f_kernel_slice(n, i, m), keys)
    else:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    return rows
