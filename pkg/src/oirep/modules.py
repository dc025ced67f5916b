"""
Modules over the category: truncated (levelwise matrices up to a level N)
and finitely presented (generators and relations between free modules).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .algebra import AlgebraElement, left_mult_matrix
from .category import OrdMorphism, alpha, compose, enumerate_morphisms, factorize, morphism_index
from .linalg import (
    Matrix,
    Solver,
    block_diag,
    get_field,
    hstack,
    image_basis,
    is_invertible,
    kernel_basis,
    left_kernel_basis,
    rank,
    rref,
    vstack,
)


class TruncationError(ValueError):
    """A level beyond the stored truncation was requested."""


class InvariantError(ValueError):
    """Input data does not satisfy a structural requirement."""


class TruncatedModule:
    """A module known on levels 0..N.

    ``action[(n, i)]`` is the d_{n+1} x d_n matrix of alpha_{n,i} for
    0 <= n < N and 1 <= i <= n+1.
    """

    def __init__(self, N: int, dims, action: dict, name: str = ""):
        dims = list(dims)
        if N < 0 or len(dims) != N + 1:
            raise InvariantError(f"dims must have N+1 = {N + 1} entries, got {len(dims)}")
        self.N = N
        self.dims = dims
        self.action = dict(action)
        self.name = name
        for n in range(N):
            for i in range(1, n + 2):
                A = self.action.get((n, i))
                if A is None:
                    raise InvariantError(f"missing generator matrix for ({n},{i})")
                if A.shape != (dims[n + 1], dims[n]):
                    raise InvariantError(f"generator ({n},{i}) has shape {A.shape}, expected {(dims[n + 1], dims[n])}")
        self._cache: dict = {}

    def gen(self, n: int, i: int) -> Matrix:
        return self.action[(n, i)]

    def morphism_matrix(self, f: OrdMorphism) -> Matrix:
        """Matrix of the action of ``f``, composed along its canonical factorization."""
        if f.target > self.N:
            raise TruncationError(f"{f} leaves the truncation window 0..{self.N}")
        key = (f.source, f.values, f.target)
        M = self._cache.get(key)
        if M is None:
            if f.is_identity():
                M = Matrix.identity(self.dims[f.source])
            else:
                facs = factorize(f)
                # facs[-1] is innermost
                M = self.gen(facs[-1].source, facs[-1].missing()[0])
                for g in reversed(facs[:-1]):
                    M = self.gen(g.source, g.missing()[0]) @ M
            self._cache[key] = M
        return M

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedModule) and self.N == other.N and self.dims == other.dims
                and all(self.action[k] == other.action[k] for k in self.action))

    __hash__ = None

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"TruncatedModule({label}N={self.N}, dims={self.dims})"


def zero_module(N: int) -> TruncatedModule:
    return TruncatedModule(N, [0] * (N + 1),
                           {(n, i): Matrix.zeros(0, 0) for n in range(N) for i in range(1, n + 2)}, "0")


def free_module(n: int, N: int) -> TruncatedModule:
    """M(n) on levels 0..N; the basis at level m is enumerate_morphisms(n, m)."""
    if n > N:
        raise TruncationError(f"M({n}) needs truncation >= {n}, got {N}")
    dims = [comb(m, n) for m in range(N + 1)]
    action = {(m, i): left_mult_matrix(alpha(m, i), n) for m in range(N) for i in range(1, m + 2)}
    return TruncatedModule(N, dims, action, f"M({n})")


def validate(V: TruncatedModule) -> list[tuple[int, int, int]]:
    """Violated relation instances (n, p, q): A_{n+1,q} A_{n,p} != A_{n+1,p} A_{n,q-1}."""
    bad = []
    for n in range(V.N - 1):
        for q in range(2, n + 3):
            for p in range(1, q):
                if V.gen(n + 1, q) @ V.gen(n, p) != V.gen(n + 1, p) @ V.gen(n, q - 1):
                    bad.append((n, p, q))
    return bad


def check_valid(V: TruncatedModule) -> TruncatedModule:
    bad = validate(V)
    if bad:
        raise InvariantError(f"relation violated at (n, p, q) = {bad[0]}")
    return V


def act(V: TruncatedModule, f: OrdMorphism, v) -> list:
    if len(v) != V.dims[f.source]:
        raise ValueError(f"vector has length {len(v)}, level {f.source} has dimension {V.dims[f.source]}")
    return V.morphism_matrix(f).apply(list(v))


def truncate(V: TruncatedModule, N: int) -> TruncatedModule:
    if N > V.N:
        raise TruncationError(f"cannot raise truncation {V.N} to {N} by truncating")
    return TruncatedModule(N, V.dims[:N + 1], {k: A for k, A in V.action.items() if k[0] < N}, V.name)


def resize(V: TruncatedModule, N: int) -> TruncatedModule:
    """Truncate, or pad with zero levels when V already vanishes at its top level."""
    if N <= V.N:
        return truncate(V, N)
    if V.dims[V.N] != 0:
        raise TruncationError(f"cannot pad {V!r}: top level is nonzero")
    dims = V.dims + [0] * (N - V.N)
    action = dict(V.action)
    for n in range(V.N, N):
        for i in range(1, n + 2):
            action[(n, i)] = Matrix.zeros(0, dims[n])
    return TruncatedModule(N, dims, action, V.name)


def support_top(V: TruncatedModule) -> int:
    """Largest level with nonzero dimension, or -1 for the zero module."""
    return max((n for n, d in enumerate(V.dims) if d), default=-1)


def direct_sum(V: TruncatedModule, W: TruncatedModule) -> TruncatedModule:
    if V.N != W.N:
        raise TruncationError(f"truncations differ: {V.N} vs {W.N}")
    action = {k: block_diag([V.action[k], W.action[k]]) for k in V.action}
    name = f"{V.name}+{W.name}" if V.name and W.name else ""
    return TruncatedModule(V.N, [a + b for a, b in zip(V.dims, W.dims)], action, name)


def direct_sum_many(mods, N: int | None = None) -> TruncatedModule:
    mods = list(mods)
    if not mods:
        if N is None:
            raise ValueError("empty direct sum needs N")
        return zero_module(N)
    out = mods[0]
    for M in mods[1:]:
        out = direct_sum(out, M)
    return out


# ---------------------------------------------------------------------------
# subspaces, submodules, quotients


def canonical_basis(M: Matrix) -> tuple[Matrix, list[int]]:
    """Column basis in reduced form plus its pivot rows.

    The coordinates of a vector ``x`` in the span are ``x[pivots]``.
    """
    if M.ncols == 0:
        return Matrix.zeros(M.nrows, 0), []
    R, piv = rref(M.T)
    return R.T, piv


def coords_in(U: Matrix, pivots: list[int], X: Matrix) -> Matrix:
    return Matrix([X.rows[p] for p in pivots], X.ncols)


@dataclass
class Submodule:
    """Levelwise subspaces of an ambient module with the restricted module."""

    ambient: TruncatedModule
    bases: list  # canonical column bases
    pivots: list
    module: TruncatedModule

    @property
    def inclusions(self) -> list[Matrix]:
        return self.bases


def _restricted_module(V: TruncatedModule, bases, pivots, name="") -> TruncatedModule:
    action = {}
    for (n, i), A in V.action.items():
        action[(n, i)] = coords_in(bases[n + 1], pivots[n + 1], A @ bases[n])
    return TruncatedModule(V.N, [B.ncols for B in bases], action, name)


def submodule_from_subspaces(V: TruncatedModule, spans, check: bool = True) -> Submodule:
    """Submodule with the given levelwise spans (columns); must be action-closed."""
    bases, pivots = [], []
    for n in range(V.N + 1):
        S = spans[n] if spans[n] is not None else Matrix.zeros(V.dims[n], 0)
        if S.nrows != V.dims[n]:
            raise InvariantError(f"span at level {n} lives in dimension {S.nrows}, expected {V.dims[n]}")
        U, p = canonical_basis(S)
        bases.append(U)
        pivots.append(p)
    if check:
        for (n, i), A in V.action.items():
            img = A @ bases[n]
            if img.ncols and rank(hstack([bases[n + 1], img])) != bases[n + 1].ncols:
                raise InvariantError(f"subspaces are not closed under alpha_{{{n},{i}}}")
    return Submodule(V, bases, pivots, _restricted_module(V, bases, pivots))


def submodule_generate(V: TruncatedModule, seeds) -> Submodule:
    """Smallest submodule containing the (level, vector) seeds."""
    by_level: dict[int, list] = {}
    for lvl, v in seeds:
        if lvl > V.N:
            raise TruncationError(f"seed at level {lvl} beyond truncation {V.N}")
        if len(v) != V.dims[lvl]:
            raise ValueError(f"seed vector at level {lvl} has length {len(v)}")
        by_level.setdefault(lvl, []).append(list(v))
    spans = []
    prev = None
    for n in range(V.N + 1):
        cols = by_level.get(n, [])
        parts = [Matrix.from_columns(cols, V.dims[n])] if cols else []
        if prev is not None and prev.ncols:
            parts += [V.gen(n - 1, i) @ prev for i in range(1, n + 1)]
        S = hstack(parts) if parts else Matrix.zeros(V.dims[n], 0)
        prev = image_basis(S)
        spans.append(prev)
    return submodule_from_subspaces(V, spans, check=False)


@dataclass
class Quotient:
    ambient: TruncatedModule
    sub: Submodule
    projections: list  # (d_n - k_n) x d_n
    sections: list  # d_n x (d_n - k_n), P S = I
    module: TruncatedModule


def quotient(V: TruncatedModule, U) -> Quotient:
    """V / U for a Submodule (or list of action-closed spans) ``U``."""
    if not isinstance(U, Submodule):
        U = submodule_from_subspaces(V, U)
    F = get_field()
    projs, secs = [], []
    for n in range(V.N + 1):
        d = V.dims[n]
        B, piv = U.bases[n], U.pivots[n]
        pset = set(piv)
        rest = [j for j in range(d) if j not in pset]
        # x -> (x - B x[piv])[rest]
        P = []
        for j in rest:
            row = [0] * d
            row[j] = 1
            for k, pk in enumerate(piv):
                b = B.rows[j][k]
                if b:
                    row[pk] = F(row[pk] - b)
            P.append(row)
        projs.append(Matrix(P, d))
        secs.append(Matrix.from_columns([[1 if r == j else 0 for r in range(d)] for j in rest], d))
    action = {k: projs[k[0] + 1] @ A @ secs[k[0]] for k, A in V.action.items()}
    Q = TruncatedModule(V.N, [len(p.rows) for p in projs], action)
    return Quotient(V, U, projs, secs, Q)


def image_submodule(V: TruncatedModule, W: TruncatedModule, maps) -> Submodule:
    """Image of a module map V -> W given levelwise."""
    return submodule_from_subspaces(W, [image_basis(m) for m in maps], check=False)


def kernel_submodule(V: TruncatedModule, maps) -> Submodule:
    return submodule_from_subspaces(V, [kernel_basis(m) for m in maps], check=False)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class HomSpace:
    domain: object
    codomain: object
    basis: list  # each element: list of per-level matrices (truncated) or of generator images
    exact: bool
    kind: str = "truncated"  # "truncated" or "presented"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> list:
        if len(coeffs) != len(self.basis):
            raise ValueError("coefficient count does not match the basis")
        if not self.basis:
            raise ValueError("empty basis")
        out = None
        for c, phi in zip(coeffs, self.basis):
            if not c:
                continue
            term = [m.scale(c) for m in phi]
            out = term if out is None else [a + b for a, b in zip(out, term)]
        if out is None:
            out = [m.scale(0) for m in self.basis[0]]
        return out


def _stack_gens(V: TruncatedModule, n: int) -> Matrix:
    return hstack([V.gen(n, i) for i in range(1, n + 2)], V.dims[n + 1])


def _stack_data(V: TruncatedModule, n: int):
    """Stacked generators out of level n with their kernels and a transposed solver (cached on V)."""
    key = ("stack", n, repr(get_field()))
    data = V._cache.get(key)
    if data is None:
        A = _stack_gens(V, n)  # dv[n+1] x (n+1)dv[n]
        data = (A, kernel_basis(A), left_kernel_basis(A), Solver(A.T) if A.nrows else None)
        V._cache[key] = data
    return data


def hom_truncated(V: TruncatedModule, W: TruncatedModule) -> HomSpace:
    """All families (phi_0..phi_N) with phi_{n+1} A^V_{n,i} = A^W_{n,i} phi_n.

    Solutions are grown level by level: a family defined up to level n
    extends iff its right-hand side vanishes on the kernel of the stacked
    V-generators, and each extension is unique up to adding a matrix whose
    rows lie in the left kernel of that stack.
    """
    if V.N != W.N:
        raise TruncationError(f"truncations differ: {V.N} vs {W.N}")
    N = V.N
    dv, dw = V.dims, W.dims
    # level 0: phi_0 arbitrary
    fams = []
    for r in range(dw[0]):
        for c in range(dv[0]):
            E = [[0] * dv[0] for _ in range(dw[0])]
            E[r][c] = 1
            fams.append([Matrix(E, dv[0])])
    for n in range(N):
        if dw[n + 1] == 0:
            # every family extends uniquely by zero
            fams = [phi + [Matrix.zeros(0, dv[n + 1])] for phi in fams]
            continue
        A, K, Ys, solver = _stack_data(V, n)
        rhs = []
        for phi in fams:
            R = hstack([W.gen(n, i) @ phi[n] for i in range(1, n + 2)], dw[n + 1])
            rhs.append(R)
        if fams:
            # combinations whose right-hand side kills ker A
            cols = []
            for R in rhs:
                RK = R @ K
                cols.append([x for row in RK.rows for x in row])
            clen = dw[n + 1] * K.ncols
            C = kernel_basis(Matrix.from_columns(cols, clen)) if clen else Matrix.identity(len(fams))
            new_fams = []
            for col in C.columns():
                comb_phi = [None] * (n + 1)
                Rc = None
                for c, phi, R in zip(col, fams, rhs):
                    if not c:
                        continue
                    comb_phi = [m.scale(c) if a is None else a + m.scale(c) for a, m in zip(comb_phi, phi)]
                    Rc = R.scale(c) if Rc is None else Rc + R.scale(c)
                if A.nrows:
                    Xt = solver.solve(Rc.T)
                    if Xt is None:
                        raise AssertionError("consistent system reported unsolvable")
                    X = Xt.T
                else:
                    X = Matrix.zeros(dw[n + 1], 0)
                new_fams.append(comb_phi + [X])
            fams = new_fams
        # fresh families vanishing below level n+1
        for r in range(dw[n + 1]):
            for y in Ys.rows:
                Y = [[0] * dv[n + 1] for _ in range(dw[n + 1])]
                Y[r] = list(y)
                fams.append([Matrix.zeros(dw[k], dv[k]) for k in range(n + 1)] + [Matrix(Y, dv[n + 1])])
    return HomSpace(V, W, fams, exact=(dw[N] == 0), kind="truncated")


def is_homomorphism(V: TruncatedModule, W: TruncatedModule, phi) -> bool:
    for (n, i), A in V.action.items():
        if phi[n + 1] @ A != W.gen(n, i) @ phi[n]:
            return False
    return True


def levelwise_compose(g, f) -> list:
    return [a @ b for a, b in zip(g, f)]


def identity_map(V: TruncatedModule) -> list:
    return [Matrix.identity(d) for d in V.dims]


@dataclass
class IsoVerdict:
    verdict: str  # ISO, NOT_ISO, UNKNOWN
    witness: list | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict == "ISO"


def is_isomorphic(V: TruncatedModule, W: TruncatedModule, trials: int = 8, seed: int = 0,
                  witness=None) -> IsoVerdict:
    """Decide V ~ W on the truncation window.

    A supplied ``witness`` is checked first; otherwise random combinations of
    a Hom basis are tried.  UNKNOWN is returned rather than NOT_ISO when the
    search simply fails.
    """
    if V.N != W.N:
        return IsoVerdict("NOT_ISO", reason=f"truncations differ ({V.N} vs {W.N})")
    for n, (a, b) in enumerate(zip(V.dims, W.dims)):
        if a != b:
            return IsoVerdict("NOT_ISO", reason=f"dims differ at level {n}: {a} vs {b}")
    if witness is not None and _is_iso_map(V, W, witness):
        return IsoVerdict("ISO", witness, "supplied witness")
    H = hom_truncated(V, W)
    if H.dim == 0:
        if V.is_zero():
            return IsoVerdict("ISO", identity_map(V), "both zero")
        return IsoVerdict("NOT_ISO", reason="no nonzero homomorphism on the window")
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [rng.randint(-5, 5) for _ in range(H.dim)]
        phi = H.combine(coeffs)
        if all(is_invertible(m) for m in phi):
            return IsoVerdict("ISO", phi, "random combination of a Hom basis")
    return IsoVerdict("UNKNOWN", reason=f"no invertible combination in {trials} trials (dim Hom = {H.dim})")


def _is_iso_map(V, W, phi) -> bool:
    return (len(phi) == V.N + 1 and all(m.shape == (b, a) for m, a, b in zip(phi, V.dims, W.dims))
            and is_homomorphism(V, W, phi) and all(is_invertible(m) for m in phi))


def is_exact_at(f, g, dims_mid) -> bool:
    """Exactness of A --f--> B --g--> C at B, levelwise (lists of matrices)."""
    for n, d in enumerate(dims_mid):
        F, G = f[n], g[n]
        if not (G @ F).is_zero():
            return False
        if rank(F) + rank(G) != d:
            return False
    return True


def short_exact_check(A: TruncatedModule, B: TruncatedModule, C: TruncatedModule, f, g) -> bool:
    """0 -> A -f-> B -g-> C -> 0 exact and both maps module homomorphisms."""
    if not (is_homomorphism(A, B, f) and is_homomorphism(B, C, g)):
        return False
    for n in range(B.N + 1):
        if rank(f[n]) != A.dims[n] or rank(g[n]) != C.dims[n]:
            return False
    return is_exact_at(f, g, B.dims)


# ---------------------------------------------------------------------------
# presented modules


@dataclass
class PresentedModule:
    """coker( (+)_i M(a_i) -> (+)_j M(b_j) ); relation i is the tuple
    (entries[(i, j)])_j with entries[(i, j)] in span(b_j, a_i)."""

    gens: list
    rels: list
    entries: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        for (i, j), e in self.entries.items():
            if not (0 <= i < len(self.rels) and 0 <= j < len(self.gens)):
                raise InvariantError(f"relation entry ({i},{j}) out of range")
            if (e.source, e.target) != (self.gens[j], self.rels[i]):
                raise InvariantError(
                    f"entry ({i},{j}) lives in ({e.source},{e.target}), expected ({self.gens[j]},{self.rels[i]})")

    def entry(self, i: int, j: int) -> AlgebraElement:
        e = self.entries.get((i, j))
        if e is None:
            b, a = self.gens[j], self.rels[i]
            return AlgebraElement(b, a, (0,) * comb(a, b))
        return e

    def max_degree(self) -> int:
        return max(self.gens + self.rels, default=0)


def free_presentation(n: int) -> PresentedModule:
    return PresentedModule([n], [], {}, f"M({n})")


def free_sum_module(gens, N: int) -> TruncatedModule:
    return direct_sum_many([free_module(b, N) for b in gens], N)


def relation_vectors(P: PresentedModule, N: int) -> list[tuple[int, list]]:
    """Each relation as a (level, vector) inside the free module on the generators."""
    out = []
    for i, a in enumerate(P.rels):
        vec = []
        for j in range(len(P.gens)):
            vec.extend(P.entry(i, j).coeffs)
        out.append((a, vec))
    return out


def evaluate_presentation(P: PresentedModule, N: int) -> Quotient:
    if P.max_degree() > N:
        raise TruncationError(f"presentation degrees up to {P.max_degree()} exceed truncation {N}")
    F0 = free_sum_module(P.gens, N)
    U = submodule_generate(F0, relation_vectors(P, N))
    Q = quotient(F0, U)
    Q.module.name = P.name
    return Q


def hom_from_presentation(P: PresentedModule, W: TruncatedModule) -> HomSpace:
    """Hom(P, W) as tuples (w_j in W_{b_j}) annihilated by every relation.

    Basis elements are lists of generator images (one vector per generator).
    """
    if P.max_degree() > W.N:
        raise TruncationError(f"presentation degrees up to {P.max_degree()} exceed truncation {W.N}")
    offs = [0]
    for b in P.gens:
        offs.append(offs[-1] + W.dims[b])
    nvar = offs[-1]
    rows = []
    for i, a in enumerate(P.rels):
        parts = []
        for j, b in enumerate(P.gens):
            e = P.entry(i, j)
            M = Matrix.zeros(W.dims[a], W.dims[b])
            for c, f in e.terms():
                M = M + W.morphism_matrix(f).scale(c)
            parts.append(M)
        rows.append(hstack(parts, W.dims[a]))
    C = vstack(rows, nvar) if rows else Matrix.zeros(0, nvar)
    K = kernel_basis(C)
    basis = []
    for col in K.columns():
        basis.append([Matrix([[x] for x in col[offs[j]:offs[j + 1]]], 1) for j in range(len(P.gens))])
    return HomSpace(P, W, basis, exact=True, kind="presented")


def presented_map_to_levels(P: PresentedModule, Q: Quotient, W: TruncatedModule, images) -> list:
    """Turn generator images into levelwise matrices on evaluate_presentation(P).

    ``images[j]`` is a column vector in W_{b_j}.
    """
    F0 = Q.ambient
    out = []
    for n in range(F0.N + 1):
        cols = []
        for j, b in enumerate(P.gens):
            if b > n:
                continue
            w = [r[0] for r in images[j].rows]
            for f in enumerate_morphisms(b, n):
                cols.append(act(W, f, w))
        Phi0 = Matrix.from_columns(cols, W.dims[n]) if cols else Matrix.zeros(W.dims[n], 0)
        out.append(Phi0 @ Q.sections[n])
    return out


# ---------------------------------------------------------------------------
# random modules


def random_module(rng: random.Random, N: int, max_dim: int = 3, coeff: int = 2,
                  dims=None) -> TruncatedModule:
    """A random lawful module on levels 0..N.

    Level dims are drawn from 0..max_dim.  The generator matrices out of
    level n are chosen row by row from the solution space of the relations
    that involve the already fixed matrices out of level n-1, so no
    rejection is needed.
    """
    if dims is None:
        dims = [rng.randint(0, max_dim) for _ in range(N + 1)]
    dims = list(dims)
    action = {}

    F = get_field()

    def rnd():
        return F(rng.randint(-coeff, coeff))

    for n in range(N):
        d0, d1 = dims[n], dims[n + 1]
        if n == 0:
            action[(0, 1)] = Matrix([[rnd() for _ in range(d0)] for _ in range(d1)], d0)
            continue
        # unknown row vectors x_1..x_{n+1} (each of length d0); relations
        # x_q A_{n-1,p} = x_p A_{n-1,q-1} for 1 <= p < q <= n+1
        dm = dims[n - 1]
        nv = (n + 1) * d0
        eqs = []
        for q in range(2, n + 2):
            for p in range(1, q):
                Ap = action[(n - 1, p)]
                Aq = action[(n - 1, q - 1)]
                for c in range(dm):
                    row = [0] * nv
                    for k in range(d0):
                        row[(q - 1) * d0 + k] += Ap.rows[k][c]
                        row[(p - 1) * d0 + k] -= Aq.rows[k][c]
                    eqs.append(row)
        K = kernel_basis(Matrix(eqs, nv)) if eqs else Matrix.identity(nv)
        rows_by_gen = {i: [] for i in range(1, n + 2)}
        for _ in range(d1):
            cs = [rnd() for _ in range(K.ncols)]
            x = K.apply(cs) if K.ncols else [0] * nv
            for i in range(1, n + 2):
                rows_by_gen[i].append(x[(i - 1) * d0:i * d0])
        for i in range(1, n + 2):
            action[(n, i)] = Matrix(rows_by_gen[i], d0)
    return TruncatedModule(N, dims, action, "random")


def random_finite_support(rng: random.Random, N: int, support: int, max_dim: int = 3) -> TruncatedModule:
    """Random module vanishing above level ``support`` (which must be < N)."""
    if support >= N:
        raise TruncationError(f"support {support} must stay below the truncation {N}")
    dims = [rng.randint(0, max_dim) for _ in range(support + 1)] + [0] * (N - support)
    return random_module(rng, N, max_dim, dims=dims)


def random_presented(rng: random.Random, max_gen_degree: int = 2, max_gens: int = 2,
                     max_rels: int = 2, rel_gap: int = 2, coeff: int = 2) -> PresentedModule:
    """Random presentation with small degrees and integer coefficients."""
    F = get_field()
    gens = sorted(rng.randint(0, max_gen_degree) for _ in range(rng.randint(1, max_gens)))
    rels = []
    entries = {}
    for i in range(rng.randint(0, max_rels)):
        a = rng.randint(min(gens), max(gens) + rel_gap)
        rels.append(a)
    rels.sort()
    for i, a in enumerate(rels):
        for j, b in enumerate(gens):
            if b > a:
                continue
            mors = enumerate_morphisms(b, a)
            terms = [(rng.randint(-coeff, coeff), f) for f in mors if rng.random() < 0.5]
            e = AlgebraElement.from_terms(b, a, [(F(c), f) for c, f in terms])
            if not e.is_zero():
                entries[(i, j)] = e
    return PresentedModule(gens, rels, entries, "random")


def compose_algebra(g: OrdMorphism, e: AlgebraElement) -> AlgebraElement:
    """g e for a morphism g with source e.target."""
    return AlgebraElement.from_terms(e.source, g.target, [(c, compose(g, f)) for c, f in e.terms()])


def index_vector(f: OrdMorphism) -> list:
    idx = morphism_index(f.source, f.target)
    v = [0] * len(idx)
    v[idx[f.values]] = 1
    return v
