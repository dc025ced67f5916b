"""
The functors S, K, D, Gamma, Q, B, R, Psi (each for side a and b) acting on
truncated modules, plus the pull-back B' along the submersion.

Every functor reports the truncation its output can be trusted up to:
S, K, D lose one level, R loses two (it needs K one level up), Gamma and Q
lose none, B gains one.  Psi keeps the levels where its colimit was seen to
stabilize.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import (
    OrdMorphism,
    alpha,
    boundary,
    check_side,
    embed,
    fixes_extreme,
    other,
    rho,
    submerge,
)
from .linalg import Matrix, blocks, hstack, image_basis, is_invertible, kernel_basis, vstack
from .modules import (
    TruncatedModule,
    TruncationError,
    coords_in,
    quotient,
    submodule_from_subspaces,
    submodule_generate,
    truncate,
)


class StabilizationError(RuntimeError):
    """The colimit defining Psi did not stabilize inside the truncation."""


@dataclass
class FunctorResult:
    module: TruncatedModule
    truncation: int
    provenance: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


class Functor:
    name = "?"

    def __init__(self, side: str):
        self.side = check_side(side)

    @property
    def label(self) -> str:
        return f"{self.name}{self.side}"

    def out_truncation(self, N: int) -> int:
        raise NotImplementedError

    def __call__(self, V: TruncatedModule) -> FunctorResult:
        raise NotImplementedError

    def on_map(self, phi, src: FunctorResult, dst: FunctorResult) -> list:
        """Levelwise matrices of F(phi) between previously computed results."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.label


def _assemble(N: int, dims, act) -> TruncatedModule:
    """Build a module from a function giving the matrix of any irreducible."""
    action = {}
    for n in range(N):
        for i in range(1, n + 2):
            M = act(alpha(n, i))
            if M.shape != (dims[n + 1], dims[n]):
                raise AssertionError(f"functor produced shape {M.shape} for ({n},{i})")
            action[(n, i)] = M
    return TruncatedModule(N, dims, action)


# ---------------------------------------------------------------------------
# S, K, D


class Shift(Functor):
    name = "S"

    def out_truncation(self, N):
        return N - 1

    def unit(self, V: TruncatedModule, N: int) -> list:
        """The natural map V -> S V on levels 0..N."""
        return [V.morphism_matrix(rho(self.side, n)) for n in range(N + 1)]

    def __call__(self, V):
        if V.N < 1:
            raise TruncationError("shift needs truncation >= 1")
        N = V.N - 1
        dims = V.dims[1:]
        mod = _assemble(N, dims, lambda f: V.morphism_matrix(embed(self.side, f)))
        mod.name = f"S{self.side}({V.name})" if V.name else ""
        return FunctorResult(mod, N, {"unit": self.unit(V, N)})

    def on_map(self, phi, src, dst):
        return [phi[n + 1] for n in range(src.truncation + 1)]


class KernelFunctor(Functor):
    name = "K"

    def out_truncation(self, N):
        return N - 1

    def __call__(self, V):
        if V.N < 1:
            raise TruncationError("K needs truncation >= 1")
        N = V.N - 1
        unit = Shift(self.side).unit(V, N)
        sub = submodule_from_subspaces(truncate(V, N), [kernel_basis(u) for u in unit], check=True)
        mod = sub.module
        mod.name = f"K{self.side}({V.name})" if V.name else ""
        return FunctorResult(mod, N, {"inclusion": sub.bases, "submodule": sub})

    def on_map(self, phi, src, dst):
        a, b = src.provenance["submodule"], dst.provenance["submodule"]
        return [coords_in(b.bases[n], b.pivots[n], phi[n] @ a.bases[n]) for n in range(src.truncation + 1)]


class Derivative(Functor):
    name = "D"

    def out_truncation(self, N):
        return N - 1

    def __call__(self, V):
        S = Shift(self.side)(V)
        img = [image_basis(u) for u in S.provenance["unit"]]
        Q = quotient(S.module, submodule_from_subspaces(S.module, img, check=True))
        mod = Q.module
        mod.name = f"D{self.side}({V.name})" if V.name else ""
        return FunctorResult(mod, S.truncation, {"projection": Q.projections, "quotient": Q,
                                                 "unit": S.provenance["unit"]})

    def on_map(self, phi, src, dst):
        a, b = src.provenance["quotient"], dst.provenance["quotient"]
        return [b.projections[n] @ phi[n + 1] @ a.sections[n] for n in range(src.truncation + 1)]


# ---------------------------------------------------------------------------
# Gamma


class Gamma(Functor):
    name = "G"

    def out_truncation(self, N):
        return N

    def summand_levels(self, n: int) -> list[int]:
        """Input levels of the summands of level n, in summand order s = 1..n."""
        if self.side == "a":
            return [n - s for s in range(1, n + 1)]
        return [s - 1 for s in range(1, n + 1)]

    def block_morphism(self, f: OrdMorphism, s: int) -> tuple[int, OrdMorphism]:
        """Target summand and the morphism acting on summand ``s`` under ``f``."""
        t = f(s)
        if self.side == "a":
            return t, OrdMorphism(f.source - s, f.target - t, tuple(f(s + i) - t for i in range(1, f.source - s + 1)))
        return t, OrdMorphism(s - 1, t - 1, tuple(f(i) for i in range(1, s)))

    def action_matrix(self, V: TruncatedModule, f: OrdMorphism) -> Matrix:
        m, n = f.source, f.target
        src = self.summand_levels(m)
        dst = self.summand_levels(n)
        grid = [[Matrix.zeros(V.dims[dst[t]], V.dims[src[s]]) for s in range(m)] for t in range(n)]
        for s in range(1, m + 1):
            t, g = self.block_morphism(f, s)
            grid[t - 1][s - 1] = V.morphism_matrix(g)
        return _grid(grid, [V.dims[x] for x in dst], [V.dims[x] for x in src])

    def __call__(self, V):
        N = V.N
        dims = [sum(V.dims[x] for x in self.summand_levels(n)) for n in range(N + 1)]
        mod = _assemble(N, dims, lambda f: self.action_matrix(V, f))
        mod.name = f"G{self.side}({V.name})" if V.name else ""
        return FunctorResult(mod, N)

    def on_map(self, phi, src, dst):
        return [_block_diag_or_empty([phi[x] for x in self.summand_levels(n)])
                for n in range(src.truncation + 1)]


def _grid(grid, row_dims, col_dims) -> Matrix:
    if not grid:
        return Matrix.zeros(0, sum(col_dims))
    if not grid[0]:
        return Matrix.zeros(sum(row_dims), 0)
    return blocks(grid)


def _block_diag_or_empty(mats) -> Matrix:
    from .linalg import block_diag

    return block_diag(mats) if mats else Matrix.zeros(0, 0)


# ---------------------------------------------------------------------------
# Q, B, B', R


class Coinduction(Functor):
    name = "Q"

    def out_truncation(self, N):
        return N

    def action_matrix(self, V: TruncatedModule, f: OrdMorphism) -> Matrix:
        n, ell = f.source, f.target
        dn, dn1 = V.dims[n], (V.dims[n - 1] if n >= 1 else 0)
        dl, dl1 = V.dims[ell], (V.dims[ell - 1] if ell >= 1 else 0)
        top = hstack([V.morphism_matrix(f), Matrix.zeros(dl, dn1)])
        if fixes_extreme(self.side, f):
            bot = hstack([Matrix.zeros(dl1, dn), V.morphism_matrix(submerge(self.side, f))])
        elif ell >= 1:
            bot = hstack([V.morphism_matrix(boundary(self.side, "lower", f)), Matrix.zeros(dl1, dn1)])
        else:
            bot = Matrix.zeros(0, dn + dn1)
        return vstack([top, bot])

    def __call__(self, V):
        N = V.N
        dims = [V.dims[n] + (V.dims[n - 1] if n else 0) for n in range(N + 1)]
        mod = _assemble(N, dims, lambda f: self.action_matrix(V, f))
        mod.name = f"Q{self.side}({V.name})" if V.name else ""
        # 0 -> B V -> Q V -> V -> 0
        inc = [vstack([Matrix.zeros(V.dims[n], dims[n] - V.dims[n]), Matrix.identity(dims[n] - V.dims[n])])
               for n in range(N + 1)]
        proj = [hstack([Matrix.identity(V.dims[n]), Matrix.zeros(V.dims[n], dims[n] - V.dims[n])])
                for n in range(N + 1)]
        return FunctorResult(mod, N, {"ses_in": inc, "ses_out": proj})

    def on_map(self, phi, src, dst):
        from .linalg import block_diag

        return [block_diag([phi[n]] + ([phi[n - 1]] if n else [])) for n in range(src.truncation + 1)]


class NegativeShift(Functor):
    """B: level n is V_{n-1}; alpha acts through its submersion when it fixes
    the extreme point and by zero otherwise."""

    name = "B"

    def out_truncation(self, N):
        return N + 1

    def action_matrix(self, V: TruncatedModule, f: OrdMorphism) -> Matrix:
        n, ell = f.source, f.target
        dn = V.dims[n - 1] if n >= 1 else 0
        dl = V.dims[ell - 1] if ell >= 1 else 0
        if n >= 1 and fixes_extreme(self.side, f):
            return V.morphism_matrix(submerge(self.side, f))
        return Matrix.zeros(dl, dn)

    def __call__(self, V):
        N = V.N + 1
        dims = [0] + list(V.dims)
        mod = _assemble(N, dims, lambda f: self.action_matrix(V, f))
        mod.name = f"B{self.side}({V.name})" if V.name else ""
        return FunctorResult(mod, N)

    def on_map(self, phi, src, dst):
        return [Matrix.zeros(0, 0)] + [phi[n - 1] for n in range(1, src.truncation + 1)]


class NegativeShiftPullback(NegativeShift):
    """B': pull-back along the submersion, with no guard."""

    name = "B'"

    def action_matrix(self, V, f):
        if f.source == 0:
            return Matrix.zeros(V.dims[f.target - 1] if f.target else 0, 0)
        return V.morphism_matrix(submerge(self.side, f))


class RFunctor(Functor):
    name = "R"

    def out_truncation(self, N):
        return N - 2

    def __call__(self, V):
        if V.N < 2:
            raise TruncationError("R needs truncation >= 2")
        N = V.N - 2
        s = self.side
        K = KernelFunctor(s)(V).provenance["submodule"]  # on levels 0..V.N-1
        kd = [K.bases[n].ncols for n in range(V.N)]
        dims = [V.dims[n] + kd[n + 1] for n in range(N + 1)]

        def act(f):
            n, ell = f.source, f.target
            U = K.bases[n + 1]
            top_left = V.morphism_matrix(f)
            if fixes_extreme(s, f):
                top_right = Matrix.zeros(V.dims[ell], kd[n + 1])
            else:
                top_right = (V.morphism_matrix(boundary(s, "raise", f)) @ U).scale(-1)
            lift = coords_in(K.bases[ell + 1], K.pivots[ell + 1], V.morphism_matrix(embed(s, f)) @ U)
            return vstack([hstack([top_left, top_right]),
                           hstack([Matrix.zeros(kd[ell + 1], V.dims[n]), lift])])

        mod = _assemble(N, dims, act)
        mod.name = f"R{s}({V.name})" if V.name else ""
        inc = [vstack([Matrix.identity(V.dims[n]), Matrix.zeros(kd[n + 1], V.dims[n])]) for n in range(N + 1)]
        proj = [hstack([Matrix.zeros(kd[n + 1], V.dims[n]), Matrix.identity(kd[n + 1])]) for n in range(N + 1)]
        return FunctorResult(mod, N, {"ses_in": inc, "ses_out": proj, "kernel": K})

    def on_map(self, phi, src, dst):
        from .linalg import block_diag

        a, b = src.provenance["kernel"], dst.provenance["kernel"]
        out = []
        for n in range(src.truncation + 1):
            k = coords_in(b.bases[n + 1], b.pivots[n + 1], phi[n + 1] @ a.bases[n + 1])
            out.append(block_diag([phi[n], k]))
        return out


# ---------------------------------------------------------------------------
# Psi


def transition_morphism(side: str, f: OrdMorphism, t: int) -> OrdMorphism:
    """The map [t+m] -> [t+n] through which f acts on the t-th level of the
    iterated shifts: identity on the t untouched points, f on the shifted ones.

    For side a the shifted points sit on top (shifts on side b); for side b
    they sit at the bottom.
    """
    m, n = f.source, f.target
    if side == "a":
        vals = tuple(range(1, t + 1)) + tuple(f(i) + t for i in range(1, m + 1))
    else:
        vals = tuple(f(i) for i in range(1, m + 1)) + tuple(i - m + n for i in range(m + 1, m + t + 1))
    return OrdMorphism(m + t, n + t, vals)


class Psi(Functor):
    """Psi_a V at level n is the colimit over r of (W / Aug W)_r with
    W = D_b S_b^n V; Psi_b is the mirror image built from D_a S_a^n."""

    name = "Psi"

    def __init__(self, side: str, r_star: int | None = None, max_level: int | None = None):
        super().__init__(side)
        self.r_star = r_star
        self.max_level = max_level

    @property
    def label(self) -> str:
        return "PsiA" if self.side == "a" else "PsiB"

    def out_truncation(self, N):
        return None

    def _hole_index(self, n: int, r: int) -> int:
        """Irreducible [r+n] -> [r+n+1] whose cokernel defines level r of D S^n."""
        return r + 1 if self.side == "a" else n + 1

    def _level_data(self, V: TruncatedModule, n: int) -> dict:
        """Quotients Y_r = (W / Aug W)_r for r = 0..V.N-n-1 and their connecting maps."""
        R = V.N - n - 1
        if R < 0:
            return {"R": R, "Y": [], "links": []}
        # W_r = V_{r+n+1} / im V(alpha_{r+n, hole})
        base = []
        for r in range(R + 1):
            A = V.gen(r + n, self._hole_index(n, r))
            base.append(image_basis(A))
        Wmod = self._w_module(V, n, R, base)
        W = Wmod.module
        seeds = []
        for r in range(R):
            A1 = W.gen(r, 1)
            for i in range(2, r + 2):
                D = W.gen(r, i) - A1
                for col in D.columns():
                    if any(col):
                        seeds.append((r + 1, col))
        aug = submodule_generate(W, seeds)
        Y = quotient(W, aug)
        # connecting maps along any irreducible (all agree modulo Aug)
        links = [Y.module.gen(r, 1) for r in range(R)]
        return {"R": R, "W": Wmod, "Y": Y, "links": links}

    def _w_module(self, V, n, R, base):
        dims = [V.dims[r + n + 1] for r in range(R + 1)]

        def act(f):
            # W = D S^n V: irreducible alpha_{r,i} acts through the shifted
            # (t = r+1) transition of alpha_{r,i} viewed on the extra points
            return V.morphism_matrix(self._ambient_morphism(f, n))

        amb = _assemble(R, dims, act)
        sub = submodule_from_subspaces(amb, base, check=True)
        return quotient(amb, sub)

    def _ambient_morphism(self, f: OrdMorphism, n: int) -> OrdMorphism:
        """Morphism of V realizing f on (S S^n V)_r = V_{r+1+n}."""
        g = embed(other(self.side), f)  # the extra shift of D
        for _ in range(n):
            g = embed(other(self.side), g)
        return g

    def stabilization(self, data: dict) -> int | None:
        """Smallest r0 with all links from r0 to the top isomorphisms (at least one link)."""
        links = data["links"]
        if not links:
            return None
        r0 = len(links)
        for r in range(len(links) - 1, -1, -1):
            if is_invertible(links[r]):
                r0 = r
            else:
                break
        return r0 if r0 < len(links) else None

    def __call__(self, V):
        top = V.N - 2 if self.max_level is None else min(self.max_level, V.N - 2)
        data, r0s, trace = [], [], []
        for n in range(top + 1):
            d = self._level_data(V, n)
            r0 = self.stabilization(d)
            trace.append([Yd for Yd in (d["Y"].module.dims if d["Y"] else [])])
            if r0 is None:
                break
            data.append(d)
            r0s.append(r0)
        if not data:
            raise StabilizationError(f"no stabilized level; dimension traces {trace}")
        # a common r* that is stabilized for every kept level
        r_star = max(r0s) if self.r_star is None else self.r_star
        if any(r_star < r0 for r0 in r0s):
            raise StabilizationError(f"r* = {r_star} is below a detected stabilization level {r0s}")
        keep = 0
        while keep < len(data) and r_star <= data[keep]["R"] - 1:
            keep += 1
        if keep == 0:
            raise StabilizationError(f"stabilization levels {r0s} leave no room in truncation {V.N}")
        N = keep - 1
        dims = [data[n]["Y"].module.dims[r_star] for n in range(N + 1)]
        t = r_star + 1

        def act(f):
            m, n = f.source, f.target
            g = transition_morphism(self.side, f, t)
            Ym, Yn = data[m]["Y"], data[n]["Y"]
            Wm, Wn = data[m]["W"], data[n]["W"]
            # Y_m,r* -> W_m,r* -> V_{t+m} -> V_{t+n} -> W_n,r* -> Y_n,r*
            M = V.morphism_matrix(g) @ Wm.sections[r_star] @ Ym.sections[r_star]
            return Yn.projections[r_star] @ Wn.projections[r_star] @ M

        mod = _assemble(N, dims, act)
        mod.name = f"{self.label}({V.name})" if V.name else ""
        diag = {"r0": r0s[:N + 1], "r_star": r_star, "traces": [d["Y"].module.dims for d in data[:N + 1]]}
        if self.side == "b":
            diag["note"] = "mirror construction; validated through the adjunction with Gamma_b only"
        return FunctorResult(mod, N, {"levels": data[:N + 1]}, diag)

    def on_map(self, phi, src, dst):
        rs = src.diagnostics["r_star"]
        if dst.diagnostics["r_star"] != rs:
            raise StabilizationError("Psi results use different r*; recompute with a common r_star")
        t = rs + 1
        out = []
        for n in range(min(src.truncation, dst.truncation) + 1):
            a, b = src.provenance["levels"][n], dst.provenance["levels"][n]
            M = phi[t + n] @ a["W"].sections[rs] @ a["Y"].sections[rs]
            out.append(b["Y"].projections[rs] @ b["W"].projections[rs] @ M)
        return out


# ---------------------------------------------------------------------------


class Composite(Functor):
    """F after G."""

    def __init__(self, F: Functor, G: Functor):
        self.F, self.G = F, G
        self.side = F.side

    @property
    def label(self) -> str:
        return f"{self.F.label}.{self.G.label}"

    def out_truncation(self, N):
        return self.F.out_truncation(self.G.out_truncation(N))

    def __call__(self, V):
        g = self.G(V)
        f = self.F(g.module)
        return FunctorResult(f.module, f.truncation, {"inner": g, "outer": f}, f.diagnostics)

    def on_map(self, phi, src, dst):
        inner = self.G.on_map(phi, src.provenance["inner"], dst.provenance["inner"])
        return self.F.on_map(inner, src.provenance["outer"], dst.provenance["outer"])


_CLASSES = {"S": Shift, "K": KernelFunctor, "D": Derivative, "G": Gamma, "Q": Coinduction,
            "B": NegativeShift, "R": RFunctor}


def get_functor(name: str) -> Functor:
    """Look up Sa, Sb, Ka, ..., Rb, PsiA, PsiB, B'a, B'b, SKa, SKb."""
    if name in ("PsiA", "PsiB"):
        return Psi(name[-1].lower())
    if name in ("B'a", "B'b"):
        return NegativeShiftPullback(name[-1])
    if name in ("SKa", "SKb"):
        return Composite(Shift(name[-1]), KernelFunctor(name[-1]))
    if len(name) == 2 and name[0] in _CLASSES and name[1] in "ab":
        return _CLASSES[name[0]](name[1])
    raise KeyError(f"unknown functor {name!r}")


FUNCTOR_NAMES = ["Sa", "Sb", "Ka", "Kb", "Da", "Db", "Ga", "Gb", "Qa", "Qb", "Ba", "Bb", "Ra", "Rb", "PsiA", "PsiB"]


# ---------------------------------------------------------------------------
# exactness on short exact sequences


@dataclass
class ShortExact:
    """0 -> A -f-> B -g-> C -> 0 with levelwise maps."""

    A: TruncatedModule
    B: TruncatedModule
    C: TruncatedModule
    f: list
    g: list
    name: str = ""


def ses_from_seeds(B: TruncatedModule, seeds, name: str = "") -> ShortExact:
    """A = submodule generated by (level, vector) seeds, C = B / A."""
    sub = submodule_generate(B, seeds)
    Q = quotient(B, sub)
    return ShortExact(sub.module, B, Q.module, sub.bases, Q.projections, name)


def random_short_exact(rng, N: int, max_dim: int = 2, n_seeds: int = 2) -> ShortExact:
    from .modules import random_module

    B = random_module(rng, N, max_dim=max_dim)
    seeds = []
    for _ in range(n_seeds):
        lv = [n for n in range(N + 1) if B.dims[n]]
        if not lv:
            break
        n = rng.choice(lv)
        seeds.append((n, [rng.randint(-1, 1) for _ in range(B.dims[n])]))
    return ses_from_seeds(B, seeds)


@dataclass
class ExactnessProfile:
    functor: str
    injective: bool  # F(f) injective
    middle: bool  # exact at F(B)
    surjective: bool  # F(g) surjective
    truncation: int

    @property
    def left_exact(self) -> bool:
        return self.injective and self.middle

    @property
    def right_exact(self) -> bool:
        return self.middle and self.surjective


def exactness_profile(F: Functor, ses: ShortExact) -> ExactnessProfile:
    from .linalg import rank
    from .modules import is_exact_at

    ra, rb, rc = F(ses.A), F(ses.B), F(ses.C)
    if isinstance(F, Psi):
        # maps between Psi values need one colimit index for all three
        r = max(x.diagnostics["r_star"] for x in (ra, rb, rc))
        F = Psi(F.side, r_star=r)
        ra, rb, rc = F(ses.A), F(ses.B), F(ses.C)
    Ff = F.on_map(ses.f, ra, rb)
    Fg = F.on_map(ses.g, rb, rc)
    T = min(ra.truncation, rb.truncation, rc.truncation)
    inj = all(rank(Ff[n]) == ra.module.dims[n] for n in range(T + 1))
    mid = is_exact_at(Ff[:T + 1], Fg[:T + 1], rb.module.dims[:T + 1])
    sur = all(rank(Fg[n]) == rc.module.dims[n] for n in range(T + 1))
    return ExactnessProfile(F.label, inj, mid, sur, T)
