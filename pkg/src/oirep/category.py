"""
Morphisms of the category of finite linearly ordered sets [n] = {1 < ... < n}
and strictly increasing maps.

A morphism [m] -> [n] is stored as its tuple of values.  Side ``"a"`` refers
to constructions at the minimal element and side ``"b"`` to the maximal one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

SIDES = ("a", "b")


class CompositionError(ValueError):
    """Source and target of the composed morphisms disagree."""


class PreconditionError(ValueError):
    """A guard of a partially defined construction is violated."""


def check_side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be 'a' or 'b', got {side!r}")
    return side


def other(side: str) -> str:
    return "b" if check_side(side) == "a" else "a"


@dataclass(frozen=True)
class OrdMorphism:
    source: int
    target: int
    values: tuple[int, ...]

    def __post_init__(self):
        m, n, v = self.source, self.target, self.values
        if not isinstance(v, tuple):
            object.__setattr__(self, "values", tuple(v))
            v = self.values
        if m < 0 or n < 0 or len(v) != m:
            raise ValueError(f"bad morphism data {m}->{n}:{list(v)}")
        prev = 0
        for x in v:
            if x <= prev or x > n:
                raise ValueError(f"values {list(v)} are not strictly increasing inside [1, {n}]")
            prev = x

    @classmethod
    def identity(cls, n: int) -> OrdMorphism:
        return cls(n, n, tuple(range(1, n + 1)))

    @classmethod
    def empty(cls, n: int) -> OrdMorphism:
        """The unique morphism [0] -> [n]."""
        return cls(0, n, ())

    @classmethod
    def irreducible(cls, n: int, i: int) -> OrdMorphism:
        """alpha_{n,i}: [n] -> [n+1] whose image misses i."""
        if not 1 <= i <= n + 1:
            raise ValueError(f"irreducible index {i} out of range 1..{n + 1}")
        return cls(n, n + 1, tuple(j if j < i else j + 1 for j in range(1, n + 1)))

    @classmethod
    def from_image(cls, n: int, image) -> OrdMorphism:
        image = tuple(sorted(image))
        return cls(len(image), n, image)

    @property
    def degree(self) -> int:
        return self.target - self.source

    def is_identity(self) -> bool:
        return self.source == self.target

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def missing(self) -> list[int]:
        """Elements of the target outside the image, ascending."""
        img = set(self.values)
        return [j for j in range(1, self.target + 1) if j not in img]

    def image_mask(self) -> int:
        mask = 0
        for x in self.values:
            mask |= 1 << (x - 1)
        return mask

    def __mul__(self, other: OrdMorphism) -> OrdMorphism:
        return compose(self, other)

    def __str__(self) -> str:
        if self.is_identity():
            return f"{self.source}->{self.target}:id"
        return f"{self.source}->{self.target}:[{','.join(map(str, self.values))}]"

    @classmethod
    def parse(cls, text: str) -> OrdMorphism:
        return parse_morphism(text)


_MORPH_RE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*:\s*(id|\[\s*([\d,\s]*)\])\s*$")


def parse_morphism(text: str) -> OrdMorphism:
    mt = _MORPH_RE.match(text)
    if not mt:
        raise ValueError(f"cannot parse morphism {text!r}")
    m, n = int(mt.group(1)), int(mt.group(2))
    if mt.group(3) == "id":
        if m != n:
            raise ValueError(f"'id' needs equal source and target in {text!r}")
        return OrdMorphism.identity(n)
    body = mt.group(4).strip()
    values = tuple(int(x) for x in body.split(",")) if body else ()
    return OrdMorphism(m, n, values)


def alpha(n: int, i: int) -> OrdMorphism:
    return OrdMorphism.irreducible(n, i)


def rho(side: str, n: int) -> OrdMorphism:
    """The irreducible [n] -> [n+1] missing the new minimal (a) or maximal (b) point."""
    return alpha(n, 1 if check_side(side) == "a" else n + 1)


def rho_index(side: str, n: int) -> int:
    return 1 if check_side(side) == "a" else n + 1


@lru_cache(maxsize=None)
def enumerate_morphisms(m: int, n: int) -> tuple[OrdMorphism, ...]:
    """All morphisms [m] -> [n] in lexicographic order of their values."""
    if m < 0 or n < 0 or m > n:
        return ()
    return tuple(OrdMorphism(m, n, c) for c in combinations(range(1, n + 1), m))


@lru_cache(maxsize=None)
def morphism_index(m: int, n: int) -> dict[tuple[int, ...], int]:
    return {f.values: k for k, f in enumerate(enumerate_morphisms(m, n))}


def index_of(f: OrdMorphism) -> int:
    return morphism_index(f.source, f.target)[f.values]


def compose(g: OrdMorphism, f: OrdMorphism) -> OrdMorphism:
    """g after f."""
    if f.target != g.source:
        raise CompositionError(f"cannot compose {g} after {f}")
    gv = g.values
    return OrdMorphism(f.source, g.target, tuple(gv[x - 1] for x in f.values))


def compose_all(fs) -> OrdMorphism:
    """Compose a list given outermost first."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty composite")
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = compose(g, out)
    return out


def factorize(f: OrdMorphism) -> list[OrdMorphism]:
    """Irreducible factors of ``f``, outermost first.

    The missed target points are inserted from the smallest (innermost
    factor) to the largest (outermost factor).
    """
    miss = f.missing()
    factors = []
    level = f.source
    for j in miss:
        factors.append(alpha(level, j))
        level += 1
    return factors[::-1]


def factorizations(f: OrdMorphism) -> set[tuple[OrdMorphism, ...]]:
    """Every way of writing ``f`` as a composite of irreducibles (outermost first)."""
    if f.is_identity():
        return {()}
    out = set()
    n = f.target
    for i in range(1, n + 1):
        g = alpha(n - 1, i)
        img = set(g.values)
        if not set(f.values) <= img:
            continue
        rest = OrdMorphism(f.source, n - 1, tuple(x if x < i else x - 1 for x in f.values))
        for tail in factorizations(rest):
            out.add((g,) + tail)
    return out


def embed(side: str, f: OrdMorphism) -> OrdMorphism:
    """Adjoin a new minimal (a) or maximal (b) point to source and target."""
    if check_side(side) == "a":
        return OrdMorphism(f.source + 1, f.target + 1, (1,) + tuple(x + 1 for x in f.values))
    return OrdMorphism(f.source + 1, f.target + 1, f.values + (f.target + 1,))


def submerge(side: str, f: OrdMorphism) -> OrdMorphism:
    """Delete the minimal (a) or maximal (b) point of the source."""
    if f.source == 0:
        raise PreconditionError("submerge is only defined on morphisms with nonempty source")
    if check_side(side) == "a":
        return OrdMorphism(f.source - 1, f.target - 1, tuple(x - 1 for x in f.values[1:]))
    return OrdMorphism(f.source - 1, f.target - 1, f.values[:-1])


def fixes_extreme(side: str, f: OrdMorphism) -> bool:
    """alpha(1) = 1 for side a, alpha(m) = n for side b.

    An empty source never fixes the extreme point, so [0] -> [n] always falls
    into the "moves it" branch of the piecewise constructions.
    """
    if f.source == 0:
        return False
    if check_side(side) == "a":
        return f.values[0] == 1
    return f.values[-1] == f.target


def boundary(side: str, direction: str, f: OrdMorphism) -> OrdMorphism:
    """The maps that delete (``lower``) or re-adjoin (``raise``) the extreme target point.

    lower/a: i -> alpha(i) - 1 into [l-1];   lower/b: i -> alpha(i) into [l-1]
    raise/a: 1 -> 1, i -> alpha(i-1);        raise/b: i -> alpha(i), n+1 -> l
    All four require that ``f`` misses the relevant extreme point.
    """
    check_side(side)
    if f.target == 0 or fixes_extreme(side, f):
        raise PreconditionError(f"{f} does not miss the {'minimal' if side == 'a' else 'maximal'} target point")
    m, ell, v = f.source, f.target, f.values
    if direction == "lower":
        if side == "a":
            return OrdMorphism(m, ell - 1, tuple(x - 1 for x in v))
        return OrdMorphism(m, ell - 1, v)
    if direction == "raise":
        if side == "a":
            return OrdMorphism(m + 1, ell, (1,) + v)
        return OrdMorphism(m + 1, ell, v + (ell,))
    raise ValueError(f"direction must be 'lower' or 'raise', got {direction!r}")


def mirror(f: OrdMorphism) -> OrdMorphism:
    """Conjugate by the order reversal i -> n+1-i on source and target."""
    n, m = f.target, f.source
    return OrdMorphism(m, n, tuple(n + 1 - f.values[m - i] for i in range(1, m + 1)))


def pushout(f1: OrdMorphism, f2: OrdMorphism) -> tuple[OrdMorphism, OrdMorphism]:
    """Maps g1, g2 into [m1 + m2 - n] with g1 f1 = g2 f2.

    The common image of [n] is kept once; in each gap between consecutive
    image points the extra points of the first target come before those of
    the second.
    """
    if f1.source != f2.source:
        raise CompositionError("pushout needs a common source")
    n = f1.source
    v1 = (0,) + f1.values + (f1.target + 1,)
    v2 = (0,) + f2.values + (f2.target + 1,)
    g1, g2 = [], []
    pos = 0
    for k in range(n + 1):
        # gap k: points strictly between the k-th and (k+1)-th image points
        for _ in range(v1[k] + 1, v1[k + 1]):
            pos += 1
            g1.append(pos)
        for _ in range(v2[k] + 1, v2[k + 1]):
            pos += 1
            g2.append(pos)
        if k < n:
            pos += 1
            g1.append(pos)
            g2.append(pos)
    return OrdMorphism(f1.target, pos, tuple(g1)), OrdMorphism(f2.target, pos, tuple(g2))
