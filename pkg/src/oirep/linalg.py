"""
Exact dense linear algebra over the rationals or a prime field.

Rational entries are stored as ``int`` whenever possible and as
``Fraction`` otherwise; nothing is ever rounded.  Prime-field entries are
plain ints reduced into ``range(p)``.  The active field is a session-wide
setting (see :func:`field_context`).
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Shapes of the operands do not fit."""


class Field:
    """The ground field: rationals when ``p`` is None, else GF(p)."""

    def __init__(self, p: int | None = None):
        if p is not None and (p <= 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1))):
            raise ValueError(f"prime field needs an odd prime, got {p}")
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, x) -> int | Fraction:
        if self.p is None:
            if isinstance(x, int):
                return x
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x % self.p
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def inv(self, x):
        if self.p is None:
            r = Fraction(1) / x
            return r.numerator if r.denominator == 1 else r
        return pow(x, -1, self.p)

    def div(self, a, b):
        if self.p is None:
            r = Fraction(a) / b
            return r.numerator if r.denominator == 1 else r
        return a * pow(b, -1, self.p) % self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()
DEFAULT_PRIME = 32003
_FIELD = [QQ]


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


def get_field() -> Field:
    return _FIELD[-1]


def set_field(field: Field) -> None:
    _FIELD[-1] = field


@contextmanager
def field_context(field: Field):
    _FIELD.append(field)
    try:
        yield field
    finally:
        _FIELD.pop()


def parse_field(text: str) -> Field:
    """``rational`` or ``prime`` or ``prime:<p>``."""
    text = text.strip().lower()
    if text in ("", "rational", "q", "qq"):
        return QQ
    if text.startswith("prime"):
        _, _, p = text.partition(":")
        return GF(int(p) if p else DEFAULT_PRIME)
    raise ValueError(f"unknown field mode {text!r}")


def render_scalar(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Dense matrix; treated as immutable once built.

    ``rows`` is a list of row lists.  A matrix may have zero rows or zero
    columns, so the column count is stored separately.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionError(f"ragged rows: expected {ncols} entries, got {len(r)}")
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    # construction

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> Matrix:
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def lift(cls, rows, ncols: int | None = None) -> Matrix:
        """Build a matrix converting every entry into the active field."""
        F = get_field()
        return cls([[F(x) for x in r] for r in rows], ncols)

    # basic accessors

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [[r[j] for r in self.rows] for j in range(self.ncols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> Matrix:
        return Matrix([list(c) for c in zip(*self.rows)] if self.nrows else [[] for _ in range(self.ncols)],
                      self.nrows)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(render_scalar(x) for x in r) + "]" for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # arithmetic

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            p = get_field().p
            brows = other.rows
            q = other.ncols
            out = []
            for row in self.rows:
                acc = [0] * q
                for k, a in enumerate(row):
                    if a:
                        for j, b in enumerate(brows[k]):
                            if b:
                                acc[j] += a * b
                if p is not None:
                    acc = [x % p for x in acc]
                out.append(acc)
            return Matrix(out, q)
        return self.apply(other)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} against {self.shape}")
        p = get_field().p
        out = []
        for row in self.rows:
            s = 0
            for a, b in zip(row, v):
                if a and b:
                    s += a * b
            out.append(s % p if p is not None else s)
        return out

    def _entrywise(self, other: Matrix, op) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        p = get_field().p
        rows = [[op(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        if p is not None:
            rows = [[x % p for x in r] for r in rows]
        return Matrix(rows, self.ncols)

    def __add__(self, other: Matrix) -> Matrix:
        return self._entrywise(other, lambda a, b: a + b)

    def __sub__(self, other: Matrix) -> Matrix:
        return self._entrywise(other, lambda a, b: a - b)

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        p = get_field().p
        if p is None:
            return Matrix([[c * x for x in r] for r in self.rows], self.ncols)
        return Matrix([[c * x % p for x in r] for r in self.rows], self.ncols)


def hstack(mats: Sequence[Matrix], nrows: int | None = None) -> Matrix:
    if not mats:
        if nrows is None:
            raise DimensionError("hstack of nothing needs nrows")
        return Matrix.zeros(nrows, 0)
    n = mats[0].nrows
    if any(m.nrows != n for m in mats):
        raise DimensionError("hstack: row counts differ")
    return Matrix([sum((m.rows[i] for m in mats), []) for i in range(n)], sum(m.ncols for m in mats))


def vstack(mats: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    if not mats:
        if ncols is None:
            raise DimensionError("vstack of nothing needs ncols")
        return Matrix.zeros(0, ncols)
    c = mats[0].ncols
    if any(m.ncols != c for m in mats):
        raise DimensionError("vstack: column counts differ")
    return Matrix([list(r) for m in mats for r in m.rows], c)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    out = [[0] * nc for _ in range(nr)]
    i0 = j0 = 0
    for m in mats:
        for i, r in enumerate(m.rows):
            out[i0 + i][j0:j0 + m.ncols] = r
        i0 += m.nrows
        j0 += m.ncols
    return Matrix(out, nc)


def blocks(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix; every block must be given (use zeros)."""
    return vstack([hstack(list(row)) for row in grid]) if grid else Matrix.zeros(0, 0)


# ---------------------------------------------------------------------------
# elimination


def _to_integer_rows(rows: list[list]) -> list[list[int]]:
    out = []
    for r in rows:
        dens = [x.denominator for x in r if isinstance(x, Fraction) and x.denominator != 1]
        if dens:
            m = lcm(*dens)
            out.append([int(x * m) for x in r])
        else:
            out.append([int(x) for x in r])
    return out


def _ff_gauss_jordan(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gauss-Jordan elimination on integer rows (in place).

    Every update is (p*a - b*c) / previous_pivot with exact division, so all
    intermediate entries stay integral and bounded by minors of the input.
    Returns the nonzero rows, the pivot columns and the common pivot value.
    """
    m = len(rows)
    r = 0
    prev = 1
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if a:
                rows[i] = [(p * x - a * y) // prev for x, y in zip(row, pr)]
            elif p != prev:
                rows[i] = [p * x // prev for x in row]
        pivots.append(c)
        prev = p
        r += 1
    return rows[:r], pivots, prev


def _rref_mod(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % p for x in r] for r in rows]
    m = len(rows)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [x * inv % p for x in rows[r]]
        rows[r] = pr
        for i in range(m):
            if i != r and rows[i][c]:
                a = rows[i][c]
                rows[i] = [(x - a * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _sparse_gauss_jordan(rows: list[list[int]], ncols: int, p: int | None) -> tuple[list[list], list[int]]:
    """Gauss-Jordan on dict rows, touching only nonzero entries.

    Over the rationals rows stay integral (row <- piv*row - a*pivot_row,
    then divided by the gcd of its entries); pivots are normalized at the end.
    Among the rows available for a column the shortest one is the pivot row,
    which keeps fill-in low for the 0/1 matrices that dominate here.
    """
    R = {}
    colidx: dict[int, set] = {}
    for i, r in enumerate(rows):
        d = {c: (x % p if p else x) for c, x in enumerate(r) if (x % p if p else x)}
        if d:
            R[i] = d
            for c in d:
                colidx.setdefault(c, set()).add(i)
    used = set()
    pivots, pivrows = [], []
    for c in range(ncols):
        holders = colidx.get(c)
        if not holders:
            continue
        cands = [i for i in holders if i not in used]
        if not cands:
            continue
        pi = min(cands, key=lambda i: (len(R[i]), i))
        pr = R[pi]
        if p:
            inv = pow(pr[c], -1, p)
            pr = {k: v * inv % p for k, v in pr.items()}
            R[pi] = pr
        pv = pr[c]
        for i in list(holders):
            if i == pi:
                continue
            row = R[i]
            a = row[c]
            if p:
                new = dict(row)
                for k, v in pr.items():
                    nv = (new.get(k, 0) - a * v) % p
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
            else:
                new = {k: pv * v for k, v in row.items()}
                for k, v in pr.items():
                    nv = new.get(k, 0) - a * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            for k in row:
                if k not in new:
                    colidx[k].discard(i)
            for k in new:
                if k not in row:
                    colidx.setdefault(k, set()).add(i)
            if new:
                R[i] = new
            else:
                del R[i]
        used.add(pi)
        pivots.append(c)
        pivrows.append(pi)
    out = []
    for c, i in zip(pivots, pivrows):
        r = R[i]
        dense = [0] * ncols
        if p:
            for k, v in r.items():
                dense[k] = v
        else:
            pv = r[c]
            for k, v in r.items():
                if v % pv == 0:
                    dense[k] = v // pv
                else:
                    dense[k] = Fraction(v, pv)
        out.append(dense)
    return out, pivots


def _use_sparse(M: Matrix) -> bool:
    size = M.nrows * M.ncols
    if size < 2500:
        return False
    nnz = sum(1 for r in M.rows for x in r if x)
    return nnz * 5 < size


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    F = get_field()
    if _use_sparse(M):
        ints = [list(r) for r in M.rows] if F.p is not None else _to_integer_rows(M.rows)
        rows, piv = _sparse_gauss_jordan(ints, M.ncols, F.p)
        return Matrix(rows, M.ncols), piv
    if F.p is not None:
        rows, piv = _rref_mod([list(r) for r in M.rows], M.ncols, F.p)
        return Matrix(rows, M.ncols), piv
    rows, piv, d = _ff_gauss_jordan(_to_integer_rows(M.rows), M.ncols)
    if d != 1:
        out = []
        for r in rows:
            nr = []
            for x in r:
                if x % d == 0:
                    nr.append(x // d)
                else:
                    nr.append(Fraction(x, d))
            out.append(nr)
        rows = out
    return Matrix(rows, M.ncols), piv


def rref_naive(M: Matrix) -> tuple[Matrix, list[int]]:
    """Textbook Gauss-Jordan with Fractions; the reference for :func:`rref`."""
    rows = [[Fraction(x) for x in r] for r in M.rows]
    m = len(rows)
    r = 0
    pivots = []
    for c in range(M.ncols):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                a = rows[i][c]
                rows[i] = [x - a * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    canon = [[x.numerator if x.denominator == 1 else x for x in row] for row in rows[:r]]
    return Matrix(canon, M.ncols), pivots


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if M.nrows > M.ncols:
        M = M.T
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> Matrix:
    """Columns form a basis of {x : Mx = 0}."""
    n = M.ncols
    if M.nrows == 0:
        return Matrix.identity(n)
    R, piv = rref(M)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    F = get_field()
    cols = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for k, pc in enumerate(piv):
            x = R.rows[k][f]
            if x:
                v[pc] = F(-x)
        cols.append(v)
    return Matrix.from_columns(cols, n)


def left_kernel_basis(M: Matrix) -> Matrix:
    """Rows form a basis of {y : yM = 0}."""
    return kernel_basis(M.T).T


def row_basis(M: Matrix) -> Matrix:
    """Canonical basis (RREF rows) of the row space."""
    if M.nrows == 0:
        return Matrix.zeros(0, M.ncols)
    return rref(M)[0]


def image_basis(M: Matrix) -> Matrix:
    """Canonical basis (as columns) of the column space of ``M``."""
    return row_basis(M.T).T if M.ncols else Matrix.zeros(M.nrows, 0)


def same_span(U: Matrix, W: Matrix) -> bool:
    """Do the columns of ``U`` and ``W`` span the same subspace?"""
    if U.nrows != W.nrows:
        raise DimensionError("subspaces live in different ambient spaces")
    return image_basis(U) == image_basis(W)


def span_contains(U: Matrix, W: Matrix) -> bool:
    """Is the column span of ``W`` inside that of ``U``?"""
    if W.ncols == 0:
        return True
    return rank(hstack([U, W])) == rank(U)


def sum_subspaces(U: Matrix, W: Matrix) -> Matrix:
    if U.nrows != W.nrows:
        raise DimensionError("subspaces live in different ambient spaces")
    return image_basis(hstack([U, W]))


def intersect_subspaces(U: Matrix, W: Matrix) -> Matrix:
    """Basis of span(U) ∩ span(W), from the kernel of the stacked system [U | -W]."""
    if U.nrows != W.nrows:
        raise DimensionError("subspaces live in different ambient spaces")
    if U.ncols == 0 or W.ncols == 0:
        return Matrix.zeros(U.nrows, 0)
    K = kernel_basis(hstack([U, -W]))
    top = Matrix(K.rows[:U.ncols], K.ncols)
    return image_basis(U @ top)


class Solver:
    """Reusable solver for ``M X = B`` with a fixed ``M``.

    Picks independent columns J (pivots of M) and independent rows I (pivots
    of M^T) and keeps the inverse of the invertible minor M[I, J].  A
    candidate solution is checked against the full system, so inconsistent
    right-hand sides are detected.
    """

    def __init__(self, M: Matrix):
        self.M = M
        m, n = M.shape
        _, cols = rref(M)
        _, rows = rref(M.T)
        self.pivots = cols
        self.rows = rows
        self.rank = len(cols)
        r = self.rank
        if r:
            minor = Matrix([[M.rows[i][j] for j in cols] for i in rows], r)
            R, piv = rref(hstack([minor, Matrix.identity(r)]))
            self.inv = Matrix([row[r:] for row in R.rows], r)
        else:
            self.inv = Matrix.zeros(0, 0)

    def solve(self, B: Matrix) -> Matrix | None:
        """Some ``X`` with ``M X = B``, or None when inconsistent."""
        m, n = self.M.shape
        if B.nrows != m:
            raise DimensionError(f"right-hand side has {B.nrows} rows, expected {m}")
        X = [[0] * B.ncols for _ in range(n)]
        if self.rank:
            Y = self.inv @ Matrix([B.rows[i] for i in self.rows], B.ncols)
            for k, pc in enumerate(self.pivots):
                X[pc] = list(Y.rows[k])
        X = Matrix(X, B.ncols)
        if self.M @ X != B:
            return None
        return X

    def solve_vector(self, b: Sequence) -> list | None:
        X = self.solve(Matrix([[x] for x in b], 1) if len(b) else Matrix.zeros(0, 1))
        return None if X is None else [r[0] for r in X.rows]


def solve(M: Matrix, b: Sequence) -> list | None:
    """One solution of ``M x = b``, or None."""
    if len(b) != M.nrows:
        raise DimensionError(f"vector of length {len(b)} against {M.shape}")
    return Solver(M).solve_vector(list(b))


def is_invertible(M: Matrix) -> bool:
    return M.is_square() and rank(M) == M.nrows


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise DimensionError(f"non-square matrix {M.shape} has no inverse")
    X = Solver(M).solve(Matrix.identity(M.nrows))
    if X is None or rank(M) < M.nrows:
        raise ValueError("matrix is singular")
    return X


def right_inverse(M: Matrix) -> Matrix:
    """``S`` with ``M S = I`` for ``M`` of full row rank."""
    S = Solver(M).solve(Matrix.identity(M.nrows))
    if S is None:
        raise ValueError("matrix does not have full row rank")
    return S


def primitive_integer_vector(v: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers with first nonzero entry positive."""
    from math import gcd

    fr = [Fraction(x) for x in v]
    nz = [x for x in fr if x]
    if not nz:
        return [0] * len(fr)
    m = lcm(*(x.denominator for x in nz))
    ints = [int(x * m) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return ints
