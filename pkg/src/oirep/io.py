"""
Text formats for truncated and presented modules.

Truncated module::

    # comment
    name: W
    truncation: 2
    dims: [0, 1, 1]
    gen 0 1: []
    gen 1 1: [[0]]
    gen 1 2: [[1]]

Presented module::

    gens: [1]
    rels: [2]
    entry 0 0: 1*1->2:[2]

Every generator matrix is a row-major nested list with entries ``p`` or
``p/q``.  An entry line lists ``coefficient*morphism`` terms joined by ``+``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraElement
from .category import parse_morphism
from .linalg import Matrix, get_field, render_scalar
from .modules import InvariantError, PresentedModule, TruncatedModule, validate


class FormatError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class RelationError(InvariantError):
    def __init__(self, triple):
        n, p, q = triple
        super().__init__(f"relation violated at (n, p, q) = ({n}, {p}, {q}): "
                         f"A_{{{n + 1},{q}}} A_{{{n},{p}}} != A_{{{n + 1},{p}}} A_{{{n},{q - 1}}}")
        self.triple = triple


_SCALAR = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?")


def _scalar(text: str):
    F = get_field()
    mt = re.fullmatch(r"\s*(-?\d+)(?:\s*/\s*(-?\d+))?\s*", text)
    if not mt:
        raise ValueError(text)
    num = int(mt.group(1))
    den = int(mt.group(2)) if mt.group(2) else 1
    if den == 0:
        raise ValueError("zero denominator")
    x = Fraction(num, den)
    return F(x.numerator if x.denominator == 1 else x)


class _ListParser:
    """Recursive descent for nested lists of scalars, tracking columns."""

    def __init__(self, text: str, line: int, col0: int):
        self.s = text
        self.i = 0
        self.line = line
        self.col0 = col0

    def err(self, msg: str):
        raise FormatError(msg, self.line, self.col0 + self.i + 1)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def parse(self):
        self.ws()
        v = self.value()
        self.ws()
        if self.i != len(self.s):
            self.err("trailing characters")
        return v

    def value(self):
        self.ws()
        if self.i < len(self.s) and self.s[self.i] == "[":
            self.i += 1
            out = []
            self.ws()
            if self.i < len(self.s) and self.s[self.i] == "]":
                self.i += 1
                return out
            while True:
                out.append(self.value())
                self.ws()
                if self.i >= len(self.s):
                    self.err("unterminated list")
                ch = self.s[self.i]
                self.i += 1
                if ch == "]":
                    return out
                if ch != ",":
                    self.i -= 1
                    self.err(f"expected ',' or ']', found {ch!r}")
        mt = _SCALAR.match(self.s, self.i)
        if not mt or mt.end() == self.i:
            self.err("expected a number or '['")
        start = self.i
        self.i = mt.end()
        try:
            return _scalar(self.s[start:self.i])
        except ValueError:
            self.i = start
            self.err("bad scalar")


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield k, raw, body


def _split_key(k: int, raw: str, body: str):
    if ":" not in body:
        raise FormatError("expected 'key: value'", k, 1)
    key, val = body.split(":", 1)
    col = len(key) + 2
    return key.strip(), val, col


def parse_module(text: str, check: bool = True) -> TruncatedModule:
    N = dims = None
    name = ""
    action = {}
    for k, raw, body in _lines(text):
        key, val, col = _split_key(k, raw, body)
        if key == "name":
            name = val.strip()
        elif key == "truncation":
            try:
                N = int(val)
            except ValueError:
                raise FormatError("truncation must be an integer", k, col) from None
            if N < 0:
                raise FormatError("truncation must be nonnegative", k, col)
        elif key == "dims":
            dims = _ListParser(val, k, col - 1).parse()
            if not isinstance(dims, list) or any(isinstance(d, list) or d != int(d) or d < 0 for d in dims):
                raise FormatError("dims must be a flat list of nonnegative integers", k, col)
            dims = [int(d) for d in dims]
        elif key.startswith("gen"):
            parts = key.split()
            if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
                raise FormatError("expected 'gen n i'", k, 1)
            if dims is None:
                raise FormatError("dims must come before generator blocks", k, 1)
            n, i = int(parts[1]), int(parts[2])
            if N is not None and not (0 <= n < N and 1 <= i <= n + 1):
                raise FormatError(f"generator ({n},{i}) outside the window", k, 1)
            rows = _ListParser(val, k, col - 1).parse()
            if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
                raise FormatError("a matrix must be a list of rows", k, col)
            d0, d1 = dims[n], dims[n + 1]
            if len(rows) != d1 or any(len(r) != d0 for r in rows):
                raise FormatError(f"generator ({n},{i}) must be {d1}x{d0}", k, col)
            if (n, i) in action:
                raise FormatError(f"duplicate generator ({n},{i})", k, 1)
            action[(n, i)] = Matrix(rows, d0)
        else:
            raise FormatError(f"unknown key {key!r}", k, 1)
    if N is None or dims is None:
        raise FormatError("missing 'truncation' or 'dims'", 0, 0)
    if len(dims) != N + 1:
        raise FormatError(f"dims must have {N + 1} entries", 0, 0)
    for n in range(N):
        for i in range(1, n + 2):
            if (n, i) not in action:
                if dims[n] == 0 or dims[n + 1] == 0:
                    action[(n, i)] = Matrix.zeros(dims[n + 1], dims[n])
                else:
                    raise FormatError(f"missing generator block 'gen {n} {i}'", 0, 0)
    V = TruncatedModule(N, dims, action, name)
    if check:
        bad = validate(V)
        if bad:
            raise RelationError(bad[0])
    return V


def _render_matrix(M: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(render_scalar(x) for x in r) + "]" for r in M.rows) + "]"


def format_module(V: TruncatedModule) -> str:
    out = []
    if V.name:
        out.append(f"name: {V.name}")
    out.append(f"truncation: {V.N}")
    out.append(f"dims: [{', '.join(map(str, V.dims))}]")
    for n in range(V.N):
        for i in range(1, n + 2):
            out.append(f"gen {n} {i}: {_render_matrix(V.gen(n, i))}")
    return "\n".join(out) + "\n"


def _parse_element(val: str, k: int, col: int, b: int, a: int) -> AlgebraElement:
    terms = []
    for part in re.split(r"\+(?![^\[]*\])", val):
        part = part.strip()
        if not part:
            raise FormatError("empty term", k, col)
        if "*" in part:
            c, m = part.split("*", 1)
        else:
            c, m = "1", part
        try:
            coeff = _scalar(c)
            f = parse_morphism(m)
        except ValueError as e:
            raise FormatError(f"bad term {part!r}: {e}", k, col) from None
        if (f.source, f.target) != (b, a):
            raise FormatError(f"term {part!r} must be a morphism {b}->{a}", k, col)
        terms.append((coeff, f))
    return AlgebraElement.from_terms(b, a, terms)


def parse_presentation(text: str) -> PresentedModule:
    gens = rels = None
    name = ""
    raw_entries = []
    for k, raw, body in _lines(text):
        key, val, col = _split_key(k, raw, body)
        if key == "name":
            name = val.strip()
        elif key in ("gens", "rels"):
            xs = _ListParser(val, k, col - 1).parse()
            if not isinstance(xs, list) or any(isinstance(x, list) or x != int(x) or x < 0 for x in xs):
                raise FormatError(f"{key} must be a flat list of nonnegative integers", k, col)
            if key == "gens":
                gens = [int(x) for x in xs]
            else:
                rels = [int(x) for x in xs]
        elif key.startswith("entry"):
            parts = key.split()
            if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
                raise FormatError("expected 'entry i j'", k, 1)
            raw_entries.append((k, col, int(parts[1]), int(parts[2]), val))
        else:
            raise FormatError(f"unknown key {key!r}", k, 1)
    if gens is None:
        raise FormatError("missing 'gens'", 0, 0)
    rels = rels or []
    entries = {}
    for k, col, i, j, val in raw_entries:
        if not (0 <= i < len(rels) and 0 <= j < len(gens)):
            raise FormatError(f"entry ({i},{j}) out of range", k, 1)
        entries[(i, j)] = _parse_element(val, k, col, gens[j], rels[i])
    return PresentedModule(gens, rels, entries, name)


def format_presentation(P: PresentedModule) -> str:
    out = []
    if P.name:
        out.append(f"name: {P.name}")
    out.append(f"gens: [{', '.join(map(str, P.gens))}]")
    out.append(f"rels: [{', '.join(map(str, P.rels))}]")
    for (i, j) in sorted(P.entries):
        e = P.entries[(i, j)]
        if e.is_zero():
            continue
        body = " + ".join(f"{render_scalar(c)}*{f}" for c, f in e.terms())
        out.append(f"entry {i} {j}: {body}")
    return "\n".join(out) + "\n"


def read_module(path: str, check: bool = True) -> TruncatedModule:
    with open(path) as fh:
        return parse_module(fh.read(), check)


def write_module(path: str, V: TruncatedModule) -> None:
    with open(path, "w") as fh:
        fh.write(format_module(V))


def read_presentation(path: str) -> PresentedModule:
    with open(path) as fh:
        return parse_presentation(fh.read())


def write_presentation(path: str, P: PresentedModule) -> None:
    with open(path, "w") as fh:
        fh.write(format_presentation(P))
