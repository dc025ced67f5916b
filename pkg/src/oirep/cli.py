"""
Command line front end.

Exit codes: 0 success, 1 a mathematical FAIL, 2 usage or input format error,
3 inconclusive (stabilization or budget ran out).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .linalg import Matrix, parse_field, render_scalar, set_field

OK, FAIL, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class Report:
    """Collects text lines and key/value records; prints one or the other."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def text(self, line: str) -> None:
        if self.fmt == "text":
            self.lines.append(line)

    def record(self, **kv) -> None:
        if self.fmt == "structured":
            self.lines.append(" ".join(f"{k}={_kv(v)}" for k, v in kv.items()))

    def both(self, line: str, **kv) -> None:
        self.text(line)
        self.record(**kv)

    def flush(self, stream=None) -> None:
        stream = stream or sys.stdout
        for line in self.lines:
            stream.write(line + "\n")
        self.lines.clear()


def _kv(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, str)) and " " not in str(v) and str(v):
        return str(v)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"), default=str)
    return json.dumps(str(v))


def _matrix_text(M: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(render_scalar(x) for x in r) + "]" for r in M.rows) + "]"


# ---------------------------------------------------------------------------
# subcommands


def cmd_ideals_verify(a, out: Report) -> int:
    from .algebra import verify_lemma

    rows = verify_lemma(a.lemma, a.max_level)
    out.text(f"lemma {a.lemma}, levels <= {a.max_level}")
    out.text(f"{'slice':24s} {'source':>6s} {'target':>6s} {'generated':>9s} {'named':>6s}  verdict")
    for r in rows:
        out.both(f"{r.label:24s} {r.source:6d} {r.target:6d} {r.lhs_dim:9d} {r.rhs_dim:6d}  {r.verdict}",
                 lemma=a.lemma, slice=r.label, source=r.source, target=r.target,
                 generated=r.lhs_dim, named=r.rhs_dim, verdict=r.verdict)
    # per level summary
    levels = sorted({r.target for r in rows})
    for m in levels:
        here = [r for r in rows if r.target == m]
        ok = all(r.ok for r in here)
        out.both(f"level {m}: {'PASS' if ok else 'FAIL'} ({len(here)} slices)",
                 level=m, slices=len(here), verdict="PASS" if ok else "FAIL")
    ok = all(r.ok for r in rows)
    out.both(f"overall: {'PASS' if ok else 'FAIL'}", overall="PASS" if ok else "FAIL")
    return OK if ok else FAIL


def cmd_functor_apply(a, out: Report) -> int:
    from .functors import get_functor
    from .io import read_module, write_module

    V = read_module(a.input)
    res = get_functor(a.name)(V)
    if a.output:
        write_module(a.output, res.module)
    else:
        from .io import format_module

        out.text(format_module(res.module).rstrip("\n"))
    out.both(f"{a.name}: input truncation {V.N}, output truncation {res.truncation}, dims {res.module.dims}",
             functor=a.name, input_truncation=V.N, truncation=res.truncation, dims=res.module.dims)
    for k, v in sorted(res.diagnostics.items()):
        out.both(f"diagnostic {k}: {v}", diagnostic=k, value=v)
    if a.emit_provenance:
        for key in sorted(res.provenance):
            val = res.provenance[key]
            if isinstance(val, list) and val and all(isinstance(m, Matrix) for m in val):
                for n, m in enumerate(val):
                    out.both(f"provenance {key} {n}: {_matrix_text(m)}", provenance=key, level=n,
                             matrix=_matrix_text(m))
            else:
                out.both(f"provenance {key}: {type(val).__name__}", provenance=key, kind=type(val).__name__)
    return OK


def cmd_verify_adjunctions(a, out: Report) -> int:
    from .adjunctions import verify_adjunctions

    reports = verify_adjunctions(a.side, N=a.truncation, seed=a.seed)
    out.text(f"side {a.side}, truncation {a.truncation}, seed {a.seed}")
    out.text(f"{'left':>6s} -| {'right':6s} {'cells':>5s} {'nonzero':>7s} {'exact':>5s}  verdict")
    ok = True
    for rep in reports:
        left, right = rep.pair.strip("()").split(",")
        nz = sum(1 for r in rep.rows if r.left_dim)
        exact = all(r.exact for r in rep.rows)
        ok &= rep.passed
        v = "PASS" if rep.passed else "FAIL"
        out.both(f"{left + a.side:>6s} -| {right + a.side:6s} {len(rep.rows):5d} {nz:7d} {str(exact):>5s}  {v}",
                 left=left + a.side, right=right + a.side, cells=len(rep.rows), nonzero=nz, exact=exact, verdict=v)
        for r in rep.rows:
            if r.verdict != "PASS":
                out.both(f"    FAIL {r.domain} -> {r.codomain}: {r.left_dim} vs {r.right_dim}",
                         failed_cell=f"{r.domain}->{r.codomain}", left_dim=r.left_dim, right_dim=r.right_dim)
    return OK if ok else FAIL


def _read_any(path: str):
    """A presentation if the file declares generators, else a truncated module."""
    from .io import parse_module, parse_presentation

    with open(path) as fh:
        text = fh.read()
    keys = {ln.split(":", 1)[0].strip() for ln in text.splitlines() if ":" in ln and not ln.lstrip().startswith("#")}
    if "gens" in keys:
        return parse_presentation(text)
    return parse_module(text)


def cmd_torsion_analyze(a, out: Report) -> int:
    from .modules import PresentedModule
    from .torsion import NOT_TORSION, TORSION, torsion_submodule_lower, torsion_witness

    obj = _read_any(a.input)
    if isinstance(obj, PresentedModule):
        from .torsion import is_torsion_module

        v = is_torsion_module(obj, a.budget)
        out.both(f"verdict: {v.kind}", verdict=v.kind, budget=a.budget)
        for lvl, w in v.witnesses:
            out.both(f"generator at level {lvl}: witness {w if w is not None else 'none within budget'}",
                     generator_level=lvl, witness=str(w) if w is not None else "none")
        if v.certificate:
            out.both(f"certificate: {v.certificate}", certificate=v.certificate)
        return OK if v.kind in (TORSION, NOT_TORSION) else INCONCLUSIVE
    V = obj
    L = min(a.budget, V.N)
    all_found = True
    for n in range(L):
        for j in range(V.dims[n]):
            e = [0] * V.dims[n]
            e[j] = 1
            w = torsion_witness(V, n, e, L)
            found = w.kind == TORSION
            all_found &= found
            out.both(f"level {n} basis {j}: {w}", level=n, basis=j, verdict=w.kind,
                     witness=str(w.witness) if found else "none")
    sub = torsion_submodule_lower(V, L)
    dims = [b.ncols for b in sub.subspaces]
    out.both(f"witnessed torsion submodule dims: {dims}", torsion_submodule_dims=dims)
    if all_found:
        out.both(f"verdict: {TORSION} on levels < {L}", verdict=TORSION, budget=L)
        return OK
    out.both(f"verdict: NOT_TORSION_UP_TO({L})", verdict="NOT_TORSION_UP_TO", budget=L)
    return INCONCLUSIVE


def cmd_nakayama_apply(a, out: Report) -> int:
    from .io import format_module, read_presentation, write_module
    from .nakayama import nakayama

    P = read_presentation(a.presentation)
    nu = nakayama(P, a.levels)
    if a.output:
        write_module(a.output, nu)
    else:
        out.text(format_module(nu).rstrip("\n"))
    out.both(f"nu dims on levels <= {a.levels}: {nu.dims}", levels=a.levels, dims=nu.dims)
    return OK


def cmd_nakayama_inverse(a, out: Report) -> int:
    from .io import format_module, read_module, write_module
    from .nakayama import inverse_nakayama

    X = read_module(a.input)
    Y = inverse_nakayama(X, a.truncation)
    if a.output:
        write_module(a.output, Y)
    else:
        out.text(format_module(Y).rstrip("\n"))
    out.both(f"inverse nu dims on levels <= {a.truncation}: {Y.dims}", truncation=a.truncation, dims=Y.dims)
    return OK


def cmd_simple(a, out: Report) -> int:
    from .nakayama import simple_saturated

    L = simple_saturated(a.n, a.truncation)
    out.both(f"L^{a.n} dims on levels <= {a.truncation}: {L.module.dims}", n=a.n, truncation=a.truncation,
             dims=L.module.dims)
    if L.generator is None:
        out.both("no nonzero level within the truncation", generator="none")
        return INCONCLUSIVE
    out.both(f"lowest nonzero level: {L.generator_level}; generator generates: {L.generates}",
             generator_level=L.generator_level, generates=L.generates)
    if a.emit_generator:
        terms = L.generator_terms()
        txt = " ".join(f"{'+' if c > 0 else '-'} {abs(c)}*{f}" for c, f in terms).lstrip("+ ")
        out.both(f"generator: {txt}", generator=[[c, str(f)] for c, f in terms])
    return OK


def cmd_saturation(a, out: Report) -> int:
    from .nakayama import saturation_evidence

    N = a.truncation if a.truncation is not None else max(2 * a.n + 2, 6)
    r = saturation_evidence(a.n, N)
    out.both(f"n={a.n} truncation {N}: sequence exact {r.sequence_exact}, cokernel torsion free {r.cokernel_torsion_free}",
             n=a.n, truncation=N, sequence_exact=r.sequence_exact, cokernel_torsion_free=r.cokernel_torsion_free)
    out.both(f"dim Hom(L, M(n)) {r.hom_to_n}, dim Hom(L, M(n-1)) {r.hom_to_n_minus_1}",
             hom_to_n=r.hom_to_n, hom_to_n_minus_1=r.hom_to_n_minus_1)
    out.both(f"dim Hom(C, M(n-1)) = {r.hom_c}", hom_c=r.hom_c)
    out.both(f"window route: {r.truncated_route} {r.truncated_to_n} {r.truncated_to_n_minus_1}",
             window_route=r.truncated_route, window_to_n=r.truncated_to_n,
             window_to_n_minus_1=r.truncated_to_n_minus_1)
    for note in r.notes:
        out.both(f"note: {note}", note=note)
    out.both(f"verdict: {r.verdict}", verdict=r.verdict)
    return {"PASS": OK, "FAIL": FAIL}.get(r.verdict, INCONCLUSIVE)


def cmd_selftest(a, out: Report) -> int:
    from .acceptance import run

    def emit(line):
        if out.fmt == "text":
            sys.stdout.write(line + "\n")
            sys.stdout.flush()

    crit = run(seed=a.seed, truncation=a.truncation, only=set(a.only) if a.only else None, emit=emit)
    for c in crit:
        out.record(criterion=c.number, verdict="PASS" if c.passed else "FAIL", title=c.title)
    ok = all(c.passed for c in crit)
    out.both(f"selftest: {sum(c.passed for c in crit)}/{len(crit)} criteria PASS",
             passed=sum(c.passed for c in crit), total=len(crit))
    return OK if ok else FAIL


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default=argparse.SUPPRESS,
                   help="rational | prime | prime:<p> (default: $OIREP_FIELD or rational)")
    p.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS,
                   help="text report or key=value lines")
    return p


def build_parser() -> argparse.ArgumentParser:
    from .algebra import LEMMAS
    from .functors import FUNCTOR_NAMES

    common = _common()
    p = argparse.ArgumentParser(prog="oirep", parents=[common],
                                description="Representations of the category of finite ordered sets and increasing maps.")
    sub = p.add_subparsers(dest="command", required=True)

    ideals = sub.add_parser("ideals", help="ideal generation checks").add_subparsers(dest="action", required=True)
    q = ideals.add_parser("verify", parents=[common], help="compare generated ideals with named slices")
    q.add_argument("--lemma", choices=LEMMAS, required=True)
    q.add_argument("--max-level", type=int, default=7)
    q.set_defaults(func=cmd_ideals_verify)

    fun = sub.add_parser("functor", help="apply a functor").add_subparsers(dest="action", required=True)
    q = fun.add_parser("apply", parents=[common], help="apply a functor to a module file")
    q.add_argument("--name", choices=FUNCTOR_NAMES, required=True)
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--out", dest="output")
    q.add_argument("--emit-provenance", action="store_true")
    q.set_defaults(func=cmd_functor_apply)

    ver = sub.add_parser("verify", help="adjunction checks").add_subparsers(dest="action", required=True)
    q = ver.add_parser("adjunctions", parents=[common], help="Hom dimension equalities for the six pairs")
    q.add_argument("--side", choices=("a", "b"), required=True)
    q.add_argument("--truncation", type=int, default=6)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_verify_adjunctions)

    tor = sub.add_parser("torsion", help="torsion analysis").add_subparsers(dest="action", required=True)
    q = tor.add_parser("analyze", parents=[common], help="search torsion witnesses")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--budget", type=int, required=True)
    q.set_defaults(func=cmd_torsion_analyze)

    nak = sub.add_parser("nakayama", help="Nakayama functor and its inverse").add_subparsers(dest="action", required=True)
    q = nak.add_parser("apply", parents=[common], help="nu of a presented module")
    q.add_argument("--presentation", required=True)
    q.add_argument("--levels", type=int, required=True)
    q.add_argument("--out", dest="output")
    q.set_defaults(func=cmd_nakayama_apply)
    q = nak.add_parser("inverse", parents=[common], help="inverse nu of a finite-dimensional module")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--truncation", type=int, required=True)
    q.add_argument("--out", dest="output")
    q.set_defaults(func=cmd_nakayama_inverse)

    simple = sub.add_parser("simple", help="simple saturated modules").add_subparsers(dest="action", required=True)
    q = simple.add_parser("L", parents=[common], help="the module L^n inside M(n)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--truncation", type=int, default=6)
    q.add_argument("--emit-generator", action="store_true")
    q.set_defaults(func=cmd_simple)

    sat = sub.add_parser("saturation", help="Hom checks for L^n").add_subparsers(dest="action", required=True)
    q = sat.add_parser("check", parents=[common], help="dim Hom(L^n, M(n)) and dim Hom(L^n, M(n-1))")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--truncation", type=int)
    q.set_defaults(func=cmd_saturation)

    q = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    q.add_argument("--truncation", type=int, default=6)
    q.add_argument("--seed", type=int, default=7)
    q.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    q.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    from .io import FormatError, RelationError
    from .modules import TruncationError

    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    fmt = getattr(a, "format", "text")
    try:
        set_field(parse_field(getattr(a, "field", None) or os.environ.get("OIREP_FIELD", "rational")))
    except ValueError as e:
        sys.stderr.write(f"error: bad field: {e}\n")
        return USAGE
    for attr in ("truncation", "levels", "budget", "max_level"):
        v = getattr(a, attr, None)
        if v is not None and v < (0 if attr == "levels" else 1):
            sys.stderr.write(f"error: --{attr.replace('_', '-')} must be positive\n")
            return USAGE
    out = Report(fmt)
    try:
        code = a.func(a, out)
    except FormatError as e:
        sys.stderr.write(f"format error: {e}\n")
        return USAGE
    except RelationError as e:
        sys.stderr.write(f"relation error: {e} triple={e.triple}\n")
        return USAGE
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return USAGE
    except TruncationError as e:
        out.flush()
        sys.stderr.write(f"inconclusive: {e}\n")
        return INCONCLUSIVE
    except RuntimeError as e:
        # stabilization and other budget failures
        out.flush()
        sys.stderr.write(f"inconclusive: {e}\n")
        return INCONCLUSIVE
    out.flush()
    return code


def main() -> None:
    sys.exit(run())
