import random
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oirep.adjunctions import torsion_presentation
from oirep.cli import run
from oirep.io import (
    FormatError,
    RelationError,
    format_module,
    format_presentation,
    parse_module,
    parse_presentation,
    read_module,
)
from oirep.linalg import GF, field_context
from oirep.modules import random_module, random_presented

seeds = st.integers(0, 10_000)

W_TEXT = format_presentation(torsion_presentation())


@given(seeds)
def test_module_round_trip(seed):
    V = random_module(random.Random(seed), 4, max_dim=2)
    assert parse_module(format_module(V)) == V


@given(seeds)
def test_module_round_trip_prime(seed):
    with field_context(GF(7)):
        V = random_module(random.Random(seed), 3, max_dim=2)
        assert parse_module(format_module(V)) == V


@given(seeds)
def test_presentation_round_trip(seed):
    P = random_presented(random.Random(seed))
    Q = parse_presentation(format_presentation(P))
    assert (Q.gens, Q.rels) == (P.gens, P.rels)
    assert {k: v for k, v in Q.entries.items() if not v.is_zero()} == \
        {k: v for k, v in P.entries.items() if not v.is_zero()}


def test_format_error_has_position():
    with pytest.raises(FormatError) as e:
        parse_module("truncation: 1\ndims: [1, 1 1]\n")
    assert e.value.line == 2 and e.value.col > 1


def test_relation_error_has_triple():
    text = "truncation: 2\ndims: [1, 1, 1]\ngen 0 1: [[1]]\ngen 1 1: [[1]]\ngen 1 2: [[2]]\n"
    with pytest.raises(RelationError) as e:
        parse_module(text)
    assert e.value.triple == (0, 1, 2)


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_cli_simple_generator(capsys):
    assert run(["simple", "L", "--n", "2", "--truncation", "6", "--emit-generator"]) == 0
    out = capsys.readouterr().out
    assert "generator: 1*2->4:[1,3] - 1*2->4:[1,4] - 1*2->4:[2,3] + 1*2->4:[2,4]" in out


def test_cli_adjunction_table(capsys):
    assert run(["verify", "adjunctions", "--side", "a", "--truncation", "6", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert out.count(" PASS") == 6


def test_cli_structured_and_field(capsys, monkeypatch):
    monkeypatch.setenv("OIREP_FIELD", "prime:101")
    assert run(["saturation", "check", "--n", "1", "--format", "structured"]) == 0
    out = capsys.readouterr().out
    assert "verdict=PASS" in out and "hom_c=1" in out


def test_cli_torsion(tmp_path, capsys):
    path = _write(tmp_path, "w.txt", W_TEXT)
    assert run(["torsion", "analyze", "--in", path, "--budget", "5"]) == 0
    assert "witness 1->2:[2]" in capsys.readouterr().out
    free = _write(tmp_path, "m.txt", "truncation: 2\ndims: [1, 1, 1]\ngen 0 1: [[1]]\ngen 1 1: [[1]]\ngen 1 2: [[1]]\n")
    assert run(["torsion", "analyze", "--in", free, "--budget", "2"]) == 3


def test_cli_functor_apply(tmp_path, capsys):
    src = _write(tmp_path, "m.txt", "truncation: 2\ndims: [1, 1, 1]\ngen 0 1: [[1]]\ngen 1 1: [[1]]\ngen 1 2: [[1]]\n")
    out = str(tmp_path / "g.txt")
    assert run(["functor", "apply", "--name", "Ga", "--in", src, "--out", out]) == 0
    assert read_module(out).dims == [0, 1, 2]
    assert run(["functor", "apply", "--name", "Sa", "--in", src, "--emit-provenance"]) == 0
    assert "provenance unit 1: [[1]]" in capsys.readouterr().out


def test_cli_nakayama(tmp_path, capsys):
    pres = _write(tmp_path, "p.txt", "gens: [1]\nrels: []\n")
    out = str(tmp_path / "nu.txt")
    assert run(["nakayama", "apply", "--presentation", pres, "--levels", "3", "--out", out]) == 0
    assert read_module(out).dims == [1, 1, 0, 0]
    assert run(["nakayama", "inverse", "--in", out, "--truncation", "3"]) == 0
    assert "[0, 1, 2, 3]" in capsys.readouterr().out


def test_cli_errors(tmp_path, capsys):
    bad = _write(tmp_path, "bad.txt", "truncation: 1\ndims: [1, 1 1]\n")
    assert run(["functor", "apply", "--name", "Sa", "--in", bad]) == 2
    assert "line 2" in capsys.readouterr().err
    rel = _write(tmp_path, "rel.txt", "truncation: 2\ndims: [1, 1, 1]\ngen 0 1: [[1]]\ngen 1 1: [[1]]\ngen 1 2: [[2]]\n")
    assert run(["functor", "apply", "--name", "Sa", "--in", rel]) == 2
    assert "(0, 1, 2)" in capsys.readouterr().err
    assert run(["bogus"]) == 2
    assert run(["selftest", "--truncation", "0"]) == 2
    assert run(["simple", "L", "--n", "1", "--field", "prime:4"]) == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "oirep", "ideals", "verify", "--lemma", "2.2", "--max-level", "4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "overall: PASS" in r.stdout
