"""Acceptance criteria 1-14; a one-line verdict per criterion is printed in the run summary."""

import subprocess
import sys
import time

import pytest

from oirep import acceptance

SEED, TRUNCATION = 7, 6
VERDICTS: dict[int, str] = {}


@pytest.mark.parametrize("k", range(1, 14))
def test_criterion(k):
    c = acceptance.CRITERIA[k - 1](SEED, TRUNCATION)
    VERDICTS[k] = c.line()
    print(c.line())
    for d in c.details:
        print("    " + d)
    assert c.passed, "\n".join([c.line()] + c.details)


def _selftest():
    t = time.perf_counter()
    r = subprocess.run([sys.executable, "-m", "oirep", "selftest", "--truncation", str(TRUNCATION),
                        "--seed", str(SEED)], capture_output=True)
    return r, time.perf_counter() - t


def test_criterion_14_determinism_and_budget():
    r1, t1 = _selftest()
    r2, t2 = _selftest()
    same = r1.stdout == r2.stdout
    ok = same and r1.returncode == r2.returncode == 0 and max(t1, t2) <= 300
    VERDICTS[14] = (f"criterion 14 [{'PASS' if ok else 'FAIL'}] determinism and budget: "
                    f"byte-identical={same}, exit codes {r1.returncode}/{r2.returncode}, "
                    f"runtimes {t1:.1f}s / {t2:.1f}s (budget 300s)")
    print(VERDICTS[14])
    assert ok, r1.stderr.decode()[-2000:]
