"""The twelve acceptance criteria, each with its time limit.

One PASS/FAIL line per criterion is printed in the terminal summary.
"""
import pytest

from segalkit.cli import main
from segalkit.corpus import default_corpus
from segalkit.suite import CRITERIA, run_criterion

SEED = 0
LINES: dict[int, str] = {}


@pytest.fixture(scope="module")
def corpus():
    return default_corpus(SEED)


def _line(number, name, passed, seconds, limit):
    budget = f"limit {limit:g} s" if limit else "no limit"
    return f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d} {name}: {seconds:.2f} s ({budget})"


@pytest.mark.parametrize("cr", CRITERIA, ids=[f"{c.number:02d}-{c.name}" for c in CRITERIA])
def test_criterion(cr, corpus):
    row, dt = run_criterion(cr, corpus)
    LINES[cr.number] = _line(cr.number, cr.name, row["passed"], dt, cr.limit)
    assert "error" not in row, row.get("error")
    assert row["passed"], row["detail"]
    assert dt < cr.limit


def test_criterion_12_determinism(tmp_path):
    import time

    t0 = time.perf_counter()
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.json"
        assert main(["suite", "--seed", str(SEED), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    same = outs[0] == outs[1]
    LINES[12] = _line(12, "determinism", same, time.perf_counter() - t0, None)
    assert same
