"""Acceptance gate: one test and one PASS/FAIL summary line per criterion.

Each criterion gets a fresh solver so its runtime is measured cold.
"""

import csv
import io
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from toucher_isolator import cli
from toucher_isolator import verify as V
from toucher_isolator.solver import Solver


def record(number: int, title: str, res: V.SuiteResult, limit_s: float) -> None:
    in_time = res.seconds <= limit_s
    ok = res.passed and in_time
    detail = res.detail
    if not in_time:
        detail += f"; over the {limit_s:.0f}s limit"
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} {number}. {title} [{res.scale}] {res.seconds:.1f}s -- {detail}")
    assert res.passed, res.detail
    assert in_time, f"took {res.seconds:.1f}s, limit {limit_s}s"


def test_1_cycle_exactness():
    record(1, "cycle exactness", V.cycle_exactness(Solver(), 21), 120)


def test_2_path_exactness():
    record(2, "path exactness", V.path_exactness(Solver(), 21), 120)


def test_3_oracle_equivalence():
    record(3, "oracle equivalence", V.oracle_equivalence(Solver(), 12, 10), 300)


def test_4_delayed_lower_bound():
    record(4, "delayed-game lower bound", V.delayed_bound(Solver(), 18, 3), 180)


def test_5_structure_bound():
    res = V.structure_bound(Solver(), count=500, max_total=14, seed=7)
    record(5, "structure-count upper bound and z-form agreement", res, 180)


def test_6_strategy_sandwich():
    record(6, "strategy sandwich", V.sandwich(Solver(), 3, 16), 600)


def test_7_special_values():
    record(7, "special values H(1), H(2), F(2)", V.special_values(Solver()), 1)


def test_8_cycle_proportion(capsys):
    t0 = time.monotonic()
    code = cli.main(["table", "--n-from", "50", "--n-to", "100", "--formula-only"])
    text = capsys.readouterr().out
    rows = {int(r["n"]): r for r in csv.DictReader(io.StringIO(text.split("\n", 1)[1]))}
    failures = []
    for n in (50, 100):
        ratio = Fraction(int(rows[n]["u_cycle_formula"]), n)
        if abs(ratio - Fraction(1, 5)) > Fraction(1, 100):
            failures.append((n, str(ratio)))
    res = V.SuiteResult(
        "cycle-proportion", "n in {50, 100}, formula columns", code == 0 and not failures,
        f"ratios {rows[50]['cycle_ratio']}, {rows[100]['cycle_ratio']}" if not failures else f"off: {failures}",
        time.monotonic() - t0, failures,
    )
    record(8, "u(C_n)/n within 0.01 of 1/5", res, 1)
