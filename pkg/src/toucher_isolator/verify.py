"""Verification suites shared by the ``verify`` command and the acceptance tests.

Every suite returns a :class:`SuiteResult`; a suite never raises on a failed
check, only on budget exhaustion or a broken strategy.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .board import (
    Component,
    Kind,
    Move,
    Player,
    Position,
    formula_values,
    game_from_cycle,
    game_from_delayed,
    game_from_path,
    game_from_position,
    structure_counts,
)
from .oracle import ExplicitBoard, ExplicitOracle, Topology, path_board
from .solver import Solver
from .strategies import (
    ResponseBreaker,
    BlockMaker,
    EndpointMaker,
    Strategy,
    breaker_first_response,
    best_response_value,
    uses_general_row,
)


@dataclass
class SuiteResult:
    name: str
    scale: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        text = f"[{mark}] {self.name} ({self.scale}) {self.seconds:.1f}s"
        return text + (f" -- {self.detail}" if self.detail else "")


@dataclass
class VerifyConfig:
    cycle_max: int = 21
    path_max: int = 21
    oracle_f_max: int = 12
    oracle_h_max: int = 10
    delayed_n_max: int = 18
    delayed_k_max: int = 3
    structure_positions: int = 500
    structure_max_total: int = 14
    zform_max_total: int = 14
    seed: int = 7
    breaker_f_max: int = 20
    breaker_h_max: int = 18
    block_n_max: int = 18
    block_k_max: int = 2
    endpoint_n_max: int = 18
    sandwich_n_min: int = 3
    sandwich_n_max: int = 18
    table_len_max: int = 100


class CorruptBreaker(Strategy):
    """Harness self-test: a Breaker that ignores Maker and takes the first free cell."""

    id = "corrupt-breaker"
    side = Player.BREAKER

    def choose(self, p, state):
        return Move(0, 1)


def positions_up_to(max_total: int) -> Iterator[tuple[Component, ...]]:
    """Every multiset of components with total length at most ``max_total``."""
    kinds_lengths = [Component(k, n) for n in range(1, max_total + 1) for k in Kind]

    def rec(start: int, budget: int, acc: list) -> Iterator[tuple[Component, ...]]:
        yield tuple(acc)
        for i in range(start, len(kinds_lengths)):
            c = kinds_lengths[i]
            if c.length <= budget:
                acc.append(c)
                yield from rec(i, budget - c.length, acc)
                acc.pop()

    yield from rec(0, max_total, [])


def random_position(rng: random.Random, max_total: int, to_move: Player = Player.MAKER) -> Position:
    remaining = rng.randint(1, max_total)
    comps = []
    while remaining > 0:
        length = rng.randint(1, remaining)
        comps.append(Component(rng.choice(list(Kind)), length))
        remaining -= length
    return Position.of(comps, to_move)


def _run(name: str, scale: str, body: Callable[[list], str]) -> SuiteResult:
    t0 = time.monotonic()
    failures: list = []
    detail = body(failures)
    res = SuiteResult(name, scale, not failures, detail, time.monotonic() - t0, failures)
    if failures:
        res.detail = f"{len(failures)} failure(s), first: {failures[0]}"
    return res


def cycle_exactness(solver: Solver, n_max: int = 21) -> SuiteResult:
    def body(fail):
        for n in range(3, n_max + 1):
            v = solver.solve_cycle(n).value
            if v != (n + 1) // 5:
                fail.append(("cycle", n, v))
        return "u(C_n) = floor((n+1)/5)"

    return _run("cycle-exactness", f"3<=n<={n_max}", body)


def path_exactness(solver: Solver, n_max: int = 21) -> SuiteResult:
    def body(fail):
        for n in range(1, n_max + 1):
            v = solver.solve_path(n).value
            if v != formula_values(n).u_path:
                fail.append(("path", n, v))
        return "u(P_n) = floor((n+4)/5), u(P_1) = 0"

    return _run("path-exactness", f"1<=n<={n_max}", body)


def _compare_with_oracle(solver: Solver, n: int, flanks: tuple[bool, bool], maker_first: bool, fail: list) -> int:
    oracle = ExplicitOracle(Topology.PATH, flanks, cap=max(n, 1))
    oracle.value((0,) * n, maker_first)
    for (cells, maker), total in oracle.table.items():
        board = ExplicitBoard(Topology.PATH, cells, flanks)
        p = board.position(Player.MAKER if maker else Player.BREAKER)
        got = solver.position_value(p)
        if got != total - board.score():
            fail.append((n, board.render(), got, total - board.score()))
    return len(oracle.table)


def oracle_equivalence(solver: Solver, f_max: int = 12, h_max: int = 10) -> SuiteResult:
    def body(fail):
        states = 0
        for n in range(1, f_max + 1):
            states += _compare_with_oracle(solver, n, (False, False), True, fail)
        for n in range(1, h_max + 1):
            states += _compare_with_oracle(solver, n, (True, True), False, fail)
        return f"{states} reachable raw states compared"

    return _run("oracle-equivalence", f"F(n<={f_max}) Maker first, H(n<={h_max}) Breaker first", body)


def delayed_bound(solver: Solver, n_max: int = 18, k_max: int = 3) -> SuiteResult:
    def body(fail):
        for n in range(1, n_max + 1):
            for k in range(0, min(k_max, n) + 1):
                v = solver.solve_delayed(n, k).value
                fv = formula_values(n, k)
                if v < fv.alpha_lower:
                    fail.append(("lower", n, k, v, fv.alpha_lower))
                if k == 0 and v != fv.alpha_exact:
                    fail.append(("exact", n, v, fv.alpha_exact))
        return "alpha(n,k) >= floor((n-3k+2)/5); alpha(n,0) = floor((n+2)/5)"

    return _run("delayed-bound", f"n<={n_max}, k<={k_max}", body)


def structure_bound(solver: Solver, count: int = 500, max_total: int = 14, seed: int = 7) -> SuiteResult:
    def body(fail):
        rng = random.Random(seed)
        for _ in range(count):
            p = random_position(rng, max_total)
            sc = structure_counts(p)
            v = solver.position_value(p)
            if sc.z != sc.z_alt:
                fail.append(("z-forms", str(p), sc.z, sc.z_alt))
            if v > sc.g:
                fail.append(("bound", str(p), v, sc.g))
        return f"value <= g on {count} positions"

    return _run("structure-bound", f"{count} random positions, total<={max_total}, seed={seed}", body)


def zform_agreement(max_total: int = 14) -> SuiteResult:
    def body(fail):
        n = 0
        for comps in positions_up_to(max_total):
            sc = structure_counts(comps)
            n += 1
            if sc.z != sc.z_alt:
                fail.append((comps, sc.z, sc.z_alt))
        return f"{n} component multisets"

    return _run("z-form-agreement", f"total<={max_total}", body)


def breaker_guarantee(f_max: int = 20, h_max: int = 18, breaker: Strategy | None = None) -> SuiteResult:
    breaker = breaker or ResponseBreaker()

    def body(fail):
        for n in range(1, f_max + 1):
            v = best_response_value(game_from_position(Position.of([Component(Kind.F, n)])), breaker)
            if v > (n + 2) // 5:
                fail.append(("F", n, v))
        for n in range(1, h_max + 1):
            p = Position.of([Component(Kind.H, n)])
            v = best_response_value(game_from_position(p), breaker)
            if v > structure_counts(p).g:
                fail.append(("H", n, v))
        return f"{breaker.id} holds F(n) to floor((n+2)/5) and H(n) to g"

    return _run("breaker-guarantee", f"F(n<={f_max}), H(n<={h_max})", body)


def maker_guarantees(n3_max: int = 18, k_max: int = 2, n4_max: int = 18) -> SuiteResult:
    def body(fail):
        m3, m4 = BlockMaker(), EndpointMaker()
        for n in range(1, n3_max + 1):
            for k in range(0, min(k_max, n) + 1):
                v = best_response_value(game_from_delayed(n, k), m3)
                if v < formula_values(n, k).alpha_lower:
                    fail.append(("block-maker", n, k, v))
        for n in range(2, n4_max + 1):
            v = best_response_value(game_from_path(n), m4)
            if v < (n + 4) // 5:
                fail.append(("endpoint-maker", n, v))
        return "block-maker on F(n,k), endpoint-maker on paths"

    return _run("maker-guarantees", f"F(n<={n3_max},k<={k_max}), P(2<=n<={n4_max})", body)


def sandwich(solver: Solver, n_min: int = 3, n_max: int = 18, breaker: Strategy | None = None) -> SuiteResult:
    breaker = breaker or ResponseBreaker()

    def body(fail):
        for n in range(n_min, n_max + 1):
            fv = formula_values(n)
            for label, spec, maker, formula in (
                ("cycle", game_from_cycle(n), BlockMaker(), fv.u_cycle),
                ("path", game_from_path(n), EndpointMaker(), fv.u_path),
            ):
                upper = best_response_value(spec, breaker)
                lower = best_response_value(spec, maker)
                exact = solver.solve_spec(spec).value
                if not upper <= formula <= lower or not upper == lower == exact == formula:
                    fail.append((label, n, upper, lower, exact, formula))
        return "Breaker guarantee = Maker guarantee = solver = formula"

    return _run("strategy-sandwich", f"{n_min}<=n<={n_max}", body)


def special_values(solver: Solver) -> SuiteResult:
    def body(fail):
        for text, expected in (("H1", 2), ("H2", 1), ("F2", 0)):
            comp = Component(Kind[text[0]], int(text[1:]))
            v = solver.solve(Position.of([comp])).value
            if v != expected:
                fail.append((text, v, expected))
        return "H(1)=2, H(2)=1, F(2)=0"

    return _run("special-values", "single components", body)


def response_table(len_max: int = 100) -> SuiteResult:
    """Answers stay in range and the mod-5 rows produce the promised residues."""

    def body(fail):
        for kind in Kind:
            for length in range(1, len_max + 1):
                for j in range(1, length + 1):
                    r = breaker_first_response(kind, length, j)
                    if length == 1:
                        if r is not None:
                            fail.append((kind, length, j, r))
                        continue
                    if r is None or not 1 <= r <= length or abs(r - j) != 1:
                        fail.append((kind, length, j, r))
                        continue
                    if uses_general_row(kind, length, j) and not _row_condition_holds(kind, length, j, r):
                        fail.append(("row", kind, length, j, r))
        return "every reply adjacent and in range; table residues hold"

    return _run("response-table", f"len<={len_max}", body)


# residue promised for the run left of the answered pair, by j mod 5
ROW_CONDITIONS = {
    Kind.F: {0: (Kind.G, 4), 1: (Kind.F, 4), 2: (Kind.G, 1), 3: (Kind.F, 1), 4: (Kind.F, 2)},
    Kind.G: {0: (Kind.G, 3), 1: (Kind.G, 4), 2: (Kind.H, 1), 3: (Kind.G, 1), 4: (Kind.H, 3)},
    Kind.H: {0: (Kind.G, 3), 1: (Kind.G, 4), 2: (Kind.H, 1), 3: (Kind.G, 1), 4: (Kind.H, 3)},
}

_FLANKS = {Kind.F: (False, False), Kind.G: (True, False), Kind.H: (True, True)}


def _row_condition_holds(kind: Kind, length: int, j: int, reply: int) -> bool:
    """Play the pair on a raw board and read off the run holding cell 1."""
    if kind is not Kind.G and 2 * j > length + 1:
        j, reply = length + 1 - j, length + 1 - reply
    board = path_board(length, _FLANKS[kind]).claim(j - 1, Player.MAKER).claim(reply - 1, Player.BREAKER)
    left = [c for c, cells in board.runs() if 0 in cells]
    want_kind, want_residue = ROW_CONDITIONS[kind][j % 5]
    return len(left) == 1 and left[0].kind is want_kind and left[0].length % 5 == want_residue
