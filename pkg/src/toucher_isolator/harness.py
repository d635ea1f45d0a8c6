"""Matches, transcripts and the value table."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .board import GameSpec, Move, Player, Position, advance, formula_values
from .oracle import ExplicitBoard, explicit_board_for
from .solver import Solver
from .strategies import Strategy, StrategyError

TABLE_SCHEMA = "toucher-isolator-table/1"
TABLE_COLUMNS = (
    "n",
    "u_cycle_solver",
    "u_cycle_formula",
    "u_path_solver",
    "u_path_formula",
    "prior_cycle_lower",
    "prior_cycle_upper",
    "cycle_ratio",
    "cycle_match",
    "path_match",
)


@dataclass
class TranscriptStep:
    ply: int
    player: str
    component_index: int
    cell: int
    board_cell: int  # 1-based index on the raw board
    delta: int


@dataclass
class MatchRecord:
    spec: str
    maker: str
    breaker: str
    transcript: list[TranscriptStep] = field(default_factory=list)
    score: int = 0
    formulas: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def formula_reference(spec: GameSpec) -> dict:
    if spec.origin == "cycle":
        return {"u_cycle": formula_values(spec.n).u_cycle}
    if spec.origin == "path":
        return {"u_path": formula_values(spec.n).u_path}
    if spec.origin == "delayed":
        fv = formula_values(spec.n, spec.k)
        return {"alpha_lower": fv.alpha_lower, "alpha_exact": fv.alpha_exact}
    return {}


def board_cell(spec_board: ExplicitBoard, position: Position, move: Move) -> int:
    comp, cells = spec_board.runs()[move.component_index]
    if comp != position.components[move.component_index]:
        raise AssertionError(f"raw board {spec_board.render()} out of step with {position}")
    return cells[move.cell - 1] + 1


class MatchRunner:
    """Steps a game forward while keeping a raw board and both strategies' states in step."""

    def __init__(self, spec: GameSpec, maker: Strategy, breaker: Strategy):
        self.spec = spec
        self.players = {Player.MAKER: maker, Player.BREAKER: breaker}
        self.states = {Player.MAKER: maker.start(spec), Player.BREAKER: breaker.start(spec)}
        self.board = explicit_board_for(spec)
        self.position, self.pending = spec.position, spec.free_breaker_moves
        self.record = MatchRecord(spec.label, maker.id, breaker.id, formulas=formula_reference(spec))

    @property
    def finished(self) -> bool:
        return self.position.is_terminal

    def move_for_cell(self, cell: int) -> Move | None:
        """The move claiming raw board cell ``cell`` (1-based), or None if it is not free."""
        for i, (_, cells) in enumerate(self.board.runs()):
            if cell - 1 in cells:
                return Move(i, cells.index(cell - 1) + 1)
        return None

    def strategy_move(self) -> Move:
        mover = self.position.to_move
        return self.players[mover].choose(self.position, self.states[mover])

    def play(self, m: Move) -> TranscriptStep:
        p = self.position
        if not (0 <= m.component_index < len(p.components) and 1 <= m.cell <= p.components[m.component_index].length):
            raise StrategyError(f"{self.players[p.to_move].id} chose illegal {m} in {p}")
        cell = board_cell(self.board, p, m)
        for side, strat in self.players.items():
            self.states[side] = strat.observe(p, m, self.states[side])
        self.position, self.pending, delta = advance(p, self.pending, m)
        self.board = self.board.claim(cell - 1, p.to_move)
        step = TranscriptStep(len(self.record.transcript) + 1, p.to_move.value, m.component_index, m.cell, cell, delta)
        self.record.transcript.append(step)
        self.record.score += delta
        if self.finished and self.board.score() != self.record.score:
            raise AssertionError(f"raw board scores {self.board.score()}, transcript {self.record.score}")
        return step


def play_match(spec: GameSpec, maker: Strategy, breaker: Strategy) -> MatchRecord:
    """Play ``maker`` against ``breaker`` from ``spec`` to the end."""
    runner = MatchRunner(spec, maker, breaker)
    while not runner.finished:
        runner.play(runner.strategy_move())
    return runner.record


def replay(spec: GameSpec, moves: Iterable[Move]) -> int:
    p, pending, score = spec.position, spec.free_breaker_moves, 0
    for m in moves:
        p, pending, delta = advance(p, pending, m)
        score += delta
    return score


def replay_record(spec: GameSpec, record: MatchRecord) -> int:
    return replay(spec, (Move(s.component_index, s.cell) for s in record.transcript))


def table_rows(n_from: int, n_to: int, solver: Solver | None, formula_only: bool = False) -> list[dict]:
    if n_from < 1 or n_to < n_from:
        raise ValueError(f"empty or invalid range {n_from}..{n_to}")
    rows = []
    for n in range(n_from, n_to + 1):
        fv = formula_values(n)
        row = dict.fromkeys(TABLE_COLUMNS)
        row["n"] = n
        row["u_path_formula"] = fv.u_path
        if n >= 3:
            row["u_cycle_formula"] = fv.u_cycle
            row["prior_cycle_lower"] = f"{3 * (n - 3) / 16:.4f}"
            row["prior_cycle_upper"] = f"{n / 4:.4f}"
            row["cycle_ratio"] = f"{fv.u_cycle / n:.4f}"
        if not formula_only:
            row["u_path_solver"] = solver.solve_path(n).value
            row["path_match"] = row["u_path_solver"] == fv.u_path
            if n >= 3:
                row["u_cycle_solver"] = solver.solve_cycle(n).value
                row["cycle_match"] = row["u_cycle_solver"] == fv.u_cycle
        rows.append(row)
    return rows


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema": TABLE_SCHEMA, "columns": list(TABLE_COLUMNS), "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# schema: {TABLE_SCHEMA}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in TABLE_COLUMNS])
    return buf.getvalue()


def render_match(record: MatchRecord, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record.to_dict(), indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# match: {record.spec}; maker={record.maker}; breaker={record.breaker}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("ply", "player", "component_index", "cell", "board_cell", "delta"))
    for s in record.transcript:
        writer.writerow((s.ply, s.player, s.component_index, s.cell, s.board_cell, s.delta))
    refs = " ".join(f"{k}={v}" for k, v in record.formulas.items())
    buf.write(f"# score={record.score} {refs}".rstrip() + "\n")
    return buf.getvalue()
