"""Raw-board game model and the naive brute-force oracle.

The oracle deliberately knows nothing about components: it runs minimax over
whole cell arrays and scores a finished board by counting adjacent Maker
pairs.  The only concession to speed is a transposition table keyed on the
full cell tuple, which leaves the search itself unchanged.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .board import Component, GameSpec, Kind, Player, Position

DEFAULT_ORACLE_CAP = 14


class Cell(enum.IntEnum):
    EMPTY = 0
    MAKER = 1
    BREAKER = 2


class Topology(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"


class OracleCapExceeded(ValueError):
    pass


_OWNER = {Player.MAKER: Cell.MAKER, Player.BREAKER: Cell.BREAKER}


@dataclass(frozen=True)
class ExplicitBoard:
    topology: Topology
    cells: tuple[Cell, ...]
    virtual_flanks: tuple[bool, bool] = (False, False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(Cell(c) for c in self.cells))
        if self.topology is Topology.CYCLE:
            if any(self.virtual_flanks):
                raise ValueError("cycle boards cannot carry virtual flanks")
            if len(self.cells) < 3:
                raise ValueError("a cycle needs at least 3 cells")

    @property
    def size(self) -> int:
        return len(self.cells)

    def empty_cells(self) -> list[int]:
        return [i for i, c in enumerate(self.cells) if c is Cell.EMPTY]

    def claim(self, index: int, player: Player) -> ExplicitBoard:
        """Claim 0-based cell ``index``."""
        if not 0 <= index < len(self.cells) or self.cells[index] is not Cell.EMPTY:
            raise ValueError(f"cell {index + 1} is not available")
        cells = list(self.cells)
        cells[index] = _OWNER[player]
        return ExplicitBoard(self.topology, tuple(cells), self.virtual_flanks)

    def score(self) -> int:
        return score_cells(self.cells, self.topology, self.virtual_flanks)

    def runs(self) -> list[tuple[Component, tuple[int, ...]]]:
        """Maximal empty runs as components, each with its cells in local order.

        Sorted stably by component, so list index i matches canonical index i
        of :meth:`position`.
        """
        n = len(self.cells)
        if self.topology is Topology.CYCLE:
            claimed = [i for i, c in enumerate(self.cells) if c is not Cell.EMPTY]
            if not claimed:
                raise ValueError("an untouched cycle is not a union of paths")
            start = claimed[0]
            order = [(start + 1 + s) % n for s in range(n - 1)]
            left_end = right_end = self.cells[start] is Cell.MAKER
        else:
            order = list(range(n))
            left_end, right_end = self.virtual_flanks

        out = []
        i = 0
        while i < len(order):
            if self.cells[order[i]] is not Cell.EMPTY:
                i += 1
                continue
            j = i
            while j + 1 < len(order) and self.cells[order[j + 1]] is Cell.EMPTY:
                j += 1
            lm = left_end if i == 0 else self.cells[order[i - 1]] is Cell.MAKER
            rm = right_end if j == len(order) - 1 else self.cells[order[j + 1]] is Cell.MAKER
            run = tuple(order[i : j + 1])
            if lm and rm:
                kind = Kind.H
            elif lm or rm:
                kind = Kind.G
                if rm:
                    run = run[::-1]
            else:
                kind = Kind.F
            out.append((Component(kind, len(run)), run))
            i = j + 1
        out.sort(key=lambda item: item[0])
        return out

    def position(self, to_move: Player) -> Position:
        return Position.of([c for c, _ in self.runs()], to_move)

    def render(self) -> str:
        glyph = {Cell.EMPTY: ".", Cell.MAKER: "M", Cell.BREAKER: "B"}
        body = " ".join(glyph[c] for c in self.cells)
        if self.topology is Topology.CYCLE:
            return f"({body}) cycle"
        lf, rf = self.virtual_flanks
        return ("[M] " if lf else "") + body + (" [M]" if rf else "")


def score_cells(cells: Sequence[int], topology: Topology, flanks: tuple[bool, bool]) -> int:
    n = len(cells)
    m = Cell.MAKER
    total = sum(1 for i in range(n - 1) if cells[i] == m and cells[i + 1] == m)
    if topology is Topology.CYCLE:
        total += cells[-1] == m and cells[0] == m
    else:
        if n:
            total += flanks[0] and cells[0] == m
            total += flanks[1] and cells[-1] == m
    return int(total)


def path_board(n: int, flanks: tuple[bool, bool] = (False, False)) -> ExplicitBoard:
    return ExplicitBoard(Topology.PATH, (Cell.EMPTY,) * n, flanks)


def cycle_board(n: int) -> ExplicitBoard:
    return ExplicitBoard(Topology.CYCLE, (Cell.EMPTY,) * n)


def board_for_position(p: Position) -> ExplicitBoard:
    """Lay the components out on one path, separated by Breaker cells.

    Flanked ends get a real Maker cell; no two Maker cells end up adjacent so
    the board starts with score 0.
    """
    cells: list[Cell] = []
    for i, c in enumerate(p.components):
        if i:
            cells.append(Cell.BREAKER)
        if c.kind is not Kind.F:
            cells.append(Cell.MAKER)
        cells.extend([Cell.EMPTY] * c.length)
        if c.kind is Kind.H:
            cells.append(Cell.MAKER)
    return ExplicitBoard(Topology.PATH, tuple(cells))


def explicit_board_for(spec: GameSpec) -> ExplicitBoard:
    """The raw board whose play corresponds to ``spec``'s initial position."""
    if spec.origin == "cycle":
        return cycle_board(spec.n).claim(spec.n - 1, Player.BREAKER)
    if spec.origin == "path":
        return path_board(spec.n, (True, True))
    if spec.origin == "delayed":
        return path_board(spec.n)
    return board_for_position(spec.position)


class ExplicitOracle:
    """Memoized plain minimax over raw boards of one topology."""

    def __init__(self, topology: Topology, flanks: tuple[bool, bool] = (False, False), cap: int = DEFAULT_ORACLE_CAP):
        self.topology = topology
        self.flanks = flanks
        self.cap = cap
        self.table: dict[tuple[tuple[int, ...], bool], int] = {}

    def value(self, cells: Sequence[int], maker_to_move: bool) -> int:
        cells = tuple(int(c) for c in cells)
        free = sum(1 for c in cells if c == Cell.EMPTY)
        if free > self.cap:
            raise OracleCapExceeded(f"{free} unclaimed cells exceeds the oracle cap of {self.cap}")
        return self._search(cells, maker_to_move)

    def _search(self, cells: tuple[int, ...], maker: bool) -> int:
        key = (cells, maker)
        hit = self.table.get(key)
        if hit is not None:
            return hit
        empties = [i for i, c in enumerate(cells) if c == Cell.EMPTY]
        if not empties:
            result = score_cells(cells, self.topology, self.flanks)
        else:
            mark = Cell.MAKER if maker else Cell.BREAKER
            vals = []
            for i in empties:
                child = cells[:i] + (mark,) + cells[i + 1 :]
                vals.append(self._search(child, not maker))
            result = max(vals) if maker else min(vals)
        self.table[key] = result
        return result


def brute_force_explicit(board: ExplicitBoard, to_move: Player, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Final score (all adjacent Maker pairs, flanks included) under optimal play."""
    oracle = ExplicitOracle(board.topology, board.virtual_flanks, cap)
    return oracle.value(board.cells, to_move is Player.MAKER)
