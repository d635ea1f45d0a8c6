"""Exact values by memoized minimax over canonical component multisets.

Internally a position is a sorted tuple of integer codes ``kind << 8 | length``
so keys hash and compare fast.  Before lookup two exact reductions are applied
to positions reached by normal alternating play:

* F(2) runs are dropped: whoever is threatened can answer a move there with
  the other cell, so they never change the value.
* F(1) runs only matter mod 2: a single free cell is a pass, and a pair of
  passes cancels by the same answering argument.

Both reductions are checked against the explicit oracle by the test suite.
Free Breaker moves of the delayed game are searched without reductions.
"""

from __future__ import annotations

import time
from bisect import insort
from dataclasses import dataclass

from .board import (
    Component,
    GameSpec,
    Kind,
    Move,
    Player,
    Position,
    apply_move,
    game_from_cycle,
    game_from_delayed,
    game_from_path,
    legal_moves,
    split_geometry,
)

DEFAULT_MAX_NODES = 10**8
DEFAULT_MAX_SECONDS = 300.0

_SHIFT = 8
_MASK = (1 << _SHIFT) - 1
_F1 = (Kind.F << _SHIFT) | 1
_F2 = (Kind.F << _SHIFT) | 2

Key = tuple[int, ...]


class BudgetExhausted(RuntimeError):
    """The configured node or time budget ran out before the value was known."""


@dataclass(frozen=True)
class SolveResult:
    value: int
    principal_move: Move | None
    nodes_expanded: int


def encode(c: Component) -> int:
    if c.length > _MASK:
        raise ValueError(f"component {c} too long for the solver (max {_MASK})")
    return (int(c.kind) << _SHIFT) | c.length


def decode(code: int) -> Component:
    return Component(Kind(code >> _SHIFT), code & _MASK)


def reduce_key(codes) -> Key:
    out = []
    odd_f1 = False
    for code in codes:
        if code == _F2:
            continue
        if code == _F1:
            odd_f1 = not odd_f1
            continue
        out.append(code)
    if odd_f1:
        out.append(_F1)
    out.sort()
    return tuple(out)


def _child(rest: Key, parts: Key) -> Key:
    if not parts:
        return rest
    lst = list(rest)
    for p in parts:
        insort(lst, p)
    return tuple(lst)


class Solver:
    """One memo table; not shared across threads."""

    def __init__(self, max_nodes: int = DEFAULT_MAX_NODES, max_seconds: float = DEFAULT_MAX_SECONDS):
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.memo: dict[tuple[Key, bool], int] = {}
        self._delayed: dict[tuple[Key, int], int] = {}
        self._maker_moves: dict[int, list[tuple[int, Key]]] = {}
        self._breaker_moves: dict[int, list[Key]] = {}
        self._nodes = 0
        self._deadline = 0.0

    # -- move tables -------------------------------------------------------

    def _mover_cells(self, code: int) -> range:
        kind, length = code >> _SHIFT, code & _MASK
        if kind == Kind.G:
            return range(1, length + 1)
        # F and H runs are mirror-symmetric
        return range(1, (length + 1) // 2 + 1)

    def maker_options(self, code: int) -> list[tuple[int, Key]]:
        opts = self._maker_moves.get(code)
        if opts is None:
            kind, length = Kind(code >> _SHIFT), code & _MASK
            opts = []
            for j in self._mover_cells(code):
                delta, parts = split_geometry(kind, length, j, Player.MAKER)
                opts.append((delta, tuple(sorted(encode(p.component) for p in parts))))
            self._maker_moves[code] = opts
        return opts

    def breaker_options(self, code: int) -> list[Key]:
        opts = self._breaker_moves.get(code)
        if opts is None:
            kind, length = Kind(code >> _SHIFT), code & _MASK
            opts = []
            for j in self._mover_cells(code):
                _, parts = split_geometry(kind, length, j, Player.BREAKER)
                opts.append(tuple(sorted(encode(p.component) for p in parts)))
            self._breaker_moves[code] = opts
        return opts

    # -- search ------------------------------------------------------------

    def _tick(self) -> None:
        self._nodes += 1
        if self._nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget of {self.max_nodes} exhausted")
        if not self._nodes & 0xFFF and time.monotonic() > self._deadline:
            raise BudgetExhausted(f"time budget of {self.max_seconds}s exhausted")

    def value(self, key: Key, maker: bool) -> int:
        """Optimal remaining score of an already reduced key."""
        if not key:
            return 0
        memo_key = (key, maker)
        hit = self.memo.get(memo_key)
        if hit is not None:
            return hit
        self._tick()
        prev = -1
        if maker:
            best = -1
            for i, code in enumerate(key):
                if code == prev:
                    continue
                prev = code
                rest = key[:i] + key[i + 1 :]
                for delta, parts in self.maker_options(code):
                    v = delta + self.value(_child(rest, parts), False)
                    if v > best:
                        best = v
        else:
            best = None
            for i, code in enumerate(key):
                if code == prev:
                    continue
                prev = code
                rest = key[:i] + key[i + 1 :]
                for parts in self.breaker_options(code):
                    v = self.value(reduce_key(rest + parts), True)
                    if best is None or v < best:
                        best = v
                        if best == 0:
                            break
                if best == 0:
                    break
        self.memo[memo_key] = best
        return best

    def delayed_value(self, key: Key, free: int) -> int:
        """Breaker makes ``free`` consecutive moves on unreduced ``key``, then Maker."""
        if free == 0:
            return self.value(reduce_key(key), True)
        if not key:
            return 0
        hit = self._delayed.get((key, free))
        if hit is not None:
            return hit
        self._tick()
        best = None
        prev = -1
        for i, code in enumerate(key):
            if code == prev:
                continue
            prev = code
            rest = key[:i] + key[i + 1 :]
            for parts in self.breaker_options(code):
                v = self.delayed_value(_child(rest, parts), free - 1)
                if best is None or v < best:
                    best = v
        self._delayed[(key, free)] = best
        return best

    def _start(self) -> None:
        self._nodes = 0
        self._deadline = time.monotonic() + self.max_seconds

    def _eval(self, p: Position, pending: int) -> int:
        key = tuple(encode(c) for c in p.components)
        if pending:
            return self.delayed_value(key, pending)
        return self.value(reduce_key(key), p.to_move is Player.MAKER)

    def solve(self, p: Position, free_breaker_moves: int = 0) -> SolveResult:
        """Value of ``p`` plus the first optimal move in canonical order."""
        self._start()
        if p.is_terminal:
            return SolveResult(0, None, 0)
        maker = p.to_move is Player.MAKER
        best, best_move = None, None
        for m in legal_moves(p):
            child, delta = apply_move(p, m)
            pending = free_breaker_moves
            if pending:
                pending -= 1
                if pending:
                    child = child.with_to_move(Player.BREAKER)
            v = delta + self._eval(child, pending)
            if best is None or (v > best if maker else v < best):
                best, best_move = v, m
        # store the root too so a warm cache answers it directly
        if not free_breaker_moves:
            self.memo.setdefault((reduce_key(tuple(encode(c) for c in p.components)), maker), best)
        return SolveResult(best, best_move, self._nodes)

    def solve_spec(self, spec: GameSpec) -> SolveResult:
        return self.solve(spec.position, spec.free_breaker_moves)

    def position_value(self, p: Position, free_breaker_moves: int = 0) -> int:
        """Value only, without the root move scan."""
        self._start()
        return self._eval(p, free_breaker_moves)

    def solve_cycle(self, n: int) -> SolveResult:
        return self.solve_spec(game_from_cycle(n))

    def solve_path(self, n: int) -> SolveResult:
        return self.solve_spec(game_from_path(n))

    def solve_delayed(self, n: int, k: int) -> SolveResult:
        return self.solve_spec(game_from_delayed(n, k))


_default = Solver()


def default_solver() -> Solver:
    return _default


def solve(p: Position) -> SolveResult:
    return _default.solve(p)


def solve_cycle(n: int) -> SolveResult:
    return _default.solve_cycle(n)


def solve_path(n: int) -> SolveResult:
    return _default.solve_path(n)


def solve_delayed(n: int, k: int) -> SolveResult:
    return _default.solve_delayed(n, k)
