"""Constructive strategies for both sides and a best-response checker.

A strategy sees canonical positions only.  Anything it needs to remember
about geometry (which G run borders Maker's current block, which cell answers
Maker's last move) lives in a small hashable private state that is threaded
through :meth:`Strategy.observe` after every move, by either side.  Because
``choose`` and ``observe`` are pure, the best-response search can memoize on
``(position, pending free moves, state)``.
"""

from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass, replace
from typing import Hashable

from .board import (
    Component,
    GameSpec,
    IllegalMove,
    Kind,
    Move,
    Player,
    Position,
    advance,
    apply_move,
    legal_moves,
    split_geometry,
)
from .solver import DEFAULT_MAX_NODES, DEFAULT_MAX_SECONDS, BudgetExhausted, Solver


class StrategyError(RuntimeError):
    """A strategy produced no move or an illegal one."""


class Strategy:
    id = "abstract"
    side: Player

    def start(self, spec: GameSpec) -> Hashable:
        return None

    def choose(self, p: Position, state: Hashable) -> Move:
        raise NotImplementedError

    def observe(self, p: Position, move: Move, state: Hashable) -> Hashable:
        """State after ``move`` is played in ``p`` (by whichever side is to move)."""
        return state

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.id}>"


def distinct_moves(p: Position) -> list[Move]:
    """Legal moves with duplicates into equal components removed."""
    out = []
    prev = None
    for i, c in enumerate(p.components):
        if c == prev:
            continue
        prev = c
        out.extend(Move(i, j) for j in range(1, c.length + 1))
    return out


def _locate(p_after: Position, parts, parent_cell: int) -> Move:
    for part in parts:
        if part.first <= parent_cell <= part.last:
            return Move(p_after.index_of(part.component), part.local(parent_cell))
    raise ValueError(f"cell {parent_cell} is not in any part")


# ---------------------------------------------------------------------------
# Breaker: the component-following strategy with the extra-move ladder
# ---------------------------------------------------------------------------

# residue of j mod 5 -> +1 (claim j+1) or -1 (claim j-1)
RESPONSE_TABLE = {
    Kind.F: {0: +1, 1: -1, 2: +1, 3: -1, 4: -1},
    Kind.G: {0: -1, 1: -1, 2: +1, 3: -1, 4: +1},
    Kind.H: {0: -1, 1: -1, 2: +1, 3: -1, 4: +1},
}


def _reply_small_side(kind: Kind, length: int, j: int) -> int:
    # j <= ceil(length / 2) for the symmetric kinds F and H
    if j == 1:
        return 2
    if kind is Kind.H:
        if j == 2:
            return 1
        if j == 3 and length == 5:
            return 2
    return j + RESPONSE_TABLE[kind][j % 5]


def uses_general_row(kind: Kind, length: int, j: int) -> bool:
    """Whether the reply to ``j`` comes from the mod-5 rows rather than a special case."""
    kind = Kind(kind)
    if length < 2:
        return False
    if kind is Kind.G:
        return 3 <= j <= length - 1
    jj = min(j, length + 1 - j)
    if jj == 1:
        return False
    if kind is Kind.H and (jj == 2 or (jj == 3 and length == 5)):
        return False
    return True


def breaker_first_response(kind: Kind, length: int, j: int) -> int | None:
    """Breaker's answer to Maker claiming cell ``j`` of a (kind, length) run.

    Returns a cell of the same run adjacent to ``j``, or None for a
    single-cell run where no answer inside the run exists.
    """
    kind = Kind(kind)
    if not 1 <= j <= length:
        raise IllegalMove(f"cell {j} out of range for {kind.name}{length}")
    if length == 1:
        return None
    if kind is Kind.G:
        if j == 1:
            return 2
        if j == 2:
            return 1
        if j == length:
            return length - 1
        return j + RESPONSE_TABLE[Kind.G][j % 5]
    if 2 * j > length + 1:
        mirrored = length + 1 - j
        return length + 1 - _reply_small_side(kind, length, mirrored)
    return _reply_small_side(kind, length, j)


def extra_move(p: Position) -> Move:
    """Where Breaker spends a move that has no local answer to make.

    Ladder: an H(1); an end of an H(2); cell 1 of an H(m>=3); cell 1 of a
    G(m); cell m-2 of an F(m>=3); otherwise the first legal cell.
    """
    comps = p.components
    for test, cell in (
        (lambda c: c.kind is Kind.H and c.length == 1, lambda c: 1),
        (lambda c: c.kind is Kind.H and c.length == 2, lambda c: 1),
        (lambda c: c.kind is Kind.H and c.length >= 3, lambda c: 1),
        (lambda c: c.kind is Kind.G, lambda c: 1),
        (lambda c: c.kind is Kind.F and c.length >= 3, lambda c: c.length - 2),
    ):
        for i, c in enumerate(comps):
            if test(c):
                return Move(i, cell(c))
    if not comps:
        raise StrategyError("no legal move in a terminal position")
    return Move(0, 1)


_EXTRA = "extra"


class ResponseBreaker(Strategy):
    """Answer next to Maker's move per the mod-5 table; otherwise climb the extra-move ladder."""

    id = "response-breaker"
    side = Player.BREAKER

    def observe(self, p, move, state):
        if p.to_move is not Player.MAKER:
            return None
        comp = p.components[move.component_index]
        reply = breaker_first_response(comp.kind, comp.length, move.cell)
        if reply is None:
            return _EXTRA
        _, parts = split_geometry(comp.kind, comp.length, move.cell, Player.MAKER)
        for part in parts:
            if part.first <= reply <= part.last:
                return (part.component, part.local(reply))
        raise StrategyError(f"reply {reply} lost after Maker's move in {comp}")

    def choose(self, p, state):
        if isinstance(state, tuple):
            component, cell = state
            if component in p.components:
                return Move(p.index_of(component), cell)
        return extra_move(p)


# ---------------------------------------------------------------------------
# Maker: block building
# ---------------------------------------------------------------------------


class Phase(enum.Enum):
    START = "start"
    ENDPOINT = "endpoint"
    BLOCK = "block"
    SHORT = "short"
    RECURSED = "recursed"


@dataclass(frozen=True)
class MakerBlockState:
    """Where Maker's live block can still grow.

    ``left``/``right`` are the lengths of the G runs touching the block on each
    side (0 once Breaker has sealed that side or it ran out).  In the endpoint
    phase ``left`` grows from cell 1 and ``right`` from cell n; ``joined`` means
    Breaker has not yet split the path, so both ends belong to one H run of
    length ``left``.
    """

    phase: Phase
    left: int = 0
    right: int = 0
    joined: bool = False


_FRESH = MakerBlockState(Phase.RECURSED)


def greedy_maker_move(p: Position) -> Move:
    best, best_move = -1, None
    for m in legal_moves(p):
        c = p.components[m.component_index]
        delta, _ = split_geometry(c.kind, c.length, m.cell, Player.MAKER)
        if delta > best:
            best, best_move = delta, m
    if best_move is None:
        raise StrategyError("no legal move in a terminal position")
    return best_move


class BlockMaker(Strategy):
    """Grow one block from the third cell of the longest free run, then start over.

    On a run of exactly three cells the block starts in the middle.  When no
    run has three cells the guarantee is zero and Maker just takes the best
    immediate score.
    """

    id = "block-maker"
    side = Player.MAKER

    def start(self, spec):
        return MakerBlockState(Phase.START)

    def plan(self, p: Position, st: MakerBlockState) -> tuple[Move, MakerBlockState]:
        if st.phase is Phase.ENDPOINT and st.joined:
            h = Component(Kind.H, st.left)
            if h in p.components:
                rest = st.left - 1
                nxt = replace(st, left=rest, right=rest) if rest else _FRESH
                return Move(p.index_of(h), 1), nxt
        elif st.phase in (Phase.ENDPOINT, Phase.BLOCK, Phase.SHORT):
            # the endpoint phase prefers cell t+1, the block phase t+r+1
            order = ("left", "right") if st.phase is Phase.ENDPOINT else ("right", "left")
            for side in order:
                size = getattr(st, side)
                g = Component(Kind.G, size)
                if size and g in p.components:
                    return Move(p.index_of(g), 1), replace(st, **{side: size - 1})
        return self._fresh(p)

    def _fresh(self, p: Position) -> tuple[Move, MakerBlockState]:
        runs = [c for c in p.components if c.kind is Kind.F]
        longest = max((c.length for c in runs), default=0)
        if longest >= 3:
            target = Component(Kind.F, longest)
            first = 3 if longest >= 4 else 2
            phase = Phase.BLOCK if longest >= 4 else Phase.SHORT
            return Move(p.index_of(target), first), MakerBlockState(phase, first - 1, longest - first)
        return greedy_maker_move(p), _FRESH

    def choose(self, p, state):
        return self.plan(p, state)[0]

    def observe(self, p, move, state):
        if p.to_move is Player.MAKER:
            planned, nxt = self.plan(p, state)
            return nxt if planned == move else _FRESH
        if state.phase not in (Phase.ENDPOINT, Phase.BLOCK, Phase.SHORT):
            return state
        comp = p.components[move.component_index]
        if state.joined:
            if comp == Component(Kind.H, state.left):
                return replace(state, left=move.cell - 1, right=state.left - move.cell, joined=False)
            return state
        if comp.kind is not Kind.G:
            return state
        order = ("left", "right") if state.phase is Phase.ENDPOINT else ("right", "left")
        for side in order:
            if getattr(state, side) == comp.length:
                # Breaker at local 1 seals the side; deeper it just shortens the run
                return replace(state, **{side: move.cell - 1})
        return state


class EndpointMaker(BlockMaker):
    """Extend blocks from both ends of the path; once both are sealed, play as block-maker."""

    id = "endpoint-maker"

    def start(self, spec):
        comps = spec.position.components
        if len(comps) == 1 and comps[0].kind is Kind.H:
            m = comps[0].length
            return MakerBlockState(Phase.ENDPOINT, m, m, joined=True)
        return MakerBlockState(Phase.START)


# ---------------------------------------------------------------------------
# Baselines
# ---------------------------------------------------------------------------


class RandomStrategy(Strategy):
    """Uniform over legal moves; the draw depends only on (seed, position)."""

    id = "random"

    def __init__(self, side: Player, seed: int):
        self.side = side
        self.seed = seed

    def choose(self, p, state):
        moves = legal_moves(p)
        if not moves:
            raise StrategyError("no legal move in a terminal position")
        return random.Random(f"{self.seed}|{p}").choice(moves)


class GreedyMaker(Strategy):
    id = "greedy-maker"
    side = Player.MAKER

    def choose(self, p, state):
        return greedy_maker_move(p)


class GreedyBreaker(Strategy):
    """Claim next to Maker's last cell, the lower neighbour first."""

    id = "greedy-breaker"
    side = Player.BREAKER

    def observe(self, p, move, state):
        if p.to_move is not Player.MAKER:
            return None
        comp = p.components[move.component_index]
        j = move.cell
        for cell in (j - 1, j + 1):
            if 1 <= cell <= comp.length:
                _, parts = split_geometry(comp.kind, comp.length, j, Player.MAKER)
                for part in parts:
                    if part.first <= cell <= part.last:
                        return (part.component, part.local(cell))
        return None

    def choose(self, p, state):
        if state is not None and state[0] in p.components:
            return Move(p.index_of(state[0]), state[1])
        if not p.components:
            raise StrategyError("no legal move in a terminal position")
        return Move(0, 1)


class OptimalStrategy(Strategy):
    """Plays the solver's principal move; the state is the count of pending free Breaker moves."""

    id = "optimal"

    def __init__(self, side: Player, solver: Solver | None = None):
        self.side = side
        self.solver = solver or Solver()

    def start(self, spec):
        return spec.free_breaker_moves

    def choose(self, p, state):
        result = self.solver.solve(p, state or 0)
        if result.principal_move is None:
            raise StrategyError("no legal move in a terminal position")
        return result.principal_move

    def observe(self, p, move, state):
        return max(0, (state or 0) - 1) if p.to_move is Player.BREAKER else state


STRATEGY_IDS = ("block-maker", "endpoint-maker", "response-breaker", "greedy-maker", "greedy-breaker", "random", "optimal")


# older spellings still accepted on input
ID_ALIASES = {"lemma3-maker": "block-maker", "lemma4-maker": "endpoint-maker", "lemma5-breaker": "response-breaker"}


def make_strategy(sid: str, side: Player, seed: int | None = None, solver: Solver | None = None) -> Strategy:
    sid = ID_ALIASES.get(sid, sid)
    fixed = {
        "block-maker": BlockMaker,
        "endpoint-maker": EndpointMaker,
        "response-breaker": ResponseBreaker,
        "greedy-maker": GreedyMaker,
        "greedy-breaker": GreedyBreaker,
    }
    if sid in fixed:
        strat = fixed[sid]()
        if strat.side is not side:
            raise ValueError(f"strategy {sid} plays {strat.side}, not {side}")
        return strat
    if sid == "random":
        if seed is None:
            raise ValueError("the random strategy needs a seed")
        return RandomStrategy(side, seed)
    if sid == "optimal":
        return OptimalStrategy(side, solver)
    raise ValueError(f"unknown strategy {sid!r}; choose from {', '.join(STRATEGY_IDS)}")


# ---------------------------------------------------------------------------
# Best response
# ---------------------------------------------------------------------------


def best_response_value(
    spec: GameSpec,
    fixed: Strategy,
    fixed_side: Player | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_seconds: float = DEFAULT_MAX_SECONDS,
) -> int:
    """Score when ``fixed`` plays its side and the opponent searches exhaustively.

    For a fixed Breaker this is the most Maker can extract against it; for a
    fixed Maker, the least Breaker can hold it to.
    """
    fixed_side = fixed_side or fixed.side
    memo: dict = {}
    nodes = 0
    deadline = time.monotonic() + max_seconds

    def go(p: Position, pending: int, st) -> int:
        nonlocal nodes
        if p.is_terminal:
            return 0
        key = (p, pending, st)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExhausted(f"node budget of {max_nodes} exhausted")
        if not nodes & 0xFFF and time.monotonic() > deadline:
            raise BudgetExhausted(f"time budget of {max_seconds}s exhausted")
        if p.to_move is fixed_side:
            m = fixed.choose(p, st)
            try:
                child, pend, delta = advance(p, pending, m)
            except IllegalMove as exc:
                raise StrategyError(f"{fixed.id} chose illegal {m} in {p}") from exc
            result = delta + go(child, pend, fixed.observe(p, m, st))
        else:
            vals = []
            for m in distinct_moves(p):
                child, pend, delta = advance(p, pending, m)
                vals.append(delta + go(child, pend, fixed.observe(p, m, st)))
            result = max(vals) if p.to_move is Player.MAKER else min(vals)
        memo[key] = result
        return result

    return go(spec.position, spec.free_breaker_moves, fixed.start(spec))
