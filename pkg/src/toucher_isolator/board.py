"""Component algebra for the Maker-Breaker dual of the Toucher-Isolator game.

A residual board is a disjoint union of runs of unclaimed cells.  Each run
is one of three kinds depending on how many of its ends touch a Maker cell:

    F  -- no Maker-flanked end
    G  -- exactly one Maker-flanked end, always stored as local cell 1
    H  -- both ends Maker-flanked

Claiming a cell splits a run into at most two shorter runs whose kinds follow
from who claimed the cell.  Everything here is a pure function of immutable
values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple, Sequence


class Kind(enum.IntEnum):
    F = 0
    G = 1
    H = 2

    def __str__(self) -> str:
        return self.name


class Player(enum.Enum):
    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> Player:
        return Player.BREAKER if self is Player.MAKER else Player.MAKER

    def __str__(self) -> str:
        return self.value


class IllegalMove(ValueError):
    """Raised for a move that does not address an unclaimed cell."""


class Component(NamedTuple):
    kind: Kind
    length: int

    def __str__(self) -> str:
        return f"{self.kind.name}{self.length}"


class Move(NamedTuple):
    component_index: int
    cell: int


@dataclass(frozen=True)
class Position:
    """Canonical residual game: sorted multiset of components plus side to move."""

    components: tuple[Component, ...]
    to_move: Player

    def __post_init__(self) -> None:
        comps = []
        for c in self.components:
            c = Component(Kind(c[0]), int(c[1]))
            if c.length < 1:
                raise ValueError(f"component {c} has no cells")
            comps.append(c)
        object.__setattr__(self, "components", tuple(sorted(comps)))

    @classmethod
    def of(cls, components: Iterable[Component | tuple[Kind, int]], to_move: Player = Player.MAKER) -> Position:
        return cls(tuple(components), to_move)

    @property
    def is_terminal(self) -> bool:
        return not self.components

    @property
    def total_length(self) -> int:
        return sum(c.length for c in self.components)

    def with_to_move(self, to_move: Player) -> Position:
        return replace(self, to_move=to_move)

    def index_of(self, component: Component) -> int:
        """Canonical index of the first component equal to ``component``."""
        return self.components.index(component)

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.components) or "-"
        return f"{{{body}}} {self.to_move} to move"


class Part(NamedTuple):
    """A split product together with where its cells sat in the parent run.

    ``first``..``last`` are parent cell indices; when ``reversed`` is set the
    part's local cell 1 is the parent cell ``last``.
    """

    component: Component
    first: int
    last: int
    reversed: bool

    def local(self, parent_cell: int) -> int:
        if not self.first <= parent_cell <= self.last:
            raise ValueError(f"cell {parent_cell} is outside part {self}")
        if self.reversed:
            return self.last - parent_cell + 1
        return parent_cell - self.first + 1


def _check_cell(kind: Kind, length: int, j: int) -> None:
    if length < 1:
        raise IllegalMove(f"{Kind(kind).name}{length} has no cells")
    if not 1 <= j <= length:
        raise IllegalMove(f"cell {j} out of range for {Kind(kind).name}{length}")


def _part(kind: Kind, first: int, last: int, reversed_: bool = False) -> list[Part]:
    if last < first:
        return []
    return [Part(Component(kind, last - first + 1), first, last, reversed_)]


def split_geometry(kind: Kind, length: int, j: int, player: Player) -> tuple[int, list[Part]]:
    """Score delta and located parts after ``player`` claims cell ``j``."""
    kind = Kind(kind)
    _check_cell(kind, length, j)
    if player is Player.MAKER:
        if kind is Kind.F:
            return 0, _part(Kind.G, 1, j - 1, True) + _part(Kind.G, j + 1, length)
        if kind is Kind.G:
            return int(j == 1), _part(Kind.H, 1, j - 1) + _part(Kind.G, j + 1, length)
        return int(j == 1) + int(j == length), _part(Kind.H, 1, j - 1) + _part(Kind.H, j + 1, length)
    if kind is Kind.F:
        return 0, _part(Kind.F, 1, j - 1) + _part(Kind.F, j + 1, length)
    if kind is Kind.G:
        return 0, _part(Kind.G, 1, j - 1) + _part(Kind.F, j + 1, length)
    return 0, _part(Kind.G, 1, j - 1) + _part(Kind.G, j + 1, length, True)


def split_maker(kind: Kind, length: int, j: int) -> tuple[int, list[Component]]:
    delta, parts = split_geometry(kind, length, j, Player.MAKER)
    return delta, [p.component for p in parts]


def split_breaker(kind: Kind, length: int, j: int) -> list[Component]:
    return [p.component for p in split_geometry(kind, length, j, Player.BREAKER)[1]]


def apply_move(p: Position, m: Move) -> tuple[Position, int]:
    if not 0 <= m.component_index < len(p.components):
        raise IllegalMove(f"no component at index {m.component_index} in {p}")
    target = p.components[m.component_index]
    delta, parts = split_geometry(target.kind, target.length, m.cell, p.to_move)
    rest = p.components[: m.component_index] + p.components[m.component_index + 1 :]
    child = Position(rest + tuple(q.component for q in parts), p.to_move.other)
    return child, (delta if p.to_move is Player.MAKER else 0)


def legal_moves(p: Position) -> list[Move]:
    return [Move(i, j) for i, c in enumerate(p.components) for j in range(1, c.length + 1)]


# ---------------------------------------------------------------------------
# Game specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GameSpec:
    origin: str  # "cycle" | "path" | "delayed" | "raw"
    position: Position
    free_breaker_moves: int = 0
    n: int | None = None
    k: int | None = None

    def __post_init__(self) -> None:
        if self.free_breaker_moves < 0:
            raise ValueError("free_breaker_moves must be non-negative")
        if self.free_breaker_moves and self.position.to_move is not Player.BREAKER:
            raise ValueError("free Breaker moves require Breaker to move first")

    @property
    def label(self) -> str:
        if self.origin == "cycle":
            return f"cycle {self.n}"
        if self.origin == "path":
            return f"path {self.n}"
        if self.origin == "delayed":
            return f"delayed {self.n} {self.k}"
        return "pos " + (",".join(str(c) for c in self.position.components) or "-")


def game_from_cycle(n: int) -> GameSpec:
    """Breaker's opening move on C_n is absorbed; what remains is F(n-1), Maker to move."""
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return GameSpec("cycle", Position.of([Component(Kind.F, n - 1)], Player.MAKER), n=n)


def game_from_path(n: int) -> GameSpec:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return GameSpec("path", Position.of([Component(Kind.H, n)], Player.BREAKER), n=n)


def game_from_delayed(n: int, k: int) -> GameSpec:
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"delayed game needs n >= 1 and 0 <= k <= n, got ({n}, {k})")
    to_move = Player.BREAKER if k else Player.MAKER
    return GameSpec("delayed", Position.of([Component(Kind.F, n)], to_move), free_breaker_moves=k, n=n, k=k)


def game_from_position(p: Position) -> GameSpec:
    return GameSpec("raw", p)


def advance(p: Position, pending: int, m: Move) -> tuple[Position, int, int]:
    """Apply ``m`` honouring outstanding free Breaker moves.

    Returns the child position, the remaining free moves and the score delta.
    """
    child, delta = apply_move(p, m)
    if pending:
        if p.to_move is not Player.BREAKER:
            raise IllegalMove("free moves belong to Breaker")
        pending -= 1
        if pending:
            child = child.with_to_move(Player.BREAKER)
    return child, pending, delta


def parse_position(text: str, to_move: Player = Player.MAKER) -> Position:
    """Parse ``"F3,G1,H2"`` (case-insensitive) into a canonical Position."""
    comps = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            kind = Kind[token[0].upper()]
            length = int(token[1:])
        except (KeyError, ValueError):
            raise ValueError(f"bad component token {token!r}; expected e.g. F3, G1, H2") from None
        comps.append(Component(kind, length))
    return Position.of(comps, to_move)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureCounts:
    N1: int
    N2: int
    N3: int
    N4: int
    N5: int
    epsilon: int
    y: int
    z: int
    z_alt: int = field(compare=False)

    @property
    def g(self) -> int:
        return self.y + self.z


def structure_counts(p: Position | Sequence[Component]) -> StructureCounts:
    """Census of a union of F/G/H runs and the upper-bound function g = y + z.

    ``z`` uses the epsilon-inside form, ``z_alt`` the rewritten form with
    ``-epsilon`` inside the floor; the two must agree.
    """
    comps = p.components if isinstance(p, Position) else tuple(p)
    f = [c.length for c in comps if c.kind is Kind.F]
    g = [c.length for c in comps if c.kind is Kind.G]
    h = [c.length for c in comps if c.kind is Kind.H]
    n1 = sum(1 for x in f if x % 5 in (3, 4))
    n2 = sum(1 for x in g if x % 5 in (0, 1))
    n3 = sum(1 for x in h if x != 2 and x % 5 in (2, 3))
    n4 = sum(1 for x in h if x == 2)
    n5 = sum(1 for x in h if x == 1)
    eps = n5 % 2
    y = sum((x + 2) // 5 for x in f) + sum((x + 5) // 5 for x in g) + sum((x + 8) // 5 for x in h)
    z = -n4 + eps - (n1 + n2 + n3 + eps) // 2
    z_alt = -n4 - (n1 + n2 + n3 - eps) // 2
    return StructureCounts(n1, n2, n3, n4, n5, eps, y, z, z_alt)


@dataclass(frozen=True)
class FormulaValues:
    u_cycle: int
    u_path: int
    alpha_lower: int
    gamma_b_lower: int
    alpha_exact: int


def formula_values(n: int, k: int = 0) -> FormulaValues:
    if n < 1 or k < 0:
        raise ValueError(f"need n >= 1 and k >= 0, got ({n}, {k})")
    u_path = 0 if n == 1 else (n + 4) // 5
    return FormulaValues(
        u_cycle=(n + 1) // 5,
        u_path=u_path,
        alpha_lower=max(0, (n - 3 * k + 2) // 5),
        gamma_b_lower=u_path,
        alpha_exact=(n + 2) // 5,
    )
