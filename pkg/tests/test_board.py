import pytest
from hypothesis import given, settings, strategies as st

from toucher_isolator.board import (
    Component,
    GameSpec,
    IllegalMove,
    Kind,
    Move,
    Player,
    Position,
    advance,
    apply_move,
    formula_values,
    game_from_cycle,
    game_from_delayed,
    game_from_path,
    legal_moves,
    parse_position,
    split_breaker,
    split_geometry,
    split_maker,
    structure_counts,
)
from toucher_isolator.oracle import board_for_position

F, G, H = Kind.F, Kind.G, Kind.H
MAKER, BREAKER = Player.MAKER, Player.BREAKER

components = st.builds(Component, st.sampled_from(list(Kind)), st.integers(1, 6))
positions = st.builds(
    Position.of, st.lists(components, max_size=3), st.sampled_from([MAKER, BREAKER])
)


@pytest.mark.parametrize(
    "kind, length, j, expected",
    [
        (H, 1, 1, (2, [])),
        (F, 1, 1, (0, [])),
        (F, 7, 3, (0, [Component(G, 2), Component(G, 4)])),
        (G, 5, 1, (1, [Component(G, 4)])),
        (G, 5, 5, (0, [Component(H, 4)])),
        (H, 4, 4, (1, [Component(H, 3)])),
    ],
)
def test_split_maker(kind, length, j, expected):
    delta, parts = split_maker(kind, length, j)
    assert (delta, sorted(parts)) == (expected[0], sorted(expected[1]))


@pytest.mark.parametrize(
    "kind, length, j, expected",
    [
        (H, 5, 2, [Component(G, 1), Component(G, 3)]),
        (H, 5, 3, [Component(G, 2), Component(G, 2)]),
        (F, 2, 1, [Component(F, 1)]),
        (G, 4, 2, [Component(G, 1), Component(F, 2)]),
    ],
)
def test_split_breaker(kind, length, j, expected):
    assert sorted(split_breaker(kind, length, j)) == sorted(expected)


@pytest.mark.parametrize("kind", list(Kind))
def test_split_rejects_out_of_range(kind):
    with pytest.raises(IllegalMove):
        split_maker(kind, 3, 4)
    with pytest.raises(IllegalMove):
        split_breaker(kind, 3, 0)


def test_split_parts_match_raw_board():
    # every split agrees with what the raw board shows after the claim
    for kind in Kind:
        for length in range(1, 9):
            for j in range(1, length + 1):
                for player in Player:
                    board = board_for_position(Position.of([Component(kind, length)]))
                    (_, cells), = board.runs()
                    after = board.claim(cells[j - 1], player)
                    delta, parts = split_geometry(kind, length, j, player)
                    assert sorted(p.component for p in parts) == sorted(c for c, _ in after.runs())
                    assert after.score() - board.score() == delta


@pytest.mark.parametrize(
    "p, move, expected, delta",
    [
        (Position.of([Component(H, 1)], MAKER), Move(0, 1), Position.of([], BREAKER), 2),
        (Position.of([Component(F, 3)], BREAKER), Move(0, 2), Position.of([Component(F, 1)] * 2, MAKER), 0),
        (Position.of([Component(H, 2)], MAKER), Move(0, 1), Position.of([Component(H, 1)], BREAKER), 1),
    ],
)
def test_apply_move(p, move, expected, delta):
    assert apply_move(p, move) == (expected, delta)


def test_apply_move_rejects_illegal():
    p = Position.of([Component(F, 3)])
    for m in (Move(1, 1), Move(0, 4), Move(0, 0)):
        with pytest.raises(IllegalMove):
            apply_move(p, m)


def test_legal_moves():
    assert legal_moves(Position.of([])) == []
    assert legal_moves(Position.of([Component(F, 2)])) == [Move(0, 1), Move(0, 2)]
    assert len(legal_moves(Position.of([Component(F, 1), Component(G, 1)], BREAKER))) == 2


@pytest.mark.parametrize("n", [3, 5, 10])
def test_game_from_cycle(n):
    spec = game_from_cycle(n)
    assert spec.position == Position.of([Component(F, n - 1)], MAKER)
    assert spec.free_breaker_moves == 0


@pytest.mark.parametrize("n", [1, 2, 7])
def test_game_from_path(n):
    assert game_from_path(n).position == Position.of([Component(H, n)], BREAKER)


def test_game_constructors_reject_bad_sizes():
    with pytest.raises(ValueError):
        game_from_cycle(2)
    with pytest.raises(ValueError):
        game_from_path(0)
    with pytest.raises(ValueError):
        game_from_delayed(3, 4)
    with pytest.raises(ValueError):
        GameSpec("raw", Position.of([Component(F, 3)], MAKER), free_breaker_moves=1)


def test_advance_keeps_breaker_on_move_while_free_moves_remain():
    spec = game_from_delayed(6, 2)
    p, pending, _ = advance(spec.position, spec.free_breaker_moves, Move(0, 3))
    assert (p.to_move, pending) == (BREAKER, 1)
    p, pending, _ = advance(p, pending, Move(0, 1))
    assert (p.to_move, pending) == (MAKER, 0)


def test_parse_position():
    assert parse_position("f3, G1,h2") == Position.of([Component(H, 2), Component(F, 3), Component(G, 1)])
    assert str(parse_position("F3,G1", BREAKER)) == "{F3,G1} breaker to move"
    with pytest.raises(ValueError):
        parse_position("X3")
    with pytest.raises(ValueError):
        parse_position("F0")


@pytest.mark.parametrize(
    "text, fields, g",
    [
        ("H1", dict(N5=1, epsilon=1, y=1, z=1), 2),
        ("H2", dict(N4=1, y=2, z=-1), 1),
        ("F8", dict(N1=1, y=2, z=0), 2),
        ("", dict(N1=0, y=0, z=0), 0),
    ],
)
def test_structure_counts(text, fields, g):
    sc = structure_counts(parse_position(text))
    for name, value in fields.items():
        assert getattr(sc, name) == value
    assert sc.g == g


def test_formula_values():
    assert formula_values(9).u_cycle == 2
    assert formula_values(1).u_path == 0
    assert formula_values(5, 1).alpha_lower == 0
    assert formula_values(8, 1).alpha_lower == 1
    assert formula_values(9).alpha_exact == 2


@given(st.lists(components, max_size=4), st.randoms(use_true_random=False))
def test_canonical_order_ignores_input_order(comps, rnd):
    shuffled = list(comps)
    rnd.shuffle(shuffled)
    a, b = Position.of(comps), Position.of(shuffled)
    assert a == b and hash(a) == hash(b)


@given(positions, st.data())
def test_moves_remove_exactly_one_cell(p, data):
    if p.is_terminal:
        return
    m = data.draw(st.sampled_from(legal_moves(p)))
    child, _ = apply_move(p, m)
    assert child.total_length == p.total_length - 1
    assert child.to_move is p.to_move.other


@settings(max_examples=200)
@given(positions, st.data())
def test_incremental_score_matches_raw_board(p, data):
    board = board_for_position(p)
    total = board.score()
    while not p.is_terminal:
        m = data.draw(st.sampled_from(legal_moves(p)))
        _, cells = board.runs()[m.component_index]
        board = board.claim(cells[m.cell - 1], p.to_move)
        p, delta = apply_move(p, m)
        total += delta
        assert board.score() == total
        assert board.position(p.to_move) == p


@given(st.lists(components, max_size=6))
def test_z_forms_agree(comps):
    sc = structure_counts(comps)
    assert sc.z == sc.z_alt
