import itertools

import pytest

from toucher_isolator.board import Player
from toucher_isolator.oracle import (
    ExplicitBoard,
    OracleCapExceeded,
    Topology,
    brute_force_explicit,
    cycle_board,
    path_board,
)

MAKER, BREAKER = Player.MAKER, Player.BREAKER


@pytest.mark.parametrize(
    "board, to_move, expected",
    [
        (path_board(3), MAKER, 1),
        (path_board(1, (True, True)), MAKER, 2),
        (path_board(2, (True, True)), MAKER, 1),
        (path_board(2), MAKER, 0),
        (path_board(5), MAKER, 1),
        (path_board(9), MAKER, 2),
        (cycle_board(5), BREAKER, 1),
    ],
)
def test_small_boards(board, to_move, expected):
    assert brute_force_explicit(board, to_move) == expected


# frozen from the oracle itself
@pytest.mark.parametrize("n, expected", list(zip(range(3, 13), [0, 1, 1, 1, 1, 1, 2, 2, 2, 2])))
def test_cycle_breaker_first(n, expected):
    assert brute_force_explicit(cycle_board(n), BREAKER) == expected


def delayed_oracle(n: int, k: int) -> int:
    best = None
    for stones in itertools.combinations(range(n), k):
        board = path_board(n)
        for i in stones:
            board = board.claim(i, BREAKER)
        v = brute_force_explicit(board, MAKER)
        best = v if best is None else min(best, v)
    return best


@pytest.mark.parametrize("n, k, expected", [(5, 0, 1), (8, 1, 1), (9, 2, 1), (12, 3, 1), (4, 4, 0)])
def test_delayed_by_brute_force(n, k, expected):
    assert delayed_oracle(n, k) == expected


def test_two_component_board():
    # ". . . B M ." is {F3, G1}
    board = ExplicitBoard(Topology.PATH, (0, 0, 0, 2, 1, 0), (False, False))
    assert str(board.position(MAKER)) == "{F3,G1} maker to move"
    assert brute_force_explicit(board, MAKER) - board.score() == 1


def test_cap_refuses_large_boards():
    with pytest.raises(OracleCapExceeded):
        brute_force_explicit(path_board(15), MAKER)
    with pytest.raises(OracleCapExceeded):
        brute_force_explicit(path_board(6), MAKER, cap=5)


def test_cycle_scores_wraparound_pair():
    board = cycle_board(4).claim(0, MAKER).claim(3, MAKER)
    assert board.score() == 1
