import io
import json

import pytest

from toucher_isolator import cli
from toucher_isolator.board import Player, game_from_path
from toucher_isolator.harness import play_match
from toucher_isolator.strategies import make_strategy


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_cycle(capsys):
    code, out, _ = run(capsys, "solve", "--cycle", "9", "--format", "json")
    assert code == 0 and json.loads(out)["value"] == 2


def test_solve_path_1(capsys):
    code, out, _ = run(capsys, "solve", "--path", "1")
    assert code == 0 and out.splitlines()[1].split(",")[1] == "0"


def test_solve_position(capsys):
    code, out, _ = run(capsys, "solve", "--pos", "F3,G1", "--format", "json")
    assert code == 0 and json.loads(out)["value"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "--n-from", "9", "--n-to", "3"),
        ("solve", "--cycle", "2"),
        ("solve", "--pos", "Q4"),
        ("match", "--cycle", "8", "--breaker", "random"),
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "usage error" in err


def test_budget_exhaustion_exits_nonzero(capsys):
    code, _, err = run(capsys, "solve", "--cycle", "30", "--max-nodes", "20")
    assert code == 3 and "budget" in err


def test_env_overrides_flag_defaults(capsys, monkeypatch):
    monkeypatch.setenv("TOUCHER_MAX_NODES", "20")
    code, _, _ = run(capsys, "solve", "--cycle", "30")
    assert code == 3
    code, _, _ = run(capsys, "solve", "--cycle", "30", "--max-nodes", "100000000")
    assert code == 0


def test_bad_env_value_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("TOUCHER_MAX_NODES", "lots")
    code, _, _ = run(capsys, "solve", "--cycle", "9")
    assert code == 2


def test_table_output_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "table", "--n-from", "1", "--n-to", "15", "--out", str(a))[0] == 0
    assert run(capsys, "table", "--n-from", "1", "--n-to", "15", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes().startswith(b"# schema: toucher-isolator-table/1\n")


def test_cache_flag_round_trips(tmp_path, capsys):
    cache = tmp_path / "memo.bin"
    run(capsys, "solve", "--cycle", "15", "--cache", str(cache))
    code, out, _ = run(capsys, "solve", "--cycle", "15", "--cache", str(cache), "--format", "json")
    assert code == 0 and json.loads(out)["nodes_expanded"] == 0
    cache.write_bytes(b"")
    assert run(capsys, "solve", "--cycle", "15", "--cache", str(cache))[0] == 4


def test_verify_small_scales_pass(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "structure-bound", "--suite", "cycle-exactness",
        "--lemma5-random-positions", "50", "--seed", "7", "--cycle-max", "12",
    )
    assert code == 0
    assert out.count("[PASS]") == 2


def test_verify_flags_corrupt_breaker(capsys):
    code, out, err = run(
        capsys, "verify", "--suite", "breaker-guarantee", "--breaker-f-max", "8", "--breaker-h-max", "6",
        "--inject-corrupt-breaker",
    )
    assert code == 1
    assert "[FAIL] breaker-guarantee" in out and "breaker-guarantee" in err


def test_match_random_vs_random_is_reproducible(capsys):
    argv = ("match", "--cycle", "13", "--maker", "random", "--breaker", "random", "--seed", "9")
    first, second = run(capsys, *argv), run(capsys, *argv)
    assert first == second and first[0] == 0


def test_match_reports_score_and_formula(capsys):
    code, out, _ = run(capsys, "match", "--path", "13", "--maker", "endpoint-maker", "--breaker", "response-breaker")
    assert code == 0 and out.rstrip().endswith("# score=3 u_path=3")


def test_play_reprompts_on_occupied_cell_and_quits_cleanly(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("2\n2\nx\nquit\n"))
    code, out, _ = run(capsys, "play", "--path", "7", "--human", "breaker")
    assert code == 0
    assert out.count("not a free cell") == 2
    assert "stopped early" in out and "# match: path 7" in out


def test_play_human_maker_against_optimal_breaker(capsys, monkeypatch):
    # the human keeps taking the lowest free cell
    monkeypatch.setattr("sys.stdin", io.StringIO("".join(f"{c}\n" for c in range(1, 8) for _ in range(7))))
    code, out, _ = run(capsys, "play", "--path", "7", "--human", "maker")
    assert code == 0
    score = int(out.strip().splitlines()[-1].split()[1].split("=")[1])
    assert score <= 2


def test_play_human_maker_can_reach_two_on_path_7(capsys, monkeypatch):
    # optimal play is deterministic, so the engine answers the same way here
    best = play_match(game_from_path(7), make_strategy("optimal", Player.MAKER), make_strategy("optimal", Player.BREAKER))
    cells = [s.board_cell for s in best.transcript if s.player == "maker"]
    monkeypatch.setattr("sys.stdin", io.StringIO("".join(f"{c}\n" for c in cells)))
    code, out, _ = run(capsys, "play", "--path", "7", "--human", "maker")
    assert code == 0 and out.rstrip().endswith("# score=2 u_path=2")


def test_older_strategy_spellings_are_accepted(capsys):
    code, out, _ = run(capsys, "match", "--path", "13", "--maker", "lemma4-maker", "--breaker", "lemma5-breaker")
    assert code == 0 and "maker=endpoint-maker; breaker=response-breaker" in out
