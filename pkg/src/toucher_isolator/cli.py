"""Command line entry point: ``toucher-isolator {solve,table,verify,match,play}``.

Every option with a default can also be set through an environment variable
named ``TOUCHER_<OPTION>``, e.g. ``TOUCHER_MAX_NODES`` or ``TOUCHER_CACHE``.
Command line flags win over the environment.

Exit codes: 0 success, 1 a check or match-up failed, 2 usage error,
3 search budget exhausted, 4 unreadable cache.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, TextIO

from .board import GameSpec, IllegalMove, Player, game_from_cycle, game_from_delayed, game_from_path, game_from_position, parse_position
from .cache import CacheError, cache_load, cache_save
from .harness import MatchRunner, play_match, render_match, render_table, table_rows
from .solver import DEFAULT_MAX_NODES, DEFAULT_MAX_SECONDS, BudgetExhausted, Solver
from .strategies import ID_ALIASES, STRATEGY_IDS, StrategyError, make_strategy
from . import verify as V

ENV_PREFIX = "TOUCHER_"

ACCEPTED_IDS = (*STRATEGY_IDS, *ID_ALIASES)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_CACHE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _env(name: str, default, cast: Callable = str):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value {raw!r} for {ENV_PREFIX}{name.upper()}") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default=_env("format", "csv"))
    p.add_argument("--out", default=_env("out", None), help="write output here instead of stdout")
    p.add_argument("--cache", default=_env("cache", None), help="load the solver table from here and save it back")
    p.add_argument("--max-nodes", type=int, default=_env("max_nodes", DEFAULT_MAX_NODES, int))
    p.add_argument("--max-seconds", type=float, default=_env("max_seconds", DEFAULT_MAX_SECONDS, float))


def _add_game(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--cycle", type=int, metavar="N")
    g.add_argument("--path", type=int, metavar="N")
    g.add_argument("--delayed", type=int, nargs=2, metavar=("N", "K"))
    g.add_argument("--pos", metavar="COMPONENTS", help='component list such as "F3,G1,H2"')
    p.add_argument("--to-move", choices=("maker", "breaker"), default="maker", help="side to move for --pos")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toucher-isolator", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact value and an optimal first move")
    _add_game(p)
    _add_common(p)

    p = sub.add_parser("table", help="solver values next to the closed forms")
    p.add_argument("--n-from", type=int, default=_env("n_from", 1, int))
    p.add_argument("--n-to", type=int, default=_env("n_to", 30, int))
    p.add_argument("--formula-only", action="store_true", help="skip the solver columns")
    _add_common(p)

    p = sub.add_parser("verify", help="run the verification suites")
    cfg = V.VerifyConfig()
    aliases = {"structure_positions": ["--lemma5-random-positions"]}
    for name, value in vars(cfg).items():
        flags = ["--" + name.replace("_", "-"), *aliases.get(name, [])]
        p.add_argument(*flags, dest=name, type=int, default=_env(name, value, int))
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="run only these suites (repeatable)")
    p.add_argument("--inject-corrupt-breaker", action="store_true", help="self-test: swap in a Breaker that ignores Maker")
    _add_common(p)

    p = sub.add_parser("match", help="play two strategies against each other")
    _add_game(p)
    p.add_argument("--maker", choices=ACCEPTED_IDS, default=_env("maker", "block-maker"))
    p.add_argument("--breaker", choices=ACCEPTED_IDS, default=_env("breaker", "response-breaker"))
    p.add_argument("--seed", type=int, default=_env("seed", None, int))
    _add_common(p)

    p = sub.add_parser("play", help="play against a strategy on stdin")
    _add_game(p)
    p.add_argument("--human", choices=("maker", "breaker"), required=True)
    p.add_argument("--engine", choices=ACCEPTED_IDS, default=_env("engine", "optimal"))
    p.add_argument("--seed", type=int, default=_env("seed", None, int))
    _add_common(p)
    return parser


def spec_from_args(args) -> GameSpec:
    try:
        if args.cycle is not None:
            return game_from_cycle(args.cycle)
        if args.path is not None:
            return game_from_path(args.path)
        if args.delayed is not None:
            return game_from_delayed(*args.delayed)
        return game_from_position(parse_position(args.pos, Player(args.to_move)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _solver(args) -> Solver:
    solver = Solver(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    if args.cache and Path(args.cache).exists():
        cache_load(solver, args.cache)
    return solver


def _save(args, solver: Solver) -> None:
    if args.cache:
        cache_save(solver, args.cache)


def cmd_solve(args) -> int:
    spec = spec_from_args(args)
    solver = _solver(args)
    res = solver.solve_spec(spec)
    _save(args, solver)
    out = {"game": spec.label, "value": res.value, "principal_move": None, "nodes_expanded": res.nodes_expanded}
    if res.principal_move is not None:
        runner = MatchRunner(spec, make_strategy("optimal", Player.MAKER), make_strategy("optimal", Player.BREAKER))
        step = runner.play(res.principal_move)
        out["principal_move"] = {
            "player": step.player,
            "component_index": step.component_index,
            "cell": step.cell,
            "board_cell": step.board_cell,
        }
    if args.format == "json":
        _emit(args, json.dumps(out, indent=2) + "\n")
    else:
        pm = out["principal_move"]
        move = f"{pm['player']}:{pm['component_index']}:{pm['cell']}:{pm['board_cell']}" if pm else ""
        _emit(args, f"game,value,principal_move,nodes_expanded\n{spec.label},{res.value},{move},{res.nodes_expanded}\n")
    return EXIT_OK


def cmd_table(args) -> int:
    try:
        rows = table_rows(args.n_from, args.n_to, None if args.formula_only else _solver(args), args.formula_only)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, render_table(rows, args.format))
    mismatch = any(r[c] is False for r in rows for c in ("cycle_match", "path_match"))
    return EXIT_FAIL if mismatch else EXIT_OK


SUITES = {
    "response-table": lambda s, c, b: V.response_table(c.table_len_max),
    "special-values": lambda s, c, b: V.special_values(s),
    "z-form-agreement": lambda s, c, b: V.zform_agreement(c.zform_max_total),
    "cycle-exactness": lambda s, c, b: V.cycle_exactness(s, c.cycle_max),
    "path-exactness": lambda s, c, b: V.path_exactness(s, c.path_max),
    "oracle-equivalence": lambda s, c, b: V.oracle_equivalence(s, c.oracle_f_max, c.oracle_h_max),
    "delayed-bound": lambda s, c, b: V.delayed_bound(s, c.delayed_n_max, c.delayed_k_max),
    "structure-bound": lambda s, c, b: V.structure_bound(s, c.structure_positions, c.structure_max_total, c.seed),
    "breaker-guarantee": lambda s, c, b: V.breaker_guarantee(c.breaker_f_max, c.breaker_h_max, b),
    "maker-guarantees": lambda s, c, b: V.maker_guarantees(c.block_n_max, c.block_k_max, c.endpoint_n_max),
    "strategy-sandwich": lambda s, c, b: V.sandwich(s, c.sandwich_n_min, c.sandwich_n_max, b),
}


def cmd_verify(args) -> int:
    cfg = V.VerifyConfig(**{name: getattr(args, name) for name in vars(V.VerifyConfig())})
    solver = _solver(args)
    breaker = V.CorruptBreaker() if args.inject_corrupt_breaker else None
    results = []
    for name in args.suite or list(SUITES):
        res = SUITES[name](solver, cfg, breaker)
        results.append(res)
        if args.format == "csv" and not args.out:
            print(res.line(), flush=True)
    _save(args, solver)
    failed = [r.name for r in results if not r.passed]
    if args.format == "json":
        payload = [{"name": r.name, "scale": r.scale, "passed": r.passed, "detail": r.detail} for r in results]
        _emit(args, json.dumps({"passed": not failed, "suites": payload}, indent=2) + "\n")
    elif args.out:
        _emit(args, "".join(r.line() + "\n" for r in results))
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _strategy(sid: str, side: Player, seed: int | None, solver: Solver):
    try:
        return make_strategy(sid, side, seed, solver)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_match(args) -> int:
    spec = spec_from_args(args)
    solver = _solver(args)
    maker = _strategy(args.maker, Player.MAKER, args.seed, solver)
    breaker = _strategy(args.breaker, Player.BREAKER, args.seed, solver)
    record = play_match(spec, maker, breaker)
    _save(args, solver)
    _emit(args, render_match(record, args.format))
    return EXIT_OK


def play_repl(runner: MatchRunner, human: Player, stdin: TextIO, stdout: TextIO) -> bool:
    """Alternate human and engine moves; returns False if the human quit early."""
    while not runner.finished:
        if runner.position.to_move is not human:
            step = runner.play(runner.strategy_move())
            print(f"{step.player} claims cell {step.board_cell}", file=stdout)
            continue
        print(f"{runner.board.render()}   score {runner.record.score}", file=stdout)
        print(f"{human} to move, cell number or 'quit': ", end="", file=stdout, flush=True)
        line = stdin.readline()
        if not line or line.strip().lower() in ("quit", "q", "exit"):
            return False
        try:
            m = runner.move_for_cell(int(line.strip()))
        except ValueError:
            m = None
        if m is None:
            print("not a free cell, try again", file=stdout)
            continue
        runner.play(m)
    return True


def cmd_play(args) -> int:
    spec = spec_from_args(args)
    human = Player(args.human)
    solver = _solver(args)
    engine = _strategy(args.engine, human.other, args.seed, solver)
    human_side = make_strategy("optimal", human, solver=solver)  # only its bookkeeping is used
    maker, breaker = (human_side, engine) if human is Player.MAKER else (engine, human_side)
    runner = MatchRunner(spec, maker, breaker)
    runner.record.maker = "human" if human is Player.MAKER else engine.id
    runner.record.breaker = "human" if human is Player.BREAKER else engine.id
    finished = play_repl(runner, human, sys.stdin, sys.stdout)
    print("" if finished else "\nstopped early", file=sys.stdout)
    _emit(args, render_match(runner.record, args.format))
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "table": cmd_table, "verify": cmd_verify, "match": cmd_match, "play": cmd_play}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except (StrategyError, IllegalMove) as exc:
        print(f"strategy error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
