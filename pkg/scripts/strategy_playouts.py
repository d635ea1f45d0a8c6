"""Score spread of the constructive strategies against random opponents.

For each n, plays many seeded games and reports min/mean/max next to the
closed form. The guarantee side should never dip below (Maker) or rise
above (Breaker) the formula.
"""

import argparse
import statistics

from toucher_isolator.board import Player, formula_values, game_from_cycle, game_from_path
from toucher_isolator.harness import play_match
from toucher_isolator.strategies import ResponseBreaker, BlockMaker, EndpointMaker, RandomStrategy


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--games", type=int, default=200)
    args = ap.parse_args()

    print("board,n,formula,maker_min,maker_mean,breaker_max,breaker_mean")
    for n in range(3, args.n_max + 1):
        fv = formula_values(n)
        for label, spec, maker, formula in (
            ("cycle", game_from_cycle(n), BlockMaker(), fv.u_cycle),
            ("path", game_from_path(n), EndpointMaker(), fv.u_path),
        ):
            as_maker = [play_match(spec, maker, RandomStrategy(Player.BREAKER, s)).score for s in range(args.games)]
            as_breaker = [play_match(spec, RandomStrategy(Player.MAKER, s), ResponseBreaker()).score for s in range(args.games)]
            print(
                f"{label},{n},{formula},{min(as_maker)},{statistics.mean(as_maker):.2f},"
                f"{max(as_breaker)},{statistics.mean(as_breaker):.2f}"
            )


if __name__ == "__main__":
    main()
