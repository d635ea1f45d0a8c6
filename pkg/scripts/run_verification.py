"""Run every verification suite at default or enlarged scales and print a report."""

import argparse
import sys

from toucher_isolator import verify as V
from toucher_isolator.solver import Solver


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--large", action="store_true", help="push cycle/path exactness to n=30 and the sandwich to n=20")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    cfg = V.VerifyConfig(seed=args.seed)
    if args.large:
        cfg.cycle_max = cfg.path_max = 30
        cfg.sandwich_n_max = 20
        cfg.structure_positions = 2000
    solver = Solver()
    results = [
        V.special_values(solver),
        V.response_table(cfg.table_len_max),
        V.zform_agreement(cfg.zform_max_total),
        V.cycle_exactness(solver, cfg.cycle_max),
        V.path_exactness(solver, cfg.path_max),
        V.oracle_equivalence(solver, cfg.oracle_f_max, cfg.oracle_h_max),
        V.delayed_bound(solver, cfg.delayed_n_max, cfg.delayed_k_max),
        V.structure_bound(solver, cfg.structure_positions, cfg.structure_max_total, cfg.seed),
        V.breaker_guarantee(cfg.breaker_f_max, cfg.breaker_h_max),
        V.maker_guarantees(cfg.block_n_max, cfg.block_k_max, cfg.endpoint_n_max),
        V.sandwich(solver, cfg.sandwich_n_min, cfg.sandwich_n_max),
    ]
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
