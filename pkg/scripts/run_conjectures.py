"""Sweep the three eigen-structure conjectures and summarize.

    python3 scripts/run_conjectures.py --cases 100 --orders 2 3 4 5 6 7 8
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

from idealflow import spectral


@dataclass
class SweepConfig:
    cases: int = 100
    orders: list = field(default_factory=lambda: list(range(2, 10)))
    seed: int = 0


def run(cfg: SweepConfig) -> dict:
    summary = {"config": asdict(cfg)}
    for cid, check in spectral.CHECKERS.items():
        rep = check(order=cfg.orders, cases=cfg.cases, seed=cfg.seed)
        summary[f"conjecture_{cid}"] = {
            "cases": rep.cases, "consistent": rep.consistent, "worst_deviation": rep.worst_deviation,
        }
    return summary


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--orders", type=int, nargs="+", default=list(range(2, 10)))
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    print(json.dumps(run(SweepConfig(args.cases, args.orders, args.seed)), indent=2))


if __name__ == "__main__":
    main()
