"""Operation counts of recursive multiplication against N, for each square builtin."""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from mmsym.catalog import builtin
from mmsym.engine import exponent_estimate, multiply_recursive
from mmsym.exact import Matrix


@dataclass
class Config:
    algorithms: tuple = ("strassen", "laderman", "naive:2x2x2")
    sizes: tuple = (1, 2, 3, 4, 8, 9, 16, 27)
    cutoff: int = 1
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cutoff", type=int, default=Config.cutoff)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    cfg = Config(cutoff=args.cutoff, seed=args.seed)
    rng = random.Random(cfg.seed)
    print(f"{'algorithm':<14}{'N':>4}{'nonscalar':>12}{'scalar':>9}{'additions':>12}  ok")
    for name in cfg.algorithms:
        alg = builtin(name)
        for N in cfg.sizes:
            X = Matrix(N, N, tuple(rng.randint(-9, 9) for _ in range(N * N)))
            Y = Matrix(N, N, tuple(rng.randint(-9, 9) for _ in range(N * N)))
            Z, ops = multiply_recursive(alg, X, Y, cfg.cutoff)
            print(f"{name:<14}{N:>4}{ops.nonscalar_mults:>12}{ops.scalar_mults:>9}{ops.additions:>12}  {Z == X @ Y}")
        print(f"{name:<14} exponent estimate {exponent_estimate(alg)}")


if __name__ == "__main__":
    main()
