"""Print the fine factorization (d, e', e, f', f, d') of Laderman's type-(1,1,1) triples.

Column vectors are scaled to lead entry 1 and the scalar goes into the paired
row vector, so signs can differ from hand-written tables by a per-vector factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from mmsym.algebra import fine_factorization, triple_type
from mmsym.catalog import builtin
from mmsym.cli import vector_pattern


@dataclass
class Config:
    algorithm: str = "laderman"
    width: int = 8


def main(cfg: Config = Config()) -> None:
    alg = builtin(cfg.algorithm)
    head = ["N", "U1", "V1", "U2", "V2", "U3", "V3"]
    print("".join(h.ljust(cfg.width) for h in head))
    for i, t in enumerate(alg.triples, start=1):
        if triple_type(t) != (1, 1, 1):
            continue
        cells = [str(i)] + [vector_pattern(v) for v in fine_factorization(t).vectors()]
        print("".join(c.ljust(cfg.width) for c in cells))


if __name__ == "__main__":
    main()
