"""Verify the builtins and rebuild their automorphism groups from scratch.

    python3 scripts/reproduce_symmetry.py [--search] [--budget N]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from mmsym.algebra import brent_check, type_census
from mmsym.catalog import (
    HOPCROFT_RELATIONS,
    LADERMAN_RELATIONS,
    hopcroft,
    hopcroft_generators,
    laderman,
    laderman_generators,
    strassen,
)
from mmsym.groupid import fingerprint, identify
from mmsym.search import DEFAULT_BUDGET, search_automorphisms
from mmsym.symmetry import check_relations, group_closure, orbits


@dataclass
class Config:
    search: bool = False
    budget: int = DEFAULT_BUDGET
    pool: tuple = (-1, 0, 1)


def analyse(alg, gens, relations, cfg: Config) -> dict:
    out = {"name": alg.name, "format": list(alg.fmt), "r": alg.r, "brent": brent_check(alg).passed,
           "census": {",".join(map(str, k)): v for k, v in type_census(alg).items()}}
    if gens is not None:
        out["relations_ok"] = all(r["passed"] for r in check_relations(gens, relations))
        elements = list(gens.values())
    else:
        elements = []
    if cfg.search:
        t0 = time.time()
        res = search_automorphisms(alg, cfg.pool, cfg.budget)
        out["search"] = {**res.to_json(), "seconds": round(time.time() - t0, 2)}
        elements = res.elements
    group = group_closure(elements, fmt=alg.fmt)
    fp = fingerprint(group)
    out.update(order=len(group), group=identify(fp), orbits=orbits(group, alg))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--search", action="store_true", help="rediscover generators by bounded search")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    args = ap.parse_args()
    cfg = Config(search=args.search, budget=args.budget)
    report = {
        "config": asdict(cfg),
        "results": [
            analyse(laderman(), laderman_generators(), LADERMAN_RELATIONS, cfg),
            analyse(hopcroft(), hopcroft_generators(), HOPCROFT_RELATIONS, cfg),
            analyse(strassen(), None, (), Config(search=True, budget=cfg.budget)),
        ],
    }
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
