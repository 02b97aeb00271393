"""``mmsym`` command line.

Every command writes one JSON document to stdout (with ``"schema": "mmsym/1"``)
and diagnostics to stderr.  Exit status: 0 pass, 1 fail, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import (
    AlgorithmFormatError,
    BilinearAlgorithm,
    algorithm_to_dict,
    brent_check,
    fine_factorization,
    matrix_from_json,
    parse_algorithm,
    tensor_sum_check,
    triple_type,
    type_census,
)
from .catalog import (
    HOPCROFT_RELATIONS,
    LADERMAN_RELATIONS,
    builtin,
    hopcroft_generators,
    laderman_generators,
)
from .engine import exponent_estimate, multiply_once, multiply_recursive
from .exact import Matrix, format_rational
from .groupid import fingerprint, identify
from .search import search_automorphisms
from .symmetry import (
    ClosureCapExceeded,
    ContractViolation,
    act_on_algorithm,
    check_relations,
    element_from_dict,
    element_to_dict,
    group_closure,
    is_automorphism,
    orbits,
)

SCHEMA = "mmsym/1"
KNOWN_GENERATORS = {
    "laderman": (laderman_generators, LADERMAN_RELATIONS),
    "hopcroft": (hopcroft_generators, HOPCROFT_RELATIONS),
}


class UsageError(Exception):
    """Bad input: reported on stderr with exit status 2."""


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n")


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_algorithm(args) -> BilinearAlgorithm:
    path = getattr(args, "path", None) or args.file
    if args.builtin and path:
        raise UsageError("give either --builtin or a file, not both")
    if args.builtin:
        try:
            return builtin(args.builtin)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if not path:
        raise UsageError("no algorithm given (use --builtin NAME or --file PATH)")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_algorithm(text)
    except AlgorithmFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _summary(alg: BilinearAlgorithm) -> dict:
    return {"name": alg.name or "", "m": alg.m, "n": alg.n, "p": alg.p, "r": alg.r}


def _known(alg: BilinearAlgorithm):
    entry = KNOWN_GENERATORS.get(alg.name or "")
    if entry is None:
        raise UsageError(f"no known generators for algorithm {alg.name!r}")
    return entry[0](), entry[1]


def _parse_generators(doc, fmt) -> list:
    if isinstance(doc, dict) and "generators" in doc:
        doc = doc["generators"]
    if isinstance(doc, dict):
        items = [doc[k] for k in sorted(doc)]
    elif isinstance(doc, list):
        items = doc
    else:
        raise UsageError("generators file must hold a list or an object of group elements")
    out = []
    for i, item in enumerate(items):
        try:
            out.append(element_from_dict(item, fmt))
        except AlgorithmFormatError as exc:
            raise UsageError(f"generator {i}: {exc}") from None
    return out


def _matrix_rows(a: Matrix) -> list:
    return [[format_rational(x) for x in a.row(i)] for i in range(a.rows)]


def vector_pattern(vec) -> str:
    """Render a vector as signed basis indices, e.g. (1, -1, 0) -> '1-2'."""
    parts = []
    for k, x in enumerate(vec, start=1):
        if not x:
            continue
        mag = "" if abs(x) == 1 else format_rational(abs(x)) + "*"
        sign = "-" if x < 0 else ("+" if parts else "")
        parts.append(f"{sign}{mag}{k}")
    return "".join(parts)


# -- commands -------------------------------------------------------------------

def cmd_verify(args) -> int:
    alg = _load_algorithm(args)
    brent = brent_check(alg)
    tsum = tensor_sum_check(alg)
    census = {",".join(map(str, k)): v for k, v in type_census(alg).items()}
    ok = brent.passed and tsum.passed
    _emit({"command": "verify", "algorithm": _summary(alg), "passed": ok,
           "brent": brent.to_json(), "tensor_sum": tsum.to_json(), "type_census": census})
    if not ok:
        print(f"verification failed: {brent.violations} Brent violations", file=sys.stderr)
    return 0 if ok else 1


def cmd_act(args) -> int:
    alg = _load_algorithm(args)
    if bool(args.element) == bool(args.known):
        raise UsageError("give exactly one of --element PATH or --known NAME")
    if args.element:
        doc = _read_json(args.element)
        try:
            g = element_from_dict(doc, alg.fmt)
        except AlgorithmFormatError as exc:
            raise UsageError(f"{args.element}: {exc}") from None
    else:
        gens, _ = _known(alg)
        if args.known not in gens:
            raise UsageError(f"unknown generator {args.known!r}; choose from {', '.join(sorted(gens))}")
        g = gens[args.known]
    image = act_on_algorithm(g, alg)
    auto = is_automorphism(g, alg)
    _emit({"command": "act", "algorithm": _summary(alg), "element": element_to_dict(g),
           "automorphism": auto, "image": algorithm_to_dict(image)})
    return 0 if auto else 1


def cmd_generators(args) -> int:
    alg = _load_algorithm(args)
    gens, relations = _known(alg)
    report = check_relations(gens, relations)
    ok = all(r["passed"] for r in report) and all(is_automorphism(g, alg) for g in gens.values())
    _emit({"command": "generators", "algorithm": _summary(alg),
           "generators": {k: element_to_dict(g) for k, g in gens.items()},
           "relations": report, "passed": ok})
    return 0 if ok else 1


def cmd_autgroup(args) -> int:
    alg = _load_algorithm(args)
    sources = [bool(args.generators), args.search, args.known]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --generators PATH, --known or --search")
    payload = {"command": "autgroup", "algorithm": _summary(alg)}
    if args.search:
        try:
            pool = tuple(int(x) for x in args.pool_entries.split(","))
        except ValueError:
            raise UsageError(f"bad --pool-entries {args.pool_entries!r}") from None
        try:
            res = search_automorphisms(alg, pool, args.budget)
        except ContractViolation as exc:
            print(str(exc), file=sys.stderr)
            _emit({**payload, "passed": False, "error": str(exc)})
            return 1
        gens = res.elements
        payload["source"] = "search"
        payload["search"] = res.to_json()
    elif args.known:
        gens = list(_known(alg)[0].values())
        payload["source"] = "known"
    else:
        gens = _parse_generators(_read_json(args.generators), alg.fmt)
        payload["source"] = "file"
    bad = [i for i, g in enumerate(gens) if not is_automorphism(g, alg)]
    payload["generators"] = [element_to_dict(g) for g in gens] if not args.search else len(gens)
    if bad:
        print(f"generators {bad} are not automorphisms", file=sys.stderr)
        _emit({**payload, "passed": False, "non_automorphisms": bad})
        return 1
    try:
        group = group_closure(gens, cap=args.cap, fmt=alg.fmt)
    except ClosureCapExceeded as exc:
        print(str(exc), file=sys.stderr)
        _emit({**payload, "passed": False, "error": str(exc)})
        return 1
    fp = fingerprint(group)
    _emit({**payload, "passed": True, "order": len(group), "fingerprint": fp.to_json(),
           "identification": identify(fp), "orbits": orbits(group, alg)})
    return 0


def _load_matrix(path: str) -> Matrix:
    doc = _read_json(path)
    if isinstance(doc, dict):
        doc = doc.get("matrix")
    try:
        return matrix_from_json(doc, None, path)
    except AlgorithmFormatError as exc:
        raise UsageError(str(exc)) from None


def cmd_multiply(args) -> int:
    alg = _load_algorithm(args)
    X, Y = _load_matrix(args.x), _load_matrix(args.y)
    try:
        if args.recursive:
            Z, count = multiply_recursive(alg, X, Y, args.cutoff)
        else:
            Z, count = multiply_once(alg, X, Y)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"command": "multiply", "algorithm": _summary(alg),
               "mode": "recursive" if args.recursive else "once", "product": _matrix_rows(Z),
               "ops": count.to_json()}
    if alg.m * alg.n * alg.p >= 2:
        payload["exponent_estimate"] = exponent_estimate(alg)
    _emit(payload)
    return 0


def cmd_table1(args) -> int:
    if not args.builtin and not args.file:
        args.builtin = "laderman"
    alg = _load_algorithm(args)
    rows = []
    for idx, t in enumerate(alg.triples, start=1):
        if triple_type(t) != (1, 1, 1):
            continue
        ff = fine_factorization(t)
        vecs = ff.vectors()
        rows.append({"index": idx,
                     "pattern": " ".join(vector_pattern(v) for v in vecs),
                     "vectors": [[format_rational(x) for x in v] for v in vecs]})
    _emit({"command": "table1", "algorithm": _summary(alg),
           "columns": ["U1", "V1", "U2", "V2", "U3", "V3"], "rows": rows})
    return 0


# -- parser ---------------------------------------------------------------------

def _alg_args(p: argparse.ArgumentParser, positional: bool = True) -> None:
    p.add_argument("--builtin", metavar="NAME", help="strassen, laderman, hopcroft or naive:MxNxP")
    p.add_argument("--file", metavar="PATH", help="algorithm JSON file")
    if positional:
        p.add_argument("path", nargs="?", help="algorithm JSON file (same as --file)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mmsym", description="Symmetries of bilinear matrix multiplication algorithms.")
    parser.add_argument("--format", choices=["json"], default="json", help="output format (json only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Brent and tensor-sum checks")
    _alg_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("act", help="apply a group element to an algorithm")
    _alg_args(p)
    p.add_argument("--element", metavar="PATH", help="group element JSON file")
    p.add_argument("--known", metavar="NAME", help="named builtin generator, e.g. P2")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("generators", help="print the known generators of a builtin and check their relations")
    _alg_args(p)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("autgroup", help="closure, identification and orbits")
    _alg_args(p)
    p.add_argument("--generators", metavar="PATH", help="JSON list (or object) of group elements")
    p.add_argument("--known", action="store_true", help="use the builtin's known generators")
    p.add_argument("--search", action="store_true", help="bounded automorphism search")
    p.add_argument("--pool-entries", default="-1,0,1", help="matrix entries for --search")
    p.add_argument("--budget", type=int, default=10_000_000, help="node budget for --search")
    p.add_argument("--cap", type=int, default=10_000, help="closure size cap")
    p.set_defaults(func=cmd_autgroup)

    p = sub.add_parser("multiply", help="multiply two matrices with an algorithm")
    _alg_args(p, positional=False)
    p.add_argument("x", help="left matrix JSON (list of rows)")
    p.add_argument("y", help="right matrix JSON (list of rows)")
    p.add_argument("--recursive", action="store_true")
    p.add_argument("--cutoff", type=int, default=1)
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("table1", help="fine factorization table of the type-(1,1,1) triples")
    _alg_args(p)
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mmsym: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
