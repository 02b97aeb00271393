"""Bounded search for automorphisms T(a, b, c) o rho_sigma of an algorithm.

Candidates a, b, c are drawn from a finite pool of invertible matrices (by
default all entries in {-1, 0, 1}).  A type-(1,1,1) triple is a fine tensor
(d e') (x) (e f') (x) (f d'), and T(a, b, c) sends it to

    (a d)(e' b^-1) (x) (b e)(f' c^-1) (x) (c f)(d' a^-1),

so any automorphism must carry the multiset of lines <d> onto itself under a,
and the multiset of row lines <d'> onto itself under right multiplication by
a^-1 (likewise b with e, e' and c with f, f').  Each factor is filtered on its
own before the survivors are combined and checked against the full algorithm.
The search is complete only relative to the pool.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import BilinearAlgorithm, brent_check, fine_factorization, triple_type
from .exact import Matrix, mat_rank
from .symmetry import (
    ContractViolation,
    IsotropyElement,
    PERM_BY_TUPLE,
    _element,
    admissible_perms,
    apply_rho,
    is_automorphism,
    preserves_subset,
)

DEFAULT_POOL = (-1, 0, 1)
DEFAULT_BUDGET = 10_000_000


@dataclass
class SearchResult:
    elements: list
    complete: bool
    nodes: int
    per_sigma: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"found": len(self.elements), "complete": self.complete, "nodes": self.nodes,
                "candidates_per_sigma": self.per_sigma}


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, k=1) -> bool:
        self.used += k
        return self.used <= self.limit


def _line(vec) -> tuple:
    """Primitive integer representative of the line through a nonzero vector."""
    if all(type(x) is int for x in vec):
        ints = vec
    else:
        den = 1
        for x in vec:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in ints)


@lru_cache(maxsize=None)
def invertible_pool(size: int, entries: tuple) -> tuple:
    """All invertible size x size matrices over ``entries`` with lead entry 1, as row tuples."""
    out = []
    for flat in itertools.product(entries, repeat=size * size):
        lead = next((x for x in flat if x), 0)
        if lead != 1:
            continue
        m = Matrix(size, size, tuple(Fraction(x) for x in flat))
        if mat_rank(m) == size:
            out.append(tuple(tuple(flat[i * size:(i + 1) * size]) for i in range(size)))
    return tuple(out)


def _left(mat, col):
    return tuple(sum(r[k] * col[k] for k in range(len(col))) for r in mat)


def _right(row, mat):
    n = len(mat)
    return tuple(sum(row[k] * mat[k][j] for k in range(n)) for j in range(len(mat[0])))


def _factor_filter(pool, src_cols, tgt_cols, src_rows, tgt_rows, budget):
    """Matrices x with {x v} = tgt_cols and {w x} = src_rows for w in tgt_rows (as lines).

    The row condition is {v x^-1 : v in src_rows} = tgt_rows rewritten without
    the inverse.
    """
    src_cols = [_line(v) for v in src_cols]
    tgt_rows = [_line(w) for w in tgt_rows]
    want_cols = Counter(map(_line, tgt_cols))
    want_rows = Counter(map(_line, src_rows))
    col_set, row_set = set(want_cols), set(want_rows)
    keep = []
    for x in pool:
        if not budget.spend():
            return keep, False
        cols = []
        for v in src_cols:
            img = _line(_left(x, v))
            if img not in col_set:
                break
            cols.append(img)
        else:
            if Counter(cols) != want_cols:
                continue
            rows = []
            for w in tgt_rows:
                img = _line(_right(w, x))
                if img not in row_set:
                    break
                rows.append(img)
            else:
                if Counter(rows) == want_rows:
                    keep.append(x)
    return keep, True


def _fine(triples):
    return [fine_factorization(t) for t in triples]


def search_automorphisms(alg: BilinearAlgorithm, pool_entries=DEFAULT_POOL, budget: int = DEFAULT_BUDGET) -> SearchResult:
    if not brent_check(alg).passed:
        raise ContractViolation("search_automorphisms needs an algorithm that passes the Brent equations")
    entries = tuple(sorted(set(Fraction(x) for x in pool_entries)))
    entries = tuple(int(x) if x.denominator == 1 else x for x in entries)
    m, n, p = alg.fmt
    fine_set = [t for t in alg.triples if triple_type(t) == (1, 1, 1)]
    target = _fine(fine_set)
    tb = _Budget(budget)
    found = set()
    per_sigma = {}
    complete = True

    for sigma in admissible_perms(alg.fmt):
        pools = [invertible_pool(k, entries) for k in (m, n, p)]
        if fine_set:
            moved = []
            for t in fine_set:
                x, y, z = apply_rho(sigma, *t.tensor_factors())
                moved.append(type(t).from_tensor(x, y, z))
            src = _fine(moved)
            filters = [
                ([s.d for s in src], [s.d for s in target], [s.d_row for s in src], [s.d_row for s in target]),
                ([s.e for s in src], [s.e for s in target], [s.e_row for s in src], [s.e_row for s in target]),
                ([s.f for s in src], [s.f for s in target], [s.f_row for s in src], [s.f_row for s in target]),
            ]
            survivors = []
            for pool, flt in zip(pools, filters):
                keep, ok = _factor_filter(pool, *flt, tb)
                survivors.append(keep)
                if not ok:
                    complete = False
                    break
            if not complete:
                break
        else:
            survivors = list(pools)
        per_sigma[PERM_BY_TUPLE[sigma]] = [len(s) for s in survivors]
        for a, b, c in itertools.product(*survivors):
            if not tb.spend():
                complete = False
                break
            g = _element(sigma, Matrix.from_rows(a), Matrix.from_rows(b), Matrix.from_rows(c))
            if fine_set and not preserves_subset(g, fine_set):
                continue
            if is_automorphism(g, alg):
                found.add(g)
        if not complete:
            break

    order = {s: i for i, s in enumerate(admissible_perms(alg.fmt))}
    elements = sorted(found, key=lambda g: (order[g.sigma], g.a.entries, g.b.entries, g.c.entries))
    return SearchResult(elements, complete, tb.used, per_sigma)
