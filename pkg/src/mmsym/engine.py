"""Run a bilinear algorithm on concrete matrices and count the work.

Evaluation follows the plain three-phase scheme

    d_l = sum a_l[u, v] X[u, v],   f_l = sum b_l[v, w] Y[v, w],
    p_l = d_l * f_l,               Z[i, k] = sum_l c_l[i, k] p_l,

with no common-subexpression sharing.  Counting convention: the r products
p_l are non-scalar multiplications; a coefficient of +-1 is free, any other
coefficient costs one scalar multiplication per entry; a sum of k nonzero
terms costs k - 1 additions per entry.  In the recursive mode each "entry"
is a whole block, so costs scale with the block area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import BilinearAlgorithm, brent_check
from .exact import Matrix, ShapeError
from .symmetry import ContractViolation


@dataclass
class OpCount:
    nonscalar_mults: int = 0
    scalar_mults: int = 0
    additions: int = 0

    def __iadd__(self, other: "OpCount") -> "OpCount":
        self.nonscalar_mults += other.nonscalar_mults
        self.scalar_mults += other.scalar_mults
        self.additions += other.additions
        return self

    def to_json(self) -> dict:
        return {"nonscalar_mults": self.nonscalar_mults, "scalar_mults": self.scalar_mults,
                "additions": self.additions}


def _num(x: Fraction):
    return x.numerator if x.denominator == 1 else x


@lru_cache(maxsize=64)
def _plan(alg: BilinearAlgorithm):
    """Sparse coefficient lists; raises if the algorithm is not valid."""
    if not brent_check(alg).passed:
        raise ContractViolation(f"algorithm {alg.name or ''} fails the Brent equations")
    m, n, p = alg.fmt

    def terms(mat: Matrix):
        return tuple((i, j, _num(mat[i, j])) for i in range(mat.rows) for j in range(mat.cols) if mat[i, j])

    lefts = tuple(terms(t.a) for t in alg.triples)
    rights = tuple(terms(t.b) for t in alg.triples)
    outs = tuple(
        tuple((l, _num(t.c[i, k])) for l, t in enumerate(alg.triples) if t.c[i, k])
        for i in range(m) for k in range(p)
    )
    return lefts, rights, outs


def _combine(terms, get, zero, add, sub, scale, area, count: OpCount):
    """Linear combination sum coef * get(key) with cost accounting."""
    acc = None
    for *key, coef in terms:
        x = get(*key)
        if coef == 1:
            term, neg = x, False
        elif coef == -1:
            term, neg = x, True
        else:
            term, neg = scale(coef, x), False
            count.scalar_mults += area
        if acc is None:
            acc = scale(-1, term) if neg else term
        else:
            acc = sub(acc, term) if neg else add(acc, term)
            count.additions += area
    return zero() if acc is None else acc


def _scalar_ops():
    return (lambda: 0, lambda x, y: x + y, lambda x, y: x - y, lambda s, x: s * x)


def multiply_once(alg: BilinearAlgorithm, X: Matrix, Y: Matrix) -> tuple[Matrix, OpCount]:
    m, n, p = alg.fmt
    if X.shape != (m, n) or Y.shape != (n, p):
        raise ShapeError(f"format {alg.fmt} needs {m}x{n} times {n}x{p}, got {X.shape} and {Y.shape}")
    lefts, rights, outs = _plan(alg)
    count = OpCount()
    zero, add, sub, scale = _scalar_ops()
    prods = []
    for la, rb in zip(lefts, rights):
        d = _combine(la, lambda i, j: X[i, j], zero, add, sub, scale, 1, count)
        f = _combine(rb, lambda i, j: Y[i, j], zero, add, sub, scale, 1, count)
        prods.append(d * f)
        count.nonscalar_mults += 1
    z = [_combine(o, lambda l: prods[l], zero, add, sub, scale, 1, count) for o in outs]
    return Matrix(m, p, tuple(z)), count


# -- recursive mode on plain nested lists -----------------------------------------

def _blk_add(x, y):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(x, y)]


def _blk_sub(x, y):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(x, y)]


def _blk_scale(c, x):
    return [[c * a for a in r] for r in x]


def _naive(x, y, count: OpCount):
    n, k, m = len(x), len(y), len(y[0])
    count.nonscalar_mults += n * k * m
    count.additions += n * m * (k - 1)
    return [[sum(x[i][t] * y[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def _rec(plan, q, x, y, cutoff, count):
    size = len(x)
    if size <= cutoff:
        return _naive(x, y, count)
    s = size // q
    zero = lambda: [[0] * s for _ in range(s)]

    def block(mat, i, j):
        return [row[j * s:(j + 1) * s] for row in mat[i * s:(i + 1) * s]]

    lefts, rights, outs = plan
    area = s * s
    prods = []
    for la, rb in zip(lefts, rights):
        d = _combine(la, lambda i, j: block(x, i, j), zero, _blk_add, _blk_sub, _blk_scale, area, count)
        f = _combine(rb, lambda i, j: block(y, i, j), zero, _blk_add, _blk_sub, _blk_scale, area, count)
        prods.append(_rec(plan, q, d, f, cutoff, count))
    out = [[0] * size for _ in range(size)]
    for idx, o in enumerate(outs):
        i, k = divmod(idx, q)
        blk = _combine(o, lambda l: prods[l], zero, _blk_add, _blk_sub, _blk_scale, area, count)
        for r in range(s):
            out[i * s + r][k * s:(k + 1) * s] = blk[r]
    return out


def multiply_recursive(alg: BilinearAlgorithm, X: Matrix, Y: Matrix, cutoff: int = 1) -> tuple[Matrix, OpCount]:
    """X @ Y for N x N inputs, recursing with a square-format algorithm.

    N is zero-padded up to the next power of q; blocks of size <= cutoff are
    multiplied naively.
    """
    q = alg.m
    if not (alg.m == alg.n == alg.p):
        raise ShapeError(f"recursive multiplication needs a square format, got {alg.fmt}")
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    N = X.rows
    if X.shape != (N, N) or Y.shape != (N, N):
        raise ShapeError(f"need two N x N matrices, got {X.shape} and {Y.shape}")
    plan = _plan(alg)
    size = 1
    while size < N:
        size *= q
    if N <= cutoff:
        size = N

    def padded(mat: Matrix):
        rows = [[_num(mat[i, j]) if i < N and j < N else 0 for j in range(size)] for i in range(size)]
        return rows

    count = OpCount()
    z = _rec(plan, q, padded(X), padded(Y), cutoff, count)
    return Matrix(N, N, tuple(z[i][j] for i in range(N) for j in range(N))), count


def exponent_estimate(alg: BilinearAlgorithm) -> float:
    """3 ln r / ln(mnp), rounded to 12 decimal places."""
    mnp = alg.m * alg.n * alg.p
    if mnp < 2:
        raise ValueError("exponent estimate needs m*n*p >= 2")
    return round(3 * math.log(alg.r) / math.log(mnp), 12)
