import random
import re
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from mmsym.algebra import Triple
from mmsym.exact import Matrix, mat_rank

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("repo")


def int_matrix(rows, cols, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=rows * cols, max_size=rows * cols).map(
        lambda xs: Matrix(rows, cols, tuple(xs))
    )


def invertible(n, lo=-3, hi=3):
    return int_matrix(n, n, lo, hi).filter(lambda a: mat_rank(a) == n)


def random_invertible(rng: random.Random, n: int, lo=-3, hi=3) -> Matrix:
    while True:
        a = Matrix(n, n, tuple(rng.randint(lo, hi) for _ in range(n * n)))
        if mat_rank(a) == n:
            return a


def random_matrix(rng: random.Random, rows: int, cols: int, lo=-5, hi=5, den=1) -> Matrix:
    return Matrix(rows, cols, tuple(Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(rows * cols)))


@pytest.fixture
def rng():
    return random.Random(20240611)


def flip_sign(alg, l: int, which: str, k: int):
    """Copy of ``alg`` with the k-th nonzero entry of factor ``which`` of triple l negated."""
    t = alg.triples[l]
    mat = getattr(t, which)
    nz = [i for i, x in enumerate(mat.entries) if x]
    idx = nz[k % len(nz)]
    entries = list(mat.entries)
    entries[idx] = -entries[idx]
    new = Matrix(mat.rows, mat.cols, tuple(entries))
    parts = {"a": t.a, "b": t.b, "c": t.c, which: new}
    triples = list(alg.triples)
    triples[l] = Triple(parts["a"], parts["b"], parts["c"])
    return alg.with_triples(triples)


def all_sign_flips(alg):
    for l, t in enumerate(alg.triples):
        for which in "abc":
            for k in range(sum(1 for x in getattr(t, which).entries if x)):
                yield flip_sign(alg, l, which, k)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results, key=lambda k: (int(re.sub(r"\D", "", k)), k)):
            terminalreporter.write_line(results[key])
