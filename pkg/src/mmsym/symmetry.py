"""Decomposable symmetries of <m,n,p> and their action on algorithms.

Every element of the isotropy group is stored as g = T(a, b, c) o rho_sigma,
where rho_sigma moves tensor factor i to position sigma(i) (transposing all
three when sigma is odd) and

    T(a, b, c): x (x) y (x) z  ->  a x b^-1 (x) b y c^-1 (x) c z a^-1.

T is unchanged by independent rescaling of a, b, c, so each matrix is kept
scaled to lead entry 1; two elements are equal iff their fields are equal.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import (
    AlgorithmFormatError,
    BilinearAlgorithm,
    TensorElement,
    Triple,
    decomposable_tensor,
    matrix_from_json,
    mmp_tensor,
)
from .exact import (
    Matrix,
    ShapeError,
    contragredient,
    format_rational,
    identity,
    mat_inverse,
    mat_transpose,
    scale_to_lead_one,
    unit,
)

Perm = tuple  # (sigma(0), sigma(1), sigma(2))

PERM_NAMES = {
    "e": (0, 1, 2),
    "(12)": (1, 0, 2),
    "(13)": (2, 1, 0),
    "(23)": (0, 2, 1),
    "(123)": (1, 2, 0),
    "(132)": (2, 0, 1),
}
PERM_BY_TUPLE = {v: k for k, v in PERM_NAMES.items()}


class AdmissibilityError(ValueError):
    """Factor permutation not allowed for this format."""


class ContractViolation(ValueError):
    pass


class ClosureCapExceeded(RuntimeError):
    pass


def perm_compose(s: Perm, t: Perm) -> Perm:
    """(s t)(i) = s(t(i)); right-to-left, as for maps."""
    return tuple(s[t[i]] for i in range(3))


def perm_inverse(s: Perm) -> Perm:
    inv = [0, 0, 0]
    for i, j in enumerate(s):
        inv[j] = i
    return tuple(inv)


def perm_is_odd(s: Perm) -> bool:
    return s in ((1, 0, 2), (2, 1, 0), (0, 2, 1))


def parse_perm(name) -> Perm:
    if isinstance(name, tuple):
        if name not in PERM_BY_TUPLE:
            raise ValueError(f"not a permutation of (0, 1, 2): {name!r}")
        return name
    key = str(name).replace(" ", "").replace(",", "")
    if key in ("()", "1", "id"):
        key = "e"
    if key not in PERM_NAMES:
        raise ValueError(f"unknown factor permutation {name!r}; use one of {', '.join(PERM_NAMES)}")
    return PERM_NAMES[key]


def is_admissible(sigma: Perm, fmt: tuple[int, int, int]) -> bool:
    m, n, p = fmt
    if sigma == (0, 1, 2):
        return True
    if fmt == (1, 1, 1):
        # all three factors are one-dimensional, so sigma is not determined by g
        return False
    need = {
        (0, 2, 1): m == n,
        (2, 1, 0): n == p,
        (1, 0, 2): m == p,
        (1, 2, 0): m == n == p,
        (2, 0, 1): m == n == p,
    }
    return need[sigma]


def admissible_perms(fmt: tuple[int, int, int]) -> list[Perm]:
    order = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    return [PERM_NAMES[k] for k in order if is_admissible(PERM_NAMES[k], fmt)]


@dataclass(frozen=True)
class IsotropyElement:
    sigma: Perm
    a: Matrix
    b: Matrix
    c: Matrix

    @property
    def fmt(self) -> tuple[int, int, int]:
        return (self.a.rows, self.b.rows, self.c.rows)

    @property
    def sigma_name(self) -> str:
        return PERM_BY_TUPLE[self.sigma]

    def is_identity(self) -> bool:
        m, n, p = self.fmt
        return self.sigma == (0, 1, 2) and (self.a, self.b, self.c) == (identity(m), identity(n), identity(p))

    def __repr__(self) -> str:
        return f"IsotropyElement({self.sigma_name}, a={self.a!r}, b={self.b!r}, c={self.c!r})"


def _element(sigma: Perm, a: Matrix, b: Matrix, c: Matrix) -> IsotropyElement:
    return IsotropyElement(sigma, scale_to_lead_one(a)[0], scale_to_lead_one(b)[0], scale_to_lead_one(c)[0])


def make_element(sigma, a: Matrix, b: Matrix, c: Matrix, fmt=None) -> IsotropyElement:
    """Canonical T(a, b, c) o rho_sigma; a, b, c must be invertible."""
    sigma = parse_perm(sigma)
    if fmt is None:
        fmt = (a.rows, b.rows, c.rows)
    fmt = tuple(fmt)
    for name, x, size in (("a", a, fmt[0]), ("b", b, fmt[1]), ("c", c, fmt[2])):
        if x.shape != (size, size):
            raise ShapeError(f"{name} must be {size}x{size} for format {fmt}, got {x.rows}x{x.cols}")
        mat_inverse(x)  # raises SingularMatrixError
    if not is_admissible(sigma, fmt):
        raise AdmissibilityError(f"rho_{PERM_BY_TUPLE[sigma]} is not defined for format {fmt}")
    return _element(sigma, a, b, c)


def make_T(a: Matrix, b: Matrix, c: Matrix, fmt=None) -> IsotropyElement:
    return make_element((0, 1, 2), a, b, c, fmt)


def make_rho(sigma, fmt) -> IsotropyElement:
    m, n, p = fmt
    return make_element(sigma, identity(m), identity(n), identity(p), fmt)


def identity_element(fmt) -> IsotropyElement:
    return make_rho((0, 1, 2), fmt)


# -- action -------------------------------------------------------------------

def apply_rho(sigma: Perm, x: Matrix, y: Matrix, z: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    src = (x, y, z)
    out = [None, None, None]
    odd = perm_is_odd(sigma)
    for i in range(3):
        out[sigma[i]] = mat_transpose(src[i]) if odd else src[i]
    return tuple(out)


def apply_to_tensor_factors(g: IsotropyElement, x: Matrix, y: Matrix, z: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Image of the decomposable tensor x (x) y (x) z, as three factors."""
    x, y, z = apply_rho(g.sigma, x, y, z)
    ai, bi, ci = mat_inverse(g.a), mat_inverse(g.b), mat_inverse(g.c)
    return (g.a @ x @ bi, g.b @ y @ ci, g.c @ z @ ai)


def apply_to_triple(g: IsotropyElement, t: Triple) -> Triple:
    if t.fmt != g.fmt:
        raise ShapeError(f"triple format {t.fmt} does not match element format {g.fmt}")
    x, y, z = apply_to_tensor_factors(g, *t.tensor_factors())
    return Triple.from_tensor(x, y, z).canonical()


def apply_to_tensor(g: IsotropyElement, t: TensorElement) -> TensorElement:
    """Action on an arbitrary tensor, by linearity over the basis e (x) e (x) e."""
    m, n, p = t.m, t.n, t.p
    if (m, n, p) != g.fmt:
        raise ShapeError("tensor format does not match element format")
    d2, d3 = n * p, p * m
    acc = [Fraction(0)] * len(t.coefficients)
    for k, coeff in t.nonzero().items():
        i1, rest = divmod(k, d2 * d3)
        i2, i3 = divmod(rest, d3)
        x = unit(m, n, *divmod(i1, n))
        y = unit(n, p, *divmod(i2, p))
        z = unit(p, m, *divmod(i3, m))
        for idx, v in enumerate(decomposable_tensor(m, n, p, *apply_to_tensor_factors(g, x, y, z))):
            if v:
                acc[idx] += coeff * v
    return TensorElement(m, n, p, tuple(acc))


def fixes_structure_tensor(g: IsotropyElement) -> bool:
    t = mmp_tensor(*g.fmt)
    return apply_to_tensor(g, t) == t


# -- group law ------------------------------------------------------------------

def conjugate_T(sigma: Perm, a: Matrix, b: Matrix, c: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """(a', b', c') with rho_sigma T(a, b, c) rho_sigma^-1 = T(a', b', c')."""
    name = PERM_BY_TUPLE[sigma]
    if name == "e":
        return (a, b, c)
    if name == "(123)":
        return (c, a, b)
    if name == "(132)":
        return (b, c, a)
    av, bv, cv = contragredient(a), contragredient(b), contragredient(c)
    if name == "(12)":
        return (cv, bv, av)
    if name == "(13)":
        return (av, cv, bv)
    return (bv, av, cv)  # (23)


def compose(g: IsotropyElement, h: IsotropyElement) -> IsotropyElement:
    """The map g o h (apply h first)."""
    if g.fmt != h.fmt:
        raise ShapeError(f"cannot compose elements of formats {g.fmt} and {h.fmt}")
    a2, b2, c2 = conjugate_T(g.sigma, h.a, h.b, h.c)
    return _element(perm_compose(g.sigma, h.sigma), g.a @ a2, g.b @ b2, g.c @ c2)


def inverse(g: IsotropyElement) -> IsotropyElement:
    m, n, p = g.fmt
    rho_inv = IsotropyElement(perm_inverse(g.sigma), identity(m), identity(n), identity(p))
    t_inv = _element((0, 1, 2), mat_inverse(g.a), mat_inverse(g.b), mat_inverse(g.c))
    return compose(rho_inv, t_inv)


def power(g: IsotropyElement, k: int) -> IsotropyElement:
    if k < 0:
        return power(inverse(g), -k)
    out = identity_element(g.fmt)
    for _ in range(k):
        out = compose(out, g)
    return out


def element_order(g: IsotropyElement, limit: int = 10_000) -> int:
    x, k = g, 1
    while not x.is_identity():
        x = compose(x, g)
        k += 1
        if k > limit:
            raise ClosureCapExceeded(f"element order exceeds {limit}")
    return k


# -- algorithms -------------------------------------------------------------------

def act_on_algorithm(g: IsotropyElement, alg: BilinearAlgorithm) -> BilinearAlgorithm:
    if g.fmt != alg.fmt:
        raise ShapeError(f"element format {g.fmt} does not match algorithm format {alg.fmt}")
    return alg.with_triples(apply_to_triple(g, t) for t in alg.triples)


def is_automorphism(g: IsotropyElement, alg: BilinearAlgorithm) -> bool:
    return act_on_algorithm(g, alg).canonical_multiset() == alg.canonical_multiset()


def preserves_subset(g: IsotropyElement, triples: Sequence[Triple]) -> bool:
    want = Counter(t.canonical() for t in triples)
    return Counter(apply_to_triple(g, t) for t in triples) == want


def group_closure(generators: Iterable[IsotropyElement], cap: int = 10_000, fmt=None) -> list[IsotropyElement]:
    """All products of the generators, identity first, in BFS discovery order."""
    gens = list(generators)
    if fmt is None:
        if not gens:
            raise ValueError("need a format when there are no generators")
        fmt = gens[0].fmt
    if any(g.fmt != tuple(fmt) for g in gens):
        raise ShapeError("generators must share one format")
    e = identity_element(fmt)
    seen = {e: None}
    frontier = [e]
    for g in gens:
        if g not in seen:
            seen[g] = None
            frontier.append(g)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen[y] = None
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(f"group closure exceeded cap of {cap} elements")
        frontier = nxt
    return list(seen)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            if y < x:
                x, y = y, x
            self.parent[y] = x


def orbits(group: Iterable[IsotropyElement], alg: BilinearAlgorithm) -> list[list[int]]:
    """Partition of 1..r into orbits; ``group`` may be any generating set.

    Triples with equal canonical form are treated as the same point.
    """
    canon = [t.canonical() for t in alg.triples]
    where: dict = {}
    for idx, t in enumerate(canon):
        where.setdefault(t, []).append(idx)
    uf = _UnionFind(alg.r)
    for idxs in where.values():
        for j in idxs[1:]:
            uf.union(idxs[0], j)
    for g in group:
        for idx, t in enumerate(alg.triples):
            img = apply_to_triple(g, t)
            if img not in where:
                raise ContractViolation(f"element does not preserve the algorithm (image of triple {idx + 1})")
            uf.union(idx, where[img][0])
    blocks: dict = {}
    for idx in range(alg.r):
        blocks.setdefault(uf.find(idx), []).append(idx + 1)
    return sorted(blocks.values())


# -- relations ----------------------------------------------------------------------

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def evaluate_word(assignment: Mapping[str, IsotropyElement], word: str) -> IsotropyElement:
    """Evaluate a word like ``"P3 P1 P3 P2^-1"`` as the composite map (rightmost first)."""
    tokens = word.split()
    if not tokens:
        raise ValueError("empty word")
    parts = []
    for tok in tokens:
        match = _TOKEN.match(tok)
        if match is None:
            raise ValueError(f"bad token {tok!r} in word {word!r}")
        name, exp = match.group(1), int(match.group(2) or 1)
        if name not in assignment:
            raise KeyError(f"unknown generator {name!r} in word {word!r}")
        parts.append(power(assignment[name], exp))
    out = parts[0]
    for x in parts[1:]:
        out = compose(out, x)
    return out


def check_relations(assignment: Mapping[str, IsotropyElement], relations: Sequence[str]) -> list[dict]:
    """Each relation is a word w, read as w = 1."""
    return [
        {"relation": w, "passed": evaluate_word(assignment, w).is_identity()}
        for w in relations
    ]


# -- text form -----------------------------------------------------------------------

def element_to_dict(g: IsotropyElement) -> dict:
    def mat(x):
        return [[format_rational(v) for v in x.row(i)] for i in range(x.rows)]

    return {"sigma": g.sigma_name, "a": mat(g.a), "b": mat(g.b), "c": mat(g.c)}


def element_from_dict(doc, fmt=None) -> IsotropyElement:
    if not isinstance(doc, dict):
        raise AlgorithmFormatError("group element must be an object")
    try:
        sigma = parse_perm(doc.get("sigma", "e"))
    except ValueError as exc:
        raise AlgorithmFormatError(str(exc), "sigma") from None
    mats = {}
    for i, key in enumerate("abc"):
        if key not in doc:
            raise AlgorithmFormatError("missing matrix", key)
        shape = None if fmt is None else (fmt[i], fmt[i])
        mats[key] = matrix_from_json(doc[key], shape, key)
    try:
        return make_element(sigma, mats["a"], mats["b"], mats["c"], fmt)
    except ValueError as exc:
        raise AlgorithmFormatError(str(exc)) from None
