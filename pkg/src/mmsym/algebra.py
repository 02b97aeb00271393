"""Bilinear algorithms as lists of matrix triples, and their verification.

An algorithm for the (m, n, p) format is a list of triples (a, b, c) with a
m x n, b n x p and c m x p.  Its tensor form is the list of a (x) b (x) c^t
in M_mn (x) M_np (x) M_pm; the transpose on c is applied only when crossing
into tensor coordinates.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .exact import (
    Matrix,
    RankError,
    ShapeError,
    format_rational,
    lead_entry,
    mat_rank,
    parse_rational,
    rank_one_factor,
    unit,
)


class AlgorithmFormatError(ValueError):
    """Malformed algorithm document; ``location`` points into the document."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class Triple:
    a: Matrix
    b: Matrix
    c: Matrix

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if getattr(self, name).is_zero():
                raise ValueError(f"triple factor {name} is the zero matrix")

    @property
    def fmt(self) -> tuple[int, int, int]:
        return (self.a.rows, self.a.cols, self.b.cols)

    def tensor_factors(self) -> tuple[Matrix, Matrix, Matrix]:
        return (self.a, self.b, self.c.T)

    @classmethod
    def from_tensor(cls, x: Matrix, y: Matrix, z: Matrix) -> "Triple":
        return cls(x, y, z.T)

    def canonical(self) -> "Triple":
        """Scale a and b to lead entry 1 and push the scalars into c."""
        la, lb = lead_entry(self.a), lead_entry(self.b)
        if la == 1 and lb == 1:
            return self
        return Triple(self.a.scale(1 / la), self.b.scale(1 / lb), self.c.scale(la * lb))


@dataclass(frozen=True)
class BilinearAlgorithm:
    m: int
    n: int
    p: int
    triples: tuple
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(self.triples))
        if min(self.m, self.n, self.p) < 1:
            raise ShapeError("format entries must be positive")
        if not self.triples:
            raise ValueError("an algorithm needs at least one triple")
        want = ((self.m, self.n), (self.n, self.p), (self.m, self.p))
        for idx, t in enumerate(self.triples):
            got = (t.a.shape, t.b.shape, t.c.shape)
            if got != want:
                raise ShapeError(f"triple {idx + 1} has shapes {got}, format needs {want}")

    @property
    def r(self) -> int:
        return len(self.triples)

    @property
    def fmt(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.p)

    def with_triples(self, triples: Iterable[Triple], name: Optional[str] = None) -> "BilinearAlgorithm":
        return BilinearAlgorithm(self.m, self.n, self.p, tuple(triples), self.name if name is None else name)

    def canonical_multiset(self) -> Counter:
        return Counter(t.canonical() for t in self.triples)


# -- the structure tensor ---------------------------------------------------

@dataclass(frozen=True)
class TensorElement:
    """Dense element of M_mn (x) M_np (x) M_pm.

    The basis element e_{ij} (x) e_{j1 k} (x) e_{k1 i1} (0-based indices) sits at
    flat position ((i*n+j)*np + j1*p+k)*pm + k1*m+i1.
    """

    m: int
    n: int
    p: int
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != self.dim1 * self.dim2 * self.dim3:
            raise ShapeError("coefficient array has the wrong length")

    @property
    def dim1(self) -> int:
        return self.m * self.n

    @property
    def dim2(self) -> int:
        return self.n * self.p

    @property
    def dim3(self) -> int:
        return self.p * self.m

    def nonzero(self) -> dict:
        return {i: c for i, c in enumerate(self.coefficients) if c}


def decomposable_tensor(m: int, n: int, p: int, x: Matrix, y: Matrix, z: Matrix) -> list:
    """Dense coefficients of x (x) y (x) z, x in M_mn, y in M_np, z in M_pm."""
    out = [Fraction(0)] * (m * n * n * p * p * m)
    d2, d3 = n * p, p * m
    xs = [(u, v) for u, v in enumerate(x.entries) if v]
    ys = [(u, v) for u, v in enumerate(y.entries) if v]
    zs = [(u, v) for u, v in enumerate(z.entries) if v]
    for ix, vx in xs:
        for iy, vy in ys:
            base = (ix * d2 + iy) * d3
            vxy = vx * vy
            for iz, vz in zs:
                out[base + iz] = vxy * vz
    return out


def tensor_of(m: int, n: int, p: int, terms: Iterable[tuple[Matrix, Matrix, Matrix]]) -> TensorElement:
    acc = [Fraction(0)] * (m * n * n * p * p * m)
    for x, y, z in terms:
        for k, v in enumerate(decomposable_tensor(m, n, p, x, y, z)):
            if v:
                acc[k] += v
    return TensorElement(m, n, p, tuple(acc))


def mmp_tensor(m: int, n: int, p: int) -> TensorElement:
    """<m,n,p> = sum over i,j,k of e_ij (x) e_jk (x) e_ki."""
    if min(m, n, p) < 1:
        raise ShapeError("format entries must be positive")
    coeffs = [Fraction(0)] * (m * n * n * p * p * m)
    for i in range(m):
        for j in range(n):
            for k in range(p):
                coeffs[((i * n + j) * n * p + j * p + k) * p * m + k * m + i] = Fraction(1)
    return TensorElement(m, n, p, tuple(coeffs))


def algorithm_tensor(alg: BilinearAlgorithm) -> TensorElement:
    return tensor_of(alg.m, alg.n, alg.p, (t.tensor_factors() for t in alg.triples))


# -- verification -------------------------------------------------------------

@dataclass
class VerificationReport:
    check: str
    passed: bool
    equations: int
    violations: int
    first_violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "equations": self.equations,
            "violations": self.violations,
            "first_violations": self.first_violations,
        }


MAX_REPORTED = 10


def brent_check(alg: BilinearAlgorithm) -> VerificationReport:
    """Evaluate all (mnp)^2 Brent equations

        sum_l a[i,j] b[j1,k] c[i1,k1] = delta(i,i1) delta(j,j1) delta(k,k1).
    """
    m, n, p = alg.fmt
    ts = alg.triples
    violations = 0
    first = []
    for i in range(m):
        for j in range(n):
            avals = [(t.a[i, j], t) for t in ts]
            avals = [(v, t) for v, t in avals if v]
            for j1 in range(n):
                for k in range(p):
                    ab = [(v * t.b[j1, k], t) for v, t in avals]
                    ab = [(v, t) for v, t in ab if v]
                    for i1 in range(m):
                        for k1 in range(p):
                            s = sum((v * t.c[i1, k1] for v, t in ab), Fraction(0))
                            want = 1 if (i == i1 and j == j1 and k == k1) else 0
                            if s != want:
                                violations += 1
                                if len(first) < MAX_REPORTED:
                                    first.append({
                                        # 1-based, in the order (i, j, j1, k, i1, k1)
                                        "index": [i + 1, j + 1, j1 + 1, k + 1, i1 + 1, k1 + 1],
                                        "residual": format_rational(s - want),
                                    })
    return VerificationReport("brent", violations == 0, (m * n * p) ** 2, violations, first)


def tensor_sum_check(alg: BilinearAlgorithm) -> VerificationReport:
    """Compare sum_l a_l (x) b_l (x) c_l^t with <m,n,p> coefficientwise."""
    m, n, p = alg.fmt
    got = algorithm_tensor(alg).coefficients
    want = mmp_tensor(m, n, p).coefficients
    d2, d3 = n * p, p * m
    bad = [k for k, (x, y) in enumerate(zip(got, want)) if x != y]
    first = []
    for k in bad[:MAX_REPORTED]:
        i1j, rest = divmod(k, d2 * d3)
        j1k, k1i1 = divmod(rest, d3)
        first.append({
            "index": [i1j // n + 1, i1j % n + 1, j1k // p + 1, j1k % p + 1, k1i1 // m + 1, k1i1 % m + 1],
            "residual": format_rational(got[k] - want[k]),
        })
    return VerificationReport("tensor_sum", not bad, len(want), len(bad), first)


# -- triple typing ------------------------------------------------------------

def triple_type(t: Triple) -> tuple[int, int, int]:
    return (mat_rank(t.a), mat_rank(t.b), mat_rank(t.c))


def type_census(alg: BilinearAlgorithm) -> dict:
    return dict(sorted(Counter(triple_type(t) for t in alg.triples).items()))


@dataclass(frozen=True)
class FineFactorization:
    """a = d e', b = e f', c^t = f d' with d, e, f columns and e', f', d' rows."""

    d: tuple
    e_row: tuple
    e: tuple
    f_row: tuple
    f: tuple
    d_row: tuple

    def vectors(self) -> tuple:
        return (self.d, self.e_row, self.e, self.f_row, self.f, self.d_row)

    def recombine(self) -> Triple:
        def outer(col, row):
            return Matrix(len(col), len(row), tuple(x * y for x in col for y in row))

        return Triple(outer(self.d, self.e_row), outer(self.e, self.f_row), outer(self.f, self.d_row).T)


def fine_factorization(t: Triple) -> FineFactorization:
    if triple_type(t) != (1, 1, 1):
        raise RankError(f"fine factorization needs a type (1,1,1) triple, got {triple_type(t)}")
    d, e_row = rank_one_factor(t.a)
    e, f_row = rank_one_factor(t.b)
    f, d_row = rank_one_factor(t.c.T)
    return FineFactorization(d.entries, e_row.entries, e.entries, f_row.entries, f.entries, d_row.entries)


# -- builders -----------------------------------------------------------------

def lin(expr: str, rows: int, cols: int) -> Matrix:
    """Build a matrix from a sum of 1-based matrix units, e.g. ``"e11+e12-2e31"``.

    Indices are single digits, so this only covers matrices up to 9 x 9.
    """
    entries = [Fraction(0)] * (rows * cols)
    s = expr.replace(" ", "")
    if s and s[0] not in "+-":
        s = "+" + s
    pos = 0
    while pos < len(s):
        sign = -1 if s[pos] == "-" else 1
        pos += 1
        k = s.index("e", pos)
        coeff = Fraction(s[pos:k]) if k > pos else Fraction(1)
        i, j = int(s[k + 1]) - 1, int(s[k + 2]) - 1
        if not (0 <= i < rows and 0 <= j < cols):
            raise ShapeError(f"e{i + 1}{j + 1} out of range for {rows}x{cols}")
        entries[i * cols + j] += sign * coeff
        pos = k + 3
    return Matrix(rows, cols, tuple(entries))


def naive(m: int, n: int, p: int) -> BilinearAlgorithm:
    """The schoolbook algorithm: triples (e_ij, e_jk, e_ik), r = mnp."""
    triples = [
        Triple(unit(m, n, i, j), unit(n, p, j, k), unit(m, p, i, k))
        for i in range(m) for j in range(n) for k in range(p)
    ]
    return BilinearAlgorithm(m, n, p, tuple(triples), f"naive:{m}x{n}x{p}")


# -- serialization ------------------------------------------------------------

def _matrix_to_json(a: Matrix) -> list:
    return [[format_rational(x) for x in a.row(i)] for i in range(a.rows)]


def algorithm_to_dict(alg: BilinearAlgorithm) -> dict:
    return {
        "name": alg.name or "",
        "m": alg.m,
        "n": alg.n,
        "p": alg.p,
        "triples": [
            {"a": _matrix_to_json(t.a), "b": _matrix_to_json(t.b), "c": _matrix_to_json(t.c)}
            for t in alg.triples
        ],
    }


def serialize_algorithm(alg: BilinearAlgorithm) -> str:
    return json.dumps(algorithm_to_dict(alg), indent=1) + "\n"


def matrix_from_json(obj, shape: Optional[tuple[int, int]], where: str) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise AlgorithmFormatError("expected a non-empty list of rows", where)
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise AlgorithmFormatError("rows must be non-empty and of equal length", where)
    if shape is not None and (len(obj), width) != shape:
        raise AlgorithmFormatError(
            f"shape error: expected {shape[0]}x{shape[1]}, got {len(obj)}x{width}", where
        )
    entries = []
    for i, r in enumerate(obj):
        for j, x in enumerate(r):
            try:
                entries.append(parse_rational(x))
            except ValueError as exc:
                raise AlgorithmFormatError(str(exc), f"{where}[{i}][{j}]") from None
    return Matrix(len(obj), width, tuple(entries))


def algorithm_from_dict(doc) -> BilinearAlgorithm:
    if not isinstance(doc, dict):
        raise AlgorithmFormatError("top level must be an object")
    for key in ("m", "n", "p"):
        v = doc.get(key)
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise AlgorithmFormatError("must be a positive integer", key)
    m, n, p = doc["m"], doc["n"], doc["p"]
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise AlgorithmFormatError("must be a string", "name")
    raw = doc.get("triples")
    if not isinstance(raw, list) or not raw:
        raise AlgorithmFormatError("must be a non-empty list", "triples")
    shapes = {"a": (m, n), "b": (n, p), "c": (m, p)}
    triples = []
    for idx, item in enumerate(raw):
        where = f"triples[{idx}]"
        if not isinstance(item, dict):
            raise AlgorithmFormatError("must be an object", where)
        mats = {}
        for key, shape in shapes.items():
            if key not in item:
                raise AlgorithmFormatError("missing factor", f"{where}.{key}")
            mats[key] = matrix_from_json(item[key], shape, f"{where}.{key}")
            if mats[key].is_zero():
                raise AlgorithmFormatError("zero factor", f"{where}.{key}")
        triples.append(Triple(mats["a"], mats["b"], mats["c"]))
    return BilinearAlgorithm(m, n, p, tuple(triples), name or None)


def parse_algorithm(text: str) -> BilinearAlgorithm:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgorithmFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return algorithm_from_dict(doc)
