"""Builtin algorithms: Strassen (2,2,2), Laderman (3,3,3), Hopcroft (3,2,3).

Laderman and Hopcroft are entered in tensor form x (x) y (x) z; the stored
triple is (x, y, z^t).  Nothing here is trusted: the test suite checks every
builtin against the Brent equations.
"""

from __future__ import annotations

from .algebra import BilinearAlgorithm, Triple, lin, naive
from .exact import Matrix, diag, identity
from .symmetry import make_element, make_T

_STRASSEN = [
    ([[1, 0], [0, 0]], [[0, 1], [0, 1]], [[0, 1], [0, -1]]),
    ([[1, -1], [0, 0]], [[0, 0], [0, 1]], [[-1, -1], [0, 0]]),
    ([[0, 0], [-1, 1]], [[1, 0], [0, 0]], [[0, 0], [-1, -1]]),
    ([[0, 0], [0, 1]], [[1, 0], [1, 0]], [[-1, 0], [1, 0]]),
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]),
    ([[1, 0], [1, 0]], [[1, -1], [0, 0]], [[0, 0], [0, -1]]),
    ([[0, 1], [0, 1]], [[0, 0], [1, -1]], [[1, 0], [0, 0]]),
]

_LADERMAN = [
    ("e11+e12+e13-e21-e22-e32-e33", "e22", "e21"),
    ("e11-e21", "-e12+e22", "e12+e22"),
    ("e22", "-e11+e12+e21-e22-e23-e31+e33", "e12"),
    ("-e11+e21+e22", "e11-e12+e22", "e21+e12+e22"),
    ("e21+e22", "-e11+e12", "e21+e22"),
    ("e11", "e11", "e11+e21+e31+e12+e22+e13+e33"),
    ("-e11+e31+e32", "e11-e13+e23", "e31+e13+e33"),
    ("-e11+e31", "e13-e23", "e13+e33"),
    ("e31+e32", "-e11+e13", "e31+e33"),
    ("e11+e12+e13-e22-e23-e31-e32", "e23", "e31"),
    ("e32", "-e11+e13+e21-e22-e23-e31+e32", "e13"),
    ("-e13+e32+e33", "e22+e31-e32", "e21+e13+e23"),
    ("e13-e33", "e22-e32", "e13+e23"),
    ("e13", "e31", "e11+e21+e31+e12+e32+e13+e23"),
    ("e32+e33", "-e31+e32", "e21+e23"),
    ("-e13+e22+e23", "e23+e31-e33", "e31+e12+e32"),
    ("e13-e23", "e23-e33", "e12+e32"),
    ("e22+e23", "-e31+e33", "e31+e32"),
    ("e12", "e21", "e11"),
    ("e23", "e32", "e22"),
    ("e21", "e13", "e32"),
    ("e31", "e12", "e23"),
    ("e33", "e33", "e33"),
]

# M_32 (x) M_23 (x) M_33
_HOPCROFT = [
    ("e11-e12", "e11", "e11-e31-e12"),
    ("e12", "e11+e21", "e11-e21-e13"),
    ("e21", "e12", "-e21+e22-e32"),
    ("e22", "e22", "-e12+e22-e23"),
    ("e31", "e13+e23", "e33-e31-e23"),
    ("-e31+e32", "e23", "e33-e13-e32"),
    ("e11+e21", "e11+e12+e21+e22", "e21"),
    ("e11-e12+e21", "e11+e21+e22", "e12-e21"),
    ("e11-e12+e21-e22", "e21+e22", "-e12"),
    ("e22+e32", "e12+e13+e22+e23", "e23"),
    ("e22-e31+e32", "e12+e13+e23", "-e23+e32"),
    ("-e21+e22-e31+e32", "e12+e13", "-e32"),
    ("e12+e31", "e11-e23", "e13-e31"),
    ("e12+e32", "e21+e23", "e13"),
    ("e11+e31", "e11+e13", "e31"),
]


def _from_tensor_list(m: int, n: int, p: int, rows, name: str) -> BilinearAlgorithm:
    triples = [
        Triple.from_tensor(lin(x, m, n), lin(y, n, p), lin(z, p, m))
        for x, y, z in rows
    ]
    return BilinearAlgorithm(m, n, p, tuple(triples), name)


def strassen() -> BilinearAlgorithm:
    triples = [Triple(*(Matrix.from_rows(x) for x in t)) for t in _STRASSEN]
    return BilinearAlgorithm(2, 2, 2, tuple(triples), "strassen")


def laderman() -> BilinearAlgorithm:
    return _from_tensor_list(3, 3, 3, _LADERMAN, "laderman")


def hopcroft() -> BilinearAlgorithm:
    return _from_tensor_list(3, 2, 3, _HOPCROFT, "hopcroft")


BUILTIN_NAMES = ("strassen", "laderman", "hopcroft", "naive:MxNxP")


def builtin(name: str) -> BilinearAlgorithm:
    """Look up ``strassen``, ``laderman``, ``hopcroft`` or ``naive:MxNxP``."""
    key = name.strip().lower()
    if key == "strassen":
        return strassen()
    if key == "laderman":
        return laderman()
    if key == "hopcroft":
        return hopcroft()
    if key.startswith("naive:"):
        try:
            m, n, p = (int(v) for v in key[len("naive:"):].split("x"))
        except ValueError:
            raise KeyError(f"bad naive format {name!r}, expected naive:MxNxP") from None
        return naive(m, n, p)
    raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


# -- known symmetry generators ---------------------------------------------------

def _perm_matrix(n: int, images) -> Matrix:
    """Matrix sending basis vector e_i to e_images[i] (1-based)."""
    rows = [[0] * n for _ in range(n)]
    for i, j in enumerate(images):
        rows[j - 1][i] = 1
    return Matrix.from_rows(rows)


PI12 = _perm_matrix(3, (2, 1, 3))
PI13 = _perm_matrix(3, (3, 2, 1))
PI23 = _perm_matrix(3, (1, 3, 2))
PI123 = _perm_matrix(3, (2, 3, 1))
EPS1 = diag((-1, 1, 1))
EPS2 = diag((1, -1, 1))
EPS3 = diag((1, 1, -1))
D2 = Matrix.from_rows([[0, -1], [1, -1]])
PI12_2 = _perm_matrix(2, (2, 1))
EPS1_2 = diag((-1, 1))


def laderman_generators() -> dict:
    """Phi_1..Phi_4 of the Laderman algorithm, as T(a, b, c) o rho_sigma.

    Phi_3: x(x)y(x)z -> y^t eps2 (x) eps2 x^t (x) z^t   = T(1, eps2, 1) rho_(12)
    Phi_4: x(x)y(x)z -> eps1 z pi12 (x) pi12 x pi12 eps1 (x) eps1 pi12 y eps1
                                                       = T(eps1, pi12, eps1 pi12) rho_(123)
    """
    one = identity(3)
    return {
        "P1": make_T(PI23, PI13, one),
        "P2": make_T(PI23, one, PI23),
        "P3": make_element("(12)", one, EPS2, one),
        "P4": make_element("(123)", EPS1, PI12, EPS1 @ PI12),
    }


def hopcroft_generators() -> dict:
    """Phi_1..Phi_3 of the Hopcroft algorithm (format (3, 2, 3)).

    Phi_3: x(x)y(x)z -> y^t pi12 eps1 (x) eps1 pi12 x^t (x) z^t = T(1, eps1 pi12, 1) rho_(12),
    with pi12, eps1 the 2 x 2 versions.
    """
    one = identity(3)
    return {
        "P1": make_T(PI123, D2, PI123),
        "P2": make_T(PI13, PI12_2, PI13),
        "P3": make_element("(12)", one, EPS1_2 @ PI12_2, one),
    }


# Relations in w = 1 form, rightmost factor applied first.
LADERMAN_RELATIONS = (
    "P1^2",
    "P2^2",
    "P3^2",
    "P4^3",
    "P1 P2 P1^-1 P2^-1",
    "P3 P1 P3 P2^-1 P1^-1",
    "P3 P2 P3 P2^-1",
    "P4 P1 P4^-1 P2^-1 P1^-1",
    "P4 P2 P4^-1 P1^-1",
    "P3 P4 P3 P4",
)

HOPCROFT_RELATIONS = (
    "P1^3",
    "P2^2",
    "P3^2",
    "P2 P1 P2 P1",
    "P3 P1 P3^-1 P1^-1",
    "P3 P2 P3^-1 P2^-1",
)
