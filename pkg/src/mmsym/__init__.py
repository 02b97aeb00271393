"""Exact verification and symmetry analysis of bilinear matrix multiplication algorithms."""

from .algebra import (
    BilinearAlgorithm,
    Triple,
    brent_check,
    fine_factorization,
    mmp_tensor,
    naive,
    parse_algorithm,
    serialize_algorithm,
    tensor_sum_check,
    triple_type,
    type_census,
)
from .catalog import builtin, hopcroft, laderman, strassen
from .engine import OpCount, exponent_estimate, multiply_once, multiply_recursive
from .groupid import GroupFingerprint, fingerprint, identify
from .search import search_automorphisms
from .symmetry import (
    IsotropyElement,
    apply_to_triple,
    check_relations,
    compose,
    group_closure,
    inverse,
    is_automorphism,
    make_element,
    make_rho,
    make_T,
    orbits,
)

__version__ = "0.1.0"
