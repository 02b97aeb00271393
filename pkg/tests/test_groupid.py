import itertools
import random

import pytest
from hypothesis import given, strategies as st

from mmsym.catalog import hopcroft_generators, laderman_generators
from mmsym.groupid import KNOWN_GROUPS, GroupFingerprint, fingerprint, identify, reference_table
from mmsym.symmetry import ContractViolation, group_closure, identity_element


# -- reference constructions, as permutation groups or products ------------------------

def pmul(p, q):
    return tuple(p[i] for i in q)


def perm_group(gens):
    n = len(gens[0])
    seen = {tuple(range(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def direct(ga, gb, ma, mb):
    return [(a, b) for a in ga for b in gb], lambda x, y: (ma(x[0], y[0]), mb(x[1], y[1]))


def cyclic(n):
    return list(range(n)), lambda a, b: (a + b) % n


def quaternion():
    # unit quaternions +-1, +-i, +-j, +-k as (sign, axis)
    table = {("1", "1"): (1, "1")}
    for ax in "ijk":
        table[("1", ax)] = (1, ax)
        table[(ax, "1")] = (1, ax)
        table[(ax, ax)] = (-1, "1")
    for a, b, c in (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j")):
        table[(a, b)] = (1, c)
        table[(b, a)] = (-1, c)

    def mul(x, y):
        s, ax = table[(x[1], y[1])]
        return (x[0] * y[0] * s, ax)

    return [(s, ax) for s in (1, -1) for ax in "1ijk"], mul


S3 = perm_group([(1, 0, 2), (1, 2, 0)])
REFERENCE = {
    "Z2xZ2": direct(*cyclic(2)[:1], *cyclic(2)[:1], cyclic(2)[1], cyclic(2)[1]),
    "S3": (S3, pmul),
    "D4": (perm_group([(1, 2, 3, 0), (3, 2, 1, 0)]), pmul),
    "Q8": quaternion(),
    "A4": (perm_group([(1, 2, 0, 3), (1, 0, 3, 2)]), pmul),
    "S3xZ2": direct(S3, cyclic(2)[0], pmul, cyclic(2)[1]),
    "S4": (perm_group([(1, 0, 2, 3), (1, 2, 3, 0)]), pmul),
    "S3xS3": direct(S3, S3, pmul, pmul),
}


@pytest.mark.parametrize("name", sorted(KNOWN_GROUPS))
def test_table_matches_construction(name):
    elems, mul = REFERENCE[name]
    fp = fingerprint(elems, mul)
    assert fp == KNOWN_GROUPS[name]
    assert identify(fp) == name


@pytest.mark.parametrize("n", range(2, 37))
def test_cyclic_entries(n):
    fp = fingerprint(*cyclic(n))
    assert fp == reference_table()[f"Z{n}"]
    assert identify(fp) == f"Z{n}"


def test_dihedral_d6_is_s3xz2():
    d6 = perm_group([(1, 2, 3, 4, 5, 0), (5, 4, 3, 2, 1, 0)])
    assert identify(fingerprint(d6, pmul)) == "S3xZ2"


def test_table_is_separating():
    keys = [fp.key() for fp in reference_table().values()]
    assert len(keys) == len(set(keys))


def test_symmetry_groups():
    lad = fingerprint(group_closure(laderman_generators().values()))
    assert lad == GroupFingerprint(24, {1: 1, 2: 9, 3: 8, 4: 6}, False, 1)
    assert identify(lad) == "S4"
    hop = fingerprint(group_closure(hopcroft_generators().values()))
    assert hop == GroupFingerprint(12, {1: 1, 2: 7, 3: 2, 6: 2}, False, 2)
    assert identify(hop) == "S3xZ2"
    triv = fingerprint([identity_element((2, 2, 2))])
    assert triv == GroupFingerprint(1, {1: 1}, True, 1) and identify(triv) == "trivial"


def test_a4_histogram():
    assert identify(GroupFingerprint(12, {1: 1, 2: 3, 3: 8}, False, 1)) == "A4"


def test_unrecognized_and_ambiguous():
    z2z4 = direct(*cyclic(2)[:1], *cyclic(4)[:1], cyclic(2)[1], cyclic(4)[1])
    assert identify(fingerprint(*z2z4)) == "unrecognized"
    assert identify(GroupFingerprint(48, {1: 1, 2: 47}, True, 48)) == "unrecognized"


def test_not_closed():
    g = laderman_generators()["P4"]
    with pytest.raises(ContractViolation):
        fingerprint([identity_element((3, 3, 3)), g])
    with pytest.raises(ContractViolation):
        fingerprint([0, 1], lambda a, b: (a + b) % 3)


def test_invalid_fingerprint():
    with pytest.raises(ValueError):
        GroupFingerprint(4, {1: 1, 2: 2}, True, 4)
    with pytest.raises(ValueError):
        GroupFingerprint(6, {1: 1, 2: 3, 3: 2}, False, 4)


@given(st.randoms(use_true_random=False))
def test_relabel_invariance(r):
    elems, mul = REFERENCE["S4"]
    shuffled = list(elems)
    r.shuffle(shuffled)
    assert fingerprint(shuffled, mul) == fingerprint(elems, mul)


def test_relabel_invariance_concrete():
    G = group_closure(hopcroft_generators().values())
    shuffled = list(G)
    random.Random(3).shuffle(shuffled)
    assert fingerprint(shuffled) == fingerprint(G)
