import itertools

import numpy as np
import pytest

from fusionring.cocycle import Cochain1, coboundary, conjugate_cocycle
from fusionring.group_core import conjugacy_classes
from fusionring.twisted_fusion import FusionBasisKey, TwistedBurnsideRing, regular_class_count

from conftest import TEST_GROUPS, group, ring

# |basis| of the twisted Burnside ring, frozen
BASIS_SIZE = {"C6": 4, "S3": 4, "C2xC2": 6, "D4": 11, "Q8": 6, "A4": 7, "D6": 12}
# projective rank of <G, mu> for the nonzero Schur class of G
TOP_TWISTED_RANK = {"C2xC2": 1, "D4": 2, "A4": 3, "D6": 3}


@pytest.mark.parametrize("spec", TEST_GROUPS)
def test_basis_size(spec):
    R = ring(spec)
    assert len(R.basis()) == BASIS_SIZE[spec]
    assert R.basis() == sorted(R.basis())


@pytest.mark.parametrize("spec", list(TOP_TWISTED_RANK))
def test_top_twisted_rank(spec):
    R = ring(spec)
    top = R.classes.whole_index
    assert R.projective_rank(FusionBasisKey(top, (1,))) == TOP_TWISTED_RANK[spec]


def test_c2xc2_table():
    R = ring("C2xC2")
    labels = [R.label(k) for k in R.basis()]
    assert labels == ["H1#0[]", "H2#0[]", "H2#1[]", "H2#2[]", "H4#0[0]", "H4#0[1]"]
    mu = R.parse_label("H4#0[1]")
    assert R(mu) * R(mu) == R.one
    c2 = R.parse_label("H2#0[]")
    # restricting the nontrivial class to a cyclic subgroup kills it
    assert R(mu) * R(c2) == R(c2)
    assert R(c2) * R(c2) == 2 * R(c2)
    with pytest.raises(KeyError):
        R.parse_label("H4#0[2]")


@pytest.mark.parametrize("spec", ["C2xC2", "D4", "Q8"])
def test_axioms(spec):
    R = ring(spec)
    B = R.basis()
    for x, y in itertools.combinations(B, 2):
        assert R.basis_product(x, y) == R.basis_product(y, x)
    for x, y, z in itertools.product(B, repeat=3):
        assert (R(x) * R(y)) * R(z) == R(x) * (R(y) * R(z))
    for x in B:
        assert R(x) * R.one == R(x)


@pytest.mark.parametrize("spec", TEST_GROUPS)
def test_forget_twist_is_ring_map(spec):
    R = ring(spec)
    for x, y in itertools.product(R.basis(), repeat=2):
        assert R.forget_twist(R(x) * R(y)) == R.forget_twist(R(x)) * R.forget_twist(R(y))


@pytest.mark.parametrize("spec", TEST_GROUPS)
def test_random_representatives(spec):
    R = ring(spec)
    rng = np.random.default_rng(7)
    B = R.basis()
    for _ in range(30):
        x, y = B[rng.integers(len(B))], B[rng.integers(len(B))]
        assert R.basis_product(x, y, rng=rng) == R.basis_product(x, y)


def test_canonicalize_moves_conjugates():
    R = ring("D4")
    G = R.group
    rng = np.random.default_rng(2)
    for key in R.basis():
        H = R.classes[key.subgroup_class].representative
        c = R.cocycle(key)
        for a in range(G.order):
            moved = conjugate_cocycle(c + coboundary(Cochain1.random(H, R.modulus, rng)), a)
            assert R.canonicalize(moved.subgroup, moved) == key


def test_regular_classes_untwisted():
    for spec in TEST_GROUPS:
        R = ring(spec)
        for i, cls in enumerate(R.classes):
            zero = R.cocycle(FusionBasisKey(i, R.h2(i).zero()))
            assert regular_class_count(zero) == len(conjugacy_classes(cls.representative))


@pytest.mark.parametrize("spec,factors", [("C2xC2", [2]), ("S3", []), ("D4", [2]), ("Q8", []), ("A4", [2]),
                                          ("D6", [2]), ("C6", [])])
def test_invertibles(spec, factors):
    rep = ring(spec).invertibles()
    assert rep.matches
    assert rep.invariant_factors == factors


def test_cap():
    from fusionring import CapExceeded
    with pytest.raises(CapExceeded):
        TwistedBurnsideRing(group("D6"), order_cap=10)


def test_other_ring_rejected():
    a, b = ring("S3"), ring("C6")
    with pytest.raises(ValueError):
        a.product(a.one, b.one)
