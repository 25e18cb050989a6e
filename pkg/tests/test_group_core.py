import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionring import CapExceeded, Permutation, compose, group_from_generators, named_group
from fusionring.group_core import (
    abelian_invariants,
    all_subgroups,
    centralizer,
    conjugacy_classes,
    conjugate_subgroup,
    double_cosets,
    intersect,
    invariants_from_orders,
    left_coset_representatives,
    normalizer,
)

from conftest import TEST_GROUPS, classes, group

# (order, number of subgroups, number of conjugacy classes of subgroups)
FROZEN = {
    "C1": (1, 1, 1),
    "C6": (6, 4, 4),
    "S3": (6, 6, 4),
    "C2xC2": (4, 5, 5),
    "D4": (8, 10, 8),
    "Q8": (8, 6, 6),
    "A4": (12, 10, 5),
    "D6": (12, 16, 10),
    "S4": (24, 30, 11),
}


def test_compose_convention():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    # (p o q)(i) = p(q(i))
    assert compose(p, q).images == (1, 2, 0)
    assert compose(p, q) == p * q
    assert str(compose(p, q)) == "(0,1,2)"


def test_identity_first_and_sorted():
    G = named_group("S3")
    assert G.element(0) == Permutation.identity(3)
    assert [G.element(i).images for i in range(G.order)] == sorted(itertools.permutations(range(3)))


@pytest.mark.parametrize("spec", list(FROZEN))
def test_frozen_counts(spec):
    G = group(spec)
    order, n_sub, n_cls = FROZEN[spec]
    assert G.order == order
    T = classes(spec)
    assert len(T) == n_cls
    assert sum(len(c.conjugates) for c in T) == n_sub
    assert T[T.trivial_index].order == 1 and T[T.whole_index].order == order


@pytest.mark.parametrize("spec", ["C6", "S3", "C2xC2", "D4", "Q8"])
def test_subgroups_against_subset_search(spec):
    G = group(spec)
    found = set()
    rest = range(1, G.order)
    for k in range(G.order):
        for combo in itertools.combinations(rest, k):
            S = {0, *combo}
            if all(G.mul(a, b) in S for a in S for b in S):
                found.add(frozenset(S))
    assert {frozenset(H.members) for H in all_subgroups(G)} == found


def test_named_orders():
    orders = {"C5": 5, "D1": 2, "D2": 4, "D5": 10, "S4": 24, "A5": 60, "Q8xC3": 24, "perm:4:(0,1,2,3);(0,2)": 8}
    for spec, n in orders.items():
        assert named_group(spec).order == n


def test_order_cap():
    with pytest.raises(CapExceeded):
        named_group("S6", order_cap=200)


@pytest.mark.parametrize("spec", TEST_GROUPS)
def test_cayley_is_group(spec):
    G = group(spec)
    t = G.cayley
    assert (t[0] == np.arange(G.order)).all() and (t[:, 0] == np.arange(G.order)).all()
    for row in t:
        assert sorted(row) == list(range(G.order))
    assert (t[np.arange(G.order), G.inverses] == 0).all()


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_associativity_and_conjugation(data):
    G = group(data.draw(st.sampled_from(["S3", "D4", "Q8", "A4"])))
    a, b, c = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    # x -> a x a^-1 is a left action
    assert G.conj(G.mul(a, b), c) == G.conj(a, G.conj(b, c))


@pytest.mark.parametrize("spec", TEST_GROUPS)
def test_double_cosets_partition(spec):
    G = group(spec)
    T = classes(spec)
    for ci, cj in itertools.product(T, repeat=2):
        H, K = ci.representative, cj.representative
        dcs = double_cosets(G, H, K)
        assert sum(d.size for d in dcs) == G.order
        for d in dcs:
            L = intersect(H, conjugate_subgroup(K, d.representative))
            assert d.size * L.order == H.order * K.order


def test_coset_normalizer_centralizer():
    G = group("S3")
    T = classes("S3")
    C2 = T[1].representative
    assert len(left_coset_representatives(G, C2)) == 3
    assert normalizer(G, C2) == C2
    assert normalizer(G, T[2].representative).order == 6
    assert centralizer(G.whole, 0).order == 6
    assert sorted(len(c) for c in conjugacy_classes(G.whole)) == [1, 2, 3]


def test_class_lookup_conjugator():
    T = classes("A4")
    for i, cls in enumerate(T):
        for P in cls.conjugates:
            j, a = T.locate(P)
            assert j == i
            assert conjugate_subgroup(cls.representative, a) == P


def test_invariants():
    assert abelian_invariants(group("C6").whole) == [6]
    assert abelian_invariants(named_group("C2xC4").whole) == [2, 4]
    assert invariants_from_orders([1, 2, 2, 2]) == [2, 2]
    assert invariants_from_orders([1, 3, 3, 3, 3, 3, 3, 3, 3]) == [3, 3]


def test_generators_generate():
    G = group("D6")
    for cls in classes("D6"):
        H = cls.representative
        K = group_from_generators(G.degree, [G.element(g) for g in H.generators])
        assert K.order == H.order


def test_labels():
    T = classes("D4")
    assert [c.label for c in T] == ["1#0", "C2#0", "C2#1", "C2#2", "C2xC2#0", "C2xC2#1", "C4#0", "D4#0"]
    assert T.short_label(T.whole_index) == "H8#0"
