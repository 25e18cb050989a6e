import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionring.cocycle import (
    Cochain1,
    Cochain2,
    CochainError,
    coboundary,
    conjugate_cocycle,
    is_cocycle,
    restrict,
    scale,
    transport_1cochain,
)
from fusionring.group_core import conjugate_subgroup

from conftest import classes, group


def test_normalization_enforced():
    H = group("C2xC2").whole
    v = np.zeros((4, 4), dtype=np.int64)
    v[0, 1] = 1
    with pytest.raises(CochainError):
        Cochain2(H, 4, v)


def test_call_uses_global_indices():
    G = group("S3")
    H = classes("S3")[2].representative  # C3
    rng = np.random.default_rng(3)
    f = Cochain1.random(H, 6, rng)
    c = coboundary(f)
    g, h = H.members[1], H.members[2]
    assert c(g, h) == (f.values[1] + f.values[2] - f.values[H.position[G.mul(g, h)]]) % 6


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4"]), st.integers(0, 2 ** 32 - 1))
def test_coboundaries_are_cocycles(spec, seed):
    rng = np.random.default_rng(seed)
    H = group(spec).whole
    f = Cochain1.random(H, group(spec).order, rng)
    assert is_cocycle(coboundary(f))


def test_random_cochain_usually_not_cocycle():
    H = group("D4").whole
    v = np.random.default_rng(0).integers(0, 8, (8, 8))
    v[0, :] = v[:, 0] = 0
    assert not is_cocycle(Cochain2(H, 8, v))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_conjugation_and_restriction_commute_with_d(seed):
    rng = np.random.default_rng(seed)
    G = group("A4")
    K = classes("A4")[3].representative  # Klein four
    a = int(rng.integers(G.order))
    f = Cochain1.random(K, 12, rng)
    assert conjugate_cocycle(coboundary(f), a) == coboundary(transport_1cochain(f, a))
    L = next(P for P in classes("A4")[1].conjugates if P <= K)
    assert restrict(coboundary(f), L) == coboundary(Cochain1(L, 12, f.values[K.position[L.array]]))
    assert conjugate_cocycle(coboundary(f), a).subgroup == conjugate_subgroup(K, a)


def test_conjugation_is_action():
    G = group("D4")
    H = G.whole
    f = Cochain1.random(H, 8, np.random.default_rng(5))
    c = coboundary(f) + scale(coboundary(f), 3)
    for a in range(G.order):
        for b in range(G.order):
            assert conjugate_cocycle(conjugate_cocycle(c, b), a) == conjugate_cocycle(c, G.mul(a, b))


def test_json_round_trip():
    G = group("Q8")
    c = coboundary(Cochain1.random(G.whole, 8, np.random.default_rng(1)))
    assert Cochain2.from_json(G, c.to_json()) == c


def test_mismatched_moduli():
    H = group("C6").whole
    with pytest.raises(CochainError):
        Cochain2.zero(H, 6) + Cochain2.zero(H, 3)
