from math import gcd

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from fusionring.smith import invariant_factors, smith_mod, unit_normalizer, xgcd


def sympy_factors(A, m):
    """Invariant factors of coker(A) over Z/m via the integer Smith form of [A | m I]."""
    A = np.asarray(A)
    big = Matrix(np.hstack([A, m * np.eye(A.shape[0], dtype=np.int64)]).tolist())
    D = smith_normal_form(big, domain=ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    return [d for d in diag if d not in (0, 1)]


matrices = st.tuples(st.integers(1, 5), st.integers(1, 5), st.sampled_from([2, 4, 6, 8, 12, 9, 30])).flatmap(
    lambda t: st.tuples(
        st.lists(st.lists(st.integers(-40, 40), min_size=t[1], max_size=t[1]), min_size=t[0], max_size=t[0]),
        st.just(t[2]),
    )
)


def test_xgcd_and_unit():
    assert xgcd(12, 18)[0] == 6
    g, x, y = xgcd(-35, 21)
    assert g == 7 and -35 * x + 21 * y == 7
    for m in (4, 6, 12, 30):
        for a in range(m):
            u = unit_normalizer(a, m)
            assert gcd(u, m) == 1 and (u * a) % m == gcd(a, m) % m


def test_known_example():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    # over Z the Smith form is diag(2, 6, 12)
    assert invariant_factors(smith_mod(A, 24).diag, 24) == [2, 6, 12]
    assert invariant_factors(smith_mod(A, 4).diag, 4) == [2, 2, 4]
    assert sympy_factors(A, 24) == [2, 6, 12]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_matches_sympy(case):
    A, m = case
    A = np.array(A, dtype=np.int64)
    S = smith_mod(A, m, rows=True, cols=True)
    padded = S.diag + [m] * (A.shape[0] - len(S.diag))
    # cokernel of A mod m is prod Z/gcd(d, m) plus zero rows contributing Z/m
    assert sorted(invariant_factors(padded, m)) == sympy_factors(A, m)
    D = np.zeros_like(A)
    for i, d in enumerate(S.diag):
        D[i, i] = d % m
    assert ((S.U @ (A % m) @ S.V - D) % m == 0).all()
    n, k = A.shape
    assert ((S.U @ S.U_inv) % m == np.eye(n, dtype=np.int64)).all()
    assert ((S.V @ S.V_inv) % m == np.eye(k, dtype=np.int64)).all()
    chain = [gcd(d, m) for d in S.diag]
    assert all(b % a == 0 for a, b in zip(chain, chain[1:]))
