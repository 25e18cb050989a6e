"""Smith normal form over Z/m.

For an integer matrix ``A`` and modulus ``m >= 1`` this computes
``U A V = D (mod m)`` with ``U, V`` invertible mod ``m`` and ``D`` diagonal,
each diagonal entry a divisor of ``m`` and ``D[i] | D[i+1]``.  This is the
same data as the integer Smith form of ``[A | m*I]``: zero divisors of a
composite modulus are handled by always normalising a pivot to
``gcd(pivot, m)`` and combining rows/columns with 2x2 extended-gcd moves.

Pivoting is deterministic: the entry of smallest ``gcd(entry, m)`` in the
current column (first such row), or, if that column is zero, in the
remaining block scanned row-major.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def unit_normalizer(a: int, m: int) -> int:
    """A unit ``u`` mod ``m`` with ``u*a = gcd(a, m) (mod m)``."""
    g = gcd(a, m)
    n = m // g
    if n == 1:
        return 1
    u = pow((a // g) % n, -1, n)
    while gcd(u, m) != 1:
        u += n
    return u % m


@dataclass
class SmithForm:
    """Result of :func:`smith_mod`.

    ``diag`` has length ``min(rows, cols)``; an entry of ``m`` stands for
    zero.  Transforms are ``None`` unless requested.
    """

    modulus: int
    diag: list[int]
    U: np.ndarray | None = None
    U_inv: np.ndarray | None = None
    V: np.ndarray | None = None
    V_inv: np.ndarray | None = None


def smith_mod(A, m: int, rows: bool = False, cols: bool = False) -> SmithForm:
    """Smith normal form of ``A`` over ``Z/m``; optionally track transforms."""
    if m < 1:
        raise ValueError("modulus must be positive")
    A = np.array(A, dtype=np.int64) % m
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nr, nc = A.shape
    U = np.eye(nr, dtype=np.int64) if rows else None
    Ui = np.eye(nr, dtype=np.int64) if rows else None
    V = np.eye(nc, dtype=np.int64) if cols else None
    Vi = np.eye(nc, dtype=np.int64) if cols else None

    # Row ops act on A and U from the left; the inverse update on U_inv is the
    # matching column op.  Column ops mirror this for V, V_inv.
    def swap_rows(i, j):
        A[[i, j]] = A[[j, i]]
        if rows:
            U[[i, j]] = U[[j, i]]
            Ui[:, [i, j]] = Ui[:, [j, i]]

    def swap_cols(i, j):
        A[:, [i, j]] = A[:, [j, i]]
        if cols:
            V[:, [i, j]] = V[:, [j, i]]
            Vi[[i, j]] = Vi[[j, i]]

    def scale_row(i, u):
        A[i] = A[i] * u % m
        if rows:
            U[i] = U[i] * u % m
            Ui[:, i] = Ui[:, i] * pow(u, -1, m) % m

    def scale_col(j, u):
        A[:, j] = A[:, j] * u % m
        if cols:
            V[:, j] = V[:, j] * u % m
            Vi[j] = Vi[j] * pow(u, -1, m) % m

    def combine_rows(i, j, a, b, c, d):
        # [row_i; row_j] <- [[a, b], [c, d]] [row_i; row_j], det = 1
        ri, rj = A[i].copy(), A[j].copy()
        A[i] = (a * ri + b * rj) % m
        A[j] = (c * ri + d * rj) % m
        if rows:
            ui, uj = U[i].copy(), U[j].copy()
            U[i] = (a * ui + b * uj) % m
            U[j] = (c * ui + d * uj) % m
            ci, cj = Ui[:, i].copy(), Ui[:, j].copy()
            Ui[:, i] = (d * ci - c * cj) % m
            Ui[:, j] = (-b * ci + a * cj) % m

    def combine_cols(i, j, a, b, c, d):
        # [col_i, col_j] <- [col_i, col_j] [[a, c], [b, d]], det = 1
        ci, cj = A[:, i].copy(), A[:, j].copy()
        A[:, i] = (a * ci + b * cj) % m
        A[:, j] = (c * ci + d * cj) % m
        if cols:
            vi, vj = V[:, i].copy(), V[:, j].copy()
            V[:, i] = (a * vi + b * vj) % m
            V[:, j] = (c * vi + d * vj) % m
            ri, rj = Vi[i].copy(), Vi[j].copy()
            Vi[i] = (d * ri - c * rj) % m
            Vi[j] = (-b * ri + a * rj) % m

    def eliminate_rows(t, targets):
        # pivot p = A[t, t] divides every A[targets, t]
        p = int(A[t, t])
        q = (A[targets, t] // p) % m
        A[targets] = (A[targets] - q[:, None] * A[t][None, :]) % m
        if rows:
            U[targets] = (U[targets] - q[:, None] * U[t][None, :]) % m
            Ui[:, t] = (Ui[:, t] + Ui[:, targets] @ q) % m

    def eliminate_cols(t, targets):
        p = int(A[t, t])
        q = (A[t, targets] // p) % m
        A[:, targets] = (A[:, targets] - A[:, t][:, None] * q[None, :]) % m
        if cols:
            V[:, targets] = (V[:, targets] - V[:, t][:, None] * q[None, :]) % m
            Vi[t] = (Vi[t] + q @ Vi[targets]) % m

    def normalize(t):
        u = unit_normalizer(int(A[t, t]), m)
        if u != 1:
            scale_row(t, u)

    diag: list[int] = []
    for t in range(min(nr, nc)):
        col = A[t:, t]
        if col.any():
            g = np.gcd(col, m)
            g[col == 0] = m + 1
            i, j = int(np.argmin(g)), 0
        else:
            sub = A[t:, t:]
            if not sub.any():
                diag.extend([m] * (min(nr, nc) - t))
                break
            g = np.gcd(sub, m)
            g[sub == 0] = m + 1
            i, j = np.unravel_index(int(np.argmin(g)), g.shape)
        if i:
            swap_rows(t, t + i)
        if j:
            swap_cols(t, t + j)
        normalize(t)
        while True:
            p = int(A[t, t])
            col = A[t + 1:, t]
            bad = np.nonzero(col % p)[0]
            for k in bad:
                r = t + 1 + int(k)
                a = int(A[r, t])
                h, x, y = xgcd(p, a)
                combine_rows(t, r, x, y, -a // h, p // h)
                normalize(t)
                p = int(A[t, t])
            targets = t + 1 + np.nonzero(A[t + 1:, t])[0]
            if len(targets):
                eliminate_rows(t, targets)
            row = A[t, t + 1:]
            bad = np.nonzero(row % p)[0]
            for k in bad:
                c = t + 1 + int(k)
                a = int(A[t, c])
                h, x, y = xgcd(p, a)
                combine_cols(t, c, x, y, -a // h, p // h)
                normalize(t)
                p = int(A[t, t])
            targets = t + 1 + np.nonzero(A[t, t + 1:])[0]
            if len(targets):
                eliminate_cols(t, targets)
            if A[t + 1:, t].any():
                continue
            if p == 1:
                break
            rest = A[t + 1:, t + 1:]
            offenders = np.argwhere(rest % p)
            if len(offenders) == 0:
                break
            # pull a non-divisible row into the pivot row; column pass fixes it
            r = t + 1 + int(offenders[0][0])
            combine_rows(t, r, 1, 1, 0, 1)
        diag.append(int(A[t, t]) or m)

    return SmithForm(m, diag, U, Ui, V, Vi)


def invariant_factors(diag: list[int], m: int) -> list[int]:
    """Nontrivial cyclic orders ``gcd(d, m)`` of ``(Z/m)^k / D``, ascending."""
    return [gcd(d, m) for d in diag if gcd(d, m) > 1]
