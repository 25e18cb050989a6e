"""Second cohomology of a subgroup, with Z/m and k^x coefficients.

Normalized 2-cochains on ``H`` are vectors of the ``(|H|-1)^2`` values
``c(g, h)`` with ``g, h != e``.  With ``D1`` the coboundary C^1 -> C^2 and
``D2`` the coboundary C^2 -> C^3 of the normalized bar complex:

* cocycles mod ``M`` are the kernel of ``D2`` over Z/M, read off from a
  column-tracked Smith form ``U D2 V = diag(s)``: ``y = V^-1 x`` must have
  ``y_i`` divisible by ``M / gcd(s_i, M)``.  Those coordinates present
  ``Z^2(H, Z/M)`` as a product of cyclic groups.
* the trivial classes (coboundaries, or for k^x the classes that die in
  Q/Z) are mapped into those coordinates and quotiented out with one more
  Smith form.

A Z/M class dies in H^2(H, Q/Z) iff ``e*c`` is a coboundary over
``Z/(M e)``, ``e`` the exponent of ``H``: if ``c = d(beta)`` with ``beta``
Q/Z-valued then ``M beta`` is a homomorphism, so ``beta`` takes values in
``(1/Me)Z/Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .cocycle import Cochain2, CochainError, is_cocycle
from .group_core import CapExceeded, Subgroup
from .smith import smith_mod

DEFAULT_UNKNOWNS_CAP = 40_000
# The constraint matrix is dense int64; allow this many entries per unit of
# the unknowns cap (64M entries, about 0.5 GB, at the default).
DENSE_ENTRIES_PER_UNKNOWN = 1600


def check_cap(H: Subgroup, unknowns_cap: int):
    n2 = (H.order - 1) ** 2
    if n2 > unknowns_cap:
        raise CapExceeded(f"{n2} cochain unknowns for |H| = {H.order} exceeds cap {unknowns_cap}")
    entries = len(H.generators) * n2 * n2
    if entries > unknowns_cap * DENSE_ENTRIES_PER_UNKNOWN:
        raise CapExceeded(
            f"dense cocycle system for |H| = {H.order} has {entries} entries, over the "
            f"{unknowns_cap * DENSE_ENTRIES_PER_UNKNOWN} allowed by --unknowns-cap {unknowns_cap}"
        )


def coboundary_matrix_1(H: Subgroup) -> np.ndarray:
    """``D1``: rows (g, h) in nonidentity^2, columns f(x) for x != e."""
    n = H.order
    t = H.table
    k = n - 1
    D = np.zeros((k * k, k), dtype=np.int64)
    g, h = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    g, h = g.ravel(), h.ravel()
    row = np.arange(k * k)
    np.add.at(D, (row, g - 1), 1)
    np.add.at(D, (row, h - 1), 1)
    gh = t[g, h]
    keep = gh != 0
    np.add.at(D, (row[keep], gh[keep] - 1), -1)
    return D


def coboundary_matrix_2(H: Subgroup, last: Sequence[int] | None = None) -> np.ndarray:
    """``D2``: rows (g, h, k), columns c(x, y) for x, y != e.

    By default every nonidentity triple gives a row.  ``last`` restricts the
    third entry ``k`` to the given local positions; when those generate
    ``H`` the kernel is unchanged, because for normalized ``c``

        dc(g, h, k1 k2) = dc(h, k1, k2) - dc(gh, k1, k2) + dc(g, h k1, k2) + dc(g, h, k1)

    so vanishing for ``k2`` in a generating set propagates to all ``k``.
    """
    n = H.order
    t = H.table
    k = n - 1
    third = np.arange(1, n) if last is None else np.asarray(last, dtype=np.int64)
    if k == 0 or len(third) == 0:
        return np.zeros((0, k * k), dtype=np.int64)
    a, b, c = np.meshgrid(np.arange(1, n), np.arange(1, n), third, indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    D = np.zeros((len(a), k * k), dtype=np.int64)
    row = np.arange(len(a))

    def term(x, y, sign):
        keep = (x != 0) & (y != 0)
        np.add.at(D, (row[keep], (x[keep] - 1) * k + (y[keep] - 1)), sign)

    term(b, c, 1)
    term(t[a, b], c, -1)
    term(a, t[b, c], 1)
    term(a, b, -1)
    return D


def cocycle_constraints(H: Subgroup) -> np.ndarray:
    """Rows of ``D2`` whose last entry runs over a generating set of ``H``."""
    return coboundary_matrix_2(H, H.position[list(H.generators)])


def _vector(c: Cochain2) -> np.ndarray:
    return c.values[1:, 1:].ravel()


def _cochain(H: Subgroup, modulus: int, x: np.ndarray) -> Cochain2:
    n = H.order
    v = np.zeros((n, n), dtype=np.int64)
    v[1:, 1:] = np.asarray(x, dtype=np.int64).reshape(n - 1, n - 1)
    return Cochain2(H, modulus, v)


@dataclass
class CoordinateData:
    """Linear maps taking a cocycle vector to its class coordinates.

    ``z = (kernel_rows @ x mod M) / steps`` are coordinates in Z^2(H, Z/M)
    (mod ``kernel_orders``); ``(quotient_rows @ z) mod factors`` are the
    class coordinates.
    """

    kernel_rows: np.ndarray  # |J| x n2, mod M
    steps: np.ndarray  # |J|, M / kernel_orders
    kernel_orders: np.ndarray  # |J|
    quotient_rows: np.ndarray  # r x |J|, mod M

    def to_json(self) -> dict:
        return {
            "kernel_rows": self.kernel_rows.tolist(),
            "steps": self.steps.tolist(),
            "kernel_orders": self.kernel_orders.tolist(),
            "quotient_rows": self.quotient_rows.tolist(),
        }

    @classmethod
    def from_json(cls, d: dict, n2: int, r: int) -> CoordinateData:
        J = len(d["steps"])
        return cls(
            np.array(d["kernel_rows"], dtype=np.int64).reshape(J, n2),
            np.array(d["steps"], dtype=np.int64),
            np.array(d["kernel_orders"], dtype=np.int64),
            np.array(d["quotient_rows"], dtype=np.int64).reshape(r, J),
        )


@dataclass
class H2Group:
    """``H^2(H, A)`` as ``prod Z/d_i`` with generator cocycles mod ``modulus``.

    ``coefficients`` is ``"k^x"`` for :func:`h2_units` and ``"Z/m"`` for
    :func:`h2_mod_m`.
    """

    subgroup: Subgroup
    modulus: int
    coefficients: str
    invariant_factors: tuple[int, ...]
    generators: tuple[Cochain2, ...]
    coordinate_data: CoordinateData

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def elements(self) -> list[tuple[int, ...]]:
        """All coordinate tuples, in lexicographic order."""
        out: list[tuple[int, ...]] = [()]
        for d in self.invariant_factors:
            out = [t + (i,) for t in out for i in range(d)]
        return out

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def reduce(self, coords) -> tuple[int, ...]:
        return tuple(int(c) % d for c, d in zip(coords, self.invariant_factors))

    def to_json(self) -> dict:
        return {
            "members": list(self.subgroup.members),
            "modulus": self.modulus,
            "coefficients": self.coefficients,
            "invariant_factors": list(self.invariant_factors),
            "generators": [_vector(g).tolist() for g in self.generators],
            "coordinate_data": self.coordinate_data.to_json(),
        }

    @classmethod
    def from_json(cls, H: Subgroup, d: dict) -> H2Group:
        if list(H.members) != d["members"]:
            raise ValueError("cached entry belongs to a different subgroup")
        n2 = (H.order - 1) ** 2
        r = len(d["invariant_factors"])
        return cls(
            H,
            d["modulus"],
            d["coefficients"],
            tuple(d["invariant_factors"]),
            tuple(_cochain(H, d["modulus"], np.array(g, dtype=np.int64)) for g in d["generators"]),
            CoordinateData.from_json(d["coordinate_data"], n2, r),
        )


def _kernel(H: Subgroup, M: int):
    """Column-tracked Smith data presenting ``Z^2(H, Z/M)``."""
    n2 = (H.order - 1) ** 2
    sf = smith_mod(cocycle_constraints(H), M, cols=True)
    diag = sf.diag + [M] * (n2 - len(sf.diag))
    orders = np.array([gcd(s, M) for s in diag], dtype=np.int64)
    J = np.nonzero(orders > 1)[0]
    return sf.V[:, J], sf.V_inv[J], (M // orders[J]), orders[J]


def _kernel_coords(rows, steps, M, x) -> np.ndarray:
    y = (rows @ (np.asarray(x) % M)) % M
    if (y % steps).any():
        raise CochainError("vector is not a cocycle")
    return y // steps


def _quotient(H: Subgroup, M: int, trivial: np.ndarray, coefficients: str) -> H2Group:
    V_J, Vi_J, steps, orders = _kernel(H, M)
    nJ = len(orders)
    if nJ == 0:
        return H2Group(
            H, M, coefficients, (), (),
            CoordinateData(Vi_J, steps, orders, np.zeros((0, 0), dtype=np.int64)),
        )
    Z = np.stack([_kernel_coords(Vi_J, steps, M, col) for col in trivial.T], axis=1) \
        if trivial.shape[1] else np.zeros((nJ, 0), dtype=np.int64)
    relations = np.concatenate([np.diag(orders), Z], axis=1)
    sf = smith_mod(relations, M, rows=True)
    factors = [gcd(d, M) for d in sf.diag]
    keep = [i for i, d in enumerate(factors) if d > 1]
    gens = []
    for i in keep:
        z = sf.U_inv[:, i] % M
        x = (V_J @ (steps * z)) % M
        gens.append(_cochain(H, M, x))
    return H2Group(
        H, M, coefficients,
        tuple(factors[i] for i in keep),
        tuple(gens),
        CoordinateData(Vi_J, steps, orders, sf.U[keep]),
    )


def h2_mod_m(H: Subgroup, m: int, unknowns_cap: int = DEFAULT_UNKNOWNS_CAP) -> H2Group:
    """``H^2(H, Z/m) = Z^2 / B^2`` via the normalized bar complex."""
    if m < 1:
        raise ValueError("modulus must be positive")
    check_cap(H, unknowns_cap)
    return _quotient(H, m, coboundary_matrix_1(H) % m, "Z/m")


def _stably_trivial(H: Subgroup, M: int) -> np.ndarray:
    """Generators (columns) of ``{x mod M : e*x is a coboundary mod M*e}``."""
    e = H.exponent
    n2 = (H.order - 1) ** 2
    sf = smith_mod(coboundary_matrix_1(H), M * e, rows=True)
    diag = sf.diag + [M * e] * (n2 - len(sf.diag))
    cols = []
    for i, lam in enumerate(diag):
        step = lam // gcd(lam, e)
        if step % M:
            cols.append(sf.U_inv[:, i] * step % M)
    return np.stack(cols, axis=1) if cols else np.zeros((n2, 0), dtype=np.int64)


def h2_units(H: Subgroup, M: int | None = None, unknowns_cap: int = DEFAULT_UNKNOWNS_CAP) -> H2Group:
    """``H^2(H, k^x)`` computed inside ``H^2(H, Z/M)``; ``|H|`` must divide ``M``."""
    M = H.group.order if M is None else M
    if M % H.order:
        raise ValueError(f"|H| = {H.order} does not divide modulus {M}")
    check_cap(H, unknowns_cap)
    return _quotient(H, M, _stably_trivial(H, M), "k^x")


def class_coordinates(h2: H2Group, c: Cochain2, check: bool = True) -> tuple[int, ...]:
    if c.subgroup != h2.subgroup or c.modulus != h2.modulus:
        raise CochainError("cocycle does not match this cohomology group")
    if check and not is_cocycle(c):
        raise CochainError("not a cocycle")
    cd = h2.coordinate_data
    if not h2.invariant_factors:
        return ()
    z = _kernel_coords(cd.kernel_rows, cd.steps, h2.modulus, _vector(c))
    w = (cd.quotient_rows @ z) % h2.modulus
    return tuple(int(a) % d for a, d in zip(w, h2.invariant_factors))


def representative(h2: H2Group, coords) -> Cochain2:
    coords = tuple(coords)
    if len(coords) != h2.rank:
        raise ValueError(f"expected {h2.rank} coordinates, got {len(coords)}")
    total = Cochain2.zero(h2.subgroup, h2.modulus).values.copy()
    for k, g in zip(coords, h2.generators):
        total += int(k) * g.values
    return Cochain2(h2.subgroup, h2.modulus, total)
