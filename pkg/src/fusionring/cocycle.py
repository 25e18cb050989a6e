"""Normalized Z/m-valued 1- and 2-cochains on a subgroup.

A k^x-valued cocycle is written additively: the residue ``c`` stands for
``exp(2 pi i c / m)``.  Values are dense arrays indexed by local positions of
the subgroup's (sorted) member list; position 0 is always the identity.
"""

from __future__ import annotations

import numpy as np

from .group_core import Subgroup, conjugate_subgroup


class CochainError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Cochain1:
    __slots__ = ("subgroup", "modulus", "values")

    def __init__(self, subgroup: Subgroup, modulus: int, values):
        v = np.asarray(values, dtype=np.int64) % modulus
        if v.shape != (subgroup.order,):
            raise CochainError(f"expected {subgroup.order} values, got shape {v.shape}")
        if v[0]:
            raise CochainError("1-cochain must vanish at the identity")
        self.subgroup = subgroup
        self.modulus = modulus
        self.values = _frozen(v)

    @classmethod
    def random(cls, subgroup: Subgroup, modulus: int, rng: np.random.Generator) -> Cochain1:
        v = rng.integers(0, modulus, subgroup.order)
        v[0] = 0
        return cls(subgroup, modulus, v)


class Cochain2:
    """A normalized 2-cochain: ``values[i, j]`` is ``c(h_i, h_j)`` mod ``modulus``."""

    __slots__ = ("subgroup", "modulus", "values")

    def __init__(self, subgroup: Subgroup, modulus: int, values):
        if modulus < 1:
            raise CochainError("modulus must be positive")
        v = np.asarray(values, dtype=np.int64) % modulus
        n = subgroup.order
        if v.shape != (n, n):
            raise CochainError(f"expected {n}x{n} values, got shape {v.shape}")
        if v[0].any() or v[:, 0].any():
            raise CochainError("2-cochain is not normalized")
        self.subgroup = subgroup
        self.modulus = modulus
        self.values = _frozen(v)

    @classmethod
    def zero(cls, subgroup: Subgroup, modulus: int) -> Cochain2:
        n = subgroup.order
        return cls(subgroup, modulus, np.zeros((n, n), dtype=np.int64))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain2)
            and other.subgroup == self.subgroup
            and other.modulus == self.modulus
            and np.array_equal(other.values, self.values)
        )

    def __hash__(self):
        return hash((self.subgroup.mask, self.modulus, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"Cochain2(order={self.subgroup.order}, modulus={self.modulus})"

    def __call__(self, g: int, h: int) -> int:
        """Value at global element indices ``g, h``."""
        pos = self.subgroup.position
        return int(self.values[pos[g], pos[h]])

    def __add__(self, other: Cochain2) -> Cochain2:
        return add(self, other)

    def __neg__(self) -> Cochain2:
        return negate(self)

    def __sub__(self, other: Cochain2) -> Cochain2:
        return add(self, negate(other))

    def is_zero(self) -> bool:
        return not self.values.any()

    def to_json(self) -> dict:
        return {
            "members": list(self.subgroup.members),
            "modulus": self.modulus,
            "values": self.values.ravel().tolist(),
        }

    @classmethod
    def from_json(cls, group, data: dict) -> Cochain2:
        H = Subgroup(group, data["members"])
        n = H.order
        return cls(H, data["modulus"], np.array(data["values"], dtype=np.int64).reshape(n, n))


def _same(c1: Cochain2, c2: Cochain2):
    if c1.subgroup != c2.subgroup or c1.modulus != c2.modulus:
        raise CochainError("cochains live on different subgroups or moduli")


def add(c1: Cochain2, c2: Cochain2) -> Cochain2:
    _same(c1, c2)
    return Cochain2(c1.subgroup, c1.modulus, c1.values + c2.values)


def negate(c: Cochain2) -> Cochain2:
    return Cochain2(c.subgroup, c.modulus, -c.values)


def scale(c: Cochain2, k: int) -> Cochain2:
    return Cochain2(c.subgroup, c.modulus, c.values * (k % c.modulus))


def coboundary(f: Cochain1) -> Cochain2:
    """``(df)(g, h) = f(g) + f(h) - f(gh)``."""
    v, t = f.values, f.subgroup.table
    return Cochain2(f.subgroup, f.modulus, v[:, None] + v[None, :] - v[t])


def cocycle_defect(c: Cochain2) -> np.ndarray:
    """``c(h,k) - c(gh,k) + c(g,hk) - c(g,h)`` for all triples, as an n^3 array."""
    v, t = c.values, c.subgroup.table
    n = len(v)
    g = np.arange(n)[:, None, None]
    return (v[None, :, :] - v[t][:, :, :] + v[g, t[None, :, :]] - v[:, :, None]) % c.modulus


def is_cocycle(c: Cochain2) -> bool:
    return not cocycle_defect(c).any()


def restrict(c: Cochain2, L: Subgroup) -> Cochain2:
    """Pointwise restriction to ``L <= H``."""
    H = c.subgroup
    if not L <= H:
        raise CochainError("restriction target is not contained in the subgroup")
    pos = H.position[L.array]
    return Cochain2(L, c.modulus, c.values[np.ix_(pos, pos)])


def conjugate_cocycle(c: Cochain2, a: int) -> Cochain2:
    """Transport ``c`` on ``K`` to ``aKa^-1`` via ``c^a(x, y) = c(a^-1 x a, a^-1 y a)``."""
    K = c.subgroup
    G = K.group
    target = conjugate_subgroup(K, a)
    pre = G.cayley[G.cayley[G.inverses[a], target.array], a]
    pos = K.position[pre]
    return Cochain2(target, c.modulus, c.values[np.ix_(pos, pos)])


def transport_1cochain(f: Cochain1, a: int) -> Cochain1:
    """``f^a(x) = f(a^-1 x a)`` on ``aKa^-1``."""
    K = f.subgroup
    G = K.group
    target = conjugate_subgroup(K, a)
    pre = G.cayley[G.cayley[G.inverses[a], target.array], a]
    return Cochain1(target, f.modulus, f.values[K.position[pre]])


def change_modulus(c: Cochain2, factor: int) -> Cochain2:
    """Embed ``Z/m -> Z/(m*factor)`` by multiplication with ``factor``."""
    return Cochain2(c.subgroup, c.modulus * factor, c.values * factor)
