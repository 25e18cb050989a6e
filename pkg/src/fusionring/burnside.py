"""The Burnside ring of a finite group.

Basis elements ``<H>`` are indexed by subgroup conjugacy classes (the
transitive G-sets ``G/H``).  Products come from the double coset formula

    <H><K> = sum over HaK in H\\G/K of <H n aKa^-1>,

and are cross-checked by decomposing ``G/H x G/K`` into orbits directly and
by the table of marks.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property

import numpy as np

from .group_core import (
    FiniteGroup,
    SubgroupClassTable,
    UNTWISTED_ORDER_CAP,
    conjugate_subgroup,
    double_cosets,
    intersect,
    left_coset_representatives,
    subgroup_classes,
)

INT64_MAX = 2 ** 63 - 1


def checked(value: int) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise OverflowError(f"coefficient {value} overflows 64 bits")
    return value


class LinearCombination:
    """Sparse integer combination over hashable basis keys (no stored zeros)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=None):
        self.ring = ring
        self.coeffs = {k: checked(int(v)) for k, v in (coeffs or {}).items() if v}

    def items(self):
        return sorted(self.coeffs.items())

    def __getitem__(self, key) -> int:
        return self.coeffs.get(key, 0)

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.ring is self.ring and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(tuple(self.items()))

    def _same_ring(self, other):
        if not isinstance(other, LinearCombination) or other.ring is not self.ring:
            raise ValueError("elements of different rings")

    def __add__(self, other):
        self._same_ring(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = checked(out.get(k, 0) + v)
        return type(self)(self.ring, out)

    def __neg__(self):
        return type(self)(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return type(self)(self.ring, {key: checked(k * v) for key, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return self.ring.product(self, other)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            (f"{v}*" if v != 1 else "") + self.ring.label(k) for k, v in self.items()
        )


class BurnsideElement(LinearCombination):
    __slots__ = ()


class BurnsideRing:
    def __init__(self, G: FiniteGroup, classes: SubgroupClassTable | None = None,
                 order_cap: int = UNTWISTED_ORDER_CAP):
        self.group = G
        self.classes = classes if classes is not None else subgroup_classes(G, order_cap)
        self._products: dict[tuple[int, int], dict[int, int]] = {}

    def basis(self) -> list[int]:
        return list(range(len(self.classes)))

    def __len__(self) -> int:
        return len(self.classes)

    def element(self, coeffs: dict[int, int]) -> BurnsideElement:
        return BurnsideElement(self, coeffs)

    def __call__(self, i: int) -> BurnsideElement:
        return self.element({i: 1})

    @property
    def one(self) -> BurnsideElement:
        return self(self.classes.whole_index)

    @property
    def zero(self) -> BurnsideElement:
        return self.element({})

    def key(self, i: int) -> str:
        return f"[{self.classes[i].order}:{i}]"

    def label(self, i: int) -> str:
        return self.classes[i].label

    def basis_product(self, i: int, j: int) -> dict[int, int]:
        """``<H_i><H_j>`` via double cosets."""
        if (i, j) not in self._products:
            G = self.group
            H = self.classes[i].representative
            K = self.classes[j].representative
            out: dict[int, int] = {}
            for dc in double_cosets(G, H, K):
                L = intersect(H, conjugate_subgroup(K, dc.representative))
                c = self.classes.class_of(L)
                out[c] = out.get(c, 0) + 1
            self._products[i, j] = out
        return self._products[i, j]

    def product(self, x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
        if x.ring is not self or y.ring is not self:
            raise ValueError("elements belong to a different Burnside ring")
        out: dict[int, int] = {}
        for i, a in x.coeffs.items():
            for j, b in y.coeffs.items():
                for k, c in self.basis_product(i, j).items():
                    out[k] = checked(out.get(k, 0) + checked(a * b * c))
        return self.element(out)

    def _coset_action(self, i: int) -> np.ndarray:
        """``act[g, x]``: index of the coset ``g x_rep H_i`` among left cosets of ``H_i``."""
        G = self.group
        H = self.classes[i].representative
        reps = left_coset_representatives(G, H)
        coset_id = np.empty(G.order, dtype=np.int64)
        for idx, r in enumerate(reps):
            coset_id[G.cayley[r, H.array]] = idx
        return coset_id[G.cayley[:, reps]]

    @cached_property
    def _actions(self) -> list[np.ndarray]:
        return [self._coset_action(i) for i in range(len(self.classes))]

    def product_oracle(self, i: int, j: int) -> BurnsideElement:
        """Decompose ``G/H_i x G/H_j`` into orbits and classify point stabilizers."""
        G = self.group
        A, B = self._actions[i], self._actions[j]
        nA, nB = A.shape[1], B.shape[1]
        seen = np.zeros((nA, nB), dtype=bool)
        gens = G.whole.generators
        out: dict[int, int] = {}
        for a0 in range(nA):
            for b0 in range(nB):
                if seen[a0, b0]:
                    continue
                seen[a0, b0] = True
                queue = deque([(a0, b0)])
                while queue:
                    a, b = queue.popleft()
                    for g in gens:
                        p = (int(A[g, a]), int(B[g, b]))
                        if not seen[p]:
                            seen[p] = True
                            queue.append(p)
                stab = np.nonzero((A[:, a0] == a0) & (B[:, b0] == b0))[0]
                c = self.classes.class_of(G.subgroup(stab.tolist()))
                out[c] = out.get(c, 0) + 1
        return self.element(out)

    def marks(self, i: int) -> list[int]:
        """Mark of each class ``K`` on ``G/H_i``: number of cosets fixed by ``K``."""
        act = self._actions[i]
        cosets = np.arange(act.shape[1])
        out = []
        for cls in self.classes:
            gens = list(cls.representative.generators)
            fixed = np.ones(len(cosets), dtype=bool)
            for k in gens:
                fixed &= act[k] == cosets
            out.append(int(fixed.sum()))
        return out

    @cached_property
    def marks_table(self) -> np.ndarray:
        """Row ``i`` is :meth:`marks` of ``<H_i>``."""
        return np.array([self.marks(i) for i in range(len(self.classes))], dtype=np.int64)

    def marks_of(self, x: BurnsideElement) -> list[int]:
        total = [0] * len(self.classes)
        for i, a in x.coeffs.items():
            for k, m in enumerate(self.marks_table[i]):
                total[k] += a * int(m)
        return total

    def table(self) -> list[list[BurnsideElement]]:
        n = len(self.classes)
        return [[self.product(self(i), self(j)) for j in range(n)] for i in range(n)]
