"""The twisted Burnside ring: basis ``<H, [mu]>`` and its fusion product.

A basis key is a subgroup class together with a class in ``H^2(H, k^x)`` of
the class representative, taken up to the action of ``N_G(H)``.  The product
of two keys is

    <H, mu><K, sigma> = sum over HaK of <H n aKa^-1, mu|_L + (sigma^a)|_L>,

with ``sigma^a(x, y) = sigma(a^-1 x a, a^-1 y a)`` living on ``aKa^-1``.
Every summand is re-expressed in the basis by :meth:`canonicalize`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .burnside import BurnsideElement, BurnsideRing, LinearCombination, checked
from .cache import H2Cache, cache_key
from .cocycle import Cochain1, Cochain2, coboundary, conjugate_cocycle, restrict
from .cohomology import (
    DEFAULT_UNKNOWNS_CAP,
    H2Group,
    check_cap,
    class_coordinates,
    h2_units,
    representative,
)
from .group_core import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupTooLarge,
    Subgroup,
    SubgroupClassTable,
    conjugacy_classes,
    conjugate_subgroup,
    double_cosets,
    intersect,
    invariants_from_orders,
    left_coset_representatives,
    subgroup_classes,
)


@dataclass(frozen=True, order=True)
class FusionBasisKey:
    subgroup_class: int
    cohomology_coords: tuple[int, ...] = ()


class TwistedElement(LinearCombination):
    __slots__ = ()


def regular_class_count(c: Cochain2) -> int:
    """Number of conjugacy classes of ``H`` whose elements are ``c``-regular.

    ``g`` is regular iff ``c(g, h) = c(h, g)`` for every ``h`` centralizing ``g``.
    """
    H = c.subgroup
    t, v = H.table, c.values
    count = 0
    for cls in conjugacy_classes(H):
        g = int(H.position[cls[0]])
        cent = np.nonzero(t[g] == t[:, g])[0]
        if np.array_equal(v[g, cent], v[cent, g]):
            count += 1
    return count


@dataclass
class InvertibleReport:
    elements: list[FusionBasisKey]
    table: list[list[int]]  # indices into elements
    invariant_factors: list[int]
    h2_invariant_factors: list[int]
    matches: bool


class TwistedBurnsideRing:
    def __init__(
        self,
        G: FiniteGroup,
        modulus: int | None = None,
        classes: SubgroupClassTable | None = None,
        cache: H2Cache | None = None,
        order_cap: int = DEFAULT_ORDER_CAP,
        unknowns_cap: int = DEFAULT_UNKNOWNS_CAP,
    ):
        if G.order > order_cap:
            raise GroupTooLarge(f"|G| = {G.order} exceeds twisted cap {order_cap}")
        self.group = G
        self.modulus = G.order if modulus is None else modulus
        self.classes = classes if classes is not None else subgroup_classes(G, order_cap)
        self.cache = cache
        self.unknowns_cap = unknowns_cap
        for cls in self.classes:  # refuse before any expensive work
            check_cap(cls.representative, unknowns_cap)
        self._h2: dict[int, H2Group] = {}
        self._orbits: dict[int, dict[tuple[int, ...], tuple[int, ...]]] = {}
        self._products: dict[tuple[FusionBasisKey, FusionBasisKey], dict[FusionBasisKey, int]] = {}

    # --- cohomology per subgroup class ---------------------------------

    def h2(self, i: int) -> H2Group:
        if i not in self._h2:
            H = self.classes[i].representative
            key = cache_key(self.group.digest, H.digest(), self.modulus)
            entry = self.cache.get(key) if self.cache is not None else None
            if entry is not None:
                h = H2Group.from_json(H, entry)
            else:
                h = h2_units(H, self.modulus, self.unknowns_cap)
                if self.cache is not None:
                    self.cache.put(key, h.to_json())
            self._h2[i] = h
        return self._h2[i]

    def normalizer_action(self, i: int) -> list[np.ndarray]:
        """For each normalizer coset rep ``n``, the matrix sending coords to coords of ``mu^n``."""
        h = self.h2(i)
        if not h.rank:
            return []
        cls = self.classes[i]
        H, N = cls.representative, cls.normalizer
        mats = []
        for n in left_coset_representatives(self.group, H):
            if n not in N or n in H:
                continue
            rows = [class_coordinates(h, conjugate_cocycle(g, n), check=False) for g in h.generators]
            mats.append(np.array(rows, dtype=np.int64).reshape(h.rank, h.rank))
        return mats

    def orbit_map(self, i: int) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Coordinate tuple -> lexicographically minimal tuple in its normalizer orbit."""
        if i not in self._orbits:
            h = self.h2(i)
            mats = self.normalizer_action(i)
            d = np.array(h.invariant_factors, dtype=np.int64)
            canon: dict[tuple[int, ...], tuple[int, ...]] = {}
            for x in h.elements():
                if x in canon:
                    continue
                orbit, frontier = {x}, [x]
                while frontier:
                    nxt = []
                    for y in frontier:
                        for A in mats:
                            z = tuple(int(v) for v in (np.array(y) @ A) % d)
                            if z not in orbit:
                                orbit.add(z)
                                nxt.append(z)
                    frontier = nxt
                m = min(orbit)
                for y in orbit:
                    canon[y] = m
            self._orbits[i] = canon
        return self._orbits[i]

    # --- basis ------------------------------------------------------------

    def basis(self) -> list[FusionBasisKey]:
        keys = []
        for i in range(len(self.classes)):
            keys.extend(FusionBasisKey(i, c) for c in sorted(set(self.orbit_map(i).values())))
        return keys

    @cached_property
    def _basis(self) -> list[FusionBasisKey]:
        return self.basis()

    def __len__(self) -> int:
        return len(self._basis)

    def __call__(self, key: FusionBasisKey) -> TwistedElement:
        return self.element({key: 1})

    def element(self, coeffs) -> TwistedElement:
        return TwistedElement(self, coeffs)

    @property
    def one(self) -> TwistedElement:
        i = self.classes.whole_index
        return self(FusionBasisKey(i, self.h2(i).zero()))

    @property
    def zero(self) -> TwistedElement:
        return self.element({})

    def label(self, key: FusionBasisKey) -> str:
        coords = ",".join(map(str, key.cohomology_coords))
        return f"{self.classes.short_label(key.subgroup_class)}[{coords}]"

    def parse_label(self, text: str) -> FusionBasisKey:
        for key in self._basis:
            if self.label(key) == text:
                return key
        raise KeyError(f"unknown basis key {text!r}")

    def cocycle(self, key: FusionBasisKey) -> Cochain2:
        """Stored representative cocycle on the class representative."""
        return representative(self.h2(key.subgroup_class), key.cohomology_coords)

    def canonicalize(self, L: Subgroup, c: Cochain2, check: bool = True) -> FusionBasisKey:
        """Basis key of ``<L, [c]>``: move to the class representative, then to the orbit minimum."""
        if c.subgroup != L:
            raise ValueError("cocycle does not live on the given subgroup")
        i, g = self.classes.locate(L)
        rep_cocycle = conjugate_cocycle(c, self.group.inv(g))
        coords = class_coordinates(self.h2(i), rep_cocycle, check=check)
        return FusionBasisKey(i, self.orbit_map(i)[coords])

    # --- product ------------------------------------------------------------

    def basis_product(self, x: FusionBasisKey, y: FusionBasisKey,
                      rng: np.random.Generator | None = None) -> dict[FusionBasisKey, int]:
        """Product of two basis keys.

        With ``rng``, double coset representatives and cocycle representatives
        are chosen at random instead of canonically (for well-definedness
        checks); results are then not memoized.
        """
        if rng is None and (x, y) in self._products:
            return self._products[x, y]
        G = self.group
        H = self.classes[x.subgroup_class].representative
        K = self.classes[y.subgroup_class].representative
        mu, sigma = self.cocycle(x), self.cocycle(y)
        if rng is not None:
            mu = mu + coboundary(Cochain1.random(H, self.modulus, rng))
            sigma = sigma + coboundary(Cochain1.random(K, self.modulus, rng))
        out: dict[FusionBasisKey, int] = {}
        for dc in double_cosets(G, H, K):
            a = dc.representative
            if rng is not None:
                h = H.members[rng.integers(H.order)]
                k = K.members[rng.integers(K.order)]
                a = G.mul(G.mul(h, a), k)
            aK = conjugate_subgroup(K, a)
            L = intersect(H, aK)
            twist = restrict(mu, L) + restrict(conjugate_cocycle(sigma, a), L)
            key = self.canonicalize(L, twist, check=False)
            out[key] = out.get(key, 0) + 1
        if rng is None:
            self._products[x, y] = out
        return out

    def product(self, x: TwistedElement, y: TwistedElement) -> TwistedElement:
        if x.ring is not self or y.ring is not self:
            raise ValueError("elements belong to a different twisted Burnside ring")
        out: dict[FusionBasisKey, int] = {}
        for kx, a in x.coeffs.items():
            for ky, b in y.coeffs.items():
                for k, c in self.basis_product(kx, ky).items():
                    out[k] = checked(out.get(k, 0) + checked(a * b * c))
        return self.element(out)

    def fusion_table(self) -> list[list[TwistedElement]]:
        B = self._basis
        return [[self.element(self.basis_product(x, y)) for y in B] for x in B]

    # --- forgetful map, invertibles, projective ranks ------------------------

    @cached_property
    def untwisted(self) -> BurnsideRing:
        return BurnsideRing(self.group, self.classes)

    def forget_twist(self, x: TwistedElement) -> BurnsideElement:
        out: dict[int, int] = {}
        for k, v in x.coeffs.items():
            out[k.subgroup_class] = out.get(k.subgroup_class, 0) + v
        return self.untwisted.element(out)

    def projective_rank(self, key: FusionBasisKey) -> int:
        """Rank of ``Rep_mu(H)``: the number of mu-regular conjugacy classes of ``H``."""
        return regular_class_count(self.cocycle(key))

    def invertibles(self) -> InvertibleReport:
        B = self._basis
        one = self.one
        unit_key = next(iter(one.coeffs))
        inv = [x for x in B if any(self.basis_product(x, y) == {unit_key: 1} for y in B)]
        index = {k: n for n, k in enumerate(inv)}
        table = []
        for x in inv:
            row = []
            for y in inv:
                prod = self.basis_product(x, y)
                if len(prod) != 1 or next(iter(prod.values())) != 1:
                    raise AssertionError("product of invertible basis elements is not a basis element")
                row.append(index[next(iter(prod))])
            table.append(row)
        orders = []
        for n in range(len(inv)):
            k, p = 1, n
            while p != index[unit_key]:
                p = table[p][n]
                k += 1
            orders.append(k)
        factors = invariants_from_orders(orders)
        top = self.classes.whole_index
        h = self.h2(top)
        expected = [FusionBasisKey(top, c) for c in h.elements()]
        matches = inv == expected and factors == list(h.invariant_factors)
        return InvertibleReport(inv, table, factors, list(h.invariant_factors), matches)
