"""Finite permutation groups with precomputed Cayley tables.

Elements are addressed by their index in a canonical ordering (lexicographic
on image tuples, so the identity is always index 0).  Every routine past
construction works on integer indices and the Cayley table only.

Conjugation conventions used throughout the package:

* ``conjugate_subgroup(H, a)`` is ``aHa^-1`` (written ^aH),
* cocycle transport along ``a`` evaluates at ``x^a = a^-1 x a``.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .groupspec import Atom, parse_spec

DEFAULT_ORDER_CAP = 200
UNTWISTED_ORDER_CAP = 2000


class CapExceeded(RuntimeError):
    """A computation was refused because it exceeds a configured size cap."""


class GroupTooLarge(CapExceeded):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a] = b
        return cls(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``, i.e. ``i -> p(q(i))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    return Permutation(tuple(p.images[j] for j in q.images))


class FiniteGroup:
    """A finite permutation group, fully enumerated.

    ``cayley[i, j]`` is the index of ``elements[i] o elements[j]``.
    """

    def __init__(self, degree: int, elements: Sequence[tuple[int, ...]], spec: str = ""):
        self.degree = degree
        self.spec = spec
        self._images = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
        self.order = len(elements)
        self.cayley, self.inverses = self._tables()
        self.cayley.flags.writeable = False
        self.inverses.flags.writeable = False

    def _tables(self):
        n, d = self.order, self.degree
        if d == 0 or n == 1:
            return np.zeros((n, n), dtype=np.int64), np.zeros(n, dtype=np.int64)
        # images sorted lexicographically => base-d encoding is sorted too
        weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
        codes = self._images @ weights
        table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            prod = self._images[i][self._images]  # row j: p_i(p_j(.))
            table[i] = np.searchsorted(codes, prod @ weights)
        inverses = np.argmax(table == 0, axis=1)
        return table, inverses

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.spec or 'degree %d' % self.degree}, order={self.order})"

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self._images[i]))

    @property
    def elements(self) -> list[Permutation]:
        return [self.element(i) for i in range(self.order)]

    def index_of(self, p: Permutation) -> int:
        hits = np.nonzero((self._images == np.array(p.images)).all(axis=1))[0]
        if len(hits) == 0:
            raise ValueError(f"{p} is not in the group")
        return int(hits[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, a: int, x: int) -> int:
        """``a x a^-1``."""
        return int(self.cayley[self.cayley[a, x], self.inverses[a]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.ones(self.order, dtype=np.int64)
        for i in range(1, self.order):
            k, x = 1, i
            while x != 0:
                x = self.cayley[x, i]
                k += 1
            orders[i] = k
        return orders

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.degree}:{self.order}:".encode())
        h.update(np.ascontiguousarray(self._images).tobytes())
        return h.hexdigest()[:16]

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup(self, range(self.order))

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(self, (0,))

    def subgroup(self, members: Iterable[int]) -> Subgroup:
        return Subgroup(self, members)


class Subgroup:
    """A subgroup, stored as a sorted tuple of element indices.

    Closure is not re-checked here; use :func:`generate` to build subgroups
    from arbitrary element sets.
    """

    __slots__ = ("group", "members", "mask", "__dict__")

    def __init__(self, group: FiniteGroup, members: Iterable[int]):
        self.group = group
        self.members = tuple(sorted(int(m) for m in set(members)))
        if not self.members or self.members[0] != 0:
            raise ValueError("subgroup must contain the identity")
        if self.members[-1] >= group.order:
            raise IndexError("element index out of range")
        mask = 0
        for m in self.members:
            mask |= 1 << m
        self.mask = mask

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> int(x) & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.group is self.group and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: Subgroup) -> bool:
        return self.mask & other.mask == self.mask

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    @cached_property
    def position(self) -> np.ndarray:
        """Map from global element index to local position (-1 if absent)."""
        pos = np.full(self.group.order, -1, dtype=np.int64)
        pos[self.array] = np.arange(self.order)
        return pos

    @cached_property
    def table(self) -> np.ndarray:
        """Local multiplication table on positions ``0..|H|-1``."""
        t = self.position[self.group.cayley[np.ix_(self.array, self.array)]]
        t.flags.writeable = False
        return t

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.group.element_orders[self.array]))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element index."""
        gens: list[int] = []
        span = self.group.trivial
        for m in self.members:
            if m not in span:
                gens.append(m)
                span = generate(self.group, gens)
                if span.order == self.order:
                    break
        return tuple(gens)

    def digest(self) -> str:
        return hashlib.sha256(",".join(map(str, self.members)).encode()).hexdigest()[:16]


def _close(group: FiniteGroup, seed: Iterable[int], gens: Sequence[int]) -> set[int]:
    found = {0, *seed}
    frontier = list(found)
    cayley = group.cayley
    while frontier:
        prods = cayley[np.ix_(frontier, list(gens))].ravel().tolist()
        frontier = [p for p in set(prods) if p not in found]
        found.update(frontier)
    return found


def generate(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in gens if g != 0]
    if not gens:
        return Subgroup(group, (0,))
    return Subgroup(group, _close(group, gens, gens))


def group_from_generators(
    degree: int,
    generators: Sequence[Permutation],
    order_cap: int = UNTWISTED_ORDER_CAP,
    spec: str = "",
) -> FiniteGroup:
    """Enumerate the group generated by ``generators`` on ``degree`` points."""
    if order_cap < 1:
        raise ValueError("order_cap must be >= 1")
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
    ident = tuple(range(degree))
    gens = [g.images for g in generators if g.images != ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[j] for j in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > order_cap:
                        raise GroupTooLarge(f"group order exceeds cap {order_cap}")
        frontier = nxt
    return FiniteGroup(degree, sorted(seen), spec)


def _quaternion_generators() -> list[Permutation]:
    # basis 1, i, j, k with sign bit: index = unit + 4 * (sign < 0)
    units = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def left(u: int) -> Permutation:
        images = []
        for idx in range(8):
            sign, v = (-1 if idx >= 4 else 1), idx % 4
            s, w = units[(u, v)]
            images.append(w + (4 if s * sign < 0 else 0))
        return Permutation(tuple(images))

    return [left(1), left(2)]


def _atom_generators(atom: Atom) -> tuple[int, list[Permutation]]:
    n = atom.n
    if atom.family == "perm":
        return atom.degree, [Permutation.from_cycles(atom.degree, [c]) for c in atom.cycles]
    if atom.family == "Q8":
        return 8, _quaternion_generators()
    if atom.family == "C":
        if n == 1:
            return 1, []
        return n, [Permutation.from_cycles(n, [range(n)])]
    if atom.family == "D":
        if n == 1:
            return 2, [Permutation.from_cycles(2, [(0, 1)])]
        if n == 2:
            return 4, [Permutation.from_cycles(4, [(0, 1), (2, 3)]),
                       Permutation.from_cycles(4, [(0, 2), (1, 3)])]
        rot = Permutation.from_cycles(n, [range(n)])
        refl = Permutation(tuple((-i) % n for i in range(n)))
        return n, [rot, refl]
    if atom.family == "S":
        if n == 1:
            return 1, []
        gens = [Permutation.from_cycles(n, [(0, 1)])]
        if n > 2:
            gens.append(Permutation.from_cycles(n, [range(n)]))
        return n, gens
    if atom.family == "A":
        return n, [Permutation.from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    raise ValueError(f"unknown family {atom.family}")


def named_group(spec: str, order_cap: int = UNTWISTED_ORDER_CAP) -> FiniteGroup:
    """Build a permutation group from a spec such as ``"S3"`` or ``"C2xC2"``."""
    plan = parse_spec(spec)
    degree, gens = 0, []
    for atom in plan.factors:
        d, atom_gens = _atom_generators(atom)
        gens.extend(
            Permutation(tuple(range(degree)) + tuple(degree + j for j in g.images))
            for g in atom_gens
        )
        degree += d
    # pad earlier factors' generators up to the final degree
    gens = [Permutation(g.images + tuple(range(g.degree, degree))) for g in gens]
    return group_from_generators(degree, gens, order_cap, spec=plan.text)


# --- subgroup operations ---------------------------------------------------


def _check(H: Subgroup, G: FiniteGroup | None = None):
    if G is not None and H.group is not G:
        raise ValueError("subgroup does not belong to this group")


def conjugate_subgroup(H: Subgroup, a: int) -> Subgroup:
    """Return ``aHa^-1``."""
    G = H.group
    if not 0 <= a < G.order:
        raise IndexError(f"element index {a} out of range")
    return Subgroup(G, G.cayley[G.cayley[a, H.array], G.inverses[a]].tolist())


def intersect(H: Subgroup, K: Subgroup) -> Subgroup:
    if H.group is not K.group:
        raise ValueError("subgroups of different groups")
    return Subgroup(H.group, [m for m in H.members if m in K])


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    _check(H, G)
    return Subgroup(G, [a for a in range(G.order) if conjugate_subgroup(H, a) == H])


def centralizer(H: Subgroup, g: int) -> Subgroup:
    """Elements of ``H`` commuting with ``g`` (``g`` any element of the ambient group)."""
    G = H.group
    if not 0 <= g < G.order:
        raise IndexError(f"element index {g} out of range")
    h = H.array
    keep = G.cayley[h, g] == G.cayley[g, h]
    return Subgroup(G, h[keep].tolist())


def conjugacy_classes(H: Subgroup) -> list[tuple[int, ...]]:
    """Conjugacy classes of ``H`` (under ``H``), each sorted, ordered by min element."""
    G = H.group
    seen: set[int] = set()
    classes = []
    for x in H.members:
        if x in seen:
            continue
        cls = sorted({G.conj(h, x) for h in H.members})
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


@dataclass(frozen=True)
class DoubleCoset:
    representative: int
    size: int


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list[DoubleCoset]:
    """Partition ``G`` into double cosets ``HaK``, minimal representatives, sorted."""
    _check(H, G)
    _check(K, G)
    covered = np.zeros(G.order, dtype=bool)
    out = []
    for a in range(G.order):
        if covered[a]:
            continue
        ha = G.cayley[H.array, a]
        coset = np.unique(G.cayley[np.ix_(ha, K.array)])
        covered[coset] = True
        out.append(DoubleCoset(a, len(coset)))
    return out


def left_coset_representatives(G: FiniteGroup, H: Subgroup) -> list[int]:
    """Minimal representatives of the left cosets ``xH``."""
    covered = np.zeros(G.order, dtype=bool)
    reps = []
    for x in range(G.order):
        if not covered[x]:
            covered[G.cayley[x, H.array]] = True
            reps.append(x)
    return reps


# --- subgroup lattice ------------------------------------------------------


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of ``G`` by cyclic extension, sorted by (order, members)."""
    cyclic: dict[int, tuple[Subgroup, int]] = {}
    for g in range(G.order):
        C = generate(G, [g])
        cyclic.setdefault(C.mask, (C, g))
    found: dict[int, tuple[Subgroup, tuple[int, ...]]] = {
        C.mask: (C, (g,) if g else ()) for C, g in cyclic.values()
    }
    layer = list(found.values())
    cyc = list(cyclic.values())
    while layer:
        nxt = []
        for S, gens in layer:
            for C, g in cyc:
                if C.mask & S.mask == C.mask:
                    continue
                T = Subgroup(G, _close(G, S.members, gens + (g,)))
                if T.mask not in found:
                    entry = (T, gens + (g,))
                    found[T.mask] = entry
                    nxt.append(entry)
        layer = nxt
    return sorted((S for S, _ in found.values()), key=lambda S: (S.order, S.members))


@dataclass
class SubgroupClass:
    representative: Subgroup
    conjugates: list[Subgroup]
    normalizer: Subgroup
    index: int = 0
    label: str = ""

    @property
    def order(self) -> int:
        return self.representative.order


@dataclass
class SubgroupClassTable:
    group: FiniteGroup
    classes: list[SubgroupClass]
    # member-set mask -> (class index, a) with a * rep * a^-1 == subgroup
    lookup: dict[int, tuple[int, int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> SubgroupClass:
        return self.classes[i]

    def __iter__(self):
        return iter(self.classes)

    def locate(self, H: Subgroup) -> tuple[int, int]:
        """Return ``(class index, a)`` with ``a * rep * a^-1 == H``."""
        try:
            return self.lookup[H.mask]
        except KeyError:
            raise ValueError(f"{H} is not a subgroup of {self.group}") from None

    def class_of(self, H: Subgroup) -> int:
        return self.locate(H)[0]

    @property
    def trivial_index(self) -> int:
        return 0

    @property
    def whole_index(self) -> int:
        return len(self.classes) - 1

    def short_label(self, i: int) -> str:
        """``H<order>#<k>`` where ``k`` counts classes of that order."""
        c = self.classes[i]
        k = sum(1 for d in self.classes[:i] if d.order == c.order)
        return f"H{c.order}#{k}"


def _iso_name(S: Subgroup) -> str:
    n = S.order
    orders = S.group.element_orders[S.array]
    if n == 1:
        return "1"
    if n in orders:
        return f"C{n}"
    if S.is_abelian:
        return "x".join(f"C{d}" for d in abelian_invariants(S))
    # element-order profile (order -> count) pins these small groups down
    profile = tuple(sorted(Counter(int(o) for o in orders).items()))
    return _NONABELIAN_NAMES.get(profile, f"G{n}")


_NONABELIAN_NAMES = {
    ((1, 1), (2, 3), (3, 2)): "S3",
    ((1, 1), (2, 5), (4, 2)): "D4",
    ((1, 1), (2, 1), (4, 6)): "Q8",
    ((1, 1), (2, 3), (3, 8)): "A4",
    ((1, 1), (2, 7), (3, 2), (6, 2)): "D6",
    ((1, 1), (2, 1), (3, 2), (4, 6), (6, 2)): "Dic3",
    ((1, 1), (2, 9), (3, 8), (4, 6)): "S4",
}


def abelian_invariants(S: Subgroup) -> list[int]:
    """Invariant factors of an abelian subgroup, read off from element orders."""
    return invariants_from_orders(S.group.element_orders[S.array].tolist())


def invariants_from_orders(orders: Sequence[int]) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of a finite abelian group given its element orders."""
    n = len(orders)
    primary: list[list[int]] = []
    for p in range(2, n + 1):
        if n % p or any(p % q == 0 for q in range(2, p)):
            continue
        # c_k = #{x : x^(p^k) = 1}; c_k / c_(k-1) = p^(#cyclic factors of order >= p^k)
        counts, k = [1], 1
        while True:
            counts.append(sum(1 for o in orders if p ** k % o == 0))
            if counts[-1] == counts[-2]:
                break
            k += 1
        at_least = []
        for k in range(1, len(counts) - 1):
            q, r = counts[k] // counts[k - 1], 0
            while q > 1:
                q //= p
                r += 1
            at_least.append(r)
        at_least.append(0)
        parts = []
        for k in range(len(at_least) - 1):
            parts += [p ** (k + 1)] * (at_least[k] - at_least[k + 1])
        primary.append(sorted(parts, reverse=True))
    width = max((len(f) for f in primary), default=0)
    inv = []
    for i in range(width):
        d = 1
        for f in primary:
            if i < len(f):
                d *= f[i]
        inv.append(d)
    return sorted(inv)


def subgroup_classes(G: FiniteGroup, order_cap: int = UNTWISTED_ORDER_CAP) -> SubgroupClassTable:
    """All subgroups of ``G`` grouped into conjugacy classes with normalizers."""
    if G.order > order_cap:
        raise GroupTooLarge(f"|G| = {G.order} exceeds cap {order_cap}")
    subs = all_subgroups(G)
    lookup: dict[int, tuple[int, int]] = {}
    classes: list[SubgroupClass] = []
    for S in subs:
        if S.mask in lookup:
            continue
        idx = len(classes)
        conj: dict[int, Subgroup] = {}
        norm = []
        for a in range(G.order):
            T = conjugate_subgroup(S, a)
            if T.mask not in conj:
                conj[T.mask] = T
                lookup[T.mask] = (idx, a)
            if T.mask == S.mask:
                norm.append(a)
        conjugates = sorted(conj.values(), key=lambda T: T.members)
        classes.append(SubgroupClass(S, conjugates, Subgroup(G, norm), idx))
    table = SubgroupClassTable(G, classes, lookup)
    counts: dict[str, int] = {}
    for c in classes:
        name = _iso_name(c.representative)
        c.label = f"{name}#{counts.get(name, 0)}"
        counts[name] = counts.get(name, 0) + 1
    return table
