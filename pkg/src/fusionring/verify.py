"""Invariant checks runnable on any group, used by ``fusionring <G> verify``.

Each check returns a :class:`CheckResult`; ``run_all`` collects them.  The
``quick`` level samples the cubic-cost checks (associativity), ``full``
enumerates them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Callable

import numpy as np

from .burnside import BurnsideRing
from .cocycle import Cochain1, coboundary, conjugate_cocycle, restrict, scale
from .cohomology import class_coordinates, h2_units
from .group_core import FiniteGroup, abelian_invariants, conjugacy_classes, conjugate_subgroup
from .twisted_fusion import FusionBasisKey, TwistedBurnsideRing, regular_class_count


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def exterior_square_order(invariants: list[int]) -> int:
    """``|Lambda^2 A|`` for ``A = prod Z/n_i``: product of pairwise gcds."""
    return prod(gcd(a, b) for a, b in itertools.combinations(invariants, 2))


def sylow_subgroup(R: TwistedBurnsideRing, i: int, p: int):
    H = R.classes[i].representative
    n, q = H.order, 1
    while n % (q * p) == 0:
        q *= p
    for cls in R.classes:
        if cls.order != q:
            continue
        for P in cls.conjugates:
            if P <= H:
                return P
    raise AssertionError(f"no Sylow {p}-subgroup found in {H}")


def prime_divisors(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]


# --- Burnside ring ------------------------------------------------------------


def check_oracle(B: BurnsideRing) -> CheckResult:
    bad = [(i, j) for i in B.basis() for j in B.basis() if B(i) * B(j) != B.product_oracle(i, j)]
    return CheckResult("burnside: double-coset product = orbit oracle", not bad, f"mismatches {bad[:3]}" if bad else "")


def check_marks(B: BurnsideRing) -> CheckResult:
    bad = []
    for i, j in itertools.product(B.basis(), repeat=2):
        lhs = B.marks_of(B(i) * B(j))
        rhs = [a * b for a, b in zip(B.marks_of(B(i)), B.marks_of(B(j)))]
        if lhs != rhs:
            bad.append((i, j))
    diag_ok = all(B.marks_table[i, i] > 0 for i in B.basis())
    return CheckResult("burnside: marks homomorphism, nonzero diagonal", not bad and diag_ok,
                       f"mismatches {bad[:3]}" if bad else ("" if diag_ok else "zero on diagonal"))


def check_unit_laws(B: BurnsideRing) -> CheckResult:
    G = B.group
    triv = B.classes.trivial_index
    ok = all(
        B(i) * B.one == B(i)
        and B(i) * B(triv) == (G.order // B.classes[i].order) * B(triv)
        for i in B.basis()
    )
    return CheckResult("burnside: <H><G> = <H>, <H><1> = [G:H]<1>", ok)


def check_burnside_axioms(B: BurnsideRing) -> CheckResult:
    basis = B.basis()
    comm = all(B(i) * B(j) == B(j) * B(i) for i, j in itertools.combinations(basis, 2))
    assoc = all((B(i) * B(j)) * B(k) == B(i) * (B(j) * B(k))
                for i, j, k in itertools.product(basis, repeat=3))
    return CheckResult("burnside: commutative and associative", comm and assoc)


# --- cohomology ---------------------------------------------------------------


def check_cohomology(R: TwistedBurnsideRing) -> list[CheckResult]:
    ext_bad, div_bad, syl_bad, coord_bad = [], [], [], []
    rng = np.random.default_rng(0)
    for i, cls in enumerate(R.classes):
        H = cls.representative
        h = R.h2(i)
        if h.order == 0 or H.order % h.order:
            div_bad.append(cls.label)
        for P in cls.conjugates if H.is_abelian else []:
            if h_order(R, P) != exterior_square_order(abelian_invariants(P)):
                ext_bad.append(cls.label)
                break
        for k, g in enumerate(h.generators):
            unit = tuple(int(j == k) for j in range(h.rank))
            shifted = g + coboundary(Cochain1.random(H, R.modulus, rng))
            if class_coordinates(h, g) != unit or class_coordinates(h, shifted) != unit:
                coord_bad.append(cls.label)
        for p in prime_divisors(H.order):
            P = sylow_subgroup(R, i, p)
            hp = h2_units(P, R.modulus, R.unknowns_cap)
            ppart = prod(p ** _val(d, p) for d in h.invariant_factors)
            if ppart > hp.order:
                syl_bad.append((cls.label, p))
                continue
            for d, g in zip(h.invariant_factors, h.generators):
                v = _val(d, p)
                if v == 0:
                    continue
                pg = scale(g, d // p ** v)
                if not any(class_coordinates(hp, restrict(pg, P))):
                    syl_bad.append((cls.label, p))
    return [
        CheckResult("cohomology: |H^2(A,k^x)| = |Lambda^2 A| for abelian A", not ext_bad, ", ".join(ext_bad)),
        CheckResult("cohomology: |H^2(H,k^x)| divides |H|", not div_bad, ", ".join(div_bad)),
        CheckResult("cohomology: Sylow restriction is injective", not syl_bad, str(syl_bad) if syl_bad else ""),
        CheckResult("cohomology: generator coordinates and coboundary invisibility", not coord_bad,
                    ", ".join(coord_bad)),
    ]


def _val(d: int, p: int) -> int:
    v = 0
    while d % p == 0:
        d //= p
        v += 1
    return v


def h_order(R: TwistedBurnsideRing, H) -> int:
    i, _ = R.classes.locate(H)
    if H == R.classes[i].representative:
        return R.h2(i).order
    return h2_units(H, R.modulus, R.unknowns_cap).order


# --- twisted ring -------------------------------------------------------------


def check_twisted_axioms(R: TwistedBurnsideRing, level: str = "quick", samples: int = 300) -> list[CheckResult]:
    B = R.basis()
    comm = all(R.basis_product(x, y) == R.basis_product(y, x) for x, y in itertools.combinations(B, 2))
    unit = all(R(x) * R.one == R(x) for x in B)
    triples = list(itertools.product(B, repeat=3))
    if level != "full" and len(triples) > samples:
        rng = np.random.default_rng(1)
        triples = [triples[k] for k in rng.choice(len(triples), samples, replace=False)]
    assoc = all((R(x) * R(y)) * R(z) == R(x) * (R(y) * R(z)) for x, y, z in triples)
    U = R.untwisted
    forget = all(
        R.forget_twist(R(x) * R(y)) == R.forget_twist(R(x)) * R.forget_twist(R(y))
        for x, y in itertools.product(B, repeat=2)
    ) and R.forget_twist(R.one) == U.one
    return [
        CheckResult("twisted: commutative", comm),
        CheckResult(f"twisted: associative ({len(triples)} triples)", assoc),
        CheckResult("twisted: unit <G,0>", unit),
        CheckResult("twisted: forget_twist is a unital ring map", forget),
    ]


def check_invertibles(R: TwistedBurnsideRing) -> CheckResult:
    rep = R.invertibles()
    return CheckResult("twisted: invertibles = {<G,c>} ~ H^2(G,k^x)", rep.matches,
                       f"factors {rep.invariant_factors} vs H^2 {rep.h2_invariant_factors}")


def check_top_products(R: TwistedBurnsideRing) -> CheckResult:
    top = R.classes.whole_index
    h = R.h2(top)
    bad = []
    for a, b in itertools.product(h.elements(), repeat=2):
        s = h.reduce(np.add(a, b)) if h.rank else ()
        if R.basis_product(FusionBasisKey(top, a), FusionBasisKey(top, b)) != {FusionBasisKey(top, s): 1}:
            bad.append((a, b))
    return CheckResult("twisted: <G,mu><G,mu'> = <G,mu+mu'>", not bad, str(bad[:3]) if bad else "")


def check_invariance(R: TwistedBurnsideRing, samples: int = 200, seed: int = 0) -> list[CheckResult]:
    """Keys and projective ranks survive coboundary shifts and conjugation."""
    G = R.group
    rng = np.random.default_rng(seed)
    B = R.basis()
    canon_bad = rank_bad = 0
    for _ in range(samples):
        key = B[rng.integers(len(B))]
        H = R.classes[key.subgroup_class].representative
        c = R.cocycle(key) + coboundary(Cochain1.random(H, R.modulus, rng))
        a = int(rng.integers(G.order))
        moved = conjugate_cocycle(c, a)
        if R.canonicalize(H, c) != key or R.canonicalize(conjugate_subgroup(H, a), moved) != key:
            canon_bad += 1
        expected = R.projective_rank(key)
        if regular_class_count(c) != expected or regular_class_count(moved) != expected:
            rank_bad += 1
    wd_bad = 0
    for _ in range(max(1, samples // 10)):
        x, y = B[rng.integers(len(B))], B[rng.integers(len(B))]
        if R.basis_product(x, y, rng=rng) != R.basis_product(x, y):
            wd_bad += 1
    return [
        CheckResult(f"twisted: canonicalize invariant ({samples} shifts/conjugations)", canon_bad == 0,
                    f"{canon_bad} failures" if canon_bad else ""),
        CheckResult(f"twisted: projective rank gauge/transport invariant ({samples})", rank_bad == 0,
                    f"{rank_bad} failures" if rank_bad else ""),
        CheckResult("twisted: product independent of representative choices", wd_bad == 0),
    ]


def check_projective_ranks(R: TwistedBurnsideRing) -> CheckResult:
    ok = all(
        R.projective_rank(FusionBasisKey(i, R.h2(i).zero())) == len(conjugacy_classes(c.representative))
        for i, c in enumerate(R.classes)
    )
    return CheckResult("twisted: rank of <H,0> = #conjugacy classes of H", ok)


def run_all(G: FiniteGroup, R: TwistedBurnsideRing | None = None, level: str = "quick",
            log: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    R = R or TwistedBurnsideRing(G)
    B = R.untwisted
    results: list[CheckResult] = []

    def emit(rs):
        for r in rs if isinstance(rs, list) else [rs]:
            results.append(r)
            if log:
                log(r)

    emit(check_oracle(B))
    emit(check_marks(B))
    emit(check_unit_laws(B))
    emit(check_burnside_axioms(B))
    emit(check_cohomology(R))
    emit(check_twisted_axioms(R, level))
    emit(check_invertibles(R))
    emit(check_top_products(R))
    emit(check_invariance(R, 200 if level == "full" else 50))
    emit(check_projective_ranks(R))
    return results
