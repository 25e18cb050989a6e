"""Time H^2(G, k^x) of the whole group for growing |G|.

The dense cocycle system has about ``gens * (|G|-1)^4`` entries, so the cost
climbs steeply; this script shows where desk-scale ends.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from fusionring import CapExceeded, named_group
from fusionring.cohomology import DEFAULT_UNKNOWNS_CAP, h2_units


@dataclass
class BenchConfig:
    groups: tuple[str, ...] = ("C2xC2", "D4", "Q8", "A4", "D6", "C2xC2xC2", "C3xC3", "S4", "Q8xC3", "C2xC2xC2xC3")
    unknowns_cap: int = DEFAULT_UNKNOWNS_CAP
    repeats: int = 1


def bench(cfg: BenchConfig):
    print(f"{'group':<14}{'|G|':>5}{'unknowns':>10}  {'H^2(G,k^x)':<16}{'seconds':>8}")
    for spec in cfg.groups:
        G = named_group(spec)
        n2 = (G.order - 1) ** 2
        try:
            best = float("inf")
            for _ in range(cfg.repeats):
                t = time.perf_counter()
                h = h2_units(G.whole, unknowns_cap=cfg.unknowns_cap)
                best = min(best, time.perf_counter() - t)
            name = " x ".join(f"Z/{d}" for d in h.invariant_factors) or "0"
            print(f"{spec:<14}{G.order:>5}{n2:>10}  {name:<16}{best:>8.2f}")
        except CapExceeded as exc:
            print(f"{spec:<14}{G.order:>5}{n2:>10}  refused: {exc}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("groups", nargs="*")
    p.add_argument("--unknowns-cap", type=int, default=DEFAULT_UNKNOWNS_CAP)
    p.add_argument("--repeats", type=int, default=1)
    ns = p.parse_args()
    cfg = BenchConfig(unknowns_cap=ns.unknowns_cap, repeats=ns.repeats)
    if ns.groups:
        cfg.groups = tuple(ns.groups)
    bench(cfg)
