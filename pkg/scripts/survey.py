"""Summary table of Burnside and twisted Burnside ring data for a list of groups.

    python scripts/survey.py C6 S3 C2xC2 D4 Q8 A4 D6 --csv survey.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import asdict, dataclass, field

from fusionring import named_group, subgroup_classes
from fusionring.twisted_fusion import FusionBasisKey, TwistedBurnsideRing


@dataclass
class SurveyConfig:
    groups: list[str] = field(default_factory=lambda: ["C6", "S3", "C2xC2", "D4", "Q8", "A4", "D6"])
    csv_path: str | None = None


@dataclass
class SurveyRow:
    group: str
    order: int
    subgroup_classes: int
    twisted_basis: int
    schur_multiplier: str
    invertibles: int
    top_ranks: str
    seconds: float


def survey(spec: str) -> SurveyRow:
    start = time.perf_counter()
    G = named_group(spec)
    R = TwistedBurnsideRing(G, classes=subgroup_classes(G))
    top = R.classes.whole_index
    h = R.h2(top)
    ranks = [R.projective_rank(FusionBasisKey(top, c)) for c in sorted(set(R.orbit_map(top).values()))]
    return SurveyRow(
        group=spec,
        order=G.order,
        subgroup_classes=len(R.classes),
        twisted_basis=len(R.basis()),
        schur_multiplier=" x ".join(f"Z/{d}" for d in h.invariant_factors) or "0",
        invertibles=len(R.invertibles().elements),
        top_ranks=",".join(map(str, ranks)),
        seconds=round(time.perf_counter() - start, 3),
    )


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("groups", nargs="*")
    p.add_argument("--csv", dest="csv_path")
    ns = p.parse_args(argv)
    cfg = SurveyConfig(groups=ns.groups or SurveyConfig().groups, csv_path=ns.csv_path)

    rows = [survey(s) for s in cfg.groups]
    cols = list(asdict(rows[0]))
    table = [cols] + [[str(v) for v in asdict(r).values()] for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
    for r in table:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols)
            w.writeheader()
            w.writerows(asdict(r) for r in rows)


if __name__ == "__main__":
    sys.exit(main())
