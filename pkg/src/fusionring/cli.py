"""``fusionring`` command line.

Usage: ``fusionring GROUP COMMAND [ARGS] [--format text|json] ...``

Exit status: 0 success, 2 parse error, 3 cap exceeded, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from .burnside import BurnsideRing
from .cache import H2Cache, resolve_cache_path
from .cohomology import DEFAULT_UNKNOWNS_CAP, H2Group
from .group_core import (
    DEFAULT_ORDER_CAP,
    UNTWISTED_ORDER_CAP,
    CapExceeded,
    FiniteGroup,
    SubgroupClassTable,
    named_group,
    subgroup_classes,
)
from .groupspec import SpecParseError
from .twisted_fusion import TwistedBurnsideRing
from .verify import run_all

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4
TWISTED_COMMANDS = {"basis", "h2", "fusion-table", "product", "invertibles", "verify"}


@dataclass
class CliConfig:
    group_spec: str
    command: str
    args: list[str] = field(default_factory=list)
    format: str = "text"
    order_cap: int | None = None
    unknowns_cap: int = DEFAULT_UNKNOWNS_CAP
    cache_path: str | None = None
    verify_level: str = "quick"

    def __post_init__(self):
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.verify_level not in ("quick", "full"):
            raise ValueError(f"unknown verify level {self.verify_level!r}")
        if (self.order_cap is not None and self.order_cap < 1) or self.unknowns_cap < 1:
            raise ValueError("caps must be positive")

    @property
    def effective_order_cap(self) -> int:
        if self.order_cap is not None:
            return self.order_cap
        return DEFAULT_ORDER_CAP if self.command in TWISTED_COMMANDS else UNTWISTED_ORDER_CAP


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--order-cap", type=int, default=None,
                        help=f"max |G| (default {DEFAULT_ORDER_CAP} twisted, {UNTWISTED_ORDER_CAP} untwisted)")
    common.add_argument("--unknowns-cap", type=int, default=DEFAULT_UNKNOWNS_CAP,
                        help="max (|H|-1)^2 cochain unknowns per subgroup")
    common.add_argument("--cache", default=None, help="JSON-lines cohomology cache (env FUSIONRING_CACHE wins)")
    common.add_argument("--verify-level", choices=("quick", "full"), default="quick")

    p = argparse.ArgumentParser(prog="fusionring", description=__doc__.splitlines()[0])
    p.add_argument("group", help='group spec, e.g. "S3", "C2xC2", "perm:3:(0,1);(0,1,2)"')
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[common], help="untwisted and twisted bases")
    sub.add_parser("subgroups", parents=[common], help="subgroup classes")
    h2 = sub.add_parser("h2", parents=[common], help="H^2(H, k^x) of a subgroup class")
    h2.add_argument("selector", help='class index, "H<order>#<k>", "G" or "1"')
    sub.add_parser("burnside-table", parents=[common], help="Burnside ring multiplication table")
    sub.add_parser("fusion-table", parents=[common], help="twisted Burnside ring multiplication table")
    prod = sub.add_parser("product", parents=[common], help="product of two basis keys")
    prod.add_argument("left")
    prod.add_argument("right")
    sub.add_parser("invertibles", parents=[common], help="invertible basis elements vs H^2(G, k^x)")
    sub.add_parser("verify", parents=[common], help="run the invariant suite")
    return p


class Session:
    """Lazily-built group data shared by the subcommands."""

    def __init__(self, cfg: CliConfig):
        self.cfg = cfg
        self.group: FiniteGroup = named_group(cfg.group_spec, cfg.effective_order_cap)
        self.classes: SubgroupClassTable = subgroup_classes(self.group, cfg.effective_order_cap)
        path = resolve_cache_path(cfg.cache_path)
        self.cache = H2Cache(path) if path else None
        self._twisted: TwistedBurnsideRing | None = None

    @property
    def twisted(self) -> TwistedBurnsideRing:
        if self._twisted is None:
            self._twisted = TwistedBurnsideRing(
                self.group, classes=self.classes, cache=self.cache,
                order_cap=self.cfg.effective_order_cap, unknowns_cap=self.cfg.unknowns_cap,
            )
        return self._twisted

    @property
    def burnside(self) -> BurnsideRing:
        return self.twisted.untwisted if self._twisted else BurnsideRing(self.group, self.classes)

    def select_class(self, text: str) -> int:
        if text == "G":
            return self.classes.whole_index
        if text == "1":
            return self.classes.trivial_index
        if text.isdigit() and int(text) < len(self.classes):
            return int(text)
        for i in range(len(self.classes)):
            if text in (self.classes.short_label(i), self.classes[i].label, burnside_key(self, i)):
                return i
        raise KeyError(f"unknown subgroup selector {text!r}")


def burnside_key(s: Session, i: int) -> str:
    return f"[{s.classes[i].order}:{i}]"


# --- payload builders (plain dicts, rendered as JSON or text) ---------------


def _terms_twisted(R: TwistedBurnsideRing, coeffs: dict) -> list[dict]:
    return [{"key": R.label(k), "coeff": v} for k, v in sorted(coeffs.items())]


def _terms_burnside(B: BurnsideRing, coeffs: dict) -> list[dict]:
    return [{"key": B.key(k), "label": B.label(k), "coeff": v} for k, v in sorted(coeffs.items())]


def subgroups_payload(s: Session) -> dict:
    rows = []
    for i, c in enumerate(s.classes):
        H = c.representative
        rows.append({
            "key": burnside_key(s, i),
            "label": c.label,
            "short": s.classes.short_label(i),
            "order": c.order,
            "conjugates": len(c.conjugates),
            "normalizer_order": c.normalizer.order,
            "generators": [str(s.group.element(g)) for g in H.generators],
        })
    return {"group": s.group.spec, "order": s.group.order, "classes": rows}


def twisted_basis_rows(R: TwistedBurnsideRing) -> list[dict]:
    return [
        {
            "key": R.label(k),
            "subgroup_label": R.classes[k.subgroup_class].label,
            "h2_coords": list(k.cohomology_coords),
            "projective_rank": R.projective_rank(k),
        }
        for k in R.basis()
    ]


def basis_payload(s: Session) -> dict:
    B = s.burnside
    R = s.twisted
    return {
        "group": s.group.spec,
        "modulus": R.modulus,
        "untwisted": [{"key": B.key(i), "label": B.label(i), "order": s.classes[i].order} for i in B.basis()],
        "basis": twisted_basis_rows(R),
    }


def h2_payload(s: Session, i: int) -> dict:
    R = s.twisted
    h: H2Group = R.h2(i)
    H = h.subgroup
    gens = []
    for g in h.generators:
        entries = [
            [str(s.group.element(H.members[a])), str(s.group.element(H.members[b])), int(g.values[a, b])]
            for a in range(H.order) for b in range(H.order) if g.values[a, b]
        ]
        gens.append(entries)
    return {
        "group": s.group.spec,
        "subgroup": s.classes.short_label(i),
        "subgroup_label": s.classes[i].label,
        "modulus": h.modulus,
        "invariant_factors": list(h.invariant_factors),
        "generators": gens,
    }


def burnside_table_payload(s: Session) -> dict:
    B = s.burnside
    products = [
        {"left": B.key(i), "right": B.key(j), "terms": _terms_burnside(B, B.basis_product(i, j))}
        for i in B.basis() for j in B.basis()
    ]
    return {
        "group": s.group.spec,
        "basis": [{"key": B.key(i), "label": B.label(i)} for i in B.basis()],
        "products": products,
    }


def fusion_table_payload(s: Session) -> dict:
    R = s.twisted
    basis = R.basis()
    products = [
        {"left": R.label(x), "right": R.label(y), "terms": _terms_twisted(R, R.basis_product(x, y))}
        for x in basis for y in basis
    ]
    return {"group": s.group.spec, "modulus": R.modulus, "basis": twisted_basis_rows(R), "products": products}


def product_payload(s: Session, left: str, right: str) -> dict:
    R = s.twisted
    x, y = R.parse_label(left), R.parse_label(right)
    tw = R(x) * R(y)
    B = R.untwisted
    forgot = R.forget_twist(R(x)) * R.forget_twist(R(y))
    return {
        "group": s.group.spec,
        "left": left,
        "right": right,
        "twisted": _terms_twisted(R, tw.coeffs),
        "untwisted": _terms_burnside(B, forgot.coeffs),
        "forget_commutes": R.forget_twist(tw) == forgot,
    }


def invertibles_payload(s: Session) -> dict:
    R = s.twisted
    rep = R.invertibles()
    return {
        "group": s.group.spec,
        "elements": [R.label(k) for k in rep.elements],
        "table": [[R.label(rep.elements[k]) for k in row] for row in rep.table],
        "invariant_factors": rep.invariant_factors,
        "h2_invariant_factors": rep.h2_invariant_factors,
        "verdict": "MATCHES H²(G,k×)" if rep.matches else "DIFFERS FROM H²(G,k×)",
    }


# --- text rendering -------------------------------------------------------


def _grid(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _fmt_terms(terms: list[dict]) -> str:
    if not terms:
        return "0"
    return " + ".join((f"{t['coeff']}*" if t["coeff"] != 1 else "") + t.get("label", t["key"]) for t in terms)


def render_text(command: str, data: dict) -> str:
    if command == "subgroups":
        rows = [[r["key"], r["short"], r["label"], str(r["order"]), str(r["conjugates"]),
                 str(r["normalizer_order"]), " ".join(r["generators"]) or "()"] for r in data["classes"]]
        return f"{data['group']} (order {data['order']})\n" + _grid(
            ["key", "short", "label", "order", "conj", "|N|", "generators"], rows)
    if command == "basis":
        un = [[r["key"], r["label"], str(r["order"])] for r in data["untwisted"]]
        tw = [[r["key"], r["subgroup_label"], "(" + ",".join(map(str, r["h2_coords"])) + ")",
               str(r["projective_rank"])] for r in data["basis"]]
        return (f"untwisted basis of {data['group']}\n" + _grid(["key", "label", "order"], un)
                + f"\n\ntwisted basis (modulus {data['modulus']})\n"
                + _grid(["key", "subgroup", "h2", "rank"], tw))
    if command == "h2":
        out = [f"H^2({data['subgroup']} = {data['subgroup_label']}, k^x) = "
               + (" x ".join(f"Z/{d}" for d in data["invariant_factors"]) or "0")
               + f"  [cocycles mod {data['modulus']}]"]
        for n, g in enumerate(data["generators"]):
            out.append(f"generator {n}: " + ", ".join(f"c({a},{b})={v}" for a, b, v in g))
        return "\n".join(out)
    if command in ("burnside-table", "fusion-table"):
        if command == "fusion-table":
            names = [r["key"] for r in data["basis"]]
        else:
            names = [r["label"] for r in data["basis"]]
        lookup = {(p["left"], p["right"]): p["terms"] for p in data["products"]}
        keys = [r["key"] for r in data["basis"]]
        rows = [[names[a]] + [_fmt_terms(lookup[keys[a], keys[b]]) for b in range(len(keys))]
                for a in range(len(keys))]
        return _grid([data["group"]] + names, rows)
    if command == "product":
        return (f"{data['left']} * {data['right']} = {_fmt_terms(data['twisted'])}\n"
                f"forgetting twists: {_fmt_terms(data['untwisted'])}")
    if command == "invertibles":
        return (f"{len(data['elements'])} invertible basis elements: {', '.join(data['elements'])}\n"
                f"invariant factors {data['invariant_factors']}; "
                f"H^2(G,k^x) invariant factors {data['h2_invariant_factors']}\n{data['verdict']}")
    return json.dumps(data, indent=2, ensure_ascii=False)


def emit(cfg: CliConfig, command: str, data: dict, out):
    if cfg.format == "json":
        text = json.dumps(data, indent=2, ensure_ascii=False)
    else:
        text = render_text(command, data)
    out.write(text + "\n")


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = CliConfig(
        group_spec=ns.group, command=ns.command,
        args=[getattr(ns, a) for a in ("selector", "left", "right") if hasattr(ns, a)],
        format=ns.format, order_cap=ns.order_cap, unknowns_cap=ns.unknowns_cap,
        cache_path=ns.cache, verify_level=ns.verify_level,
    )
    try:
        s = Session(cfg)
        if cfg.command == "verify":
            if cfg.format == "text":
                results = run_all(s.group, s.twisted, cfg.verify_level,
                                  log=lambda r: out.write(r.line() + "\n"))
            else:
                results = run_all(s.group, s.twisted, cfg.verify_level)
                emit(cfg, "verify", {
                    "group": s.group.spec,
                    "level": cfg.verify_level,
                    "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
                }, out)
            return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
        if cfg.command == "subgroups":
            data = subgroups_payload(s)
        elif cfg.command == "basis":
            data = basis_payload(s)
        elif cfg.command == "h2":
            data = h2_payload(s, s.select_class(cfg.args[0]))
        elif cfg.command == "burnside-table":
            data = burnside_table_payload(s)
        elif cfg.command == "fusion-table":
            data = fusion_table_payload(s)
        elif cfg.command == "product":
            data = product_payload(s, *cfg.args)
        else:
            data = invertibles_payload(s)
        emit(cfg, cfg.command, data, out)
        return EXIT_OK
    except SpecParseError as exc:
        err.write(f"fusionring: {exc}\n")
        return EXIT_PARSE
    except KeyError as exc:
        err.write(f"fusionring: {exc.args[0]}\n")
        return EXIT_PARSE
    except CapExceeded as exc:
        err.write(f"fusionring: {exc}\n")
        return EXIT_CAP


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", newline="\n")
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:  # e.g. piped into head
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
