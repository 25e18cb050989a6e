"""Recursive-descent parser for textual group specifications.

Grammar::

    spec   := atom ("x" atom)*
    atom   := "C" int | "D" int | "S" int | "A" int | "Q8"
            | "perm:" int ":" cycles
    cycles := cycle (";" cycle)*
    cycle  := "(" int ("," int)+ ")"

``D<n>`` is the dihedral group of order ``2n``.  Points in ``perm:`` cycles
are 0-based; each cycle is one generator.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_PARAM = 10_000


class SpecParseError(ValueError):
    """Raised on malformed group specs; ``position`` is a 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


@dataclass(frozen=True)
class Atom:
    family: str  # one of C, D, S, A, Q8, perm
    n: int = 0
    degree: int = 0
    cycles: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class GroupPlan:
    text: str
    factors: tuple[Atom, ...]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise SpecParseError(message, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        value = int(self.text[start:self.pos])
        if value > MAX_PARAM:
            self.error(f"integer {value} out of range", start)
        return value

    def spec(self) -> GroupPlan:
        if not self.text:
            self.error("empty group spec")
        factors = [self.atom()]
        while self.peek() == "x":
            self.pos += 1
            factors.append(self.atom())
        if self.pos != len(self.text):
            self.error("unexpected token")
        return GroupPlan(self.text, tuple(factors))

    def atom(self) -> Atom:
        start = self.pos
        if self.text.startswith("perm:", self.pos):
            self.pos += 5
            degree = self.integer()
            if degree < 1:
                self.error("degree must be positive", start + 5)
            self.expect(":")
            cycles = [self.cycle(degree)]
            while self.peek() == ";":
                self.pos += 1
                cycles.append(self.cycle(degree))
            return Atom("perm", degree=degree, cycles=tuple(cycles))
        if self.text.startswith("Q8", self.pos):
            self.pos += 2
            return Atom("Q8", n=8)
        family = self.peek()
        if family not in ("C", "D", "S", "A"):
            self.error("unknown group family")
        self.pos += 1
        n = self.integer()
        if n < 1:
            self.error("group parameter must be positive", start + 1)
        return Atom(family, n=n)

    def cycle(self, degree: int) -> tuple[int, ...]:
        self.expect("(")
        points = []
        while True:
            at = self.pos
            p = self.integer()
            if p >= degree:
                self.error(f"point {p} out of range for degree {degree}", at)
            if p in points:
                self.error(f"repeated point {p} in cycle", at)
            points.append(p)
            if self.peek() == ",":
                self.pos += 1
                continue
            break
        if len(points) < 2:
            self.error("cycle needs at least two points")
        self.expect(")")
        return tuple(points)


def parse_spec(text: str) -> GroupPlan:
    """Parse ``text`` into a construction plan, raising :class:`SpecParseError`."""
    return _Parser(text.strip()).spec()
