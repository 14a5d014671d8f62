"""Node labels and exact phase arithmetic.

Phases are exact rational multiples of pi, normalized into the half-open
interval [-pi, pi).  The label "pi" is therefore stored as -pi; rules that
match a pi phase match the normalized value.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class Phase:
    """A phase (num/den)*pi, in lowest terms, with -den <= num < den."""

    num: int
    den: int

    @staticmethod
    def of(num: int, den: int = 1) -> Phase:
        if den == 0:
            raise ValueError("phase denominator must be nonzero")
        f = Fraction(num, den)
        # reduce mod 2 into [-1, 1), in units of pi
        f = (f + 1) % 2 - 1
        return Phase(f.numerator, f.denominator)

    def __add__(self, other: Phase) -> Phase:
        return Phase.of(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __neg__(self) -> Phase:
        return Phase.of(-self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def is_pi(self) -> bool:
        # pi normalizes to -pi under the [-pi, pi) convention
        return self.num == -1 and self.den == 1

    def as_float(self) -> float:
        import math
        return math.pi * self.num / self.den

    def to_json(self) -> dict:
        return {"num": self.num, "den": self.den}

    @staticmethod
    def from_json(obj: dict) -> Phase:
        return Phase.of(int(obj["num"]), int(obj["den"]))

    def __str__(self) -> str:
        if self.num == 0:
            return "0"
        if self.den == 1:
            return f"{self.num}π"
        return f"{self.num}π/{self.den}"


ZERO = Phase.of(0)
PI = Phase.of(1)  # stored as -pi


# label kinds
OPEN = "open"
GREEN = "green"
RED = "red"
HADAMARD = "h"
DIAMOND = "diamond"

KINDS = (OPEN, GREEN, RED, HADAMARD, DIAMOND)
SPIDER_KINDS = (GREEN, RED)


@dataclass(frozen=True, order=True)
class NodeLabel:
    """A node sort: open, green(phase), red(phase), h, or diamond."""

    kind: str
    phase: Phase | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown label kind {self.kind!r}")
        if (self.phase is not None) != (self.kind in SPIDER_KINDS):
            raise ValueError(f"label {self.kind!r} takes a phase iff it is a spider")

    def is_open(self) -> bool:
        return self.kind == OPEN

    def to_json(self) -> dict:
        obj: dict = {"label": self.kind}
        if self.phase is not None:
            obj["phase"] = self.phase.to_json()
        return obj

    @staticmethod
    def from_json(obj: dict) -> NodeLabel:
        kind = obj["label"]
        if kind in SPIDER_KINDS:
            return NodeLabel(kind, Phase.from_json(obj["phase"]))
        return NodeLabel(kind)

    def __str__(self) -> str:
        if self.phase is not None:
            return f"{self.kind}({self.phase})"
        return self.kind


OPEN_LABEL = NodeLabel(OPEN)
H_LABEL = NodeLabel(HADAMARD)
DIAMOND_LABEL = NodeLabel(DIAMOND)


def green(phase: Phase = ZERO) -> NodeLabel:
    return NodeLabel(GREEN, phase)


def red(phase: Phase = ZERO) -> NodeLabel:
    return NodeLabel(RED, phase)


# Permitted (src kind, tgt kind) pairs.  Every non-open sort talks only to
# the open sort; the open sort has a self-loop (wires); diamond is isolated.
EDGE_TABLE = frozenset({
    (OPEN, OPEN),
    (OPEN, GREEN), (GREEN, OPEN),
    (OPEN, RED), (RED, OPEN),
    (OPEN, HADAMARD), (HADAMARD, OPEN),
})


def edge_permitted(src: NodeLabel, tgt: NodeLabel) -> bool:
    return (src.kind, tgt.kind) in EDGE_TABLE
