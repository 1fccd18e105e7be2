"""Z2 x Z2 degrees and the commutation sign rule."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True, order=True)
class Degree:
    a1: int = 0
    a2: int = 0

    def __post_init__(self):
        if self.a1 not in (0, 1) or self.a2 not in (0, 1):
            raise ValueError(f"degree components must be bits, got ({self.a1}, {self.a2})")

    def __add__(self, other: Degree) -> Degree:
        return Degree(self.a1 ^ other.a1, self.a2 ^ other.a2)

    def __str__(self):
        return f"{self.a1}{self.a2}"

    def __repr__(self):
        return f"Degree({self.a1},{self.a2})"

    @classmethod
    def parse(cls, text: str) -> Degree:
        text = text.strip()
        if len(text) != 2 or any(c not in "01" for c in text):
            raise ValueError(f"bad degree string {text!r}")
        return cls(int(text[0]), int(text[1]))

    def __mul__(self, k: int) -> Degree:
        # k copies of self; only parity matters
        return self if k % 2 else ZERO

    __rmul__ = __mul__


ZERO = Degree(0, 0)
D01 = Degree(0, 1)
D10 = Degree(1, 0)
D11 = Degree(1, 1)

ALL_DEGREES = tuple(Degree(a, b) for a, b in product((0, 1), repeat=2))


def add(a: Degree, b: Degree) -> Degree:
    return a + b


def inner(a: Degree, b: Degree) -> int:
    """Inner product a1*b1 + a2*b2 reduced mod 2."""
    return (a.a1 * b.a1 + a.a2 * b.a2) & 1


def sign(a: Degree, b: Degree) -> int:
    """(-1)**inner(a, b): +1 when the bracket is a commutator, -1 for an anticommutator."""
    return -1 if inner(a, b) else 1
