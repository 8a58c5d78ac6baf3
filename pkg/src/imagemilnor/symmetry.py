"""Cycle types, signs and class sizes for symmetric groups and Young subgroups."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple


@dataclass(frozen=True, order=True)
class CycleType:
    """A partition of k, stored as nonincreasing cycle lengths."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"cycle lengths must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def cycles(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict:
        return dict(Counter(self.parts))

    def is_identity(self) -> bool:
        return all(p == 1 for p in self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_of(k: int) -> List[CycleType]:
    """All partitions of k in reverse lexicographic order, (k) first."""
    if k < 1:
        raise ValueError("k must be at least 1")

    def gen(rest: int, cap: int) -> Iterator[Tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [CycleType(p) for p in gen(k, k)]


def sign_of(c: CycleType) -> int:
    return -1 if (c.k - c.cycles) % 2 else 1


def class_size(c: CycleType) -> int:
    """Number of permutations of S_k with cycle type c."""
    denom = 1
    for length, alpha in c.multiplicities.items():
        denom *= length ** alpha * math.factorial(alpha)
    return math.factorial(c.k) // denom


@dataclass(frozen=True)
class YoungClass:
    types: Tuple[CycleType, ...]  # one cycle type per block
    size: int
    sign: int

    @property
    def cycles(self) -> int:
        return sum(t.cycles for t in self.types)

    def is_identity(self) -> bool:
        return all(t.is_identity() for t in self.types)

    def __str__(self):
        return "".join(str(t) for t in self.types)


@dataclass(frozen=True)
class YoungSubgroup:
    blocks: Tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValueError(f"block sizes must be positive: {self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return sum(self.blocks)

    @property
    def order(self) -> int:
        return math.prod(math.factorial(b) for b in self.blocks)

    def classes(self) -> List[YoungClass]:
        return young_cycle_types(self.blocks)


def young_cycle_types(blocks: Sequence[int]) -> List[YoungClass]:
    """Conjugacy classes of S_{m_1} x ... x S_{m_g}, identity first."""
    per_block = [list(reversed(partitions_of(m))) for m in blocks]
    out = []
    for combo in itertools.product(*per_block):
        size = math.prod(class_size(c) for c in combo)
        sign = math.prod(sign_of(c) for c in combo)
        out.append(YoungClass(tuple(combo), size, sign))
    return out
