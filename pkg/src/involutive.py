"""
Involutive graphs and the census objects built on colorings of them: blocks,
block types, block-lists, meta-colors and parity labels.
"""

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from src.errors import ParameterError
from src.graphs import Graph
from src.symmetry import DEFAULT_AUT_CAP, Permutation, automorphisms


@dataclass(frozen=True)
class InvolutiveStructure:
    """A graph with a fixed-point-free involution `bar` that commutes with every automorphism."""

    graph: Graph
    bar: Permutation

    def __post_init__(self) -> None:
        if len(self.bar) != self.graph.n:
            raise ParameterError("bar must act on the vertices of the graph")
        if not self.bar.is_involution() or self.bar.fixed_points():
            raise ParameterError(f"bar {self.bar} is not a fixed-point-free involution")
        table = automorphisms(self.graph).table
        sigma = np.asarray(self.bar.image)
        if not (table[:, sigma] == sigma[table]).all():
            raise ParameterError(f"bar {self.bar} does not commute with Aut({self.graph})")

    @cached_property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        """Pairs (u, bar(u)) with u < bar(u), ordered by u."""
        return tuple((u, self.bar(u)) for u in range(self.graph.n) if u < self.bar(u))

    @property
    def block_count(self) -> int:
        return self.graph.n // 2

    def block_of(self, u: int) -> int:
        return self.blocks.index((min(u, self.bar(u)), max(u, self.bar(u))))


def block_type(a: int, b: int, d: int) -> int:
    """
    Palette distance class of a block colored (a, b), colors 1-based.

    >>> block_type(1, 2, 2)
    1
    >>> block_type(1, 3, 4)
    2
    """
    if not (1 <= a <= d and 1 <= b <= d):
        raise ParameterError(f"Colors ({a}, {b}) are outside the palette 1..{d}")
    t = (a - b) % d
    if t <= d // 2:
        return t
    return (b - a) % d


@dataclass(frozen=True)
class BlockList:
    """Counts (n_0, ..., n_{d//2}) of blocks of each type."""

    counts: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))
        if len(self.counts) != self.d // 2 + 1 or any(c < 0 for c in self.counts):
            raise ParameterError(
                f"Block-list {self.counts} needs {self.d // 2 + 1} nonnegative counts for d={self.d}"
            )

    @property
    def blocks(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.counts)) + ")"


def block_list(s: InvolutiveStructure, c: Sequence[int], d: int) -> BlockList:
    if len(c) != s.graph.n or any(x < 1 for x in c):
        raise ParameterError("block_list needs a full coloring")
    counts = [0] * (d // 2 + 1)
    for u, w in s.blocks:
        counts[block_type(c[u], c[w], d)] += 1
    return BlockList(tuple(counts), d)


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def all_block_lists(blocks: int, d: int) -> list[BlockList]:
    """Every block-list for `blocks` blocks, type-0 count descending first."""
    return [BlockList(c, d) for c in _weak_compositions(blocks, d // 2 + 1)]


def weak_composition_count(blocks: int, d: int) -> int:
    if blocks < 0 or d < 1:
        raise ParameterError(f"Need blocks >= 0 and d >= 1, got {blocks}, {d}")
    return math.comb(blocks + d // 2, d // 2)


def detect_involutive(
    g: Graph, cap: int = DEFAULT_AUT_CAP
) -> Optional[InvolutiveStructure]:
    """First central fixed-point-free involution of Aut(g) in enumeration order, or None."""
    if g.n % 2:
        return None
    auts = automorphisms(g, cap)
    table = auts.table
    for sigma in auts.involutions():
        if sigma.fixed_points():
            continue
        image = np.asarray(sigma.image)
        if (table[:, image] == image[table]).all():
            return InvolutiveStructure(g, sigma)
    return None


@dataclass(frozen=True)
class MetaColor:
    """counts[l - 1] is the number of fiber vertices colored l."""

    counts: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.counts)


def meta_color(fiber_coloring: Sequence[int], d: int) -> MetaColor:
    if any(not 1 <= x <= d for x in fiber_coloring):
        raise ParameterError("meta_color needs a fully colored fiber within the palette")
    tally = Counter(fiber_coloring)
    return MetaColor(tuple(tally.get(l, 0) for l in range(1, d + 1)))


def parity_label(fiber_coloring: Sequence[int]) -> int:
    """1 when an odd number of vertices carry color 1, else 2."""
    if any(x not in (1, 2) for x in fiber_coloring):
        raise ParameterError("parity_label needs a fiber fully colored from {1, 2}")
    return 1 if sum(1 for x in fiber_coloring if x == 1) % 2 else 2
