"""Families of matchings whose union covers every edge of a complete graph or a cycle."""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from src.errors import ParameterError


@dataclass(frozen=True)
class MatchingSet:
    """
    matchings[r] is a tuple of disjoint pairs; uncovered[r] is the vertex matchings[r]
    misses, or None when it is perfect.
    """

    order: int
    matchings: tuple[tuple[tuple[int, int], ...], ...]
    uncovered: tuple[Optional[int], ...]

    def __len__(self) -> int:
        return len(self.matchings)

    @cached_property
    def _partners(self) -> tuple[dict[int, int], ...]:
        result = []
        for matching in self.matchings:
            partner = {}
            for a, b in matching:
                partner[a] = b
                partner[b] = a
            result.append(partner)
        return tuple(result)

    def partner(self, r: int, u: int) -> Optional[int]:
        return self._partners[r].get(u)

    def index_containing(self, a: int, b: int) -> list[int]:
        return [r for r in range(len(self.matchings)) if self.partner(r, a) == b]

    def covered_edges(self) -> set[tuple[int, int]]:
        return {(min(a, b), max(a, b)) for matching in self.matchings for a, b in matching}


def complete_matchings(n: int) -> MatchingSet:
    """
    Round-robin 1-factorization of K_n for even n (n - 1 perfect matchings), and for
    odd n the n near-perfect matchings where matchings[r] misses vertex r.

    >>> complete_matchings(4).matchings[0]
    ((0, 3), (1, 2))
    >>> complete_matchings(3).uncovered
    (0, 1, 2)
    """
    if n < 2:
        raise ParameterError(f"K_{n} has no edges to match")
    if n % 2 == 0:
        rounds = n - 1
        matchings = []
        for r in range(rounds):
            pairs = [(r, n - 1)]
            pairs += [((r + k) % rounds, (r - k) % rounds) for k in range(1, n // 2)]
            matchings.append(tuple(pairs))
        return MatchingSet(n, tuple(matchings), (None,) * rounds)
    matchings = [
        tuple(((r + k) % n, (r - k) % n) for k in range(1, (n - 1) // 2 + 1)) for r in range(n)
    ]
    return MatchingSet(n, tuple(matchings), tuple(range(n)))


def cycle_matchings(n: int, count: int = 3) -> MatchingSet:
    """
    Rotations of the maximum matching of the odd cycle C_n that misses vertex 0.
    Three rotations already cover every edge.

    >>> cycle_matchings(5).matchings[1]
    ((2, 3), (4, 0))
    """
    if n < 3 or n % 2 == 0:
        raise ParameterError(f"cycle_matchings needs an odd cycle, got C{n}")
    matchings = [
        tuple(((r + 2 * k + 1) % n, (r + 2 * k + 2) % n) for k in range((n - 1) // 2))
        for r in range(count)
    ]
    return MatchingSet(n, tuple(matchings), tuple(range(count)))
