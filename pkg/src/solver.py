"""
Exact minimax for the distinguishing game.

Positions are memoized on exact canonical forms. At each node only one move per
orbit of the color-preserving stabilizer is tried, and only the used colors plus
one fresh color. Both reductions preserve the game value.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from src.errors import ParameterError, ResourceError
from src.game import Move, Player, apply_move, initial_state
from src.graphs import Graph
from src.involutive import (
    BlockList,
    InvolutiveStructure,
    all_block_lists,
    block_type,
    detect_involutive,
)
from src.symmetry import DEFAULT_AUT_CAP, Permutation, automorphisms, canonical_form

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**9
_CLOCK_EVERY = 4096


@dataclass(frozen=True)
class GameValue:
    winner: Player
    nodes: int
    elapsed: float
    colors: int
    first: Player


@dataclass
class GdnResult:
    """kind is one of finite, infinite, unknown_at_least."""

    kind: str
    value: Optional[int] = None
    certificate: Optional[Permutation] = None
    certificate_kind: Optional[str] = None
    winners: dict[int, Player] = field(default_factory=dict)
    nodes: int = 0
    notes: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "infinite":
            return "infinity"
        return f">={self.value}"


class Solver:
    """
    Minimax over one (graph, palette, first player) game.

    Args:
        memoize: False turns off every reduction (memo, orbits, palette, pruning);
            the result is a plain exhaustive minimax used as an oracle.
        allowed_blocklists: when given with `structure`, Gentle also needs the final
            block-list to be in this set.
    """

    def __init__(
        self,
        graph: Graph,
        colors: int,
        first: Player,
        memoize: bool = True,
        node_budget: int = DEFAULT_NODE_BUDGET,
        time_budget: Optional[float] = None,
        allowed_blocklists: Optional[Iterable[BlockList]] = None,
        structure: Optional[InvolutiveStructure] = None,
        aut_cap: int = DEFAULT_AUT_CAP,
    ) -> None:
        if colors < 1:
            raise ParameterError(f"The palette needs at least one color, got d={colors}")
        self.graph = graph
        self.colors = colors
        self.first = first
        self.memoize = memoize
        self.node_budget = node_budget
        self.time_budget = time_budget
        self.auts = automorphisms(graph, aut_cap)
        self.table = self.auts.table
        self.nontrivial = self.table[[not p.is_identity() for p in self.auts.elements]]
        self.allowed: Optional[frozenset[tuple[int, ...]]] = None
        self.blocks: Optional[np.ndarray] = None
        if allowed_blocklists is not None:
            if structure is None or structure.graph != graph:
                raise ParameterError("A block-list constraint needs the involutive structure of the graph")
            self.allowed = frozenset(tuple(b.counts) for b in allowed_blocklists)
            self.blocks = np.array(structure.blocks, dtype=np.int64)
            self.type_table = np.array(
                [[0] * (colors + 1)]
                + [[0] + [block_type(a, b, colors) for b in range(1, colors + 1)] for a in range(1, colors + 1)],
                dtype=np.int64,
            )
        # block types are not invariant under palette permutations once d >= 4
        self.palette = self.allowed is None or colors <= 3
        self.memo: dict = {}
        self.nodes = 0
        self._started = 0.0

    def _gentle_to_move(self, colored: int) -> bool:
        return (colored % 2 == 0) == (self.first is Player.GENTLE)

    def _terminal_gentle_wins(self, c: np.ndarray) -> bool:
        if (c[self.nontrivial] == c).all(axis=1).any():
            return False
        if self.allowed is None:
            return True
        types = self.type_table[c[self.blocks[:, 0]], c[self.blocks[:, 1]]]
        counts = tuple(int(x) for x in np.bincount(types, minlength=self.colors // 2 + 1))
        return counts in self.allowed

    def _already_broken(self, c: np.ndarray) -> bool:
        """Every nontrivial automorphism already maps some colored vertex onto a different color."""
        if not len(self.nontrivial):
            return True
        images = c[self.nontrivial]
        broken = (images != c) & (images != 0) & (c != 0)
        return bool(broken.any(axis=1).all())

    def _moves(self, c: np.ndarray) -> list[Move]:
        uncolored = np.flatnonzero(c == 0)
        if not self.memoize:
            return [Move(int(v), k) for v in uncolored for k in range(1, self.colors + 1)]
        stabilizer = self.table[(c[self.table] == c).all(axis=1)]
        representatives = [int(v) for v in uncolored if stabilizer[:, v].min() == v]
        if self.palette:
            used = sorted({int(x) for x in c if x})
            fresh = next((k for k in range(1, self.colors + 1) if k not in used), None)
            palette = used + ([fresh] if fresh is not None else [])
        else:
            palette = list(range(1, self.colors + 1))
        return [Move(v, k) for v in representatives for k in palette]

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise ResourceError(
                f"Node budget {self.node_budget} exhausted on {self.graph} with d={self.colors}",
                self.stats(),
            )
        if self.time_budget is not None and self.nodes % _CLOCK_EVERY == 0:
            if time.monotonic() - self._started > self.time_budget:
                raise ResourceError(
                    f"Time budget {self.time_budget}s exhausted on {self.graph} with d={self.colors}",
                    self.stats(),
                )

    def _search(self, c: np.ndarray, colored: int) -> bool:
        self._tick()
        if colored == self.graph.n:
            return self._terminal_gentle_wins(c)
        if self.memoize:
            if self.allowed is None and self._already_broken(c):
                return True
            key = canonical_form(self.auts, c, self.palette)
            cached = self.memo.get(key)
            if cached is not None:
                return cached
        gentle = self._gentle_to_move(colored)
        result = not gentle
        for vertex, color in self._moves(c):
            c[vertex] = color
            child = self._search(c, colored + 1)
            c[vertex] = 0
            if child == gentle:
                result = gentle
                break
        if self.memoize:
            self.memo[key] = result
        return result

    def gentle_wins(self, coloring: Iterable[int]) -> bool:
        """Value of the position with this partial coloring (0 = uncolored)."""
        c = np.array(list(coloring), dtype=np.int64)
        if c.shape != (self.graph.n,) or (c < 0).any() or (c > self.colors).any():
            raise ParameterError("Coloring does not fit the graph and palette")
        if not self._started:
            self._started = time.monotonic()
        return self._search(c, int(np.count_nonzero(c)))

    def value(self, coloring: Optional[Iterable[int]] = None) -> GameValue:
        self._started = time.monotonic()
        start_nodes = self.nodes
        gentle = self.gentle_wins(coloring if coloring is not None else (0,) * self.graph.n)
        elapsed = time.monotonic() - self._started
        winner = Player.GENTLE if gentle else Player.RASCAL
        logger.debug(
            "%s d=%d %s first: %s wins, %d nodes, %d memo entries, %.2fs",
            self.graph, self.colors, self.first, winner, self.nodes - start_nodes, len(self.memo), elapsed,
        )
        return GameValue(winner, self.nodes - start_nodes, elapsed, self.colors, self.first)

    def stats(self) -> dict:
        return {
            "graph": self.graph.name(),
            "colors": self.colors,
            "first": self.first.value,
            "nodes": self.nodes,
            "memo_entries": len(self.memo),
        }


def solve(
    g: Graph,
    d: int,
    first: Player,
    memoize: bool = True,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: Optional[float] = None,
) -> GameValue:
    return Solver(g, d, first, memoize, node_budget, time_budget).value()


def solve_constrained(
    g: Graph,
    d: int,
    first: Player,
    allowed_blocklists: Iterable[BlockList],
    bar: InvolutiveStructure,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> GameValue:
    """Gentle must reach a distinguishing coloring whose block-list is allowed."""
    allowed = list(allowed_blocklists)
    for b in allowed:
        if b.d != d or b.blocks != bar.block_count:
            raise ParameterError(f"Block-list {b} does not fit {g} with d={d}")
    return Solver(
        g, d, first, node_budget=node_budget, allowed_blocklists=allowed, structure=bar
    ).value()


def solve_with_fixed_first_move(
    g: Graph, d: int, first: Player, move: tuple[int, int], node_budget: int = DEFAULT_NODE_BUDGET
) -> GameValue:
    state = apply_move(initial_state(g, d, first), Move(*move))
    return Solver(g, d, first, node_budget=node_budget).value(state.coloring)


def infinity_certificate(g: Graph, first: Player) -> Optional[Permutation]:
    """
    A nontrivial involution that lets Rascal mirror every move: needs |V| even when
    Gentle starts and |V| odd when Rascal starts. The central involution is preferred,
    then the first fixed-point-free one, then any.
    """
    if (g.n % 2 == 0) != (first is Player.GENTLE):
        return None
    structure = detect_involutive(g)
    if structure is not None:
        return structure.bar
    involutions = automorphisms(g).involutions()
    for sigma in involutions:
        if not sigma.fixed_points():
            return sigma
    return involutions[0] if involutions else None


def certificate_is_valid(g: Graph, first: Player, sigma: Permutation) -> bool:
    parity_ok = (g.n % 2 == 0) == (first is Player.GENTLE)
    return parity_ok and sigma.is_involution() and sigma in automorphisms(g)


def game_distinguishing_number(
    g: Graph,
    first: Player,
    cap: int,
    check_monotone: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> GdnResult:
    """
    Least d for which Gentle wins. Infinity is reported from a mirror involution or,
    when every d up to |V| loses, from palette saturation: for d >= |V| a fresh color
    is always available, so all those games share one reduced game tree.
    """
    if cap < 1:
        raise ParameterError(f"cap must be >= 1, got {cap}")
    sigma = infinity_certificate(g, first)
    if sigma is not None:
        logger.info("%s with %s first: mirror certificate %s", g, first, sigma)
        return GdnResult("infinite", certificate=sigma, certificate_kind="involution")

    result = GdnResult("unknown_at_least", value=cap + 1)
    for d in range(1, cap + 1):
        value = solve(g, d, first, node_budget=node_budget)
        result.winners[d] = value.winner
        result.nodes += value.nodes
        if value.winner is Player.GENTLE:
            result.kind, result.value = "finite", d
            if check_monotone:
                _check_monotone(g, first, d, node_budget, result)
            return result
        if d >= g.n:
            result.kind, result.value = "infinite", None
            result.certificate_kind = "saturation"
            return result
    return result


def _check_monotone(g: Graph, first: Player, d: int, node_budget: int, result: GdnResult) -> None:
    following = solve(g, d + 1, first, node_budget=node_budget)
    result.nodes += following.nodes
    result.winners[d + 1] = following.winner
    if following.winner is not Player.GENTLE:
        message = f"monotonicity fails on {g} with {first} first: Gentle wins with {d} colors but not {d + 1}"
        logger.error(message)
        result.notes.append(message)


def find_blocklist_set(
    h: Graph, d: int, bar: InvolutiveStructure, max_size: int = 2
) -> Optional[list[BlockList]]:
    """Smallest allowed set L (then first in order) for which Gentle, moving second, still wins."""
    candidates = all_block_lists(bar.block_count, d)
    for size in range(1, max_size + 1):
        for chosen in itertools.combinations(candidates, size):
            if solve_constrained(h, d, Player.RASCAL, chosen, bar).winner is Player.GENTLE:
                logger.info("block-list set for %s, d=%d: %s", h, d, ", ".join(map(str, chosen)))
                return list(chosen)
    return None
