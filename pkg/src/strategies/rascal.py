"""Rascal's winning strategies."""

from typing import Hashable, Optional

from src.errors import ApplicabilityError
from src.game import GameState, Move, Player
from src.graphs import Graph
from src.solver import certificate_is_valid, infinity_certificate
from src.strategies.base import MovePredicate, Strategy
from src.strategies.common import is_complete, require_product
from src.strategies.fiber import H_AXIS, fiber_conforming
from src.symmetry import Permutation


def _filler(state: GameState) -> Move:
    return Move(state.uncolored()[0], 1)


class MirrorStrategy(Strategy):
    """
    Rascal answers u with sigma(u) in the same color, for a nontrivial involution sigma,
    so the final coloring is sigma-invariant. Needs |V| even with Gentle first or |V|
    odd with Rascal first.
    """

    name = "mirror"
    side = Player.RASCAL
    terminal_checks = True

    def __init__(self, graph: Graph, colors: int, first: Player, sigma: Optional[Permutation] = None) -> None:
        super().__init__(graph, colors, first)
        sigma = sigma or infinity_certificate(graph, first)
        if sigma is None or not certificate_is_valid(graph, first, sigma):
            raise ApplicabilityError(f"No mirror involution on {graph} with {first} first")
        self.sigma = sigma
        self.fixed = sigma.fixed_points()

    def _fixed_move(self, state: GameState) -> Move:
        free = [v for v in self.fixed if state.coloring[v] == 0]
        return Move(free[0], 1) if free else _filler(state)

    def select(self, state: GameState) -> Move:
        last = state.last()
        if last is None:
            return self._fixed_move(state)
        w = self.sigma(last.vertex)
        if w != last.vertex and state.coloring[w] == 0:
            return Move(w, last.color)
        return self._fixed_move(state)

    def memo_key(self, state: GameState) -> Hashable:
        return ()

    def terminal_violations(self, state: GameState) -> list[str]:
        c = state.coloring
        if any(c[self.sigma(v)] != c[v] for v in range(self.graph.n)):
            return [f"final coloring is not invariant under {self.sigma}"]
        return []


class K2KmRascalStrategy(Strategy):
    """
    K_2□K_m with m >= 5 and fewer than m colors, Rascal first: Rascal keeps fibers
    topped with color 1 and copies a completed fiber into a half-colored one whenever
    he can, so two fibers end up colored alike.
    """

    name = "k2km-rascal"
    side = Player.RASCAL

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        super().__init__(graph, colors, first)
        self.product = require_product(graph)
        h, f = self.product.factors
        if h.n != 2 or not is_complete(f) or f.n < 5:
            raise ApplicabilityError(f"k2km-rascal needs K_2□K_m with m >= 5, got {graph}")
        if colors >= f.n:
            raise ApplicabilityError(f"k2km-rascal needs d < m = {f.n}, got {colors}")
        if first is not Player.RASCAL:
            raise ApplicabilityError("k2km-rascal needs Rascal to move first")
        self.m = f.n

    def side_vertex(self, row: int, j: int) -> int:
        return self.product.vertex((row, j))

    def column(self, state: GameState, j: int) -> tuple[int, int]:
        return state.coloring[self.side_vertex(0, j)], state.coloring[self.side_vertex(1, j)]

    def _won(self, state: GameState) -> bool:
        full = [self.column(state, j) for j in range(self.m) if 0 not in self.column(state, j)]
        return len(set(full)) < len(full)

    def _copy(self, state: GameState) -> Optional[Move]:
        columns = [self.column(state, j) for j in range(self.m)]
        full = [c for c in columns if 0 not in c]
        for i, (top, bottom) in enumerate(columns):
            if (top == 0) == (bottom == 0):
                continue
            for c in full:
                if top and c[0] == top:
                    return Move(self.side_vertex(1, i), c[1])
                if bottom and c[1] == bottom:
                    return Move(self.side_vertex(0, i), c[0])
        return None

    def _empty(self, state: GameState) -> Optional[int]:
        return next((j for j in range(self.m) if self.column(state, j) == (0, 0)), None)

    def select(self, state: GameState) -> Move:
        own = state.moves_of(Player.RASCAL)
        if not own:
            return Move(self.side_vertex(0, 0), 1)
        if self._won(state):
            return _filler(state)
        copy = self._copy(state)
        if copy is not None:
            return copy
        gentle_first = state.moves_of(Player.GENTLE)[0]
        empty = self._empty(state)
        if gentle_first.vertex == self.side_vertex(1, 0):
            return Move(self.side_vertex(0, empty), 1) if empty is not None else _filler(state)
        g = self.product.position(gentle_first.vertex, 1)
        if len(own) == 1:
            a = next(j for j in range(self.m) if j not in (0, g))
            return Move(self.side_vertex(0, a), 1)
        if len(own) == 2 and empty is not None:
            return Move(self.side_vertex(0, empty), 1)
        if len(own) == 3 and state.coloring[self.side_vertex(1, 0)] == 0:
            return Move(self.side_vertex(1, 0), 1)
        return _filler(state)

    def memo_key(self, state: GameState) -> Hashable:
        gentle = state.moves_of(Player.GENTLE)
        return (gentle[0].vertex if gentle else None,) + tuple(p.vertex for p in state.moves_of(Player.RASCAL)[:3])


class AntiFiberStrategy(Strategy):
    """
    K_n□K_m against a Gentle who keeps the fiber discipline, below the thresholds of the
    fiber-matching strategy. Rascal builds a base row b, then makes a second row equal
    to it.
    """

    name = "antifiber"
    side = Player.RASCAL
    requires_constrained_opponent = True

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        super().__init__(graph, colors, first)
        self.product = require_product(graph)
        h, f = self.product.factors
        n, m = h.n, f.n
        if not (is_complete(h) and is_complete(f)) or n == m:
            raise ApplicabilityError(f"antifiber needs K_n□K_m with n != m, got {graph}")
        rascal_case = first is Player.RASCAL and n % 2 == 1 and m % 2 == 0 and m < 2 * n - 2
        gentle_case = first is Player.GENTLE and n % 2 == 1 and m % 2 == 1 and m < 2 * n - 1
        if not (rascal_case or gentle_case):
            raise ApplicabilityError(
                f"antifiber needs n odd with Rascal first, m even, m < 2n - 2 or Gentle first, "
                f"m odd, m < 2n - 1; got n={n}, m={m}, {first} first"
            )
        self.n, self.m = n, m
        self.phase_one = m // 2 if first is Player.RASCAL else (m - 1) // 2

    def opponent_predicate(self) -> MovePredicate:
        return fiber_conforming(self.product, H_AXIS)

    def at(self, i: int, j: int) -> int:
        return self.product.vertex((i, j))

    def base_row(self, state: GameState) -> int:
        if self.first is Player.RASCAL:
            return 0
        return self.product.position(state.history[0].vertex, H_AXIS)

    def row(self, state: GameState, i: int) -> list[int]:
        return [state.coloring[self.at(i, j)] for j in range(self.m)]

    def column(self, state: GameState, j: int) -> list[int]:
        return [state.coloring[self.at(i, j)] for i in range(self.n)]

    def _won(self, state: GameState) -> bool:
        full = [tuple(self.row(state, i)) for i in range(self.n) if 0 not in self.row(state, i)]
        return len(set(full)) < len(full)

    def select(self, state: GameState) -> Move:
        if self._won(state):
            return _filler(state)
        b = self.base_row(state)
        if len(state.moves_of(Player.RASCAL)) < self.phase_one:
            fresh = next((j for j in range(self.m) if not any(self.column(state, j))), None)
            if fresh is not None:
                return Move(self.at(b, fresh), 1)
        base = self.row(state, b)
        for j, c in enumerate(base):
            if c == 0:
                seen = [x for x in self.column(state, j) if x]
                return Move(self.at(b, j), seen[0] if seen else 1)
        for t in range(self.n):
            if t == b:
                continue
            row = self.row(state, t)
            if all(x in (0, y) for x, y in zip(row, base)) and 0 in row:
                j = row.index(0)
                return Move(self.at(t, j), base[j])
        return _filler(state)

    def memo_key(self, state: GameState) -> Hashable:
        return (self.base_row(state),) if state.history else ()
