"""Helpers shared by the product strategies."""

from typing import Iterable, Optional

from src.errors import ApplicabilityError
from src.game import GameState, Move, Player
from src.graphs import Graph, ProductGraph
from src.strategies.base import Strategy
from src.strategies.fiber import H_AXIS, FiberTracker, bookkeeping_violations, fiber_constraint


def require_product(graph: Graph, factors: int = 2) -> ProductGraph:
    if not isinstance(graph, ProductGraph) or len(graph.factors) != factors:
        raise ApplicabilityError(f"{graph} is not a product of {factors} factors")
    return graph


def is_complete(g: Graph) -> bool:
    return len(g.edges) == g.n * (g.n - 1) // 2


def is_cycle(g: Graph) -> bool:
    return g.n >= 3 and len(g.edges) == g.n and all(g.degree(u) == 2 for u in range(g.n)) and g.is_connected()


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def parity_color(others: Iterable[int], target: int) -> int:
    """Color for the last vertex of a fiber so its parity label becomes `target`."""
    ones = sum(1 for c in others if c == 1)
    return 2 if (ones % 2 == 1) == (target == 1) else 1


class FiberStrategy(Strategy):
    """Gentle strategy that keeps the H-fiber discipline on H□F, H being factor 0."""

    side = Player.GENTLE
    terminal_checks = True

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        super().__init__(graph, colors, first)
        self.product = require_product(graph)
        self.h, self.f = self.product.factors
        self.h_fibers = self.product.fibers(H_AXIS)

    def tracker(self, state: GameState) -> FiberTracker:
        return FiberTracker.from_state(self.product, state)

    def is_opening(self, t: FiberTracker, state: GameState) -> bool:
        """Gentle has to open a fresh fiber rather than answer in Rascal's."""
        last = state.last()
        if last is None:
            return True
        return t.case == 1 and t.counts[self.fiber_of(last.vertex)] == 1

    def target_fiber(self, state: GameState) -> tuple[FiberTracker, int, bool]:
        t = self.tracker(state)
        return t, min(fiber_constraint(self.product, t, state)), self.is_opening(t, state)

    def fiber_of(self, v: int) -> int:
        return self.product.fiber_of(v, H_AXIS)

    def local(self, v: int) -> int:
        return self.product.position(v, H_AXIS)

    def at(self, u: int, fiber: int) -> int:
        return self.product.vertex((u, fiber))

    def fiber_colors(self, state: GameState, fiber: int) -> list[int]:
        return [state.coloring[v] for v in self.h_fibers[fiber].vertices]

    def uncolored_in(self, state: GameState, fiber: int) -> list[int]:
        return [u for u, c in enumerate(self.fiber_colors(state, fiber)) if c == 0]

    def first_completed(self, state: GameState) -> Optional[int]:
        counts = [0] * len(self.h_fibers)
        for ply in state.history:
            f = self.fiber_of(ply.vertex)
            counts[f] += 1
            if counts[f] == self.h.n:
                return f
        return None

    def terminal_violations(self, state: GameState) -> list[str]:
        return bookkeeping_violations(self.product, state)

    def move(self, u: int, fiber: int, color: int) -> Move:
        return Move(self.at(u, fiber), color)
