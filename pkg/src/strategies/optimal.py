"""Strategies read off the exact solver, for whichever side wins the game."""

from typing import Hashable, Iterable, Optional

from src.errors import ApplicabilityError
from src.game import GameState, Move, Player, legal_moves
from src.graphs import Graph
from src.involutive import BlockList, InvolutiveStructure
from src.solver import Solver
from src.strategies.base import Strategy


class OptimalStrategy(Strategy):
    """Plays the first legal move whose resulting position the solver rates as won."""

    name = "solver-optimal"

    def __init__(
        self,
        graph: Graph,
        colors: int,
        first: Player,
        side: Player,
        allowed_blocklists: Optional[Iterable[BlockList]] = None,
        structure: Optional[InvolutiveStructure] = None,
        solver: Optional[Solver] = None,
    ) -> None:
        super().__init__(graph, colors, first)
        self.side = side
        self.solver = solver or Solver(
            graph, colors, first, allowed_blocklists=allowed_blocklists, structure=structure
        )

    def _wins(self, coloring: tuple[int, ...]) -> bool:
        return self.solver.gentle_wins(coloring) == (self.side is Player.GENTLE)

    def select(self, state: GameState) -> Move:
        moves = legal_moves(state)
        for move in moves:
            child = list(state.coloring)
            child[move.vertex] = move.color
            if self._wins(tuple(child)):
                return move
        return moves[0]

    def memo_key(self, state: GameState) -> Hashable:
        return ()


def extract_strategy(
    g: Graph,
    d: int,
    first: Player,
    side: Player,
    allowed_blocklists: Optional[Iterable[BlockList]] = None,
    structure: Optional[InvolutiveStructure] = None,
) -> OptimalStrategy:
    strategy = OptimalStrategy(g, d, first, side, allowed_blocklists, structure)
    if not strategy._wins((0,) * g.n):
        raise ApplicabilityError(f"{side} does not win on {g} with d={d} and {first} first")
    return strategy
