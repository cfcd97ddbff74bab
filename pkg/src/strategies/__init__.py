from typing import Callable

from src.errors import ParameterError
from src.game import Player
from src.graphs import Graph
from src.solver import solve
from src.strategies.base import AdversaryMode, Strategy, VerificationReport, verify_strategy
from src.strategies.gentle import (
    BlockListStrategy,
    C4C6Strategy,
    K2Strategy,
    MatchingStrategy,
    ParityStrategy,
    PrimeCycleStrategy,
)
from src.strategies.optimal import OptimalStrategy, extract_strategy
from src.strategies.rascal import AntiFiberStrategy, K2KmRascalStrategy, MirrorStrategy


def _optimal(graph: Graph, colors: int, first: Player) -> OptimalStrategy:
    winner = solve(graph, colors, first).winner
    return extract_strategy(graph, colors, first, winner)


STRATEGIES: dict[str, Callable[[Graph, int, Player], Strategy]] = {
    MatchingStrategy.name: MatchingStrategy,
    K2Strategy.name: K2Strategy,
    BlockListStrategy.name: BlockListStrategy,
    C4C6Strategy.name: C4C6Strategy,
    ParityStrategy.name: ParityStrategy,
    PrimeCycleStrategy.name: PrimeCycleStrategy,
    MirrorStrategy.name: MirrorStrategy,
    K2KmRascalStrategy.name: K2KmRascalStrategy,
    AntiFiberStrategy.name: AntiFiberStrategy,
    OptimalStrategy.name: _optimal,
}


def build_strategy(name: str, graph: Graph, colors: int, first: Player) -> Strategy:
    """Instantiate a named strategy; ApplicabilityError when its hypotheses fail."""
    try:
        factory = STRATEGIES[name]
    except KeyError:
        raise ParameterError(f"Unknown strategy {name!r}; choose from {', '.join(STRATEGIES)}") from None
    return factory(graph, colors, first)


def default_mode(strategy: Strategy) -> AdversaryMode:
    predicate = strategy.opponent_predicate()
    if strategy.requires_constrained_opponent and predicate is not None:
        return AdversaryMode.constrained(predicate)
    return AdversaryMode.exhaustive()


__all__ = [
    "STRATEGIES",
    "AdversaryMode",
    "Strategy",
    "VerificationReport",
    "build_strategy",
    "default_mode",
    "verify_strategy",
]
