"""Strategy interface and the adversary search that checks a strategy wins."""

import logging
import random
import sys
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, ClassVar, Hashable, Optional

import numpy as np
from tqdm import tqdm

from src.errors import ApplicabilityError, InternalError, ResourceError
from src.game import GameState, Move, Player, apply_move, initial_state, is_legal, legal_moves
from src.graphs import Graph
from src.stacks.stack import Stack
from src.symmetry import automorphisms, canonical_form

logger = logging.getLogger(__name__)

MovePredicate = Callable[[GameState, Move], bool]


class Strategy(ABC):
    """
    A deterministic move rule for one side.

    `memo_key` summarizes the part of the history, beyond the coloring, that later
    choices depend on. The verifier treats two positions with equal coloring and equal
    memo_key as the same node. `equivariant` strategies commute with every graph
    automorphism, so the verifier may identify positions up to symmetry.
    """

    name: ClassVar[str] = "strategy"
    side: ClassVar[Player]
    requires_constrained_opponent: ClassVar[bool] = False
    terminal_checks: ClassVar[bool] = False
    equivariant: ClassVar[bool] = False

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        self.graph = graph
        self.colors = colors
        self.first = first

    @abstractmethod
    def select(self, state: GameState) -> Move:
        """Move for `state`; called only when it is this strategy's side to move."""

    def memo_key(self, state: GameState) -> Hashable:
        return state.history

    def terminal_violations(self, state: GameState) -> list[str]:
        return []

    def opponent_predicate(self) -> Optional[MovePredicate]:
        return None

    def __str__(self) -> str:
        return f"{self.name} ({self.side} on {self.graph}, d={self.colors}, {self.first} first)"


@dataclass(frozen=True)
class AdversaryMode:
    kind: str
    samples: int = 0
    seed: int = 0
    predicate: Optional[MovePredicate] = None

    @classmethod
    def exhaustive(cls) -> "AdversaryMode":
        return cls("exhaustive")

    @classmethod
    def sampled(cls, samples: int, seed: int = 0, predicate: Optional[MovePredicate] = None) -> "AdversaryMode":
        return cls("sampled", samples=samples, seed=seed, predicate=predicate)

    @classmethod
    def constrained(cls, predicate: MovePredicate) -> "AdversaryMode":
        return cls("constrained", predicate=predicate)


@dataclass
class VerificationReport:
    strategy: str
    side: Player
    mode: str
    wins: bool = True
    games: int = 0
    nodes: int = 0
    elapsed: float = 0.0
    counterexample: Optional[list[tuple[int, int]]] = None
    violations: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not self.wins:
            return "counterexample"
        return "win-all-sampled" if self.mode == "sampled" else "win-all"


class _Terminal:
    """Fast terminal and settled-position checks on one graph."""

    def __init__(self, graph: Graph) -> None:
        table = automorphisms(graph).table
        identity = np.arange(graph.n)
        self.nontrivial = table[~(table == identity).all(axis=1)]
        self.moved = self.nontrivial != identity

    def winner(self, coloring: tuple[int, ...]) -> Player:
        c = np.asarray(coloring)
        if (c[self.nontrivial] == c).all(axis=1).any():
            return Player.RASCAL
        return Player.GENTLE

    def settled(self, coloring: tuple[int, ...]) -> Optional[Player]:
        """The winner when no completion of this partial coloring can change it."""
        c = np.asarray(coloring)
        if not len(self.nontrivial):
            return Player.GENTLE
        images = c[self.nontrivial]
        colored = c != 0
        kept = ~self.moved | (colored & (images == c))
        if kept.all(axis=1).any():
            return Player.RASCAL
        broken = (images != c) & (images != 0) & colored
        if broken.any(axis=1).all():
            return Player.GENTLE
        return None


def _moves_text(state: GameState) -> list[tuple[int, int]]:
    return [(p.vertex, p.color) for p in state.history]


def _own_move(strat: Strategy, state: GameState) -> GameState:
    move = strat.select(state)
    if not is_legal(state, move):
        raise InternalError(f"{strat.name} chose illegal move {move} after {_moves_text(state)}")
    return apply_move(state, move)


def _check_terminal(
    strat: Strategy, state: GameState, checker: _Terminal, report: VerificationReport
) -> bool:
    report.games += 1
    problems = []
    winner = checker.winner(state.coloring)
    if winner is not strat.side:
        problems.append(f"{winner} won")
    problems.extend(strat.terminal_violations(state))
    if problems:
        report.wins = False
        report.counterexample = _moves_text(state)
        report.violations.extend(problems)
        return False
    return True


def verify_strategy(
    g: Graph,
    d: int,
    first: Player,
    strat: Strategy,
    mode: AdversaryMode,
    node_cap: int = 20_000_000,
) -> VerificationReport:
    """
    Play `strat` against every (exhaustive, constrained) or randomly sampled
    opponent line. Stops at the first lost game and records its moves.
    """
    if strat.requires_constrained_opponent and mode.predicate is None:
        raise ApplicabilityError(
            f"{strat.name} is only claimed against a constrained opponent; use the constrained mode"
        )
    report = VerificationReport(strat.name, strat.side, mode.kind)
    checker = _Terminal(g)
    started = time.monotonic()
    if mode.kind == "sampled":
        _sampled(g, d, first, strat, mode, checker, report)
    elif mode.kind in ("exhaustive", "constrained"):
        _exhaustive(g, d, first, strat, mode.predicate, checker, report, node_cap)
    else:
        raise ApplicabilityError(f"Unknown adversary mode {mode.kind!r}")
    report.elapsed = time.monotonic() - started
    logger.info(
        "%s: %s after %d games, %d nodes, %.1fs",
        strat, report.verdict, report.games, report.nodes, report.elapsed,
    )
    return report


def _exhaustive(
    g: Graph,
    d: int,
    first: Player,
    strat: Strategy,
    predicate: Optional[MovePredicate],
    checker: _Terminal,
    report: VerificationReport,
    node_cap: int,
) -> None:
    auts = automorphisms(g) if strat.equivariant else None
    seen: set = set()
    stack: Stack[GameState] = Stack()
    stack.push(initial_state(g, d, first))
    while stack:
        state = stack.pop()
        report.nodes += 1
        if report.nodes > node_cap:
            raise ResourceError(
                f"Adversary search passed {node_cap} nodes",
                {"nodes": report.nodes, "games": report.games, "open": stack.size()},
            )
        if state.is_terminal():
            if not _check_terminal(strat, state, checker, report):
                return
            continue
        if state.mover is strat.side:
            stack.push(_own_move(strat, state))
            continue
        if not strat.terminal_checks and checker.settled(state.coloring) is strat.side:
            report.games += 1
            continue
        position = canonical_form(auts, state.coloring, palette=False) if auts else state.coloring
        key = (position, strat.memo_key(state))
        if key in seen:
            continue
        seen.add(key)
        moves = legal_moves(state)
        if predicate is not None:
            moves = [m for m in moves if predicate(state, m)]
            if not moves:
                raise InternalError(f"No opponent move satisfies the constraint after {_moves_text(state)}")
        for move in reversed(moves):
            stack.push(apply_move(state, move))


def _sampled(
    g: Graph,
    d: int,
    first: Player,
    strat: Strategy,
    mode: AdversaryMode,
    checker: _Terminal,
    report: VerificationReport,
) -> None:
    rng = random.Random(mode.seed)
    for _ in tqdm(range(mode.samples), desc=strat.name, disable=not sys.stderr.isatty()):
        state = initial_state(g, d, first)
        while not state.is_terminal():
            report.nodes += 1
            if state.mover is strat.side:
                state = _own_move(strat, state)
            else:
                moves = legal_moves(state)
                if mode.predicate is not None:
                    moves = [m for m in moves if mode.predicate(state, m)]
                    if not moves:
                        raise InternalError(f"No opponent move satisfies the constraint after {_moves_text(state)}")
                state = apply_move(state, rng.choice(moves))
        if not _check_terminal(strat, state, checker, report):
            return
