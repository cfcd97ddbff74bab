"""Rules of the distinguishing game: positions, legal moves and terminal verdicts."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Optional

from src.errors import ParameterError, RuleError
from src.graphs import Graph
from src.symmetry import Permutation, automorphisms, color_stabilizer


class Player(str, Enum):
    GENTLE = "gentle"
    RASCAL = "rascal"

    @property
    def other(self) -> "Player":
        return Player.RASCAL if self is Player.GENTLE else Player.GENTLE

    @classmethod
    def parse(cls, name: str) -> "Player":
        try:
            return cls(name.lower())
        except ValueError:
            raise ParameterError(f"Unknown player {name!r}; expected gentle or rascal")

    def __str__(self) -> str:
        return self.value.capitalize()


class Move(NamedTuple):
    vertex: int
    color: int


class Ply(NamedTuple):
    vertex: int
    color: int
    player: Player


@dataclass(frozen=True)
class GameState:
    """
    A position. `coloring[v]` is 0 while v is uncolored. Never mutated; apply_move
    returns a new state.
    """

    graph: Graph
    colors: int
    first: Player
    coloring: tuple[int, ...]
    history: tuple[Ply, ...] = ()

    @property
    def mover(self) -> Player:
        return self.first if len(self.history) % 2 == 0 else self.first.other

    @property
    def colored_count(self) -> int:
        return len(self.history)

    def is_terminal(self) -> bool:
        return len(self.history) == self.graph.n

    def uncolored(self) -> list[int]:
        return [v for v, c in enumerate(self.coloring) if c == 0]

    def last(self) -> Optional[Ply]:
        return self.history[-1] if self.history else None

    def moves_of(self, player: Player) -> list[Ply]:
        return [p for p in self.history if p.player is player]


@dataclass(frozen=True)
class Verdict:
    winner: Player
    witness: Optional[Permutation] = None


def initial_state(g: Graph, d: int, first: Player) -> GameState:
    if d < 1:
        raise ParameterError(f"The palette needs at least one color, got d={d}")
    return GameState(g, d, first, (0,) * g.n)


def legal_moves(s: GameState) -> list[Move]:
    """Uncolored vertices ascending, colors ascending within each vertex."""
    return [
        Move(v, c) for v in range(s.graph.n) if s.coloring[v] == 0 for c in range(1, s.colors + 1)
    ]


def is_legal(s: GameState, move: Move) -> bool:
    vertex, color = move
    return 0 <= vertex < s.graph.n and s.coloring[vertex] == 0 and 1 <= color <= s.colors


def apply_move(s: GameState, move: Move) -> GameState:
    vertex, color = move
    if not 0 <= vertex < s.graph.n:
        raise RuleError(f"Vertex {vertex} is not a vertex of {s.graph}")
    if s.coloring[vertex] != 0:
        raise RuleError(f"Vertex {vertex} is already colored {s.coloring[vertex]}")
    if not 1 <= color <= s.colors:
        raise RuleError(f"Color {color} is outside the palette 1..{s.colors}")
    coloring = list(s.coloring)
    coloring[vertex] = color
    return GameState(
        s.graph,
        s.colors,
        s.first,
        tuple(coloring),
        s.history + (Ply(vertex, color, s.mover),),
    )


def evaluate_terminal(s: GameState) -> Verdict:
    if not s.is_terminal():
        raise ParameterError(
            f"Position has {s.graph.n - s.colored_count} uncolored vertices; the game is not over"
        )
    stabilizer = color_stabilizer(s.graph, s.coloring, automorphisms(s.graph))
    witnesses = stabilizer.nontrivial()
    if not witnesses:
        return Verdict(Player.GENTLE)
    return Verdict(Player.RASCAL, witnesses[0])


def replay(g: Graph, d: int, first: Player, moves: Iterable[tuple[int, int]]) -> GameState:
    state = initial_state(g, d, first)
    for vertex, color in moves:
        state = apply_move(state, Move(vertex, color))
    return state
