"""
Bookkeeping for the H-fiber discipline on a product H□F.

Case 0: |V(H)| even and Rascal starts; Gentle always answers in the fiber Rascal
just played in.
Case 1: |V(H)| odd, and Rascal starts with |V(F)| even or Gentle starts with
|V(F)| odd. When Rascal opens a fresh fiber Gentle opens another fresh one;
otherwise he answers in Rascal's fiber.
"""

import math
from dataclasses import dataclass
from typing import Optional

from src.errors import ApplicabilityError, InternalError
from src.game import GameState, Move, Player, replay
from src.graphs import Fiber, Graph, ProductGraph
from src.strategies.base import MovePredicate
from src.symmetry import Permutation, automorphisms

H_AXIS = 0


def fiber_case(g: ProductGraph, first: Player, axis: int = H_AXIS) -> int:
    fiber_size = g.orders[axis]
    fiber_count = g.n // fiber_size
    if fiber_size % 2 == 0:
        if first is not Player.RASCAL:
            raise ApplicabilityError(
                f"Fibers of even order {fiber_size} need Rascal to start"
            )
        return 0
    if (fiber_count % 2 == 0) != (first is Player.RASCAL):
        raise ApplicabilityError(
            f"Odd fibers need Rascal first with an even number of fibers or Gentle first "
            f"with an odd number; got {fiber_count} fibers and {first} first"
        )
    return 1


@dataclass(frozen=True)
class FiberTracker:
    axis: int
    case: int
    counts: tuple[int, ...]
    openers: tuple[Optional[Player], ...]
    closers: tuple[Optional[Player], ...]
    fiber_size: int

    @classmethod
    def from_state(cls, g: ProductGraph, state: GameState, axis: int = H_AXIS) -> "FiberTracker":
        fiber_count = g.n // g.orders[axis]
        counts = [0] * fiber_count
        openers: list[Optional[Player]] = [None] * fiber_count
        closers: list[Optional[Player]] = [None] * fiber_count
        size = g.orders[axis]
        for ply in state.history:
            f = g.fiber_of(ply.vertex, axis)
            if counts[f] == 0:
                openers[f] = ply.player
            counts[f] += 1
            if counts[f] == size:
                closers[f] = ply.player
        return cls(
            axis,
            fiber_case(g, state.first, axis),
            tuple(counts),
            tuple(openers),
            tuple(closers),
            size,
        )

    @property
    def fresh(self) -> list[int]:
        return [f for f, count in enumerate(self.counts) if count == 0]

    def is_full(self, f: int) -> bool:
        return self.counts[f] == self.fiber_size


def fiber_constraint(g: ProductGraph, t: FiberTracker, s: GameState) -> set[int]:
    """Fibers Gentle may answer in."""
    if s.mover is not Player.GENTLE:
        raise InternalError("fiber_constraint asked on Rascal's turn")
    last = s.last()
    if last is None:
        if t.case == 0:
            raise InternalError("Case 0 has Rascal moving first")
        allowed = set(t.fresh)
    else:
        if last.player is not Player.RASCAL:
            raise InternalError("Gentle to move after his own move")
        f = g.fiber_of(last.vertex, t.axis)
        if t.case == 1 and t.counts[f] == 1:
            allowed = set(t.fresh)
        else:
            allowed = {f}
    allowed = {f for f in allowed if not t.is_full(f)}
    if not allowed:
        raise InternalError(f"Fiber discipline left Gentle no fiber after {[tuple(p[:2]) for p in s.history]}")
    return allowed


def fiber_conforming(g: ProductGraph, axis: int = H_AXIS) -> MovePredicate:
    """Predicate accepting exactly the Gentle moves that respect the fiber discipline."""

    def predicate(state: GameState, move: Move) -> bool:
        tracker = FiberTracker.from_state(g, state, axis)
        return g.fiber_of(move.vertex, axis) in fiber_constraint(g, tracker, state)

    return predicate


def bookkeeping_violations(g: ProductGraph, state: GameState, axis: int = H_AXIS) -> list[str]:
    """Checks on a finished game in which Gentle kept the fiber discipline."""
    t = FiberTracker.from_state(g, state, axis)
    problems = []
    for f, closer in enumerate(t.closers):
        if closer is not Player.GENTLE:
            problems.append(f"fiber {f} was completed by {closer}")
    if t.case == 0:
        problems.extend(
            f"fiber {f} was opened by Gentle" for f, o in enumerate(t.openers) if o is not Player.RASCAL
        )
    else:
        expected = math.ceil(len(t.counts) / 2)
        opened = sum(1 for o in t.openers if o is Player.GENTLE)
        if opened != expected:
            problems.append(f"Gentle opened {opened} fibers, expected {expected}")
    return problems


def fiber_moves(g: ProductGraph, state: GameState, fiber: Fiber) -> list[tuple[int, int, Player]]:
    """Plies inside `fiber` in play order, with vertices as factor vertices."""
    local = {v: i for i, v in enumerate(fiber.vertices)}
    return [(local[p.vertex], p.color, p.player) for p in state.history if p.vertex in local]


def project_fiber(
    g: ProductGraph, state: GameState, fiber: Fiber, first: Player
) -> GameState:
    """The fiber's sub-game as a game on the factor, with `first` moving first."""
    factor = g.factors[fiber.axis]
    return replay(factor, state.colors, first, [(u, c) for u, c, _ in fiber_moves(g, state, fiber)])


@dataclass(frozen=True)
class Relabeling:
    """
    A vertex automorphism and a color transposition applied together. Used to let an
    inner strategy for "Gentle moves first" run in a fiber Rascal opened: the
    opening is read as the inner strategy's own first move.
    """

    sigma: Permutation
    swap: tuple[int, int]

    def color(self, c: int) -> int:
        a, b = self.swap
        return b if c == a else a if c == b else c

    def to_real(self, u: int, c: int) -> tuple[int, int]:
        return self.sigma(u), self.color(c)

    def to_imagined(self, u: int, c: int) -> tuple[int, int]:
        return self.sigma.inverse()(u), self.color(c)


def transitive_relabeling(
    h: Graph, imagined: tuple[int, int], actual: tuple[int, int]
) -> Relabeling:
    """First automorphism taking the imagined opening vertex to the actual one."""
    w0, col0 = imagined
    u0, a = actual
    for sigma in automorphisms(h):
        if sigma(w0) == u0:
            return Relabeling(sigma, (col0, a))
    raise ApplicabilityError(f"{h} is not vertex-transitive")
