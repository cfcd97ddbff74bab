"""
Gentle's winning strategies on Cartesian products H□F, where H is the first factor
and an H-fiber is a copy of H at a fixed vertex of F. All of them keep the fiber
discipline from `src.strategies.fiber`, so Gentle completes every fiber himself.
"""

import itertools
import logging
from typing import Hashable, Optional, Sequence

import numpy as np

from src.errors import ApplicabilityError
from src.game import GameState, Move, Player, initial_state, replay
from src.graphs import Graph
from src.involutive import (
    BlockList,
    InvolutiveStructure,
    all_block_lists,
    block_list,
    block_type,
    detect_involutive,
    meta_color,
    parity_label,
    weak_composition_count,
)
from src.solver import find_blocklist_set
from src.strategies.common import (
    FiberStrategy,
    is_complete,
    is_cycle,
    is_prime,
    parity_color,
)
from src.strategies.fiber import fiber_case, project_fiber, transitive_relabeling
from src.strategies.matchings import complete_matchings, cycle_matchings
from src.strategies.optimal import OptimalStrategy, extract_strategy
from src.symmetry import automorphisms, distinguishing_coloring, distinguishing_number, relatively_prime

logger = logging.getLogger(__name__)


def _require_relatively_prime(h: Graph, f: Graph) -> None:
    if not relatively_prime(h, f):
        raise ApplicabilityError(f"{h} and {f} are not relatively prime")


class MatchingStrategy(FiberStrategy):
    """
    K_n□K_m with d >= m + 1. Each fiber is tied to one matching of K_n and Gentle
    answers Rascal on the partner vertex with a different color, so every edge of K_n
    ends up bichromatic in some fiber. Completed fibers get pairwise distinct
    meta-colors.
    """

    name = "fiber-matching"

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        super().__init__(graph, colors, first)
        n, m = self.h.n, self.f.n
        if not (is_complete(self.h) and is_complete(self.f)) or n == m:
            raise ApplicabilityError(f"fiber-matching needs K_n□K_m with n != m, got {graph}")
        if colors < m + 1:
            raise ApplicabilityError(f"fiber-matching needs d >= m + 1 = {m + 1}, got {colors}")
        if n % 2 == 0:
            ok, needed = first is Player.RASCAL and m >= n - 1, f"Rascal first and m >= n - 1 = {n - 1}"
        elif m % 2 == 0:
            ok, needed = first is Player.RASCAL and m >= 2 * n - 2, f"Rascal first and m >= 2n - 2 = {2 * n - 2}"
        else:
            ok, needed = first is Player.GENTLE and m >= 2 * n - 1, f"Gentle first and m >= 2n - 1 = {2 * n - 1}"
        if not ok:
            raise ApplicabilityError(f"fiber-matching on {graph} needs {needed}; got m={m}, {first} first")
        self.case = fiber_case(self.product, first)
        self.matchings = complete_matchings(n)

    def assignments(self, state: GameState) -> list[Optional[int]]:
        """Matching index tied to each fiber."""
        fibers = len(self.h_fibers)
        if self.case == 0:
            return [f if f < len(self.matchings) else None for f in range(fibers)]
        assigned: list[Optional[int]] = [None] * fibers
        opened = set()
        for ply in state.history:
            f = self.fiber_of(ply.vertex)
            if f in opened:
                continue
            opened.add(f)
            r = self.local(ply.vertex)
            if r not in assigned:
                assigned[f] = r
        return assigned

    def _color(self, state: GameState, fiber: int, u: int, avoid: Sequence[int]) -> int:
        remaining = self.uncolored_in(state, fiber)
        candidates = [c for c in range(1, self.colors + 1) if c not in avoid]
        if remaining != [u]:
            return candidates[0]
        taken = {
            meta_color(self.fiber_colors(state, g), self.colors)
            for g in range(len(self.h_fibers))
            if g != fiber and not self.uncolored_in(state, g)
        }
        for c in candidates:
            filled = self.fiber_colors(state, fiber)
            filled[u] = c
            if meta_color(filled, self.colors) not in taken:
                return c
        return candidates[0]

    def select(self, state: GameState) -> Move:
        _, fiber, opening = self.target_fiber(state)
        last = state.last()
        avoid = [last.color] if last is not None else []
        assigned = self.assignments(state)
        if opening:
            free = [r for r in range(len(self.matchings)) if r not in assigned]
            u = free[0] if free else 0
        else:
            r = assigned[fiber]
            partner = self.matchings.partner(r, self.local(last.vertex)) if r is not None else None
            remaining = self.uncolored_in(state, fiber)
            u = partner if partner in remaining else remaining[0]
        return self.move(u, fiber, self._color(state, fiber, u, avoid))

    def memo_key(self, state: GameState) -> Hashable:
        return tuple(self.assignments(state)) if self.case == 1 else ()

    def terminal_violations(self, state: GameState) -> list[str]:
        problems = super().terminal_violations(state)
        metas = [meta_color(self.fiber_colors(state, f), self.colors) for f in range(len(self.h_fibers))]
        if len(set(metas)) != len(metas):
            problems.append("two fibers share a meta-color")
        assigned = self.assignments(state)
        for a, b in sorted(self.h.edges):
            if not any(
                r is not None
                and self.matchings.partner(r, a) == b
                and state.coloring[self.at(a, f)] != state.coloring[self.at(b, f)]
                for f, r in enumerate(assigned)
            ):
                problems.append(f"edge {a}-{b} of {self.h} is never bichromatic on its matching")
        return problems


class K2Strategy(FiberStrategy):
    """
    K_2□K_m with d = m colors, Rascal first: Gentle completes Rascal's fiber so that
    no two fibers carry the same pair of colors, with at least one bichromatic fiber.
    """

    name = "k2-complete"
    equivariant = True

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        super().__init__(graph, colors, first)
        m = self.f.n
        if self.h.n != 2 or not is_complete(self.f):
            raise ApplicabilityError(f"k2-complete needs K_2□K_m, got {graph}")
        if m < 5:
            raise ApplicabilityError(f"k2-complete needs m >= 5, got m={m}")
        if first is not Player.RASCAL:
            raise ApplicabilityError("k2-complete needs Rascal to move first")
        if colors < m:
            raise ApplicabilityError(f"k2-complete needs d >= m = {m}, got {colors}")

    def select(self, state: GameState) -> Move:
        _, fiber, _ = self.target_fiber(state)
        a = state.last().color
        u = self.uncolored_in(state, fiber)[0]
        pairs = []
        for f in range(len(self.h_fibers)):
            colors = self.fiber_colors(state, f)
            if f != fiber and 0 not in colors:
                pairs.append(tuple(sorted(colors)))
        last_fiber = len(pairs) == len(self.h_fibers) - 1
        need_bichromatic = last_fiber and all(x == y for x, y in pairs)
        for b in range(1, self.colors + 1):
            if tuple(sorted((a, b))) in pairs or (need_bichromatic and b == a):
                continue
            return self.move(u, fiber, b)
        return self.move(u, fiber, a)

    def memo_key(self, state: GameState) -> Hashable:
        return ()

    def terminal_violations(self, state: GameState) -> list[str]:
        problems = super().terminal_violations(state)
        pairs = [tuple(sorted(self.fiber_colors(state, f))) for f in range(len(self.h_fibers))]
        if len(set(pairs)) != len(pairs):
            problems.append("two fibers carry the same color pair")
        if all(x == y for x, y in pairs):
            problems.append("no fiber is bichromatic")
        return problems


class BlockListStrategy(FiberStrategy):
    """
    H□F with H involutive and relatively prime to F, Rascal first. In the first fiber
    Rascal touches, Gentle plays an inner strategy that wins on H while reaching a
    block-list in L. Everywhere else he answers on the partner vertex bar(u) and steers
    the fiber's block-list to a target that encodes a distinguishing coloring of F.
    """

    name = "blocklist"

    def __init__(
        self,
        graph: Graph,
        colors: int,
        first: Player,
        structure: Optional[InvolutiveStructure] = None,
        allowed: Optional[Sequence[BlockList]] = None,
        inner: Optional[OptimalStrategy] = None,
        f_coloring: Optional[Sequence[int]] = None,
    ) -> None:
        super().__init__(graph, colors, first)
        if first is not Player.RASCAL:
            raise ApplicabilityError("blocklist needs Rascal to move first")
        self.structure = structure or detect_involutive(self.h)
        if self.structure is None:
            raise ApplicabilityError(f"{self.h} is not involutive")
        _require_relatively_prime(self.h, self.f)
        blocks = self.structure.block_count
        if allowed is None:
            allowed = find_blocklist_set(self.h, colors, self.structure)
            if allowed is None:
                raise ApplicabilityError(f"No small block-list set lets Gentle win on {self.h} with d={colors}")
        self.allowed = list(allowed)
        self.f_coloring = tuple(f_coloring or distinguishing_coloring(self.f, distinguishing_number(self.f)))
        values = sorted(set(self.f_coloring))
        available = weak_composition_count(blocks, colors)
        needed = len(values) - 1 + len(self.allowed)
        if available < needed:
            raise ApplicabilityError(
                f"blocklist needs C({blocks}+{colors // 2}, {colors // 2}) = {available} >= "
                f"(D(F) - 1) + |L| = {needed}"
            )
        ordered = all_block_lists(blocks, colors)
        self.outside = [b for b in ordered if b not in self.allowed]
        self.home = min(self.allowed, key=ordered.index)
        self.inner = inner or extract_strategy(
            self.h, colors, Player.RASCAL, Player.GENTLE, self.allowed, self.structure
        )
        logger.info("%s: L = %s, F coloring %s", self, ", ".join(map(str, self.allowed)), self.f_coloring)

    def targets(self, v1: int) -> dict[int, BlockList]:
        """Target block-list per value of the F coloring, given Rascal's first fiber v1."""
        own = self.f_coloring[v1]
        others = [x for x in sorted(set(self.f_coloring)) if x != own]
        mapping = dict(zip(others, self.outside))
        mapping[own] = self.home
        return mapping

    def _v1(self, state: GameState) -> Optional[int]:
        return self.fiber_of(state.history[0].vertex) if state.history else None

    def _projected(self, state: GameState, fiber: int) -> GameState:
        return project_fiber(self.product, state, self.h_fibers[fiber], Player.RASCAL)

    def select(self, state: GameState) -> Move:
        _, fiber, _ = self.target_fiber(state)
        v1 = self._v1(state)
        if fiber == v1:
            inner = self.inner.select(self._projected(state, fiber))
            return self.move(inner.vertex, fiber, inner.color)
        last = state.last()
        u = self.structure.bar(self.local(last.vertex))
        target = self.targets(v1)[self.f_coloring[fiber]]
        colors = self.fiber_colors(state, fiber)
        done = [0] * len(target.counts)
        for x, y in self.structure.blocks:
            if colors[x] and colors[y]:
                done[block_type(colors[x], colors[y], self.colors)] += 1
        quota = [want - have for want, have in zip(target.counts, done)]
        t = next((i for i, q in enumerate(quota) if q > 0), 0)
        return self.move(u, fiber, (last.color - 1 - t) % self.colors + 1)

    def memo_key(self, state: GameState) -> Hashable:
        v1 = self._v1(state)
        if v1 is None:
            return ()
        return v1, self.inner.memo_key(self._projected(state, v1))

    def terminal_violations(self, state: GameState) -> list[str]:
        problems = super().terminal_violations(state)
        v1 = self._v1(state)
        targets = self.targets(v1)
        for f in range(len(self.h_fibers)):
            got = block_list(self.structure, self.fiber_colors(state, f), self.colors)
            if f == v1:
                if got not in self.allowed:
                    problems.append(f"first fiber {f} ended with block-list {got} outside L")
            elif got != targets[self.f_coloring[f]]:
                problems.append(f"fiber {f} ended with block-list {got}, wanted {targets[self.f_coloring[f]]}")
        return problems


def three_color_refinement(f: Graph) -> tuple[int, ...]:
    """Lexicographically first distinguishing coloring of f using each of 1, 2 and 3."""
    auts = automorphisms(f)
    nontrivial = auts.table[[not p.is_identity() for p in auts.elements]]
    for candidate in itertools.product((1, 2, 3), repeat=f.n):
        if len(set(candidate)) < 3:
            continue
        c = np.asarray(candidate)
        if not (c[nontrivial] == c).all(axis=1).any():
            return candidate
    raise ApplicabilityError(f"{f} has no distinguishing coloring using exactly three colors")


class C4C6Strategy(FiberStrategy):
    """
    C_4□F or C_6□F with two colors, Rascal first. The fiber at v gets block-list
    (n/2 - k, k) with k = c(v) - 1 for a distinguishing 3-coloring c of F, and the block
    through vertex 0 is bichromatic whenever k >= 1.
    """

    name = "c4c6"

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        super().__init__(graph, colors, first)
        if not is_cycle(self.h) or self.h.n not in (4, 6):
            raise ApplicabilityError(f"c4c6 needs C_4 or C_6 as first factor, got {self.h}")
        if colors != 2:
            raise ApplicabilityError(f"c4c6 plays with exactly two colors, got {colors}")
        if first is not Player.RASCAL:
            raise ApplicabilityError("c4c6 needs Rascal to move first")
        if self.f.n < 3:
            raise ApplicabilityError(f"c4c6 needs a second factor with at least 3 vertices, got {self.f}")
        if distinguishing_number(self.f) > 3:
            raise ApplicabilityError(f"D({self.f}) > 3")
        _require_relatively_prime(self.h, self.f)
        self.structure = detect_involutive(self.h)
        self.f_coloring = three_color_refinement(self.f)
        self.axis_block = self.structure.block_of(0)

    def target(self, fiber: int) -> BlockList:
        k = self.f_coloring[fiber] - 1
        return BlockList((self.structure.block_count - k, k), 2)

    def select(self, state: GameState) -> Move:
        _, fiber, _ = self.target_fiber(state)
        last = state.last()
        x = self.local(last.vertex)
        u = self.structure.bar(x)
        target = self.target(fiber)
        k = target.counts[1]
        current = self.structure.block_of(x)
        if current == self.axis_block and k >= 1:
            t = 1
        else:
            colors = self.fiber_colors(state, fiber)
            zeros = sum(1 for a, b in self.structure.blocks if colors[a] and colors[a] == colors[b])
            t = 0 if target.counts[0] - zeros > 0 else 1
        return self.move(u, fiber, last.color if t == 0 else 3 - last.color)

    def memo_key(self, state: GameState) -> Hashable:
        return ()

    def terminal_violations(self, state: GameState) -> list[str]:
        problems = super().terminal_violations(state)
        a, b = self.structure.blocks[self.axis_block]
        for f in range(len(self.h_fibers)):
            colors = self.fiber_colors(state, f)
            got = block_list(self.structure, colors, 2)
            if got != self.target(f):
                problems.append(f"fiber {f} ended with block-list {got}, wanted {self.target(f)}")
            if self.target(f).counts[1] and colors[a] == colors[b]:
                problems.append(f"fiber {f} has a monochromatic block through vertex 0")
        return problems


class ParityStrategy(FiberStrategy):
    """
    H□F with H vertex-transitive, D(F) <= 2 and the factors relatively prime. Gentle
    plays a winning strategy for H inside each fiber until one fiber v0 is complete;
    after that he sets the last vertex of each other fiber so that the parity labels
    of all fibers spell a distinguishing 2-coloring of F.
    """

    name = "parity"

    def __init__(self, graph: Graph, colors: int, first: Player, inner: Optional[OptimalStrategy] = None) -> None:
        super().__init__(graph, colors, first)
        if not automorphisms(self.h).is_transitive():
            raise ApplicabilityError(f"{self.h} is not vertex-transitive")
        if distinguishing_number(self.h) < 2:
            raise ApplicabilityError(f"{self.h} is asymmetric")
        base = distinguishing_coloring(self.f, 2)
        if base is None:
            raise ApplicabilityError(f"D({self.f}) > 2")
        _require_relatively_prime(self.h, self.f)
        self.case = fiber_case(self.product, first)
        self.base = base
        inner_first = Player.RASCAL if self.case == 0 else Player.GENTLE
        self.inner_first = inner_first
        self.inner = inner or extract_strategy(self.h, colors, inner_first, Player.GENTLE)
        self.opening = self.inner.select(initial_state(self.h, colors, Player.GENTLE)) if self.case == 1 else None

    def labels(self, state: GameState, v0: int) -> tuple[int, ...]:
        """The 2-coloring of F, flipped if needed so that it agrees with fiber v0."""
        own = parity_label([1 if c == 1 else 2 for c in self.fiber_colors(state, v0)])
        if self.base[v0] == own:
            return self.base
        return tuple(3 - x for x in self.base)

    def _imagined(self, state: GameState, fiber: int):
        """The fiber's sub-game as the inner strategy sees it, and the map back."""
        plies = [p for p in state.history if self.fiber_of(p.vertex) == fiber]
        if self.case == 0 or plies[0].player is Player.GENTLE:
            return project_fiber(self.product, state, self.h_fibers[fiber], self.inner_first), None
        relabel = transitive_relabeling(self.h, tuple(self.opening), (self.local(plies[0].vertex), plies[0].color))
        moves = [relabel.to_imagined(self.local(p.vertex), p.color) for p in plies]
        return replay(self.h, self.colors, Player.GENTLE, moves), relabel

    def select(self, state: GameState) -> Move:
        _, fiber, opening = self.target_fiber(state)
        if opening:
            return self.move(self.opening.vertex, fiber, self.opening.color)
        v0 = self.first_completed(state)
        remaining = self.uncolored_in(state, fiber)
        if v0 is not None and len(remaining) == 1:
            u = remaining[0]
            others = [c for i, c in enumerate(self.fiber_colors(state, fiber)) if i != u]
            return self.move(u, fiber, parity_color(others, self.labels(state, v0)[fiber]))
        imagined, relabel = self._imagined(state, fiber)
        inner = self.inner.select(imagined)
        u, c = relabel.to_real(inner.vertex, inner.color) if relabel else (inner.vertex, inner.color)
        return self.move(u, fiber, c)

    def memo_key(self, state: GameState) -> Hashable:
        t = self.tracker(state)
        firsts = {}
        for p in state.history:
            firsts.setdefault(self.fiber_of(p.vertex), (p.vertex, p.color))
        return self.first_completed(state), t.openers, tuple(sorted(firsts.items()))

    def terminal_violations(self, state: GameState) -> list[str]:
        problems = super().terminal_violations(state)
        v0 = self.first_completed(state)
        labels = self.labels(state, v0)
        for f in range(len(self.h_fibers)):
            got = parity_label([1 if c == 1 else 2 for c in self.fiber_colors(state, f)])
            if got != labels[f]:
                problems.append(f"fiber {f} has parity label {got}, wanted {labels[f]}")
        return problems


class PrimeCycleStrategy(FiberStrategy):
    """
    C_n□C_m with n an odd prime, m >= 7 odd, two colors and Gentle first. Three of the
    fibers Gentle opens follow rotations of a maximum matching of C_n so every edge is
    bichromatic somewhere; every fiber's parity label follows a distinguishing
    2-coloring of C_m.
    """

    name = "prime-cycle"

    def __init__(self, graph: Graph, colors: int, first: Player) -> None:
        super().__init__(graph, colors, first)
        n, m = self.h.n, self.f.n
        if not (is_cycle(self.h) and is_cycle(self.f)):
            raise ApplicabilityError(f"prime-cycle needs two cycles, got {graph}")
        if not is_prime(n) or n % 2 == 0:
            raise ApplicabilityError(f"prime-cycle needs n to be an odd prime, got n={n}")
        if m % 2 == 0 or m < 7 or m == n:
            raise ApplicabilityError(f"prime-cycle needs m >= 7 odd and different from n, got m={m}")
        if colors != 2 or first is not Player.GENTLE:
            raise ApplicabilityError("prime-cycle plays with two colors and Gentle first")
        fiber_case(self.product, first)
        self.matchings = cycle_matchings(n)
        self.labels = distinguishing_coloring(self.f, 2)
        self.flip = ((n - 1) // 2) % 2 == 1

    def designated(self, state: GameState) -> list[int]:
        """Fibers Gentle opened first, in opening order, up to three."""
        t = self.tracker(state)
        order = []
        for p in state.history:
            f = self.fiber_of(p.vertex)
            if t.openers[f] is Player.GENTLE and f not in order:
                order.append(f)
        return order[: len(self.matchings)]

    def select(self, state: GameState) -> Move:
        _, fiber, opening = self.target_fiber(state)
        chosen = self.designated(state)
        remaining = self.uncolored_in(state, fiber)
        if opening:
            k = len(chosen)
            if k < len(self.matchings):
                color = 3 - self.labels[fiber] if self.flip else self.labels[fiber]
                return self.move(self.matchings.uncovered[k], fiber, color)
            return self.move(remaining[0], fiber, 1)
        last = state.last()
        if fiber in chosen:
            partner = self.matchings.partner(chosen.index(fiber), self.local(last.vertex))
            return self.move(partner, fiber, 3 - last.color)
        if len(remaining) == 1:
            others = [c for i, c in enumerate(self.fiber_colors(state, fiber)) if i != remaining[0]]
            return self.move(remaining[0], fiber, parity_color(others, self.labels[fiber]))
        return self.move(remaining[0], fiber, 1)

    def memo_key(self, state: GameState) -> Hashable:
        return tuple(self.designated(state))

    def terminal_violations(self, state: GameState) -> list[str]:
        problems = super().terminal_violations(state)
        for f in range(len(self.h_fibers)):
            got = parity_label(self.fiber_colors(state, f))
            if got != self.labels[f]:
                problems.append(f"fiber {f} has parity label {got}, wanted {self.labels[f]}")
        return problems
