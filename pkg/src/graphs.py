"""Simple undirected graphs, the four named families and Cartesian products with fibers."""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Optional

import networkx as nx
import numpy as np

from src.errors import ParameterError

logger = logging.getLogger(__name__)

FAMILY_MINIMUM: dict[str, int] = {
    "cycle": 3,
    "path": 2,
    "complete": 2,
    "hypercube": 1,
}
FAMILY_LETTER: dict[str, str] = {
    "cycle": "C",
    "path": "P",
    "complete": "K",
    "hypercube": "Q",
}


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1. Edges are stored as (u, v) with u < v."""

    n: int
    edges: frozenset[tuple[int, int]]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"A graph needs at least one vertex, got n={self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ParameterError(f"Loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ParameterError(f"Edge {u}-{v} leaves the vertex range 0..{self.n - 1}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], label: Optional[str] = None
    ) -> "Graph":
        return cls(n, frozenset(edges), label)

    @classmethod
    def from_networkx(cls, g: nx.Graph, label: Optional[str] = None) -> "Graph":
        """Relabel the nodes of `g` by their sorted order."""
        index = {node: i for i, node in enumerate(sorted(g.nodes))}
        return cls.from_edges(
            len(index), ((index[a], index[b]) for a, b in g.edges), label
        )

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        neighbors: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(frozenset(s) for s in neighbors)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(sorted(self.edges))
        return g

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def name(self) -> str:
        return self.label or f"G(n={self.n}, m={len(self.edges)})"

    def __str__(self) -> str:
        return self.name()


@dataclass(frozen=True)
class Fiber:
    """Vertices of a product that vary only along `axis`; `key` holds the fixed co-coordinates."""

    axis: int
    index: int
    key: tuple[int, ...]
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ProductGraph(Graph):
    """Cartesian product with row-major numbering: the last coordinate varies fastest."""

    factors: tuple[Graph, ...] = ()

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(f.n for f in self.factors)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        strides = []
        step = 1
        for order in reversed(self.orders):
            strides.append(step)
            step *= order
        return tuple(reversed(strides))

    @cached_property
    def coords(self) -> np.ndarray:
        """coords[v] is the coordinate tuple of vertex v, one column per factor."""
        return np.array(
            np.unravel_index(np.arange(self.n), self.orders), dtype=np.int64
        ).T

    def coord(self, v: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.coords[v])

    def vertex(self, coord: Iterable[int]) -> int:
        return int(sum(c * s for c, s in zip(coord, self.strides)))

    def position(self, v: int, axis: int) -> int:
        return int(self.coords[v, axis])

    @cached_property
    def fiber_index(self) -> np.ndarray:
        """fiber_index[axis, v] is the index of the fiber through v along axis."""
        table = np.zeros((len(self.factors), self.n), dtype=np.int64)
        for axis in range(len(self.factors)):
            rest = [i for i in range(len(self.factors)) if i != axis]
            sub_orders = [self.orders[i] for i in rest]
            table[axis] = np.ravel_multi_index(
                tuple(self.coords[:, i] for i in rest), sub_orders
            )
        return table

    def fiber_of(self, v: int, axis: int) -> int:
        return int(self.fiber_index[axis, v])

    def fibers(self, axis: int) -> list[Fiber]:
        if not 0 <= axis < len(self.factors):
            raise ParameterError(
                f"Axis {axis} out of range for a product of {len(self.factors)} factors"
            )
        return list(self._fibers[axis])

    @cached_property
    def _fibers(self) -> tuple[tuple[Fiber, ...], ...]:
        result = []
        for axis in range(len(self.factors)):
            count = self.n // self.orders[axis]
            members: list[list[int]] = [[] for _ in range(count)]
            # ascending v visits each fiber in factor-vertex order
            for v in range(self.n):
                members[self.fiber_of(v, axis)].append(v)
            result.append(
                tuple(
                    Fiber(
                        axis,
                        i,
                        tuple(c for j, c in enumerate(self.coord(vs[0])) if j != axis),
                        tuple(vs),
                    )
                    for i, vs in enumerate(members)
                )
            )
        return tuple(result)

    def fiber_graph(self, fiber: Fiber) -> Graph:
        """The subgraph induced by `fiber`, relabeled by factor vertex."""
        local = {v: i for i, v in enumerate(fiber.vertices)}
        return Graph.from_edges(
            len(fiber.vertices),
            ((local[u], local[v]) for u, v in self.edges if u in local and v in local),
        )


def generate(family: str, size: int) -> Graph:
    """
    Build a member of one of the named families.

    Args:
        family (str): one of cycle, path, complete, hypercube.
        size (int): order for cycle/path/complete, dimension for hypercube.

    Returns:
        Graph: the family member, labeled e.g. "C5".
    """
    if family not in FAMILY_MINIMUM:
        raise ParameterError(
            f"Unknown family {family!r}; expected one of {', '.join(FAMILY_MINIMUM)}"
        )
    minimum = FAMILY_MINIMUM[family]
    if size < minimum:
        raise ParameterError(f"{family} needs size >= {minimum}, got {size}")
    label = f"{FAMILY_LETTER[family]}{size}"
    if family == "cycle":
        return Graph.from_networkx(nx.cycle_graph(size), label)
    if family == "path":
        return Graph.from_networkx(nx.path_graph(size), label)
    if family == "complete":
        return Graph.from_networkx(nx.complete_graph(size), label)
    # hypercube nodes are bit tuples; the most significant bit comes first
    cube = nx.hypercube_graph(size)
    number = {node: int("".join(map(str, node)), 2) for node in cube.nodes}
    return Graph.from_edges(
        2**size, ((number[a], number[b]) for a, b in cube.edges), label
    )


def _flatten(node) -> tuple:
    if isinstance(node, tuple):
        return sum((_flatten(part) for part in node), ())
    return (node,)


def cartesian_product(factors: list[Graph]) -> ProductGraph:
    """
    Cartesian product of two or more connected factors, iterated left to right.
    Factors that are themselves products are spliced in.
    """
    if len(factors) < 2:
        raise ParameterError("A Cartesian product needs at least two factors")
    flat: list[Graph] = []
    for f in factors:
        if f.n < 2:
            raise ParameterError(f"Factor {f} is trivial; factors need >= 2 vertices")
        if not f.is_connected():
            raise ParameterError(f"Factor {f} is disconnected")
        flat.extend(f.factors if isinstance(f, ProductGraph) else (f,))

    product = reduce(nx.cartesian_product, (f.to_networkx() for f in flat))
    orders = [f.n for f in flat]
    n = math.prod(orders)

    def index(node) -> int:
        return int(np.ravel_multi_index(_flatten(node), orders))

    edges = frozenset(
        (min(index(a), index(b)), max(index(a), index(b))) for a, b in product.edges
    )
    label = "x".join(f.name() for f in flat)
    logger.debug("built product %s with %d vertices and %d edges", label, n, len(edges))
    return ProductGraph(n, edges, label, tuple(flat))


def fibers(g: ProductGraph, axis: int) -> list[Fiber]:
    if not isinstance(g, ProductGraph):
        raise ParameterError(f"{g} is not a Cartesian product")
    return g.fibers(axis)


def product_edge_count(factors: list[Graph]) -> int:
    """Closed form: sum over i of |E(G_i)| times the orders of the other factors."""
    total = math.prod(f.n for f in factors)
    return sum(len(f.edges) * (total // f.n) for f in factors)
