"""Automorphisms, stabilizers, distinguishing colorings and canonical keys."""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Hashable, Optional, Sequence

import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher

from src.errors import ParameterError, ResourceError
from src.graphs import Graph, ProductGraph, cartesian_product

logger = logging.getLogger(__name__)

DEFAULT_AUT_CAP = 64
_INT64_LIMIT = 2**63


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..n-1 given by its images."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "image", tuple(int(x) for x in self.image))
        if sorted(self.image) != list(range(len(self.image))):
            raise ParameterError(f"{self.image} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        image = list(range(n))
        image[a], image[b] = b, a
        return cls(tuple(image))

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __len__(self) -> int:
        return len(self.image)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: i -> self(other(i))."""
        return Permutation(tuple(self.image[j] for j in other.image))

    def inverse(self) -> "Permutation":
        inverse = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inverse[j] = i
        return Permutation(tuple(inverse))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    def is_involution(self) -> bool:
        """True for nontrivial permutations of order two."""
        return not self.is_identity() and self.compose(self).is_identity()

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.image) if i == j]

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.image)) + ")"


@dataclass(frozen=True)
class AutomorphismSet:
    """An explicit list of permutations, identity included."""

    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, sigma: Permutation) -> bool:
        return sigma in self._members

    @cached_property
    def _members(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @cached_property
    def table(self) -> np.ndarray:
        """table[k, i] = elements[k](i)."""
        return np.array([p.image for p in self.elements], dtype=np.int64)

    def nontrivial(self) -> list[Permutation]:
        return [p for p in self.elements if not p.is_identity()]

    def is_closed(self) -> bool:
        if not self.elements:
            return False
        n = len(self.elements[0])
        if Permutation.identity(n) not in self:
            return False
        return all(
            p.inverse() in self and p.compose(q) in self
            for p in self.elements
            for q in self.elements
        )

    def orbit(self, v: int) -> set[int]:
        return {int(x) for x in self.table[:, v]}

    def involutions(self) -> list[Permutation]:
        return [p for p in self.elements if p.is_involution()]

    def is_transitive(self) -> bool:
        return bool(self.elements) and len(self.orbit(0)) == len(self.elements[0])


def preserves_adjacency(g: Graph, sigma: Permutation) -> bool:
    return all(g.has_edge(sigma(u), sigma(v)) for u, v in g.edges)


@lru_cache(maxsize=256)
def _enumerate_automorphisms(g: Graph) -> AutomorphismSet:
    nxg = g.to_networkx()
    matcher = GraphMatcher(nxg, nxg)
    images = sorted(
        tuple(mapping[i] for i in range(g.n)) for mapping in matcher.isomorphisms_iter()
    )
    logger.debug("%s has %d automorphisms", g, len(images))
    return AutomorphismSet(tuple(Permutation(image) for image in images))


def automorphisms(g: Graph, cap: int = DEFAULT_AUT_CAP) -> AutomorphismSet:
    """
    All automorphisms of `g` in lexicographic order of their images.

    Raises:
        ResourceError: when |V(g)| exceeds `cap`.
    """
    if g.n > cap:
        raise ResourceError(
            f"{g} has {g.n} vertices, above the automorphism cap {cap}; raise it with --aut-cap",
            {"vertices": g.n, "cap": cap},
        )
    return _enumerate_automorphisms(g)


def _full_coloring(g: Graph, c: Sequence[int]) -> np.ndarray:
    colors = np.asarray(c, dtype=np.int64)
    if colors.shape != (g.n,):
        raise ParameterError(f"Coloring has {len(colors)} entries, graph has {g.n} vertices")
    if (colors < 1).any():
        raise ParameterError("Coloring is partial; every vertex needs a color >= 1")
    return colors


def stabilizer_mask(auts: AutomorphismSet, coloring: Sequence[int]) -> np.ndarray:
    """Boolean mask over auts of the elements with c(σ(u)) = c(u) for all u. 0 counts as a color."""
    colors = np.asarray(coloring, dtype=np.int64)
    return (colors[auts.table] == colors).all(axis=1)


def color_stabilizer(
    g: Graph, c: Sequence[int], auts: Optional[AutomorphismSet] = None
) -> AutomorphismSet:
    colors = _full_coloring(g, c)
    auts = auts or automorphisms(g)
    mask = stabilizer_mask(auts, colors)
    return AutomorphismSet(tuple(p for p, keep in zip(auts.elements, mask) if keep))


def is_distinguishing(
    g: Graph, c: Sequence[int], auts: Optional[AutomorphismSet] = None
) -> bool:
    return color_stabilizer(g, c, auts).order == 1


def product_decompose(
    g: ProductGraph, sigma: Permutation
) -> Optional[tuple[Permutation, Permutation]]:
    """
    Split σ into (ψ, φ) with σ((u, v)) = (ψ(u), φ(v)), or None when σ mixes the factors.
    ψ is read off the fiber v = 0 and φ off u = 0; every vertex is then checked.
    """
    if not isinstance(g, ProductGraph) or len(g.factors) != 2:
        raise ParameterError("product_decompose needs a product of exactly two factors")
    h_order, f_order = g.orders
    coords = g.coords
    psi = [int(coords[sigma(g.vertex((u, 0))), 0]) for u in range(h_order)]
    phi = [int(coords[sigma(g.vertex((0, v))), 1]) for v in range(f_order)]
    if sorted(psi) != list(range(h_order)) or sorted(phi) != list(range(f_order)):
        return None
    for w in range(g.n):
        u, v = g.coord(w)
        if sigma(w) != g.vertex((psi[u], phi[v])):
            return None
    return Permutation(tuple(psi)), Permutation(tuple(phi))


def relatively_prime(h: Graph, f: Graph, cap: int = DEFAULT_AUT_CAP) -> bool:
    """Desk-scale test: Aut(h□f) is exactly Aut(h) x Aut(f) acting coordinatewise."""
    product = cartesian_product([h, f])
    product_auts = automorphisms(product, cap)
    if product_auts.order != automorphisms(h, cap).order * automorphisms(f, cap).order:
        return False
    return all(product_decompose(product, sigma) is not None for sigma in product_auts)


def canonical_form(
    auts: AutomorphismSet, coloring: Sequence[int], palette: bool = True
) -> Hashable:
    """
    Minimum, over every automorphism and (optionally) every palette relabeling, of a
    color sequence. 0 marks an uncolored vertex and is never relabeled. Colors are
    renumbered by first occurrence so palette relabelings collapse to one representative.
    """
    colors = np.asarray(coloring, dtype=np.int64)
    n = colors.shape[0]
    images = colors[auts.table]
    top = int(colors.max()) if n else 0
    if top == 0:
        return 0
    if palette:
        k = images.shape[0]
        present = images[:, :, None] == np.arange(1, top + 1)
        first = np.where(present.any(axis=1), present.argmax(axis=1), n)
        order = np.argsort(first, axis=1, kind="stable")
        rank = np.empty_like(order)
        np.put_along_axis(rank, order, np.broadcast_to(np.arange(top), (k, top)), axis=1)
        lut = np.concatenate([np.zeros((k, 1), dtype=np.int64), rank + 1], axis=1)
        images = np.take_along_axis(lut, images, axis=1)
        top = int(np.count_nonzero(np.unique(colors)))
    # the base is part of the key so codes in different bases never meet
    base = top + 1
    if base**n < _INT64_LIMIT:
        weights = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return base, int((images @ weights).min())
    return base, min(map(tuple, images.tolist()))


def canonical_key(
    g: Graph,
    coloring: Sequence[int],
    mover: Hashable,
    palette: bool = True,
    auts: Optional[AutomorphismSet] = None,
) -> tuple:
    """Transposition key of a position: its exact canonical form and the side to move."""
    auts = auts or automorphisms(g)
    return canonical_form(auts, coloring, palette), mover


def distinguishing_coloring(g: Graph, colors: int) -> Optional[tuple[int, ...]]:
    """The lexicographically first distinguishing coloring with colors 1..`colors`."""
    if colors < 1:
        raise ParameterError(f"colors must be >= 1, got {colors}")
    auts = automorphisms(g)
    nontrivial = auts.table[[not p.is_identity() for p in auts.elements]]
    for candidate in itertools.product(range(1, colors + 1), repeat=g.n):
        c = np.asarray(candidate)
        if not (c[nontrivial] == c).all(axis=1).any():
            return candidate
    return None


def distinguishing_number(g: Graph) -> int:
    for k in range(1, g.n + 1):
        if distinguishing_coloring(g, k) is not None:
            return k
    # coloring every vertex differently always distinguishes
    return g.n
