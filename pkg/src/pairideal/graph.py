"""Module for labeled simple graphs and the combinatorial predicates on them."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import override

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _csgraph_components

from .errors import DisconnectedGraphError, PreconditionError

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


@dataclass(frozen=True, order=True)
class VertexSubset:
    """A sorted set of vertex labels of a graph on [parent_size]."""

    parent_size: int
    members: tuple[int, ...]

    def __post_init__(self):
        """Check that members are sorted, distinct and in range.

        Raises:
        PreconditionError: if a member is out of range or members are not sorted.

        """
        if any(v < 1 or v > self.parent_size for v in self.members):
            raise PreconditionError(
                f"Vertex subset {list(self.members)} is not inside 1..{self.parent_size}."
            )
        if any(a >= b for a, b in zip(self.members, self.members[1:], strict=False)):
            raise PreconditionError("Vertex subset members must be sorted and distinct.")

    @classmethod
    def of(cls, parent_size: int, members: Iterable[int]) -> VertexSubset:
        """Build a subset from any iterable of labels, sorting and deduplicating.

        Args:
        parent_size(int): number of vertices of the parent graph.
        members(Iterable[int]): the labels.

        Returns:
        VertexSubset

        """
        return cls(parent_size, tuple(sorted(set(members))))

    def complement(self) -> VertexSubset:  # noqa: D102
        kept = set(self.members)
        return VertexSubset(
            self.parent_size,
            tuple(v for v in range(1, self.parent_size + 1) if v not in kept),
        )

    def __iter__(self) -> Iterator[int]:  # noqa: D105
        return iter(self.members)

    def __len__(self) -> int:  # noqa: D105
        return len(self.members)

    def __contains__(self, v: object) -> bool:  # noqa: D105
        return v in self.members

    @override
    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.members) + "}"


@dataclass(frozen=True)
class FacetInterval:
    """A facet [lo, hi] of a clique complex whose vertices are consecutive labels."""

    lo: int
    hi: int

    def __post_init__(self):  # noqa: D105
        if self.lo > self.hi:
            raise PreconditionError(f"Interval [{self.lo},{self.hi}] is empty.")

    def __len__(self) -> int:  # noqa: D105
        return self.hi - self.lo + 1


class Graph:
    """A simple graph on the vertex set [vertex_count].

    The labeling is part of the data: closedness and the term order of the
    variable matrix both depend on it, so it is never canonicalized.
    """

    def __init__(self, vertex_count: int, edges: Iterable[Iterable[int]] = ()):
        """Store the graph, normalizing every edge to (u, v) with u < v.

        Args:
        vertex_count(int): number of vertices, labeled 1..vertex_count.
        edges(Iterable[Iterable[int]]): the edges as pairs of labels.

        Raises:
        PreconditionError: for loops, malformed pairs or endpoints out of range.

        """
        if vertex_count < 0:
            raise PreconditionError("Vertex count must not be negative.")
        self.vertex_count: int = vertex_count

        normalized: set[Edge] = set()
        for edge in edges:
            pair = tuple(edge)
            if len(pair) != 2:
                raise PreconditionError(f"Edge {pair} does not have two endpoints.")
            u, v = sorted(pair)
            if u == v:
                raise PreconditionError(f"Loop at vertex {u} is not allowed.")
            if u < 1 or v > vertex_count:
                raise PreconditionError(
                    f"Edge {{{u},{v}}} leaves the vertex set 1..{vertex_count}."
                )
            normalized.add((u, v))
        self.edges: frozenset[Edge] = frozenset(normalized)

        # neighbours as bitmasks, bit v set for vertex v
        self.neighbor_masks: list[int] = [0] * (vertex_count + 1)
        for u, v in self.edges:
            self.neighbor_masks[u] |= 1 << v
            self.neighbor_masks[v] |= 1 << u

    @property
    def vertices(self) -> range:  # noqa: D102
        return range(1, self.vertex_count + 1)

    def sorted_edges(self) -> list[Edge]:  # noqa: D102
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:  # noqa: D102
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, v: int) -> list[int]:  # noqa: D102
        mask = self.neighbor_masks[v]
        return [u for u in self.vertices if mask >> u & 1]

    def adjacency(self) -> np.ndarray:
        """Return the symmetric 0/1 adjacency matrix, row i for vertex i+1.

        Returns:
        np.ndarray

        """
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int8)
        for u, v in self.edges:
            a[u - 1, v - 1] = 1
            a[v - 1, u - 1] = 1
        return a

    def to_networkx(self) -> nx.Graph:  # noqa: D102
        h = nx.Graph()
        h.add_nodes_from(self.vertices)
        h.add_edges_from(self.edges)
        return h

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    @override
    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    @override
    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {self.sorted_edges()})"


def complete_graph(n: int) -> Graph:  # noqa: D103
    return Graph(n, combinations(range(1, n + 1), 2))


def line_graph(n: int) -> Graph:
    """Path 1 - 2 - ... - n."""
    return Graph(n, ((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    """Cycle 1 - 2 - ... - n - 1.

    Raises:
    PreconditionError: for n < 3.

    """
    if n < 3:
        raise PreconditionError("A cycle needs at least 3 vertices.")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star_graph(n: int) -> Graph:
    """Star with center 1 and leaves 2..n."""
    return Graph(n, ((1, i) for i in range(2, n + 1)))


def mask_components(neighbor_masks: Sequence[int], alive: int) -> list[int]:
    """Split the bits of `alive` into connected components.

    Args:
    neighbor_masks(Sequence[int]): entry b is the mask of the neighbours of bit b.
    alive(int): the bits to keep.

    Returns:
    list[int]: one mask per component, in order of their lowest bit.

    """
    parts: list[int] = []
    remaining = alive
    while remaining:
        seed = remaining & -remaining
        frontier = seed
        seen = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            fresh = neighbor_masks[low.bit_length() - 1] & alive & ~seen
            seen |= fresh
            frontier |= fresh
        remaining &= ~seen
        parts.append(seen)
    return parts


def _count_components(g: Graph, alive: int) -> int:
    return len(mask_components(g.neighbor_masks, alive))


def vertex_mask(vertices: Iterable[int]) -> int:
    """Bitmask with bit v set for every v in `vertices`."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def connected_components(g: Graph) -> list[VertexSubset]:
    """Split the vertex set into connected components.

    Args:
    g(Graph): the graph.

    Returns:
    list[VertexSubset], sorted by minimum element.

    """
    if g.vertex_count == 0:
        return []
    count, labels = _csgraph_components(csr_matrix(g.adjacency()), directed=False)
    parts: list[list[int]] = [[] for _ in range(count)]
    for index, label in enumerate(labels.tolist()):  # pyright: ignore[reportAny]
        parts[label].append(index + 1)
    return sorted(VertexSubset(g.vertex_count, tuple(p)) for p in parts)


def is_connected(g: Graph) -> bool:  # noqa: D103
    return len(connected_components(g)) <= 1


def require_connected(g: Graph, name: str = "graph"):
    """Raise if `g` is disconnected.

    Raises:
    DisconnectedGraphError: if `g` has more than one component.

    """
    if not is_connected(g):
        raise DisconnectedGraphError(f"The {name} must be connected.")


def induced_subgraph(g: Graph, keep: VertexSubset) -> tuple[Graph, tuple[int, ...]]:
    """Restrict `g` to `keep`, relabeling the kept vertices 1..|keep| in order.

    Args:
    g(Graph): the graph.
    keep(VertexSubset): the vertices to keep.

    Returns:
    tuple[Graph, tuple[int, ...]]: the induced graph and the label map, where
    entry k-1 is the parent label of new vertex k.

    Raises:
    PreconditionError: if `keep` does not belong to a graph of this size.

    """
    if keep.parent_size != g.vertex_count:
        raise PreconditionError(
            f"Subset of a {keep.parent_size}-vertex graph used on a "
            f"{g.vertex_count}-vertex graph."
        )
    label_map = keep.members
    new_label = {old: new for new, old in enumerate(label_map, start=1)}
    edges = [
        (new_label[u], new_label[v])
        for u, v in g.edges
        if u in new_label and v in new_label
    ]
    return Graph(len(label_map), edges), label_map


def is_complete(g: Graph) -> bool:  # noqa: D103
    n = g.vertex_count
    return len(g.edges) == n * (n - 1) // 2


def is_closed_labeled(g: Graph) -> bool:
    """Test closedness for the given labeling.

    Edges {i,j}, {i,l} with i < j, l force {j,l}; edges {i,j}, {k,j} with
    i, k < j force {i,k}. Equivalently the larger neighbours of every vertex
    form a clique, and so do the smaller ones.

    Returns:
    bool

    """
    for v in g.vertices:
        higher = [u for u in g.neighbors(v) if u > v]
        lower = [u for u in g.neighbors(v) if u < v]
        for side in (higher, lower):
            if any(not g.has_edge(a, b) for a, b in combinations(side, 2)):
                return False
    return True


def clique_complex_facets(g: Graph) -> list[VertexSubset]:
    """Return the maximal cliques of `g`, each sorted, ordered by their minimum."""
    cliques: list[list[int]] = list(nx.find_cliques(g.to_networkx()))  # pyright: ignore[reportUnknownMemberType, reportUnknownArgumentType]
    facets = [VertexSubset.of(g.vertex_count, clique) for clique in cliques]
    return sorted(facets)


def closed_interval_facets(g: Graph) -> list[FacetInterval] | None:
    """Return the facets of the clique complex as intervals, if they all are.

    Args:
    g(Graph): a connected graph.

    Returns:
    list[FacetInterval] | None: ordered by left endpoint, or None if some
    maximal clique is not an interval of labels.

    Raises:
    DisconnectedGraphError: if `g` is disconnected.

    """
    require_connected(g)
    intervals: list[FacetInterval] = []
    for facet in clique_complex_facets(g):
        lo, hi = facet.members[0], facet.members[-1]
        if hi - lo + 1 != len(facet):
            return None
        intervals.append(FacetInterval(lo, hi))
    return sorted(intervals, key=lambda f: f.lo)


def components_after_removal(g: Graph, t: VertexSubset) -> list[VertexSubset]:
    """Return the components of g with `t` removed, in the labels of `g`."""
    rest, label_map = induced_subgraph(g, t.complement())
    return [
        VertexSubset(g.vertex_count, tuple(label_map[v - 1] for v in part))
        for part in connected_components(rest)
    ]


def component_count_after_removal(g: Graph, t: VertexSubset) -> int:
    """Return c(T), the number of components of g with the vertices of `t` removed.

    Removing every vertex leaves the empty graph, which has 0 components.
    """
    full = vertex_mask(g.vertices)
    return _count_components(g, full & ~vertex_mask(t))


def cut_point_property_sets(g: Graph) -> list[VertexSubset]:
    """Enumerate the vertex sets S with the cut point property.

    Each i in S must be a cut point of the graph induced on ([n] - S) + {i},
    that is, c(S - {i}) < c(S). The empty set qualifies vacuously.

    Args:
    g(Graph): a connected graph.

    Returns:
    list[VertexSubset], ordered by size and then lexicographically.

    Raises:
    DisconnectedGraphError: if `g` is disconnected.

    """
    require_connected(g)
    n = g.vertex_count
    full = vertex_mask(g.vertices)
    counts: dict[int, int] = {}

    def _c(removed: int) -> int:
        if removed not in counts:
            counts[removed] = _count_components(g, full & ~removed)
        return counts[removed]

    found: list[VertexSubset] = []
    for size in range(n + 1):
        for subset in combinations(range(1, n + 1), size):
            removed = vertex_mask(subset)
            here = _c(removed)
            if all(_c(removed & ~(1 << i)) < here for i in subset):
                found.append(VertexSubset(n, subset))
    logger.debug("%d cut point sets on %d vertices", len(found), n)
    return found


def find_induced_path3(g: Graph) -> tuple[int, int, int] | None:
    """Find the lexicographically least (i, j, k) with i - j - k an induced path.

    Returns:
    tuple[int, int, int] | None

    """
    for i in g.vertices:
        for j in g.neighbors(i):
            for k in g.neighbors(j):
                if k != i and not g.has_edge(i, k):
                    return (i, j, k)
    return None
