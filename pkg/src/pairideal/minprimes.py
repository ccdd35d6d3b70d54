"""Module for admissible sets and the minimal primes they describe.

Cells of the m x n matrix are the pairs (i, j), i a vertex of G1 and j a vertex
of G2. A box is e x f for edges e of G1 and f of G2; its edges are the four
2-cell sides {i} x f, {j} x f, e x {k} and e x {l}. A set W of cells is
admissible when every cell of W lying in a box forces one of the two sides of
that box through the cell into W.

Internally cell sets are bitmasks, bit (i - 1) * n + (j - 1) standing for (i, j).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, NamedTuple, override

from .errors import PreconditionError
from .graph import (
    Graph,
    VertexSubset,
    components_after_removal,
    cut_point_property_sets,
    line_graph,
    mask_components,
    require_connected,
    vertex_mask,
)
from .ideal import GraphPair, prime_generators
from .poly import Polynomial

logger = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 10**6


class Cell(NamedTuple):  # noqa: D101
    row: int
    col: int


@dataclass(frozen=True)
class Overflow:
    """Returned instead of a list when more than `cap` sets would be produced."""

    cap: int

    @override
    def __str__(self) -> str:
        return f"overflow (more than {self.cap})"


@dataclass(frozen=True)
class _Box:
    rows: tuple[int, int]
    cols: tuple[int, int]
    mask: int


class _Layout:
    """Bit positions and boxes of one pair, shared by every routine in this module."""

    def __init__(self, pair: GraphPair):
        self.m: int = pair.m
        self.n: int = pair.n
        self.full: int = (1 << (self.m * self.n)) - 1
        self.boxes: list[_Box] = []
        # (cell, side through the cell along its row, side along its column)
        self.constraints: list[tuple[int, int, int]] = []

        for a, b in pair.g1.sorted_edges():
            for c, d in pair.g2.sorted_edges():
                corners = self.bit(a, c) | self.bit(a, d) | self.bit(b, c) | self.bit(b, d)
                self.boxes.append(_Box((a, b), (c, d), corners))
                for i in (a, b):
                    for j in (c, d):
                        row = self.bit(i, c) | self.bit(i, d)
                        col = self.bit(a, j) | self.bit(b, j)
                        self.constraints.append((self.bit(i, j), row, col))

        self.box_neighbors: list[int] = [
            sum(
                1 << q
                for q, other in enumerate(self.boxes)
                if q != p and set(box.rows) & set(other.rows) and set(box.cols) & set(other.cols)
            )
            for p, box in enumerate(self.boxes)
        ]

    def bit(self, i: int, j: int) -> int:  # noqa: D102
        return 1 << ((i - 1) * self.n + (j - 1))

    def mask(self, cells: Iterable[tuple[int, int]]) -> int:
        """Return the bitmask of `cells`.

        Raises:
        PreconditionError: for a cell outside the matrix.

        """
        out = 0
        for i, j in cells:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise PreconditionError(f"Cell ({i},{j}) is outside the {self.m}x{self.n} matrix.")
            out |= self.bit(i, j)
        return out

    def cells(self, mask: int) -> tuple[Cell, ...]:  # noqa: D102
        out: list[Cell] = []
        while mask:
            low = mask & -mask
            index = low.bit_length() - 1
            out.append(Cell(index // self.n + 1, index % self.n + 1))
            mask ^= low
        return tuple(out)

    def violated(self, inside: int) -> bool:  # noqa: D102
        return any(
            inside & cell and inside & row != row and inside & col != col
            for cell, row, col in self.constraints
        )

    def propagate(
        self, inside: int, outside: int
    ) -> tuple[int, int, tuple[int, int] | None] | None:
        """Add every side forced by the cells of `inside`.

        Returns:
        tuple[int, int, tuple[int, int] | None] | None: None when some cell can
        no longer be absorbed, otherwise the new inside set, the outside set and
        the two sides of the first constraint that still leaves a choice.

        """
        while True:
            branch: tuple[int, int] | None = None
            forced = False
            for cell, row, col in self.constraints:
                if not inside & cell or inside & row == row or inside & col == col:
                    continue
                row_free, col_free = not row & outside, not col & outside
                if row_free and col_free:
                    if branch is None:
                        branch = (row, col)
                elif row_free:
                    inside |= row
                    forced = True
                elif col_free:
                    inside |= col
                    forced = True
                else:
                    return None
            if not forced:
                return inside, outside, branch


@lru_cache(maxsize=128)
def _layout(pair: GraphPair) -> _Layout:
    return _Layout(pair)


@dataclass(frozen=True)
class AdmissibleSet:
    """An admissible set of cells of the matrix of `pair`.

    Use `AdmissibleSet.of` to build one from cells.
    """

    pair: GraphPair
    mask: int

    def __post_init__(self):  # noqa: D105
        lay = _layout(self.pair)
        if self.mask & ~lay.full:
            raise PreconditionError("Cell set leaves the matrix.")
        if lay.violated(self.mask):
            raise PreconditionError(f"{self} is not admissible.")

    @classmethod
    def of(cls, pair: GraphPair, cells: Iterable[tuple[int, int]]) -> AdmissibleSet:
        """Build an admissible set from its cells.

        Raises:
        PreconditionError: if a cell is out of range or the set is not admissible.

        """
        return cls(pair, _layout(pair).mask(cells))

    @property
    def cells(self) -> tuple[Cell, ...]:  # noqa: D102
        return _layout(self.pair).cells(self.mask)

    def __len__(self) -> int:  # noqa: D105
        return self.mask.bit_count()

    def sort_key(self) -> tuple[int, tuple[Cell, ...]]:  # noqa: D102
        return (len(self), self.cells)

    @override
    def __str__(self) -> str:
        return "{" + ", ".join(f"({i},{j})" for i, j in self.cells) + "}"


@dataclass(frozen=True, order=True)
class ComponentBlock:
    """The submatrix rows x cols of one component of the box complement."""

    rows: VertexSubset
    cols: VertexSubset

    @property
    def height(self) -> int:  # noqa: D102
        return (len(self.rows) - 1) * (len(self.cols) - 1)

    @property
    def cell_set(self) -> frozenset[Cell]:  # noqa: D102
        return frozenset(Cell(i, j) for i in self.rows for j in self.cols)


@dataclass(frozen=True)
class PrimeComponent:
    """The prime P_W: variables of W plus all 2-minors of every block."""

    witness: AdmissibleSet
    blocks: tuple[ComponentBlock, ...]
    height: int

    def generators(self) -> list[Polynomial]:  # noqa: D102
        return prime_generators(
            self.witness.cells, ((b.rows.members, b.cols.members) for b in self.blocks)
        )

    def sort_key(self) -> tuple[int, tuple[Cell, ...]]:  # noqa: D102
        return (self.height, self.witness.cells)


@dataclass(frozen=True)
class WTB:
    """A pair (T, B) of the 3 x n description of minimal primes.

    `b` indexes `components`, the components of G2 with T removed.
    """

    t: VertexSubset
    b: tuple[int, ...]
    components: tuple[VertexSubset, ...] = field(compare=False, repr=False)

    def cells(self) -> list[Cell]:
        """Return W = [3] x T together with {2} x C_j for j in B."""
        out = [Cell(i, j) for i in (1, 2, 3) for j in self.t]
        for index in self.b:
            out.extend(Cell(2, j) for j in self.components[index])
        return sorted(out)


def is_admissible(cells: Iterable[tuple[int, int]], pair: GraphPair) -> bool:
    """Check the admissibility condition on every box of the pair.

    Raises:
    PreconditionError: for a cell outside the matrix.

    """
    lay = _layout(pair)
    return not lay.violated(lay.mask(cells))


def _require_connected_pair(pair: GraphPair):
    require_connected(pair.g1, "graph G1")
    require_connected(pair.g2, "graph G2")


def _blocks_of(w: AdmissibleSet) -> tuple[ComponentBlock, ...]:
    lay = _layout(w.pair)
    alive = sum(1 << p for p, box in enumerate(lay.boxes) if not box.mask & w.mask)
    blocks: list[ComponentBlock] = []
    for part in mask_components(lay.box_neighbors, alive):
        rows: set[int] = set()
        cols: set[int] = set()
        for p, box in enumerate(lay.boxes):
            if part >> p & 1:
                rows.update(box.rows)
                cols.update(box.cols)
        blocks.append(
            ComponentBlock(VertexSubset.of(lay.m, rows), VertexSubset.of(lay.n, cols))
        )
    return tuple(sorted(blocks))


def box_complement_components(w: AdmissibleSet) -> list[ComponentBlock]:
    """Return the components of the boxes disjoint from `w`, as row x column blocks.

    Two boxes are adjacent when they share a cell.

    Args:
    w(AdmissibleSet): the admissible set.

    Returns:
    list[ComponentBlock]: sorted, empty when every box meets `w`.

    Raises:
    DisconnectedGraphError: if G1 or G2 is disconnected.

    """
    _require_connected_pair(w.pair)
    return list(_blocks_of(w))


@lru_cache(maxsize=1 << 16)
def _prime(w: AdmissibleSet) -> PrimeComponent:
    blocks = _blocks_of(w)
    return PrimeComponent(w, blocks, len(w) + sum(b.height for b in blocks))


def prime_of_admissible(w: AdmissibleSet) -> PrimeComponent:
    """Return P_W with its height |W| + sum of (|rows| - 1)(|cols| - 1) over the blocks.

    Raises:
    DisconnectedGraphError: if G1 or G2 is disconnected.

    """
    _require_connected_pair(w.pair)
    return _prime(w)


def prime_strictly_contains(v: AdmissibleSet, w: AdmissibleSet) -> bool:
    """Decide whether P_V is strictly contained in P_W.

    This holds exactly when V is a proper subset of W and every 2 x 2 submatrix
    of a block of V either lies inside a single block of W or has one of its
    four sides in W.

    Raises:
    PreconditionError: if the sets belong to different pairs.

    """
    if v.pair != w.pair:
        raise PreconditionError("Admissible sets of different pairs cannot be compared.")
    if v.mask == w.mask or v.mask & ~w.mask:
        return False

    lay = _layout(w.pair)
    outer = _prime(w).blocks
    for block in _prime(v).blocks:
        for i, j in combinations(block.rows, 2):
            for k, l in combinations(block.cols, 2):  # noqa: E741
                if any(
                    i in b.rows and j in b.rows and k in b.cols and l in b.cols for b in outer
                ):
                    continue
                sides = (
                    lay.bit(i, k) | lay.bit(i, l),
                    lay.bit(j, k) | lay.bit(j, l),
                    lay.bit(i, k) | lay.bit(j, k),
                    lay.bit(i, l) | lay.bit(j, l),
                )
                if not any(w.mask & side == side for side in sides):
                    return False
    return True


def _sorted_sets(pair: GraphPair, masks: Iterable[int]) -> list[AdmissibleSet]:
    return sorted((AdmissibleSet(pair, mask) for mask in masks), key=AdmissibleSet.sort_key)


def enumerate_admissible(
    pair: GraphPair, cap: int = DEFAULT_ENUM_CAP
) -> list[AdmissibleSet] | Overflow:
    """Enumerate all admissible sets of the pair.

    Depth-first search over (inside, outside) decisions. A cell of `inside`
    that is not yet absorbed branches on its two sides; otherwise `inside` is
    admissible and gets recorded before deciding the lowest undecided cell.

    Args:
    pair(GraphPair): the pair.
    cap(int): the largest number of sets to produce.

    Returns:
    list[AdmissibleSet] | Overflow: sorted by size and then by cells.

    """
    lay = _layout(pair)
    found: set[int] = set()
    seen: set[tuple[int, int]] = set()
    stack: list[tuple[int, int]] = [(0, 0)]

    while stack:
        state = lay.propagate(*stack.pop())
        if state is None:
            continue
        inside, outside, branch = state
        if (inside, outside) in seen:
            continue
        seen.add((inside, outside))

        if branch is not None:
            row, col = branch
            stack.append((inside | col, outside))
            stack.append((inside | row, outside))
            continue

        if inside not in found:
            found.add(inside)
            if len(found) > cap:
                logger.warning("More than %d admissible sets, giving up", cap)
                return Overflow(cap)

        undecided = lay.full & ~(inside | outside)
        if undecided:
            low = undecided & -undecided
            stack.append((inside, outside | low))
            stack.append((inside | low, outside))

    logger.info("%d admissible sets (%d search states)", len(found), len(seen))
    return _sorted_sets(pair, found)


def _canonical(primes: Iterable[PrimeComponent]) -> list[PrimeComponent]:
    return sorted(primes, key=PrimeComponent.sort_key)


def minimal_primes_generic(
    pair: GraphPair, cap: int = DEFAULT_ENUM_CAP
) -> list[PrimeComponent] | Overflow:
    """Return the minimal primes of the pair ideal, from all admissible sets.

    Sets are visited by increasing size, so a set only has to be compared with
    the minimal ones kept so far.

    Args:
    pair(GraphPair): a pair of connected graphs.
    cap(int): the enumeration cap.

    Returns:
    list[PrimeComponent] | Overflow: sorted by height and then by cells.

    Raises:
    DisconnectedGraphError: if G1 or G2 is disconnected.

    """
    _require_connected_pair(pair)
    if not pair.g1.edges or not pair.g2.edges:
        # the ideal is zero
        return [_prime(AdmissibleSet(pair, 0))]

    sets = enumerate_admissible(pair, cap)
    if isinstance(sets, Overflow):
        return sets

    kept: list[AdmissibleSet] = []
    for w in sets:
        if not any(prime_strictly_contains(v, w) for v in kept):
            kept.append(w)
    logger.info("%d minimal primes out of %d admissible sets", len(kept), len(sets))
    return _canonical(_prime(w) for w in kept)


def is_minimal_witness(w: AdmissibleSet, admissible: Iterable[AdmissibleSet]) -> bool:
    """Check that no set of `admissible` gives a prime strictly inside P_W."""
    return not any(prime_strictly_contains(v, w) for v in admissible if v != w)


def wtb_sets(g2: Graph) -> list[WTB]:
    """Return every (T, B) describing a minimal prime when G1 is the path 1 - 2 - 3.

    T runs over the sets with the cut point property. B collects components of
    G2 with T removed that have at least two vertices, such that no vertex of T
    is adjacent to two of them.

    Raises:
    DisconnectedGraphError: if `g2` is disconnected.

    """
    require_connected(g2, "graph G2")
    out: list[WTB] = []
    for t in cut_point_property_sets(g2):
        comps = tuple(components_after_removal(g2, t))
        masks = [vertex_mask(c) for c in comps]
        candidates = [index for index, c in enumerate(comps) if len(c) >= 2]
        for size in range(len(candidates) + 1):
            for b in combinations(candidates, size):
                if all(
                    not (g2.neighbor_masks[a] & masks[k] and g2.neighbor_masks[a] & masks[l])
                    for k, l in combinations(b, 2)  # noqa: E741
                    for a in t
                ):
                    out.append(WTB(t, b, comps))
    return out


def minimal_primes_3xn(g2: Graph) -> list[PrimeComponent]:
    """Return the minimal primes for G1 the path on 3 vertices, one per (T, B).

    Raises:
    DisconnectedGraphError: if `g2` is disconnected.

    """
    pair = GraphPair(line_graph(3), g2)
    found = [_prime(AdmissibleSet.of(pair, wtb.cells())) for wtb in wtb_sets(g2)]
    logger.info("%d minimal primes for the 3x%d matrix", len(found), g2.vertex_count)
    return _canonical(found)


def hosten_shapiro_sets(n: int) -> list[VertexSubset]:
    """Return the sets 1 < a_1 < ... < a_r < n with a_i < a_{i+1} - 1, by size then lex.

    Raises:
    PreconditionError: if n < 1.

    """
    if n < 1:
        raise PreconditionError("n must be positive.")
    return [
        VertexSubset(n, subset)
        for size in range(n + 1)
        for subset in combinations(range(2, n), size)
        if all(b - a > 1 for a, b in zip(subset, subset[1:], strict=False))
    ]


def _sets_from_cutsets(pair: GraphPair) -> Iterator[list[Cell]]:
    for s in cut_point_property_sets(pair.g1):
        yield [Cell(i, j) for i in s for j in pair.g2.vertices]
    for t in cut_point_property_sets(pair.g2):
        yield [Cell(i, j) for i in pair.g1.vertices for j in t]


def special_primes_from_cutsets(pair: GraphPair) -> list[PrimeComponent]:
    """Return P_W for W = S x [n] and W = [m] x T, S and T with the cut point property.

    Raises:
    DisconnectedGraphError: if G1 or G2 is disconnected.

    """
    _require_connected_pair(pair)
    unique = {AdmissibleSet.of(pair, cells) for cells in _sets_from_cutsets(pair)}
    return _canonical(_prime(w) for w in unique)


def cut_set_height(m: int, n: int, s_size: int, c: int) -> int:
    """Height of P_W for W = [m] x S when G1 is complete on m vertices.

    Args:
    m(int): vertices of the complete graph G1.
    n(int): vertices of G2.
    s_size(int): |S|.
    c(int): number of components of G2 with S removed.

    Returns:
    int: m|S| + (n - |S| - c)(m - 1).

    """
    return m * s_size + (n - s_size - c) * (m - 1)


def component_to_json(c: PrimeComponent) -> dict[str, Any]:
    """Return {"cells": [[i, j], ...], "blocks": [{"rows", "cols"}, ...], "height": h}."""
    return {
        "cells": [[i, j] for i, j in c.witness.cells],
        "blocks": [
            {"rows": list(b.rows.members), "cols": list(b.cols.members)} for b in c.blocks
        ],
        "height": c.height,
    }
