"""Module for the generating sets of binomial edge ideals of pairs of graphs."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

from .errors import PreconditionError
from .graph import Graph, VertexSubset
from .poly import Monomial, Polynomial, x

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class GraphPair:
    """The pair (G1, G2); G1 indexes the rows of the m x n matrix X, G2 its columns."""

    g1: Graph
    g2: Graph

    def __post_init__(self):  # noqa: D105
        if self.g1.vertex_count < 1 or self.g2.vertex_count < 1:
            raise PreconditionError("Both graphs of a pair need at least one vertex.")

    @property
    def m(self) -> int:  # noqa: D102
        return self.g1.vertex_count

    @property
    def n(self) -> int:  # noqa: D102
        return self.g2.vertex_count

    def swapped(self) -> GraphPair:  # noqa: D102
        return GraphPair(self.g2, self.g1)


@dataclass(frozen=True)
class MinorSpec:
    """The 2-minor [i,j|k,l] on rows i < j and columns k < l."""

    rows: tuple[int, int]
    cols: tuple[int, int]

    def __post_init__(self):  # noqa: D105
        (i, j), (k, l) = self.rows, self.cols
        if not (1 <= i < j and 1 <= k < l):
            raise PreconditionError(f"[{i},{j}|{k},{l}] is not a valid 2-minor.")


def minor2(spec: MinorSpec) -> Polynomial:
    """Return x[i,k]*x[j,l] - x[i,l]*x[j,k] for spec = [i,j|k,l]."""
    (i, j), (k, l) = spec.rows, spec.cols
    return Polynomial({
        Monomial(((x(i, k), 1), (x(j, l), 1))): 1,
        Monomial(((x(i, l), 1), (x(j, k), 1))): -1,
    })


def minor(i: int, j: int, k: int, l: int) -> Polynomial:  # noqa: D103, E741
    return minor2(MinorSpec((i, j), (k, l)))


def pair_ideal_generators(pair: GraphPair) -> list[Polynomial]:
    """Return p_{e,f} for every e in E(G1), f in E(G2), ordered by (e, f)."""
    return [
        minor(i, j, k, l)
        for i, j in pair.g1.sorted_edges()
        for k, l in pair.g2.sorted_edges()
    ]


def all_2minors_block(rows: Iterable[int], cols: Iterable[int]) -> list[Polynomial]:
    """Return every 2-minor of the submatrix on `rows` x `cols`.

    Args:
    rows(Iterable[int]): row labels.
    cols(Iterable[int]): column labels.

    Returns:
    list[Polynomial]: empty when either side has a single label.

    """
    rows, cols = sorted(set(rows)), sorted(set(cols))
    return [
        minor(i, j, k, l)
        for i, j in combinations(rows, 2)
        for k, l in combinations(cols, 2)
    ]


def ideal_generators_on(
    pair: GraphPair, rows: VertexSubset, cols: VertexSubset
) -> list[Polynomial]:
    """Generators of the ideal of the pair induced on `rows` and `cols`, in parent labels."""
    keep_rows, keep_cols = set(rows), set(cols)
    return [
        minor(i, j, k, l)
        for i, j in pair.g1.sorted_edges()
        if i in keep_rows and j in keep_rows
        for k, l in pair.g2.sorted_edges()
        if k in keep_cols and l in keep_cols
    ]


def prime_generators(
    cells: Iterable[tuple[int, int]],
    blocks: Iterable[tuple[Iterable[int], Iterable[int]]],
) -> list[Polynomial]:
    """Generators of the prime with variables on `cells` and all 2-minors of each block."""
    gens = [Polynomial.var(x(i, j)) for i, j in sorted(cells)]
    for rows, cols in blocks:
        gens.extend(all_2minors_block(rows, cols))
    return gens


def is_induced_path3(g: Graph, triple: Triple) -> bool:
    """Check that a - b - c is a path of `g` and {a, c} is not an edge."""
    a, b, c = triple
    if len({a, b, c}) != 3 or not all(1 <= v <= g.vertex_count for v in triple):
        return False
    return g.has_edge(a, b) and g.has_edge(b, c) and not g.has_edge(a, c)


def double_line_witness(pair: GraphPair, triple1: Triple, triple2: Triple) -> Polynomial:
    """Return x[i,t]*x[j,r]*x[k,s] - x[i,r]*x[j,s]*x[k,t].

    For induced paths i - j - k of G1 and r - s - t of G2 this cubic is not in
    the ideal of the pair but its square is.

    Args:
    pair(GraphPair): the pair.
    triple1(Triple): (i, j, k), an induced path of G1.
    triple2(Triple): (r, s, t), an induced path of G2.

    Returns:
    Polynomial

    Raises:
    PreconditionError: if either triple is not an induced path of length 2.

    """
    if not is_induced_path3(pair.g1, triple1):
        raise PreconditionError(f"{triple1} is not an induced path of G1.")
    if not is_induced_path3(pair.g2, triple2):
        raise PreconditionError(f"{triple2} is not an induced path of G2.")
    (i, j, k), (r, s, t) = triple1, triple2
    return Polynomial({
        Monomial(((x(i, t), 1), (x(j, r), 1), (x(k, s), 1))): 1,
        Monomial(((x(i, r), 1), (x(j, s), 1), (x(k, t), 1))): -1,
    })
