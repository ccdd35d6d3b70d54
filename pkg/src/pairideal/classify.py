"""Module for the structural classification of pair ideals.

Every predicate here is decided from the graphs alone; the Groebner engine is
only used to check nilpotency witnesses.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import prod
from typing import Any

from .errors import PreconditionError
from .graph import (
    Graph,
    VertexSubset,
    closed_interval_facets,
    component_count_after_removal,
    components_after_removal,
    cut_point_property_sets,
    find_induced_path3,
    induced_subgraph,
    is_closed_labeled,
    is_complete,
    is_connected,
    mask_components,
    require_connected,
    vertex_mask,
)
from .groebner import DEFAULT_CAPS, EngineCaps, Tri, ideal_member
from .ideal import (
    GraphPair,
    Triple,
    double_line_witness,
    ideal_generators_on,
    pair_ideal_generators,
)
from .minprimes import DEFAULT_ENUM_CAP, Overflow, minimal_primes_generic
from .poly import Polynomial

logger = logging.getLogger(__name__)


class Marker(Enum):
    """Values standing in for a result that could not or need not be given."""

    UNDETERMINED = "undetermined"
    NOT_APPLICABLE = "not-applicable"


UNDETERMINED = Marker.UNDETERMINED
NOT_APPLICABLE = Marker.NOT_APPLICABLE

DEFAULT_BUDGET = 16


def _require_connected_pair(pair: GraphPair):
    require_connected(pair.g1, "graph G1")
    require_connected(pair.g2, "graph G2")


def is_prime_pair(pair: GraphPair) -> bool:
    """The ideal is prime exactly when both graphs are complete.

    Raises:
    DisconnectedGraphError: if G1 or G2 is disconnected.

    """
    _require_connected_pair(pair)
    return is_complete(pair.g1) and is_complete(pair.g2)


def is_radical_pair(pair: GraphPair) -> bool:
    """The ideal is radical exactly when one of the graphs is complete."""
    return is_complete(pair.g1) or is_complete(pair.g2)


def has_quadratic_gb_pair(pair: GraphPair) -> bool:
    """The generators form a Groebner basis when one graph is complete and the other closed."""
    return (is_complete(pair.g1) and is_closed_labeled(pair.g2)) or (
        is_complete(pair.g2) and is_closed_labeled(pair.g1)
    )


@dataclass(frozen=True)
class UnmixedVerdict:
    """Answer of `unmixed_verdict` with the orientation it was decided in."""

    value: bool | Marker
    swapped: bool


def unmixed_verdict(pair: GraphPair, cap: int = DEFAULT_ENUM_CAP) -> UnmixedVerdict:
    """Decide unmixedness, swapping the graphs first so that m <= n.

    With 3 <= m <= n the ideal is unmixed exactly when G1 is complete and every
    set T with the cut point property for G2 has (c(T) - 1)(m - 1) = |T|.
    Smaller pairs compare the heights of the minimal primes instead.

    Args:
    pair(GraphPair): a pair of connected graphs.
    cap(int): the enumeration cap for the small case.

    Returns:
    UnmixedVerdict: UNDETERMINED when the enumeration overflows.

    Raises:
    DisconnectedGraphError: if G1 or G2 is disconnected.

    """
    _require_connected_pair(pair)
    swapped = pair.m > pair.n
    oriented = pair.swapped() if swapped else pair
    m = oriented.m

    if m >= 3:
        if not is_complete(oriented.g1):
            return UnmixedVerdict(False, swapped)
        g2 = oriented.g2
        value = all(
            (component_count_after_removal(g2, t) - 1) * (m - 1) == len(t)
            for t in cut_point_property_sets(g2)
        )
        return UnmixedVerdict(value, swapped)

    primes = minimal_primes_generic(oriented, cap)
    if isinstance(primes, Overflow):
        return UnmixedVerdict(UNDETERMINED, swapped)
    return UnmixedVerdict(len({p.height for p in primes}) == 1, swapped)


def is_unmixed(pair: GraphPair, cap: int = DEFAULT_ENUM_CAP) -> bool | Marker:  # noqa: D103
    return unmixed_verdict(pair, cap).value


def unmixed_complete_cycle(m: int, n: int) -> bool:
    """Unmixedness for G1 complete on m and G2 a cycle on n vertices.

    Raises:
    PreconditionError: unless 3 <= m <= n.

    """
    if not 3 <= m <= n:
        raise PreconditionError("Need 3 <= m <= n.")
    return (m, n) in {(3, 3), (3, 4), (3, 5)}


@dataclass(frozen=True)
class ClosedCase:
    """Unmixedness, depth and Cohen-Macaulayness for G1 complete and G2 closed."""

    unmixed: bool
    depth: int | Marker
    cm: bool


def closed_case_analysis(m: int, g2: Graph) -> ClosedCase | Marker:
    """Analyse the pair (K_m, g2) for g2 with interval maximal cliques.

    With maximal cliques [a_1, b_1], ..., [a_r, b_r] the ideal is unmixed when
    consecutive cliques satisfy a_i < a_{i+1} < b_i < b_{i+1} and
    b_i - a_{i+1} = m - 2. Then the depth of the quotient is
    n - (r - 2)m + 2r - 3, and it is Cohen-Macaulay only for r = 1.

    Args:
    m(int): size of the complete graph.
    g2(Graph): a connected graph on n >= m vertices.

    Returns:
    ClosedCase | Marker: NOT_APPLICABLE if some maximal clique of g2 is not an
    interval.

    Raises:
    PreconditionError: unless 3 <= m <= n.
    DisconnectedGraphError: if g2 is disconnected.

    """
    n = g2.vertex_count
    if not 3 <= m <= n:
        raise PreconditionError("Need 3 <= m <= n.")
    facets = closed_interval_facets(g2)
    if facets is None:
        return NOT_APPLICABLE

    unmixed = all(
        a.lo < b.lo < a.hi < b.hi and a.hi - b.lo == m - 2
        for a, b in zip(facets, facets[1:], strict=False)
    )
    if not unmixed:
        return ClosedCase(False, NOT_APPLICABLE, False)

    r = len(facets)
    depth = n - (r - 2) * m + 2 * r - 3
    return ClosedCase(True, depth, depth == m + n - 1)


@dataclass(frozen=True)
class NilpotencyWitness:
    """Deletion sets and one induced path per component left after deleting them.

    The factors f_ij pair the i-th path of G1 with the j-th path of G2; their
    product lies in the radical but outside of the ideal, so the index of
    nilpotency is at least r * s + 1.
    """

    deletion1: VertexSubset
    deletion2: VertexSubset
    triples1: tuple[Triple, ...]
    triples2: tuple[Triple, ...]
    bound: int
    components1: tuple[VertexSubset, ...] = field(compare=False, repr=False)
    components2: tuple[VertexSubset, ...] = field(compare=False, repr=False)

    @property
    def r(self) -> int:  # noqa: D102
        return len(self.triples1)

    @property
    def s(self) -> int:  # noqa: D102
        return len(self.triples2)

    def factors(self, pair: GraphPair) -> list[Polynomial]:  # noqa: D102
        return [
            double_line_witness(pair, t1, t2) for t1 in self.triples1 for t2 in self.triples2
        ]

    def product(self, pair: GraphPair) -> Polynomial:  # noqa: D102
        return prod(self.factors(pair), start=Polynomial.constant(1))

    def to_json(self) -> dict[str, Any]:  # noqa: D102
        return {
            "deletion1": list(self.deletion1.members),
            "deletion2": list(self.deletion2.members),
            "triples1": [list(t) for t in self.triples1],
            "triples2": [list(t) for t in self.triples2],
            "bound": self.bound,
        }


def _paths_after_deletion(
    g: Graph, deletion: VertexSubset
) -> tuple[tuple[Triple, ...], tuple[VertexSubset, ...]]:
    triples: list[Triple] = []
    comps: list[VertexSubset] = []
    for comp in components_after_removal(g, deletion):
        sub, label_map = induced_subgraph(g, comp)
        path = find_induced_path3(sub)
        if path is not None:
            i, j, k = (label_map[v - 1] for v in path)
            triples.append((i, j, k))
            comps.append(comp)
    return tuple(triples), tuple(comps)


def nilpotency_lower_bound(
    pair: GraphPair, deletion1: VertexSubset, deletion2: VertexSubset
) -> NilpotencyWitness:
    """Build the witness for given deletion sets.

    Components are taken in G1 with `deletion1` removed and in G2 with
    `deletion2` removed; every component holding an induced path of length 2
    contributes one path.

    Args:
    pair(GraphPair): the pair.
    deletion1(VertexSubset): vertices removed from G1.
    deletion2(VertexSubset): vertices removed from G2.

    Returns:
    NilpotencyWitness

    """
    triples1, comps1 = _paths_after_deletion(pair.g1, deletion1)
    triples2, comps2 = _paths_after_deletion(pair.g2, deletion2)
    bound = len(triples1) * len(triples2) + 1
    return NilpotencyWitness(deletion1, deletion2, triples1, triples2, bound, comps1, comps2)


def _non_clique_components(g: Graph, deletion_mask: int) -> int:
    # a connected graph has an induced path of length 2 unless it is complete
    alive = vertex_mask(g.vertices) & ~deletion_mask
    count = 0
    for part in mask_components(g.neighbor_masks, alive):
        members = part
        while members:
            low = members & -members
            v = low.bit_length() - 1
            if (g.neighbor_masks[v] | low) & part != part:
                count += 1
                break
            members ^= low
    return count


def _greedy_deletion(g: Graph) -> tuple[int, VertexSubset]:
    n = g.vertex_count
    seed = VertexSubset(n, tuple(range(4, n + 1, 4)))
    best_mask = vertex_mask(seed)
    best = _non_clique_components(g, best_mask)
    if _non_clique_components(g, 0) > best:
        best_mask, best = 0, _non_clique_components(g, 0)

    improved = True
    while improved:
        improved = False
        for v in g.vertices:
            candidate = best_mask ^ (1 << v)
            score = _non_clique_components(g, candidate)
            if score > best:
                best_mask, best, improved = candidate, score, True
    members = tuple(v for v in g.vertices if best_mask >> v & 1)
    return best, VertexSubset(n, members)


def _best_deletion(g: Graph, budget: int) -> VertexSubset:
    n = g.vertex_count
    if n > budget:
        score, found = _greedy_deletion(g)
        logger.debug("Greedy deletion %s leaves %d paths", found, score)
        return found

    best_score = -1
    best: tuple[int, ...] = ()
    for size in range(n + 1):
        for subset in combinations(g.vertices, size):
            score = _non_clique_components(g, vertex_mask(subset))
            if score > best_score or (score == best_score and subset < best):
                best_score, best = score, subset
    return VertexSubset(n, best)


def best_nilpotency_bound(pair: GraphPair, budget: int = DEFAULT_BUDGET) -> NilpotencyWitness:
    """Maximise r * s + 1 over the deletion sets of both graphs.

    r and s only depend on their own side, so each is maximised separately:
    exhaustively for graphs of at most `budget` vertices, otherwise greedily
    from the deletion set {4, 8, 12, ...}. Ties go to the lexicographically
    least deletion set.

    Args:
    pair(GraphPair): the pair.
    budget(int): largest vertex count searched exhaustively.

    Returns:
    NilpotencyWitness

    Raises:
    PreconditionError: for a negative budget.

    """
    if budget < 0:
        raise PreconditionError("The search budget must not be negative.")
    return nilpotency_lower_bound(
        pair, _best_deletion(pair.g1, budget), _best_deletion(pair.g2, budget)
    )


def adjacent_minors_bound(m: int, n: int) -> int:
    """Bound for two line graphs: (k + [p/3])(l + [q/3]) + 1 with m = 4k + p, n = 4l + q.

    Raises:
    PreconditionError: unless m, n >= 1.

    """
    if m < 1 or n < 1:
        raise PreconditionError("Matrix dimensions must be positive.")
    k, p = divmod(m, 4)
    l, q = divmod(n, 4)  # noqa: E741
    return (k + p // 3) * (l + q // 3) + 1


def verify_nilpotency_witness(
    pair: GraphPair,
    witness: NilpotencyWitness,
    caps: EngineCaps = DEFAULT_CAPS,
    direct_limit: int = 9,
) -> Tri:
    """Decide whether the product of the witness factors lies in the pair ideal.

    Each factor f_ij only involves the cells of C_1i x C_2j, and these blocks
    are pairwise disjoint, so the product is outside of the ideal as soon as
    every f_ij is outside of the ideal restricted to its block. On matrices with
    at most `direct_limit` cells the product is also tested directly.

    Args:
    pair(GraphPair): the pair.
    witness(NilpotencyWitness): the witness to check.
    caps(EngineCaps): the Groebner budget.
    direct_limit(int): largest matrix size for the direct test.

    Returns:
    Tri: NO when the product is shown to be outside of the ideal.

    """
    if witness.r * witness.s == 0:
        return Tri.NO

    answer = Tri.NO
    for c1, t1 in zip(witness.components1, witness.triples1, strict=True):
        for c2, t2 in zip(witness.components2, witness.triples2, strict=True):
            block = ideal_generators_on(pair, c1, c2)
            verdict = ideal_member(double_line_witness(pair, t1, t2), block, caps)
            if verdict is not Tri.NO:
                logger.warning("Factor for %s x %s is %s in its block", t1, t2, verdict.value)
                answer = Tri.INCONCLUSIVE

    if pair.m * pair.n <= direct_limit:
        direct = ideal_member(witness.product(pair), pair_ideal_generators(pair), caps)
        if direct is not Tri.INCONCLUSIVE and answer is not Tri.INCONCLUSIVE and direct != answer:
            logger.error("Block check and direct check disagree (%s)", direct.value)
        if direct is not Tri.INCONCLUSIVE:
            return direct
    return answer


@dataclass
class PairReport:
    """Everything decided about one pair."""

    is_prime: bool | Marker
    is_radical: bool
    quadratic_gb: bool
    unmixed: bool | Marker
    minimal_prime_count: int | Overflow | Marker
    height_spectrum: list[int] | Marker
    depth: int | Marker
    cohen_macaulay: bool | Marker
    nilpotency_lower_bound: int
    unmixed_swapped: bool = False

    def to_json(self) -> dict[str, Any]:
        """Return the report with a fixed key order; markers become their names."""

        def _value(v: object) -> object:
            if isinstance(v, Marker):
                return v.value
            if isinstance(v, Overflow):
                return "overflow"
            return v

        return {
            "is_prime": _value(self.is_prime),
            "is_radical": self.is_radical,
            "quadratic_gb": self.quadratic_gb,
            "unmixed": _value(self.unmixed),
            "minimal_prime_count": _value(self.minimal_prime_count),
            "height_spectrum": _value(self.height_spectrum),
            "depth": _value(self.depth),
            "cohen_macaulay": _value(self.cohen_macaulay),
            "nilpotency_lower_bound": self.nilpotency_lower_bound,
        }


def _closed_case_for(pair: GraphPair) -> ClosedCase | Marker:
    if pair.m <= pair.n and pair.m >= 3 and is_complete(pair.g1):
        return closed_case_analysis(pair.m, pair.g2)
    if pair.n <= pair.m and pair.n >= 3 and is_complete(pair.g2):
        return closed_case_analysis(pair.n, pair.g1)
    return NOT_APPLICABLE


def build_report(
    pair: GraphPair,
    enum_cap: int = DEFAULT_ENUM_CAP,
    budget: int = DEFAULT_BUDGET,
) -> PairReport:
    """Run every classifier on the pair.

    Fields that need connected graphs are NOT_APPLICABLE for disconnected
    input, and fields that need the enumeration degrade to Overflow or
    UNDETERMINED instead of failing.

    Args:
    pair(GraphPair): the pair.
    enum_cap(int): the enumeration cap.
    budget(int): the nilpotency search budget.

    Returns:
    PairReport

    """
    connected = is_connected(pair.g1) and is_connected(pair.g2)
    nilpotency = best_nilpotency_bound(pair, budget).bound

    if not connected:
        logger.warning("Disconnected input, prime and unmixed fields are not applicable")
        return PairReport(
            is_prime=NOT_APPLICABLE,
            is_radical=is_radical_pair(pair),
            quadratic_gb=has_quadratic_gb_pair(pair),
            unmixed=NOT_APPLICABLE,
            minimal_prime_count=NOT_APPLICABLE,
            height_spectrum=NOT_APPLICABLE,
            depth=NOT_APPLICABLE,
            cohen_macaulay=NOT_APPLICABLE,
            nilpotency_lower_bound=nilpotency,
        )

    primes = minimal_primes_generic(pair, enum_cap)
    if isinstance(primes, Overflow):
        count: int | Overflow | Marker = primes
        spectrum: list[int] | Marker = UNDETERMINED
    else:
        count = len(primes)
        spectrum = sorted(p.height for p in primes)

    verdict = unmixed_verdict(pair, enum_cap)
    closed = _closed_case_for(pair)
    if isinstance(closed, ClosedCase):
        depth, cm = closed.depth, closed.cm
    else:
        depth = NOT_APPLICABLE
        cm = False if verdict.value is False else NOT_APPLICABLE

    return PairReport(
        is_prime=is_prime_pair(pair),
        is_radical=is_radical_pair(pair),
        quadratic_gb=has_quadratic_gb_pair(pair),
        unmixed=verdict.value,
        minimal_prime_count=count,
        height_spectrum=spectrum,
        depth=depth,
        cohen_macaulay=cm,
        nilpotency_lower_bound=nilpotency,
        unmixed_swapped=verdict.swapped,
    )
