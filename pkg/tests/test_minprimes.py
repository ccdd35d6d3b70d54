from itertools import combinations

import pytest

from conftest import figure_graph
from pairideal.errors import DisconnectedGraphError, PreconditionError
from pairideal.graph import (
    Graph,
    VertexSubset,
    complete_graph,
    component_count_after_removal,
    cut_point_property_sets,
    cycle_graph,
    is_complete,
    line_graph,
    star_graph,
)
from pairideal.groebner import Tri, ideal_contains, ideal_equal, intersect_all
from pairideal.ideal import GraphPair, pair_ideal_generators
from pairideal.minprimes import (
    AdmissibleSet,
    Cell,
    ComponentBlock,
    Overflow,
    PrimeComponent,
    box_complement_components,
    component_to_json,
    cut_set_height,
    enumerate_admissible,
    hosten_shapiro_sets,
    is_admissible,
    is_minimal_witness,
    minimal_primes_3xn,
    minimal_primes_generic,
    prime_of_admissible,
    prime_strictly_contains,
    special_primes_from_cutsets,
    wtb_sets,
)


def product(rows: range | tuple[int, ...], cols: range | tuple[int, ...]) -> list[tuple[int, int]]:
    return [(i, j) for i in rows for j in cols]


def witnesses(primes: list[PrimeComponent]) -> list[tuple[Cell, ...]]:
    return [p.witness.cells for p in primes]


def block(m: int, rows: tuple[int, ...], n: int, cols: tuple[int, ...]) -> ComponentBlock:
    return ComponentBlock(VertexSubset(m, rows), VertexSubset(n, cols))


FIGURE_WITNESSES = [
    product((2,), range(1, 6)),
    product((1, 2, 3), (2, 4)),
    sorted(product((1, 2, 3), (4,)) + product((2,), (1, 2, 3))),
    product((1, 2, 3), (4,)),
    [],
    sorted(product((1, 2, 3), (1, 3)) + product((2,), (4, 5))),
    product((1, 2, 3), (1, 3)),
]


def brute_force_admissible(pair: GraphPair) -> set[tuple[Cell, ...]]:
    cells = [Cell(i, j) for i in pair.g1.vertices for j in pair.g2.vertices]
    return {
        subset
        for size in range(len(cells) + 1)
        for subset in combinations(cells, size)
        if is_admissible(subset, pair)
    }


def test_is_admissible(adjacent_3x3: GraphPair, figure_pair: GraphPair):
    assert is_admissible([], adjacent_3x3)
    assert is_admissible(product(range(1, 4), range(1, 4)), adjacent_3x3)
    assert not is_admissible([(2, 1)], adjacent_3x3)
    assert is_admissible(product((2,), range(1, 6)), figure_pair)
    with pytest.raises(PreconditionError):
        _ = is_admissible([(4, 1)], adjacent_3x3)


def test_admissible_set_construction(adjacent_3x3: GraphPair):
    w = AdmissibleSet.of(adjacent_3x3, [(2, 3), (2, 1), (2, 2)])
    assert w.cells == (Cell(2, 1), Cell(2, 2), Cell(2, 3))
    assert len(w) == 3
    assert str(w) == "{(2,1), (2,2), (2,3)}"
    with pytest.raises(PreconditionError):
        _ = AdmissibleSet.of(adjacent_3x3, [(2, 1)])


def test_enumerate_single_box():
    pair = GraphPair(complete_graph(2), complete_graph(2))
    sets = enumerate_admissible(pair)
    assert isinstance(sets, list)
    assert len(sets) == 10
    assert sets[0].cells == ()
    assert len(sets[-1]) == 4
    assert [w.sort_key() for w in sets] == sorted(w.sort_key() for w in sets)


@pytest.mark.parametrize(
    "pair",
    [
        GraphPair(complete_graph(2), complete_graph(2)),
        GraphPair(line_graph(3), complete_graph(2)),
        GraphPair(complete_graph(2), star_graph(4)),
        GraphPair(line_graph(3), line_graph(3)),
        GraphPair(complete_graph(3), line_graph(3)),
        GraphPair(complete_graph(3), complete_graph(3)),
    ],
)
def test_enumeration_matches_brute_force(pair: GraphPair):
    sets = enumerate_admissible(pair)
    assert isinstance(sets, list)
    assert {w.cells for w in sets} == brute_force_admissible(pair)
    assert len({w.mask for w in sets}) == len(sets)


def test_enumeration_overflow():
    pair = GraphPair(complete_graph(2), complete_graph(2))
    result = enumerate_admissible(pair, cap=1)
    assert result == Overflow(1)
    assert str(result) == "overflow (more than 1)"
    assert minimal_primes_generic(pair, cap=3) == Overflow(3)


def test_box_complement_of_empty_set(figure_pair: GraphPair):
    blocks = box_complement_components(AdmissibleSet.of(figure_pair, []))
    assert blocks == [block(3, (1, 2, 3), 5, (1, 2, 3, 4, 5))]


def test_box_complement_of_figure_sets(figure_pair: GraphPair):
    w = AdmissibleSet.of(figure_pair, product((1, 2, 3), (4,)))
    assert box_complement_components(w) == [block(3, (1, 2, 3), 5, (1, 2, 3))]
    w = AdmissibleSet.of(figure_pair, product((1, 2, 3), (1, 3)))
    assert box_complement_components(w) == [block(3, (1, 2, 3), 5, (4, 5))]
    w = AdmissibleSet.of(figure_pair, product((2,), range(1, 6)))
    assert box_complement_components(w) == []


def test_box_complement_splits_into_blocks():
    # removing column 3 of the 5-path leaves two separate boxes of columns
    pair = GraphPair(complete_graph(2), line_graph(5))
    w = AdmissibleSet.of(pair, product((1, 2), (3,)))
    assert box_complement_components(w) == [
        block(2, (1, 2), 5, (1, 2)),
        block(2, (1, 2), 5, (4, 5)),
    ]
    assert prime_of_admissible(w).height == 2 + 1 + 1


def test_prime_heights():
    pair = GraphPair(complete_graph(3), cycle_graph(4))
    assert prime_of_admissible(AdmissibleSet.of(pair, [])).height == 2 * 3
    full = AdmissibleSet.of(pair, product(range(1, 4), range(1, 5)))
    p = prime_of_admissible(full)
    assert p.height == 12
    assert p.blocks == ()
    assert len(p.generators()) == 12


def test_cut_set_heights_of_complete_rows():
    g2 = figure_graph()
    pair = GraphPair(complete_graph(3), g2)
    for t in cut_point_property_sets(g2):
        w = AdmissibleSet.of(pair, product(range(1, 4), t.members))
        c = component_count_after_removal(g2, t)
        assert prime_of_admissible(w).height == cut_set_height(3, 5, len(t), c)
    assert cut_set_height(3, 5, 2, 2) == 8


def test_height_formula_and_disjoint_blocks(figure_pair: GraphPair):
    primes = minimal_primes_generic(figure_pair)
    assert isinstance(primes, list)
    for p in primes:
        assert p.height == len(p.witness) + sum(b.height for b in p.blocks)
        used = set(p.witness.cells)
        for b in p.blocks:
            assert not used & b.cell_set
            used |= b.cell_set


def test_prime_strictly_contains(figure_pair: GraphPair):
    empty = AdmissibleSet.of(figure_pair, [])
    full = AdmissibleSet.of(figure_pair, product(range(1, 4), range(1, 6)))
    stripe = AdmissibleSet.of(figure_pair, product((2,), range(1, 6)))
    column = AdmissibleSet.of(figure_pair, product((1, 2, 3), (4,)))
    both = AdmissibleSet.of(figure_pair, set(stripe.cells) | set(column.cells))

    assert prime_strictly_contains(empty, full)
    assert not prime_strictly_contains(full, full)
    assert not prime_strictly_contains(column, stripe)
    assert not prime_strictly_contains(stripe, column)
    assert not prime_strictly_contains(empty, stripe)
    assert prime_strictly_contains(stripe, both)
    # the minor [1,3|1,2] of the column block is not in P_both
    assert not prime_strictly_contains(column, both)


def test_prime_strictly_contains_needs_one_pair(figure_pair: GraphPair, adjacent_3x3: GraphPair):
    with pytest.raises(PreconditionError):
        _ = prime_strictly_contains(
            AdmissibleSet.of(figure_pair, []), AdmissibleSet.of(adjacent_3x3, [])
        )


@pytest.mark.parametrize(
    "pair",
    [
        GraphPair(complete_graph(2), line_graph(3)),
        GraphPair(line_graph(3), complete_graph(2)),
        GraphPair(line_graph(3), line_graph(3)),
    ],
)
def test_containment_agrees_with_groebner(pair: GraphPair):
    sets = enumerate_admissible(pair)
    assert isinstance(sets, list)
    primes = {w: prime_of_admissible(w).generators() for w in sets}
    for v in sets:
        for w in sets:
            inside = ideal_contains(primes[w], primes[v])
            outside = ideal_contains(primes[v], primes[w])
            expected = inside is Tri.YES and outside is Tri.NO
            assert prime_strictly_contains(v, w) == expected, (v, w)


def test_figure_minimal_primes(figure_pair: GraphPair):
    primes = minimal_primes_generic(figure_pair)
    assert isinstance(primes, list)
    assert witnesses(primes) == [tuple(Cell(*c) for c in cells) for cells in FIGURE_WITNESSES]
    assert [p.height for p in primes] == [5, 6, 6, 7, 8, 8, 8]


def test_figure_minimal_primes_from_wtb(figure_pair: GraphPair):
    generic = minimal_primes_generic(figure_pair)
    assert isinstance(generic, list)
    assert minimal_primes_3xn(figure_graph()) == generic
    assert len(wtb_sets(figure_graph())) == 7


def test_complete_pairs_have_one_minimal_prime():
    for m, n in [(2, 2), (2, 3), (3, 3), (3, 4)]:
        primes = minimal_primes_generic(GraphPair(complete_graph(m), complete_graph(n)))
        assert isinstance(primes, list)
        assert witnesses(primes) == [()]
        assert primes[0].height == (m - 1) * (n - 1)


def test_two_minimal_primes_of_complete_times_path():
    pair = GraphPair(complete_graph(2), line_graph(3))
    primes = minimal_primes_generic(pair)
    assert isinstance(primes, list)
    assert witnesses(primes) == [(), (Cell(1, 2), Cell(2, 2))]
    assert [p.height for p in primes] == [2, 2]
    meet = intersect_all([p.generators() for p in primes])
    assert isinstance(meet, list)
    assert ideal_equal(meet, pair_ideal_generators(pair)) is Tri.YES


@pytest.mark.parametrize(
    "g2",
    [
        line_graph(3),
        line_graph(4),
        line_graph(5),
        line_graph(6),
        line_graph(7),
        complete_graph(3),
        complete_graph(4),
        cycle_graph(4),
        cycle_graph(5),
        star_graph(4),
        figure_graph(),
    ],
)
def test_wtb_agrees_with_enumeration(g2: Graph):
    generic = minimal_primes_generic(GraphPair(line_graph(3), g2))
    assert isinstance(generic, list)
    assert witnesses(minimal_primes_3xn(g2)) == witnesses(generic)


def test_wtb_of_complete_graph():
    n = 4
    assert witnesses(minimal_primes_3xn(complete_graph(n))) == [
        (),
        tuple(Cell(2, j) for j in range(1, n + 1)),
    ]


def test_minimal_primes_form_an_antichain(figure_pair: GraphPair, adjacent_3x3: GraphPair):
    for pair in (figure_pair, adjacent_3x3, GraphPair(complete_graph(3), cycle_graph(4))):
        primes = minimal_primes_generic(pair)
        assert isinstance(primes, list)
        for p in primes:
            for q in primes:
                assert not prime_strictly_contains(p.witness, q.witness)


def test_is_minimal_witness(adjacent_3x3: GraphPair):
    sets = enumerate_admissible(adjacent_3x3)
    assert isinstance(sets, list)
    primes = minimal_primes_generic(adjacent_3x3)
    assert isinstance(primes, list)
    minimal = {p.witness for p in primes}
    assert {w for w in sets if is_minimal_witness(w, sets)} == minimal


def test_every_admissible_prime_contains_the_ideal(adjacent_3x3: GraphPair):
    sets = enumerate_admissible(adjacent_3x3)
    assert isinstance(sets, list)
    for w in sets:
        p = prime_of_admissible(w)
        inside = set(w.cells)
        for i, j in adjacent_3x3.g1.sorted_edges():
            for k, l in adjacent_3x3.g2.sorted_edges():  # noqa: E741
                sides = [{(i, k), (i, l)}, {(j, k), (j, l)}, {(i, k), (j, k)}, {(i, l), (j, l)}]
                in_block = any(
                    {i, j} <= set(b.rows) and {k, l} <= set(b.cols) for b in p.blocks
                )
                assert in_block or any(side <= inside for side in sides)


def test_figure_primes_contain_the_ideal(figure_pair: GraphPair):
    primes = minimal_primes_generic(figure_pair)
    assert isinstance(primes, list)
    j = pair_ideal_generators(figure_pair)
    for p in primes[:4]:
        assert ideal_contains(p.generators(), j) is Tri.YES


@pytest.mark.parametrize(
    "pair",
    [
        GraphPair(complete_graph(2), line_graph(3)),
        GraphPair(complete_graph(3), line_graph(3)),
        GraphPair(line_graph(3), line_graph(3)),
        GraphPair(line_graph(3), complete_graph(3)),
    ],
)
def test_radical_exactly_when_a_graph_is_complete(pair: GraphPair):
    primes = minimal_primes_generic(pair)
    assert isinstance(primes, list)
    meet = intersect_all([p.generators() for p in primes])
    assert isinstance(meet, list)
    radical = is_complete(pair.g1) or is_complete(pair.g2)
    assert ideal_equal(meet, pair_ideal_generators(pair)) is Tri.of(radical)


def test_hosten_shapiro_sets():
    assert [s.members for s in hosten_shapiro_sets(3)] == [(), (2,)]
    assert [s.members for s in hosten_shapiro_sets(4)] == [(), (2,), (3,)]
    assert [s.members for s in hosten_shapiro_sets(5)] == [(), (2,), (3,), (4,), (2, 4)]
    assert [s.members for s in hosten_shapiro_sets(1)] == [()]
    with pytest.raises(PreconditionError):
        _ = hosten_shapiro_sets(0)


def test_hosten_shapiro_sets_are_cut_sets_of_lines():
    for n in range(1, 9):
        assert hosten_shapiro_sets(n) == cut_point_property_sets(line_graph(n))


def test_special_primes():
    primes = special_primes_from_cutsets(GraphPair(complete_graph(3), complete_graph(4)))
    assert witnesses(primes) == [()]

    pair = GraphPair(complete_graph(3), figure_graph())
    generic = minimal_primes_generic(pair)
    assert isinstance(generic, list)
    assert special_primes_from_cutsets(pair) == generic


def test_special_primes_are_minimal(figure_pair: GraphPair, adjacent_3x3: GraphPair):
    for pair in (figure_pair, adjacent_3x3):
        generic = minimal_primes_generic(pair)
        assert isinstance(generic, list)
        assert set(special_primes_from_cutsets(pair)) <= set(generic)


def test_disconnected_inputs():
    pair = GraphPair(Graph(2), complete_graph(2))
    with pytest.raises(DisconnectedGraphError):
        _ = minimal_primes_generic(pair)
    with pytest.raises(DisconnectedGraphError):
        _ = box_complement_components(AdmissibleSet.of(pair, []))
    with pytest.raises(DisconnectedGraphError):
        _ = minimal_primes_3xn(Graph(3, [(1, 2)]))
    with pytest.raises(DisconnectedGraphError):
        _ = special_primes_from_cutsets(pair)


def test_component_to_json(figure_pair: GraphPair):
    w = AdmissibleSet.of(figure_pair, product((1, 2, 3), (4,)))
    assert component_to_json(prime_of_admissible(w)) == {
        "cells": [[1, 4], [2, 4], [3, 4]],
        "blocks": [{"rows": [1, 2, 3], "cols": [1, 2, 3]}],
        "height": 7,
    }
