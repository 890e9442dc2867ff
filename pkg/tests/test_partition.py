"""Tests for the exact vertex-partition solver and uniqueness checks.

The reference oracle used throughout is the dumbest possible one:
try every assignment vector with itertools.product and check each part
against its property directly.
"""

import random
from itertools import product

import networkx as nx
import pytest

from pqcolour.errors import EnumerationBoundError, PropertyError
from pqcolour.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_graphs,
    from_graph6,
    induced_subgraph,
    path_graph,
    to_graph6,
)
from pqcolour.partition import (
    OrderedPartition,
    check_strongly_unique,
    enumerate_partitions,
    find_partition,
    iter_partitions,
    partition_is_valid,
    search_unique,
)
from pqcolour.properties import O, T, Property, satisfies

C4_PROP = Property("noC4", (cycle_graph(4),))
WHEEL6 = "EqNw"  # 5-cycle plus a hub, the [O, T] fixture


def brute_assignments(g, props):
    """Every valid assignment vector, in lexicographic order."""
    out = []
    for assignment in product(range(len(props)), repeat=g.n):
        ok = True
        for i, p in enumerate(props):
            part = [v for v in range(g.n) if assignment[v] == i]
            sub, _ = induced_subgraph(g, part)
            if not satisfies(p, sub):
                ok = False
                break
        if ok:
            out.append(assignment)
    return out


def random_graph(rng, n, p=0.5):
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# OrderedPartition


def test_ordered_partition_parts():
    op = OrderedPartition(3, (0, 2, 0, 2))
    assert op.parts() == [frozenset({0, 2}), frozenset(), frozenset({1, 3})]


def test_ordered_partition_json():
    op = OrderedPartition(2, (1, 0, 1))
    assert op.to_json_dict() == {"n_parts": 2, "parts": [[1], [0, 2]]}


# ---------------------------------------------------------------------------
# find_partition


def test_find_partition_frozen_examples():
    got = find_partition(cycle_graph(5), [O, T])
    assert got == OrderedPartition(2, (0, 1, 0, 1, 1))
    assert find_partition(complete_graph(4), [O, T]) is None
    got = find_partition(complete_graph(3), [O, O, O])
    assert got == OrderedPartition(3, (0, 1, 2))


def test_find_partition_empty_graph():
    assert find_partition(Graph(0, []), [O, T]) == OrderedPartition(2, ())


def test_find_partition_requires_properties():
    with pytest.raises(PropertyError):
        find_partition(complete_graph(2), [])


@pytest.mark.parametrize(
    "props",
    [[O, T], [O, O], [T, T], [O, O, O], [C4_PROP, T]],
    ids=["OT", "OO", "TT", "OOO", "C4T"],
)
def test_find_partition_matches_oracle_exhaustive(props):
    for g in enumerate_graphs(5):
        expected = brute_assignments(g, props)
        got = find_partition(g, props)
        if not expected:
            assert got is None
        else:
            assert got is not None
            assert got.assignment == expected[0]  # lexicographically least


def test_find_partition_matches_oracle_sampled():
    rng = random.Random(20240812)
    for _ in range(20):
        g = random_graph(rng, rng.choice([6, 7]), p=0.45)
        expected = brute_assignments(g, [O, T])
        got = find_partition(g, [O, T])
        assert (got is None) == (not expected)
        if got is not None:
            assert got.assignment == expected[0]


def test_find_partition_preassigned():
    got = find_partition(cycle_graph(5), [O, T], preassigned={0: 1})
    assert got is not None
    assert got.assignment[0] == 1
    assert partition_is_valid(cycle_graph(5), [O, T], got)
    # pinning both endpoints of an edge into the edgeless part kills it
    assert find_partition(complete_graph(2), [O, O], preassigned={0: 0, 1: 0}) is None


def test_preassignment_out_of_range():
    with pytest.raises(PropertyError):
        find_partition(complete_graph(2), [O, T], preassigned={5: 0})
    with pytest.raises(PropertyError):
        find_partition(complete_graph(2), [O, T], preassigned={0: 2})


def test_find_partition_node_budget():
    with pytest.raises(EnumerationBoundError):
        find_partition(cycle_graph(5), [O, T], max_nodes=2)


# ---------------------------------------------------------------------------
# iter_partitions / enumerate_partitions


def test_iter_partitions_lexicographic_and_valid():
    g = cycle_graph(5)
    seen = list(iter_partitions(g, [O, T]))
    assert seen == sorted(seen)
    assert len(seen) == len(set(seen))
    for assignment in seen:
        assert partition_is_valid(g, [O, T], OrderedPartition(2, assignment))


def test_iter_partitions_complete():
    g = cycle_graph(5)
    got = set(iter_partitions(g, [O, T]))
    assert got == set(brute_assignments(g, [O, T]))


def test_enumerate_partitions_frozen_counts():
    assert len(enumerate_partitions(complete_graph(2), [O, O])) == 2
    assert len(enumerate_partitions(empty_graph(2), [O, T])) == 4
    assert len(enumerate_partitions(path_graph(4), [O, O])) == 2
    assert len(enumerate_partitions(cycle_graph(5), [O, T])) == 11
    assert enumerate_partitions(complete_graph(4), [O, T]) == []


def test_enumerate_partitions_cap():
    got = enumerate_partitions(cycle_graph(5), [O, T], 3)
    assert len(got) == 3
    assert got[0].assignment == (0, 1, 0, 1, 1)


def test_enumerate_partitions_bound():
    with pytest.raises(EnumerationBoundError):
        enumerate_partitions(complete_graph(4), [O, O], max_assignments=8)
    # a cap waives the a-priori bound
    enumerate_partitions(complete_graph(4), [O, O], 1, max_assignments=8)


def test_label_swap_makes_counts_even():
    # With two equal properties, swapping part labels pairs up the valid
    # assignments, and no assignment is its own swap on n >= 1 vertices.
    for g in enumerate_graphs(5):
        if g.n == 0:
            continue
        assert len(enumerate_partitions(g, [O, O])) % 2 == 0


# ---------------------------------------------------------------------------
# partition_is_valid


def test_partition_is_valid_rejects_shape_mismatch():
    g = complete_graph(2)
    assert not partition_is_valid(g, [O, O], OrderedPartition(2, (0,)))
    assert not partition_is_valid(g, [O, O], OrderedPartition(3, (0, 1)))
    assert not partition_is_valid(g, [O, O], OrderedPartition(2, (0, 5)))


def test_partition_is_valid_rejects_bad_assignment():
    assert not partition_is_valid(complete_graph(2), [O, O], OrderedPartition(2, (0, 0)))


def test_partition_is_valid_accepts_solver_output():
    for g in enumerate_graphs(4):
        got = find_partition(g, [O, T])
        if got is not None:
            assert partition_is_valid(g, [O, T], got)


# ---------------------------------------------------------------------------
# strong uniqueness


def test_strongly_unique_p4():
    report = check_strongly_unique(path_graph(4), [O, O])
    assert report.is_strongly_unique
    assert report.canonical_partition == OrderedPartition(2, (0, 1, 0, 1))
    # identity and the part swap, one entry per valid partition
    assert report.permutation_log == ((0, 1), (1, 0))


def test_not_unique_two_k2():
    report = check_strongly_unique(Graph(4, [(0, 1), (2, 3)]), [O, O])
    assert not report.is_strongly_unique
    assert len(report.witnesses) == 2
    assert report.canonical_partition is not None


def test_not_unique_k1_with_distinct_properties():
    # K1 sits in either part, but the part swap would have to mix O and T.
    report = check_strongly_unique(Graph(1, []), [O, T])
    assert not report.is_strongly_unique


def test_not_unique_when_no_partition():
    report = check_strongly_unique(complete_graph(4), [O, T])
    assert not report.is_strongly_unique
    assert report.canonical_partition is None
    assert report.witnesses == ()


def test_unique_wheel_fixture():
    report = check_strongly_unique(from_graph6(WHEEL6), [O, T])
    assert report.is_strongly_unique
    assert report.canonical_partition == OrderedPartition(2, (1, 1, 1, 1, 1, 0))
    # distinct properties leave only the identity permutation
    assert report.permutation_log == ((0, 1),)


def test_c5_not_unique():
    assert not check_strongly_unique(cycle_graph(5), [O, T]).is_strongly_unique


def test_uniqueness_oo_matches_bipartite_oracle():
    # For [O, O] strong uniqueness says: the valid assignments are exactly
    # one bipartition and its label swap. That holds iff the graph is
    # connected and bipartite.
    for g in enumerate_graphs(6):
        if g.n == 0:
            continue
        report = check_strongly_unique(g, [O, O])
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        expected = nx.is_connected(h) and nx.is_bipartite(h)
        assert report.is_strongly_unique == expected, to_graph6(g)


def test_uniqueness_oo_witness_sets():
    # Direct set-level restatement on a few graphs: valid assignments must
    # be {canonical, swapped canonical}.
    for g in (path_graph(4), cycle_graph(6), complete_graph(2)):
        assignments = brute_assignments(g, [O, O])
        canon = assignments[0]
        swap = tuple(1 - i for i in canon)
        assert set(assignments) == {canon, swap}


# ---------------------------------------------------------------------------
# search_unique


def test_search_finds_k2_for_oo():
    got = search_unique([O, O], 4)
    assert got is not None
    g, partition = got
    assert to_graph6(g) == "A_"
    assert partition == OrderedPartition(2, (0, 1))


def test_search_bound_too_small():
    assert search_unique([O, O], 1) is None


def test_search_finds_wheel_for_ot():
    got = search_unique([O, T], 7)
    assert got is not None
    g, partition = got
    assert to_graph6(g) == WHEEL6
    assert partition.assignment == (1, 1, 1, 1, 1, 0)


def test_search_seed_changes_nothing_essential():
    got = search_unique([O, T], 7, seed=3)
    assert got is not None
    g, partition = got
    assert g.n == 6
    assert partition_is_valid(g, [O, T], partition)
    assert check_strongly_unique(g, [O, T]).is_strongly_unique


def test_search_requires_last_part_nonempty():
    # K1 is strongly unique for [O, O] but its canonical partition leaves
    # the second part empty; the default filter skips it.
    report = check_strongly_unique(Graph(1, []), [O, O])
    assert report.is_strongly_unique
    got = search_unique([O, O], 4)
    assert got is not None and got[0].n == 2
    relaxed = search_unique([O, O], 4, require_last_nonempty=False)
    assert relaxed is not None and relaxed[0].n == 0


def test_search_requires_additive():
    with pytest.raises(PropertyError):
        search_unique([Property("X", (Graph(4, [(0, 1), (2, 3)]),))], 3)


def test_search_limit():
    with pytest.raises(EnumerationBoundError):
        search_unique([O, O], 10)
