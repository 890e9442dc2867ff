"""Tests for hypergraph instances, brute force, and the reduction to
(p,q)-colourability.

The reduced graphs here reuse the session cushion so a test run builds
the 93-vertex gadget once. Oracle duties are split: hypergraph
satisfiability is brute-forced over all vertex subsets with itertools,
the reduced graphs go through the partition solver.
"""

import random
from itertools import combinations

import pytest

from pqcolour.errors import (
    CertificateError,
    EnumerationBoundError,
    GraphFormatError,
    ReductionError,
)
from pqcolour.partition import OrderedPartition, find_partition
from pqcolour.properties import O, T
from pqcolour.reduction import (
    Hypergraph,
    RegimeWarning,
    brute_pinr,
    encode_certificate,
    enumerate_hypergraphs,
    equivalence_check,
    hypergraph_to_text,
    is_pinr_certificate,
    lift_certificate,
    parse_hypergraph,
    predicted_reduction_size,
    reduce_hypergraph,
)

SINGLE_EDGE = Hypergraph(3, 3, 1, ((0, 1, 2),))
TWO_EDGES = Hypergraph(4, 3, 1, ((0, 1, 2), (1, 2, 3)))
ALL_TRIPLES_4 = Hypergraph(4, 3, 1, tuple(combinations(range(4), 3)))

# Every 3-uniform instance on <= 4 vertices and <= 3 edges, one per
# isomorphism class: (n_vertices, edges).
SWEEP_CLASSES = [
    (0, ()),
    (1, ()),
    (2, ()),
    (3, ()),
    (3, ((0, 1, 2),)),
    (4, ()),
    (4, ((0, 1, 2),)),
    (4, ((0, 1, 2), (0, 1, 3))),
    (4, ((0, 1, 2), (0, 1, 3), (0, 2, 3))),
]


def brute_oracle(h):
    """All witnesses by raw subset enumeration, lexicographically first
    (by sorted tuple) returned first."""
    hits = []
    for size in range(h.n_vertices + 1):
        for u in combinations(range(h.n_vertices), size):
            if all(len(set(u) & set(e)) == h.p_target for e in h.edges):
                hits.append(u)
    return sorted(hits)


# ---------------------------------------------------------------------------
# the instance type


def test_hypergraph_normalizes_edges():
    h = Hypergraph(4, 3, 1, ((2, 0, 1), (3, 2, 1)))
    assert h.edges == ((0, 1, 2), (1, 2, 3))
    assert h.n_edges == 2


def test_hypergraph_validation():
    with pytest.raises(ReductionError):
        Hypergraph(3, 0, 0, ())
    with pytest.raises(ReductionError):
        Hypergraph(-1, 3, 1, ())
    with pytest.raises(ReductionError):
        Hypergraph(3, 3, 4, ())
    with pytest.raises(ReductionError):
        Hypergraph(3, 3, 1, ((0, 0, 1),))
    with pytest.raises(ReductionError):
        Hypergraph(3, 3, 1, ((0, 1, 7),))


def test_in_regime():
    assert SINGLE_EDGE.in_regime()
    assert not Hypergraph(3, 2, 1, ()).in_regime()
    assert not Hypergraph(3, 3, 0, ()).in_regime()
    assert not Hypergraph(3, 3, 3, ()).in_regime()


# ---------------------------------------------------------------------------
# text format


def test_parse_single_edge():
    h = parse_hypergraph("3 1 3 1\n0 1 2\n")
    assert h == SINGLE_EDGE


def test_parse_with_comments():
    text = "# one triple\n3 1 4 2\n0 1 2  # first\n1 2 3\n"
    assert parse_hypergraph(text) == TWO_EDGES


def test_parse_warns_outside_regime():
    with pytest.warns(RegimeWarning):
        parse_hypergraph("2 1 2 1\n0 1\n")
    with pytest.warns(RegimeWarning):
        parse_hypergraph("3 0 3 1\n0 1 2\n")


def test_parse_errors():
    for text in (
        "",
        "3 1 3\n",
        "3 1 3 2\n0 1 2\n",
        "3 1 3 1\n0 1\n",
        "3 1 3 1\n0 1 x\n",
        "3 1 3 1\n0 1 5\n",
        "3 1 3 1\n0 1 1\n",
    ):
        with pytest.raises(GraphFormatError):
            parse_hypergraph(text)


def test_text_round_trip():
    for h in (SINGLE_EDGE, TWO_EDGES, ALL_TRIPLES_4):
        assert parse_hypergraph(hypergraph_to_text(h)) == h


# ---------------------------------------------------------------------------
# brute force


def test_brute_frozen():
    assert brute_pinr(SINGLE_EDGE) == (0,)
    assert brute_pinr(TWO_EDGES) == (0, 3)
    assert brute_pinr(ALL_TRIPLES_4) is None
    assert brute_pinr(Hypergraph(5, 3, 1, ())) == ()


def test_brute_matches_oracle():
    rng = random.Random(20240813)
    for _ in range(40):
        n = rng.randrange(3, 8)
        pool = list(combinations(range(n), 3))
        m = rng.randrange(0, min(5, len(pool)) + 1)
        h = Hypergraph(n, 3, rng.randrange(0, 4), tuple(rng.sample(pool, m)))
        expected = brute_oracle(h)
        got = brute_pinr(h)
        if expected:
            assert got == expected[0]
        else:
            assert got is None


def test_brute_bound():
    with pytest.raises(EnumerationBoundError):
        brute_pinr(Hypergraph(30, 3, 1, ()), max_vertices=24)


def test_is_pinr_certificate():
    assert is_pinr_certificate(SINGLE_EDGE, (0,))
    assert is_pinr_certificate(SINGLE_EDGE, (2,))
    assert not is_pinr_certificate(SINGLE_EDGE, ())
    assert not is_pinr_certificate(SINGLE_EDGE, (0, 1))
    assert not is_pinr_certificate(SINGLE_EDGE, (9,))
    assert is_pinr_certificate(TWO_EDGES, (0, 3))


# ---------------------------------------------------------------------------
# instance enumeration


def test_enumerate_hypergraphs_frozen():
    got = [(h.n_vertices, h.edges) for h in enumerate_hypergraphs(4, 3)]
    assert got == SWEEP_CLASSES


def test_enumerate_hypergraphs_deterministic():
    a = list(enumerate_hypergraphs(4, 3))
    b = list(enumerate_hypergraphs(4, 3))
    assert a == b


def test_enumerate_hypergraphs_bound():
    with pytest.raises(EnumerationBoundError):
        list(enumerate_hypergraphs(9, 1))


# ---------------------------------------------------------------------------
# the reduction


def test_reduction_size(ot_cushion):
    g, _ = reduce_hypergraph(SINGLE_EDGE, O, T, cushion=ot_cushion)
    assert g.n == 93
    assert g.n == predicted_reduction_size(SINGLE_EDGE, ot_cushion)
    g2, _ = reduce_hypergraph(TWO_EDGES, O, T, cushion=ot_cushion)
    assert g2.n == 4 + 2 * 90
    assert g2.n == predicted_reduction_size(TWO_EDGES, ot_cushion)


def test_reduction_requires_matching_pair(ot_cushion):
    with pytest.raises(ReductionError):
        reduce_hypergraph(
            Hypergraph(4, 4, 1, ((0, 1, 2, 3),)), O, T, cushion=ot_cushion
        )
    with pytest.raises(ReductionError):
        reduce_hypergraph(
            Hypergraph(3, 3, 2, ((0, 1, 2),)), O, T, cushion=ot_cushion
        )


def test_reduction_edgeless_instance(ot_cushion):
    h = Hypergraph(5, 3, 1, ())
    g, rmap = reduce_hypergraph(h, O, T, cushion=ot_cushion)
    assert g.n == 5 and g.edge_count == 0
    got = find_partition(g, [O, T])
    assert got is not None
    # with no edges every subset is a witness; the lift keeps part 0
    assert is_pinr_certificate(h, lift_certificate(rmap, got, O, T))


def test_reduction_determinism(ot_cushion):
    from pqcolour.graphs import to_graph6

    a, _ = reduce_hypergraph(TWO_EDGES, O, T, cushion=ot_cushion)
    b, _ = reduce_hypergraph(TWO_EDGES, O, T, cushion=ot_cushion)
    assert to_graph6(a) == to_graph6(b)


def test_port_bookkeeping(ot_cushion):
    _, rmap = reduce_hypergraph(TWO_EDGES, O, T, cushion=ot_cushion)
    # hypergraph vertices realise themselves
    assert rmap.port_vertex(0, 0) == 0
    assert rmap.port_vertex(0, 1) == 1
    # a shared vertex lands on the same graph vertex from both cushions
    assert rmap.port_vertex(0, 1) == rmap.port_vertex(1, 1)
    assert rmap.port_vertex(1, 3) == 3
    with pytest.raises(ReductionError):
        rmap.port_vertex(1, 0)


def test_cushion_regions(ot_cushion):
    g, rmap = reduce_hypergraph(TWO_EDGES, O, T, cushion=ot_cushion)
    assert rmap.cushion_region(0) == range(4, 94)
    assert rmap.cushion_region(1) == range(94, 184)
    covered = set(range(4)) | set(rmap.cushion_region(0)) | set(rmap.cushion_region(1))
    assert covered == set(range(g.n))


# ---------------------------------------------------------------------------
# certificates


def test_lift_from_solver(ot_cushion):
    g, rmap = reduce_hypergraph(SINGLE_EDGE, O, T, cushion=ot_cushion)
    colouring = find_partition(g, [O, T])
    assert colouring is not None
    assert lift_certificate(rmap, colouring, O, T) == (0,)


def test_lift_rejects_invalid_colouring(ot_cushion):
    g, rmap = reduce_hypergraph(SINGLE_EDGE, O, T, cushion=ot_cushion)
    with pytest.raises(CertificateError):
        lift_certificate(rmap, (0,) * 10, O, T)
    with pytest.raises(CertificateError):
        # the all-Q colouring leaves triangles in the Q part
        lift_certificate(rmap, (1,) * g.n, O, T)


def test_encode_round_trip(ot_cushion):
    _, rmap = reduce_hypergraph(TWO_EDGES, O, T, cushion=ot_cushion)
    encoded = encode_certificate(rmap, (0, 3), O, T)
    assert lift_certificate(rmap, encoded, O, T) == (0, 3)


def test_encode_every_witness(ot_cushion):
    _, rmap = reduce_hypergraph(SINGLE_EDGE, O, T, cushion=ot_cushion)
    for u in brute_oracle(SINGLE_EDGE):
        encoded = encode_certificate(rmap, u, O, T)
        assert lift_certificate(rmap, encoded, O, T) == u


def test_encode_rejects_bad_witness(ot_cushion):
    _, rmap = reduce_hypergraph(SINGLE_EDGE, O, T, cushion=ot_cushion)
    with pytest.raises(CertificateError):
        encode_certificate(rmap, (0, 1), O, T)


def test_unsatisfiable_instance_reduces_to_uncolourable(ot_cushion):
    assert brute_pinr(ALL_TRIPLES_4) is None
    g, _ = reduce_hypergraph(ALL_TRIPLES_4, O, T, cushion=ot_cushion)
    assert g.n == 4 + 4 * 90
    assert find_partition(g, [O, T]) is None


# ---------------------------------------------------------------------------
# the equivalence sweep


def test_equivalence_sweep(ot_cushion):
    for h in enumerate_hypergraphs(4, 3):
        report = equivalence_check(h, O, T, cushion=ot_cushion)
        assert report.ok, (h.n_vertices, h.edges)
        assert report.agree and report.lift_ok and report.roundtrip_ok


def test_equivalence_report_shape(ot_cushion):
    report = equivalence_check(TWO_EDGES, O, T, cushion=ot_cushion)
    assert report.ok
    assert report.brute_witness == (0, 3)
    assert report.reduced_satisfiable
    d = report.to_json_dict()
    assert d["instance"]["edges"] == [[0, 1, 2], [1, 2, 3]]
    assert d["ok"] is True and d["brute_satisfiable"] is True
