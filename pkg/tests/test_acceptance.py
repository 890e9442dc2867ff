"""Acceptance gate: ten numbered desk-scale checks over the (O, T) pair.

Each test prints one `[criterion N] PASS/FAIL` line (visible with -s and
in captured output) and carries the criterion number in its name, so a
plain `pytest -v` run reads as a per-criterion scoreboard. The bodies
re-derive their claims with independent enumeration wherever possible
instead of trusting the library's own verifiers.
"""

import json
from contextlib import contextmanager
from itertools import combinations, product
from math import comb

import pytest

from pqcolour.gadgets import (
    PortedGadget,
    build_anchors,
    build_pincushion,
    build_replicator,
    build_verified_pincushion,
    build_verified_replicator,
    product_extension_transform,
    verify_pincushion,
    verify_replicator,
)
from pqcolour.graphs import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    enumerate_graphs,
    induced_subgraph,
    path_graph,
    remove_edges,
    remove_vertices,
    to_graph6,
)
from pqcolour.partition import (
    check_strongly_unique,
    find_partition,
    iter_partitions,
    search_unique,
)
from pqcolour.properties import (
    O,
    T,
    Property,
    complement_property,
    intersect,
    property_pair_params,
    satisfies,
)
from pqcolour.reduction import enumerate_hypergraphs, equivalence_check

C4_PROP = Property("noC4", (cycle_graph(4),))
PAIR_PROP = Property("OK", (path_graph(3), complement(path_graph(3))))
FOUR_PROPS = [O, T, C4_PROP, PAIR_PROP]

PINNED_FIXTURE = "EqNw"


@contextmanager
def criterion(n: int, label: str):
    try:
        yield
    except Exception:
        print(f"[criterion {n}] FAIL — {label}")
        raise
    print(f"[criterion {n}] PASS — {label}")


# ---------------------------------------------------------------------------


def test_criterion_01_forbidden_set_algebra():
    with criterion(1, "intersection and complement algebra on all classes <= 6"):
        classes = list(enumerate_graphs(6))
        assert len(classes) == 209
        for d, p in product(FOUR_PROPS, repeat=2):
            dp = intersect(d, p)
            for g in classes:
                assert satisfies(dp, g) == (satisfies(d, g) and satisfies(p, g))
        for p in FOUR_PROPS:
            cp = complement_property(p)
            for g in classes:
                assert satisfies(p, g) == satisfies(cp, complement(g))


def test_criterion_02_uniqueness_checker_vs_oracle():
    def oracle(g):
        # direct bipartition enumeration, no shared code with the checker
        valid = []
        for bits in product((0, 1), repeat=g.n):
            ok = True
            for side in (0, 1):
                verts = [v for v in range(g.n) if bits[v] == side]
                sub, _ = induced_subgraph(g, verts)
                if sub.edge_count != 0:
                    ok = False
                    break
            if ok:
                valid.append(bits)
        if not valid:
            return False
        canon = valid[0]
        swap = tuple(1 - b for b in canon)
        return set(valid) == {canon, swap}

    with criterion(2, "strong uniqueness for [O,O] matches the bipartition oracle"):
        for g in enumerate_graphs(5):
            report = check_strongly_unique(g, [O, O])
            assert report.is_strongly_unique == oracle(g), to_graph6(g)


def test_criterion_03_fixture_discovery(ot_fixture):
    with criterion(3, "searched (O,T) fixture is pinned and re-verified"):
        graph, partition = ot_fixture
        report = check_strongly_unique(graph, [O, T])
        assert report.is_strongly_unique
        assert report.canonical_partition == partition
        assert partition.parts()[-1], "second part must be non-empty"
        assert to_graph6(graph) == PINNED_FIXTURE


def test_criterion_04_replicator_contract(ot_replicator):
    with criterion(4, "x and x' always share a part, each choice extends once"):
        rep = ot_replicator
        x, y, xp = rep.ports["x"], rep.ports["y"], rep.ports["x'"]
        colourings = list(iter_partitions(rep.graph, [O, T]))
        assert colourings, "replicator admits no colouring at all"
        for a in colourings:
            assert a[x] == a[xp] != a[y]
        assert sum(1 for a in colourings if a[x] == 0) == 1
        assert sum(1 for a in colourings if a[x] == 1) == 1
        report = verify_replicator(rep, O, T)
        assert report.ok and report.total_colourings == 2


def test_criterion_05_mutant_sensitivity(ot_replicator, ot_cushion, ot_params):
    def replicator_mutants(rep):
        hub = rep.regions["anchor_p"][0]
        for edge in ((3, hub), (4, hub), (1, 2)):
            yield PortedGadget(
                remove_edges(rep.graph, [edge]), rep.ports, rep.anchors, rep.regions
            )
        broken, vmap = remove_vertices(rep.graph, [4])
        yield PortedGadget(
            broken,
            {k: vmap[v] for k, v in rep.ports.items()},
            rep.anchors,
            {k: tuple(vmap[v] for v in vv if v in vmap)
             for k, vv in rep.regions.items()},
        )

    def cushion_mutants(cush):
        template = cush.meta["template"]
        interior = [
            v for v in range(template.graph.n)
            if v not in (template.ports["x"], template.ports["x'"])
        ]
        q_copy = cush.meta["copies"][3]
        assert q_copy["kind"] == "Q"
        victims = [set(q_copy["shadows"])]
        for pin in q_copy["pins"]:
            victims[0].update(pin[tv] for tv in interior)
        victims.append({q_copy["pins"][0][tv] for tv in interior})
        victims.append({q_copy["pins"][1][tv] for tv in interior})
        for doomed in victims:
            broken, vmap = remove_vertices(cush.graph, sorted(doomed))
            yield PortedGadget(
                broken,
                {k: vmap[v] for k, v in cush.ports.items()},
                cush.anchors,
                {},
                {"anchor_p": vmap[cush.meta["anchor_p"]]},
            )

    with criterion(5, ">= 3 mutants of each gadget all fail verification"):
        rep_mutants = list(replicator_mutants(ot_replicator))
        assert len(rep_mutants) >= 3
        for mutant in rep_mutants:
            assert not verify_replicator(mutant, O, T).ok
        cushion_muts = list(cushion_mutants(ot_cushion))
        assert len(cushion_muts) >= 3
        for mutant in cushion_muts:
            assert not verify_pincushion(mutant, O, T, ot_params).ok


def test_criterion_06_cushion_contract(ot_cushion, ot_params):
    with criterion(6, "achieved S-patterns are the 3 singletons and l = 3"):
        report = verify_pincushion(ot_cushion, O, T, ot_params)
        assert report.ok
        r, p_count = 3, ot_params.p_count
        assert report.achieved_patterns == tuple(
            combinations(range(r), p_count)
        ) == ((0,), (1,), (2,))
        shadows_per_port = comb(r - 1, ot_params.p_count) + comb(
            r - 1, ot_params.q_count
        )
        assert shadows_per_port == 3
        for s in range(r):
            hit = [c for c in ot_cushion.meta["copies"] if s in c["subset"]]
            assert len(hit) == shadows_per_port


def test_criterion_07_transform_biconditional(ot_fixture):
    with criterion(7, "g is edgeless iff the extended graph is (O,T)-colourable"):
        fixture, partition = ot_fixture
        v_h = min(partition.parts()[0])
        for g in enumerate_graphs(5):
            extended = product_extension_transform(
                g, [O, T], fixture, partition, v_h
            )
            colourable = find_partition(extended, [O, T]) is not None
            assert colourable == satisfies(O, g), to_graph6(g)


def test_criterion_08_reduction_equivalence(ot_cushion):
    with criterion(8, "brute force agrees with reduced colourability on the sweep"):
        count = 0
        for h in enumerate_hypergraphs(4, 3):
            report = equivalence_check(h, O, T, cushion=ot_cushion)
            assert report.agree, (h.n_vertices, h.edges)
            assert report.lift_ok and report.roundtrip_ok
            count += 1
        assert count == 9


def test_criterion_09_disjoint_copies_identity():
    with criterion(9, "g in O^3 iff n disjoint copies of g lie in (O or K)^3"):
        triple = [PAIR_PROP, PAIR_PROP, PAIR_PROP]
        for g in enumerate_graphs(3):
            n = g.n
            copies = Graph(0, [])
            for _ in range(n):
                copies = disjoint_union(copies, g)
            direct = find_partition(g, [O, O, O]) is not None
            lifted = find_partition(copies, triple) is not None
            assert direct == lifted, to_graph6(g)


def test_criterion_10_determinism(ot_cushion):
    with criterion(10, "rebuilds are byte-identical, reports repeat exactly"):
        runs = []
        for _ in range(2):
            found = search_unique([O, T], 7)
            assert found is not None
            anchors = build_anchors(O, T, found[0], found[1], verify=False)
            rep = build_verified_replicator(O, T, anchors=anchors)
            params = property_pair_params(O, T)
            cushion = build_verified_pincushion(O, T, replicator=rep)
            rep_report = verify_replicator(rep, O, T)
            cushion_report = verify_pincushion(cushion, O, T, params)
            sweep = [
                equivalence_check(h, O, T, cushion=cushion).to_json_dict()
                for h in enumerate_hypergraphs(4, 3)
            ]
            runs.append(
                {
                    "fixture": to_graph6(found[0]),
                    "replicator": to_graph6(rep.graph),
                    "cushion": to_graph6(cushion.graph),
                    "replicator_report": json.dumps(
                        rep_report.to_json_dict(), sort_keys=True
                    ),
                    "cushion_report": json.dumps(
                        cushion_report.to_json_dict(), sort_keys=True
                    ),
                    "sweep": json.dumps(sweep, sort_keys=True),
                }
            )
        assert runs[0] == runs[1]
        # and the prebuilt session cushion matches the rebuilds
        assert runs[0]["cushion"] == to_graph6(ot_cushion.graph)
