"""Forcing and replication gadgetry over uniquely partitionable fixtures.

A strongly uniquely (P,Q)-partitionable fixture with parts (U_P, U_Q)
lets us force outside vertices into a chosen part: a vertex joined to
exactly N(p) over U_Q (for a fixed p in U_P) must land in the P-part of
any valid colouring, else the fixture would admit a second partition.
On top of that sit:

  * the product-extension transform: G becomes G', with G in the
    product-with-one-more-factor exactly when G was in the shorter
    product;
  * the replicator: a three-port gadget (x, y, x') built from doubled
    minimal end-blocks of the two properties, in which x and x' always
    take the same part, y the other, and each choice extends in exactly
    one way;
  * the pin cushion: an independent set S of p_count + q_count port
    vertices wired through shadow copies and replicators so that every
    valid colouring puts exactly p_count of S in the P-part, and all
    such patterns occur.

Constructions are deterministic: rebuilding from equal inputs yields an
identical labelled graph, not merely an isomorphic one. Verification is
empirical (full enumeration with pruning), so the builders stay honest
on any property pair small enough to enumerate.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GadgetError, GadgetVerificationError
from .graphs import Graph, VertexSet, disjoint_union
from .partition import (
    OrderedPartition,
    check_strongly_unique,
    iter_partitions,
    partition_is_valid,
    search_unique,
)
from .properties import (
    Property,
    PropertyPairParams,
    minimal_end_block,
    property_pair_params,
)

DEFAULT_VERIFY_NODE_BUDGET = 50_000_000
DEFAULT_FIXTURE_SEARCH_MAX_N = 7


@dataclass(frozen=True)
class ForcingAnchors:
    """A verified fixture with the data needed to force vertices into a
    part: the canonical parts (u_p, u_q), one anchor vertex in each, and
    the neighbourhoods across the split that the forcing joins attach to."""

    g_pq: Graph
    u_p: VertexSet
    u_q: VertexSet
    p_vertex: int
    q_vertex: int
    force_to_p: VertexSet
    force_to_q: VertexSet


@dataclass(frozen=True)
class PortedGadget:
    """A gadget graph with named ports, optional anchor bookkeeping, named
    vertex regions, and free-form metadata (verification certificates,
    per-copy index maps)."""

    graph: Graph
    ports: dict[str, int]
    anchors: ForcingAnchors | None = None
    regions: dict[str, tuple[int, ...]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)


def build_anchors(
    p: Property,
    q: Property,
    fixture: Graph,
    partition: OrderedPartition | None = None,
    *,
    verify: bool = True,
) -> ForcingAnchors:
    """Derive forcing anchors from a strongly uniquely (p,q)-partitionable
    fixture. Anchor vertices are the lowest-index members of their parts."""
    if verify:
        report = check_strongly_unique(fixture, [p, q])
        if not report.is_strongly_unique:
            raise GadgetError(
                "fixture is not strongly uniquely partitionable for "
                f"({p.name},{q.name}); witnesses: "
                f"{[w.assignment for w in report.witnesses]}"
            )
        if partition is None:
            partition = report.canonical_partition
    if partition is None:
        found = check_strongly_unique(fixture, [p, q]).canonical_partition
        if found is None:
            raise GadgetError("fixture admits no (p,q)-partition")
        partition = found
    if not partition_is_valid(fixture, [p, q], partition):
        raise GadgetError("supplied fixture partition is not valid")
    u_p, u_q = partition.parts()
    if not u_p or not u_q:
        raise GadgetError("both fixture parts must be non-empty for anchoring")
    p_vertex = min(u_p)
    q_vertex = min(u_q)
    return ForcingAnchors(
        g_pq=fixture,
        u_p=u_p,
        u_q=u_q,
        p_vertex=p_vertex,
        q_vertex=q_vertex,
        force_to_p=frozenset(fixture.neighbours(p_vertex)) & u_q,
        force_to_q=frozenset(fixture.neighbours(q_vertex)) & u_p,
    )


def force_vertices(
    host: Graph,
    anchors: ForcingAnchors,
    to_p: Iterable[int],
    to_q: Iterable[int],
) -> tuple[Graph, dict[int, int]]:
    """Embed a fresh copy of the fixture after the host's vertices and join
    every to_p vertex to the copy's force_to_p set and every to_q vertex
    to its force_to_q set. Host vertices keep their indices; the returned
    map sends fixture indices to their embedded positions. A vertex may
    not be forced both ways."""
    top = sorted(set(to_p))
    toq = sorted(set(to_q))
    clash = set(top) & set(toq)
    if clash:
        raise GadgetError(f"vertices {sorted(clash)} forced into both parts")
    for v in top + toq:
        if not 0 <= v < host.n:
            raise GadgetError(f"forced vertex {v} outside host")
    off = host.n
    fixture = anchors.g_pq
    edges = host.edges()
    edges += [(u + off, v + off) for u, v in fixture.edges()]
    edges += [(v, w + off) for v in top for w in sorted(anchors.force_to_p)]
    edges += [(v, w + off) for v in toq for w in sorted(anchors.force_to_q)]
    return Graph(off + fixture.n, edges), {i: off + i for i in range(fixture.n)}


def product_extension_transform(
    g: Graph,
    props: Sequence[Property],
    fixture: Graph,
    fixture_partition: OrderedPartition,
    v_h: int,
    *,
    verify: bool = True,
) -> Graph:
    """Join g completely to N(v_h) within the fixture's last part.

    props lists all factors of the extended product; the fixture must be
    strongly uniquely partitionable for them, with a non-empty last part,
    and v_h must lie in the first part. The result G' satisfies: g is in
    the product of the first len(props)-1 factors exactly when G' is in
    the full product. Vertices of g keep their indices; the fixture
    occupies g.n .. g.n + fixture.n - 1.
    """
    if len(props) < 2:
        raise GadgetError("the transform needs at least two factors")
    if fixture_partition.n_parts != len(props):
        raise GadgetError("fixture partition arity differs from the factors")
    if not partition_is_valid(fixture, props, fixture_partition):
        raise GadgetError("fixture partition is not valid for the factors")
    if verify:
        report = check_strongly_unique(fixture, props)
        if not report.is_strongly_unique:
            raise GadgetError("fixture fails the strong-uniqueness re-check")
    parts = fixture_partition.parts()
    if not parts[-1]:
        raise GadgetError("fixture's last part is empty")
    if v_h not in parts[0]:
        raise GadgetError(f"anchor vertex {v_h} is not in the first part")
    out = disjoint_union(g, fixture)
    off = g.n
    join_targets = sorted(frozenset(fixture.neighbours(v_h)) & parts[-1])
    edges = out.edges() + [
        (u, w + off) for u in range(g.n) for w in join_targets
    ]
    return Graph(out.n, edges)


# ---------------------------------------------------------------------------
# replicator


def _doubled_end_block(choice) -> tuple[Graph, int, int, int]:
    """The chosen forbidden graph with a second copy of its minimal
    end-block glued at y. Returns (graph, x, y, x') where x' is the image
    of x in the new copy."""
    f = choice.f
    block = sorted(choice.block)
    extra = [v for v in block if v != choice.y]
    image = {v: f.n + i for i, v in enumerate(extra)}
    image[choice.y] = choice.y
    edges = f.edges()
    for i, u in enumerate(block):
        for v in block[i + 1 :]:
            if f.adjacent(u, v):
                edges.append(tuple(sorted((image[u], image[v]))))
    return (
        Graph(f.n + len(extra), edges),
        choice.x,
        choice.y,
        image[choice.x],
    )


def _merge_layout(
    doubled: Graph, x: int, y: int, x_prime: int, start: int
) -> dict[int, int]:
    """Index map sending x,y,x' to 0,1,2 and the remaining vertices to
    start, start+1, ... in ascending original order."""
    out = {x: 0, y: 1, x_prime: 2}
    nxt = start
    for v in range(doubled.n):
        if v not in out:
            out[v] = nxt
            nxt += 1
    return out


def build_replicator(
    p: Property, q: Property, anchors: ForcingAnchors
) -> PortedGadget:
    """Construct the three-port replicator for (p, q).

    Both properties' minimal end-blocks are doubled at their y vertex;
    the two doubled graphs are identified along (x, y, x'); everything
    else in the p-side copy is forced into the P-part and everything
    else in the q-side copy into the Q-part, through one fresh fixture
    copy. Ports: "x" -> 0, "y" -> 1, "x'" -> 2.
    """
    dp, xp, yp, xpp = _doubled_end_block(minimal_end_block(p))
    dq, xq, yq, xqq = _doubled_end_block(minimal_end_block(q))
    map_p = _merge_layout(dp, xp, yp, xpp, 3)
    map_q = _merge_layout(dq, xq, yq, xqq, dp.n)
    host_n = dp.n + dq.n - 3
    edge_set = set()
    for u, v in dp.edges():
        edge_set.add(tuple(sorted((map_p[u], map_p[v]))))
    for u, v in dq.edges():
        edge_set.add(tuple(sorted((map_q[u], map_q[v]))))
    host = Graph(host_n, sorted(edge_set))
    forced_p = tuple(sorted(map_p[v] for v in range(dp.n) if map_p[v] > 2))
    forced_q = tuple(sorted(map_q[v] for v in range(dq.n) if map_q[v] > 2))
    graph, fixture_map = force_vertices(host, anchors, forced_p, forced_q)
    fixture_vertices = tuple(fixture_map[i] for i in range(anchors.g_pq.n))
    regions = {
        "forced_p": forced_p,
        "forced_q": forced_q,
        "fixture": fixture_vertices,
        "fixture_u_p": tuple(sorted(fixture_map[v] for v in anchors.u_p)),
        "fixture_u_q": tuple(sorted(fixture_map[v] for v in anchors.u_q)),
        "anchor_p": (fixture_map[anchors.p_vertex],),
        "anchor_q": (fixture_map[anchors.q_vertex],),
    }
    return PortedGadget(
        graph=graph,
        ports={"x": 0, "y": 1, "x'": 2},
        anchors=anchors,
        regions=regions,
        meta={"verified": False},
    )


def _normalized_colourings(
    g: Graph,
    p: Property,
    q: Property,
    anchor_p: int,
    *,
    max_nodes: int | None,
) -> list[tuple[int, ...]]:
    """All (p,q)-colourings as assignment tuples with part 0 meaning the
    P-part. When p and q are the same property the two labelled versions
    of each colouring collapse: the part holding the embedded fixture's
    p-anchor counts as the P-part."""
    same = p == q
    seen = set()
    out = []
    for a in iter_partitions(g, [p, q], max_nodes=max_nodes):
        if same and a[anchor_p] == 1:
            a = tuple(1 - c for c in a)
        if same:
            if a in seen:
                continue
            seen.add(a)
        out.append(a)
    return out


@dataclass(frozen=True)
class ReplicatorReport:
    ok: bool
    total_colourings: int
    x_in_p_count: int
    x_in_q_count: int
    link_violations: tuple[tuple[int, ...], ...]
    colouring_x_in_p: tuple[int, ...] | None
    colouring_x_in_q: tuple[int, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "total_colourings": self.total_colourings,
            "x_in_p_count": self.x_in_p_count,
            "x_in_q_count": self.x_in_q_count,
            "link_violations": [list(a) for a in self.link_violations],
        }


def verify_replicator(
    gadget: PortedGadget,
    p: Property,
    q: Property,
    *,
    max_nodes: int | None = DEFAULT_VERIFY_NODE_BUDGET,
) -> ReplicatorReport:
    """Enumerate every colouring of the replicator and check its contract:
    x and x' always share a part, y takes the other, and each of the two
    choices for x extends to exactly one colouring."""
    x = gadget.ports["x"]
    y = gadget.ports["y"]
    xp = gadget.ports["x'"]
    colourings = _normalized_colourings(
        gadget.graph, p, q, gadget.regions["anchor_p"][0], max_nodes=max_nodes
    )
    link_violations = tuple(
        a for a in colourings if not (a[x] == a[xp] and a[x] != a[y])
    )
    with_p = [a for a in colourings if a[x] == 0]
    with_q = [a for a in colourings if a[x] == 1]
    ok = not link_violations and len(with_p) == 1 and len(with_q) == 1
    return ReplicatorReport(
        ok=ok,
        total_colourings=len(colourings),
        x_in_p_count=len(with_p),
        x_in_q_count=len(with_q),
        link_violations=link_violations[:5],
        colouring_x_in_p=with_p[0] if len(with_p) == 1 else None,
        colouring_x_in_q=with_q[0] if len(with_q) == 1 else None,
    )


def build_verified_replicator(
    p: Property,
    q: Property,
    *,
    anchors: ForcingAnchors | None = None,
    search_max_n: int = DEFAULT_FIXTURE_SEARCH_MAX_N,
    verify: bool = True,
    max_nodes: int | None = DEFAULT_VERIFY_NODE_BUDGET,
) -> PortedGadget:
    """Fixture search, construction and verification in one step. The
    verified gadget carries its two extension colourings in meta; with
    verify=False the gadget is marked unverified instead."""
    if anchors is None:
        found = search_unique([p, q], search_max_n)
        if found is None:
            raise GadgetError(
                f"no strongly uniquely ({p.name},{q.name})-partitionable "
                f"fixture on <= {search_max_n} vertices; gadget unavailable"
            )
        anchors = build_anchors(p, q, found[0], found[1], verify=False)
    gadget = build_replicator(p, q, anchors)
    if not verify:
        return gadget
    report = verify_replicator(gadget, p, q, max_nodes=max_nodes)
    if not report.ok:
        raise GadgetVerificationError(
            f"replicator for ({p.name},{q.name}) failed verification: "
            f"{report.to_json_dict()}"
        )
    meta = dict(gadget.meta)
    meta.update(
        verified=True,
        colouring_x_in_p=report.colouring_x_in_p,
        colouring_x_in_q=report.colouring_x_in_q,
    )
    return replace(gadget, meta=meta)


# ---------------------------------------------------------------------------
# port identification


@dataclass(frozen=True)
class IdentifyResult:
    gadget: PortedGadget
    map_a: dict[int, int]
    map_b: dict[int, int]


def _merge_vertex(g: Graph, keep: int, drop: int) -> tuple[Graph, dict[int, int]]:
    if keep == drop:
        raise GadgetError("cannot identify a vertex with itself")
    if g.adjacent(keep, drop):
        raise GadgetError(
            "identification would create a self-loop: the vertices are adjacent"
        )
    index = {}
    nxt = 0
    for v in range(g.n):
        if v == drop:
            continue
        index[v] = nxt
        nxt += 1
    index[drop] = index[keep]
    edges = set()
    for u, v in g.edges():
        a, b = index[u], index[v]
        edges.add((min(a, b), max(a, b)))
    return Graph(g.n - 1, sorted(edges)), index


def identify_ports(
    a: PortedGadget,
    port_a: str,
    b: PortedGadget | Graph,
    vertex_b: int,
) -> IdentifyResult:
    """Identify a's named port with a vertex of b.

    When b is a different gadget or graph it is embedded disjointly
    first; b's ports (if any) join the result prefixed with "b.". When b
    is the gadget a itself the identification happens inside one graph
    and is rejected if the two vertices are adjacent (it would create a
    self-loop). Region/meta bookkeeping is dropped; ports are remapped.
    """
    va = a.ports[port_a]
    if b is a:
        if not 0 <= vertex_b < a.graph.n:
            raise GadgetError(f"vertex {vertex_b} outside gadget")
        merged, index = _merge_vertex(a.graph, va, vertex_b)
        ports = {name: index[v] for name, v in a.ports.items()}
        gadget = PortedGadget(merged, ports, a.anchors)
        return IdentifyResult(gadget, index, index)
    bg = b.graph if isinstance(b, PortedGadget) else b
    if not 0 <= vertex_b < bg.n:
        raise GadgetError(f"vertex {vertex_b} outside the attached graph")
    off = a.graph.n
    union = disjoint_union(a.graph, bg)
    merged, index = _merge_vertex(union, va, vertex_b + off)
    map_a = {v: index[v] for v in range(a.graph.n)}
    map_b = {v: index[v + off] for v in range(bg.n)}
    ports = {name: map_a[v] for name, v in a.ports.items()}
    if isinstance(b, PortedGadget):
        for name, v in b.ports.items():
            ports[f"b.{name}"] = map_b[v]
    gadget = PortedGadget(merged, ports, a.anchors)
    return IdentifyResult(gadget, map_a, map_b)


# ---------------------------------------------------------------------------
# pin cushion


def build_pincushion(
    p: Property,
    q: Property,
    params: PropertyPairParams,
    replicator: PortedGadget,
) -> PortedGadget:
    """Wire an independent set S of p_count + q_count ports through shadow
    copies of the smallest forbidden graphs.

    Every (p_count+1)-subset of S gets a fresh copy of h_p and every
    (q_count+1)-subset a fresh copy of h_q, each copy vertex shadowing
    one subset member through a fresh replicator (x identified with the
    S-vertex, x' with the shadow). Any colouring must then put exactly
    p_count of S into the P-part, and every such pattern extends.
    """
    r = params.p_count + params.q_count
    if r < 3:
        raise GadgetError(
            "pin cushion needs p_count + q_count >= 3 (the pair of "
            "edgeless-type properties is excluded)"
        )
    if params.h_p.n != params.p_count + 1 or params.h_q.n != params.q_count + 1:
        raise GadgetError("pair parameters are inconsistent")
    template = replicator.graph
    tx = replicator.ports["x"]
    txp = replicator.ports["x'"]
    if template.adjacent(tx, txp):
        raise GadgetError("replicator ports x and x' must be non-adjacent")
    interior = [v for v in range(template.n) if v not in (tx, txp)]
    template_edges = template.edges()
    edges: list[tuple[int, int]] = []
    copies: list[dict] = []
    nxt = r
    for kind, pattern, size in (
        ("P", params.h_p, params.p_count + 1),
        ("Q", params.h_q, params.q_count + 1),
    ):
        for subset in combinations(range(r), size):
            shadows = tuple(range(nxt, nxt + pattern.n))
            nxt += pattern.n
            edges += [(shadows[u], shadows[v]) for u, v in pattern.edges()]
            pins = []
            for idx, s_vertex in enumerate(subset):
                vmap = {tx: s_vertex, txp: shadows[idx]}
                for tv in interior:
                    vmap[tv] = nxt
                    nxt += 1
                edges += [(vmap[u], vmap[v]) for u, v in template_edges]
                pins.append(vmap)
            copies.append(
                {"kind": kind, "subset": subset, "shadows": shadows, "pins": pins}
            )
    graph = Graph(nxt, edges)
    ports = {f"S[{i}]": i for i in range(r)}
    anchor_template = replicator.regions["anchor_p"][0]
    meta = {
        "copies": copies,
        "template": replicator,
        "anchor_p": copies[0]["pins"][0][anchor_template],
        "verified": False,
    }
    return PortedGadget(
        graph=graph,
        ports=ports,
        anchors=replicator.anchors,
        regions={"S": tuple(range(r))},
        meta=meta,
    )


@dataclass(frozen=True)
class PincushionReport:
    ok: bool
    total_colourings: int
    achieved_patterns: tuple[tuple[int, ...], ...]
    missing_patterns: tuple[tuple[int, ...], ...]
    wrong_size_examples: tuple[tuple[int, ...], ...]
    pattern_colourings: dict[tuple[int, ...], tuple[int, ...]] = field(
        default_factory=dict
    )

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "total_colourings": self.total_colourings,
            "achieved_patterns": [list(t) for t in self.achieved_patterns],
            "missing_patterns": [list(t) for t in self.missing_patterns],
            "wrong_size_examples": [list(t) for t in self.wrong_size_examples],
        }


def verify_pincushion(
    gadget: PortedGadget,
    p: Property,
    q: Property,
    params: PropertyPairParams,
    *,
    max_nodes: int | None = DEFAULT_VERIFY_NODE_BUDGET,
) -> PincushionReport:
    """Enumerate every colouring of the cushion and check that S always
    carries exactly p_count P-vertices and that every p_count-subset of S
    is achieved."""
    r = params.p_count + params.q_count
    s_vertices = [gadget.ports[f"S[{i}]"] for i in range(r)]
    colourings = _normalized_colourings(
        gadget.graph, p, q, gadget.meta["anchor_p"], max_nodes=max_nodes
    )
    achieved: dict[tuple[int, ...], tuple[int, ...]] = {}
    wrong: list[tuple[int, ...]] = []
    for a in colourings:
        pattern = tuple(i for i in range(r) if a[s_vertices[i]] == 0)
        achieved.setdefault(pattern, a)
        if len(pattern) != params.p_count:
            wrong.append(pattern)
    expected = set(combinations(range(r), params.p_count))
    missing = tuple(sorted(expected - achieved.keys()))
    ok = not wrong and not missing and achieved.keys() == expected
    return PincushionReport(
        ok=ok,
        total_colourings=len(colourings),
        achieved_patterns=tuple(sorted(achieved)),
        missing_patterns=missing,
        wrong_size_examples=tuple(wrong[:5]),
        pattern_colourings=dict(achieved),
    )


def build_verified_pincushion(
    p: Property,
    q: Property,
    *,
    replicator: PortedGadget | None = None,
    search_max_n: int = DEFAULT_FIXTURE_SEARCH_MAX_N,
    verify: bool = True,
    max_nodes: int | None = DEFAULT_VERIFY_NODE_BUDGET,
) -> PortedGadget:
    """Replicator pipeline plus cushion construction and verification."""
    if replicator is None:
        replicator = build_verified_replicator(
            p, q, search_max_n=search_max_n, verify=verify, max_nodes=max_nodes
        )
    params = property_pair_params(p, q)
    gadget = build_pincushion(p, q, params, replicator)
    if not verify:
        return gadget
    report = verify_pincushion(gadget, p, q, params, max_nodes=max_nodes)
    if not report.ok:
        raise GadgetVerificationError(
            f"pin cushion for ({p.name},{q.name}) failed verification: "
            f"{report.to_json_dict()}"
        )
    meta = dict(gadget.meta)
    meta["verified"] = True
    meta["pattern_colourings"] = report.pattern_colourings
    return replace(gadget, meta=meta)
