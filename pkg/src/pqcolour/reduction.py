"""Reduction from exact hypergraph colouring to two-part graph colouring.

The source problem: given an r-uniform hypergraph and a target p, find a
vertex set U meeting every edge in exactly p vertices. For a property
pair (P,Q) with smallest forbidden graphs on p_count+1 and q_count+1
vertices, instances with r = p_count + q_count and p = p_count reduce to
(P,Q)-colourability: replace each hyperedge with a pin cushion whose
port set S is identified with the edge's vertices. The cushion contract
(every colouring puts exactly p_count of S into the P-part, all patterns
achieved) makes the reduction exact in both directions, and the
certificate maps below transport witnesses across it.

Everything here is deterministic and, at small scale, checkable against
brute force; equivalence_check does exactly that for one instance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Sequence

from .errors import (
    CertificateError,
    EnumerationBoundError,
    GraphFormatError,
    ReductionError,
)
from .gadgets import PortedGadget, build_verified_pincushion
from .graphs import Graph
from .partition import OrderedPartition, find_partition, partition_is_valid
from .properties import Property, property_pair_params


class RegimeWarning(UserWarning):
    """The instance falls outside the regime the reduction is designed
    for (r >= 3 and 0 < p_target < r). Such instances are still valid
    inputs for brute force."""


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph with a per-edge intersection target."""

    n_vertices: int
    r: int
    p_target: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ReductionError("edge arity must be at least 1")
        if self.n_vertices < 0:
            raise ReductionError("vertex count must be non-negative")
        if not 0 <= self.p_target <= self.r:
            raise ReductionError("target must lie between 0 and the arity")
        normd = []
        for e in self.edges:
            t = tuple(sorted(e))
            if len(set(t)) != self.r:
                raise ReductionError(f"edge {e} must have {self.r} distinct vertices")
            if t and (t[0] < 0 or t[-1] >= self.n_vertices):
                raise ReductionError(f"edge {e} mentions a vertex out of range")
            normd.append(t)
        object.__setattr__(self, "edges", tuple(normd))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def in_regime(self) -> bool:
        return self.r >= 3 and 0 < self.p_target < self.r


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the plain text format: a header line "r p n m" followed by m
    edge lines of r vertex indices each. '#' starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty hypergraph text")
    header = lines[0].split()
    if len(header) != 4:
        raise GraphFormatError("header must be 'r p n m'")
    try:
        r, p_target, n, m = (int(tok) for tok in header)
    except ValueError:
        raise GraphFormatError(f"bad header {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        toks = line.split()
        if len(toks) != r:
            raise GraphFormatError(f"edge line {line!r} must list {r} vertices")
        try:
            edges.append(tuple(int(tok) for tok in toks))
        except ValueError:
            raise GraphFormatError(f"bad edge line {line!r}") from None
    try:
        h = Hypergraph(n_vertices=n, r=r, p_target=p_target, edges=tuple(edges))
    except ReductionError as exc:
        raise GraphFormatError(str(exc)) from None
    if not h.in_regime():
        warnings.warn(
            f"instance with r={r}, target={p_target} is outside the "
            "intended regime (r >= 3, 0 < target < r)",
            RegimeWarning,
            stacklevel=2,
        )
    return h


def hypergraph_to_text(h: Hypergraph) -> str:
    lines = [f"{h.r} {h.p_target} {h.n_vertices} {h.n_edges}"]
    lines += [" ".join(str(v) for v in e) for e in h.edges]
    return "\n".join(lines) + "\n"


def brute_pinr(
    h: Hypergraph, *, max_vertices: int = 24
) -> tuple[int, ...] | None:
    """Exhaustive search for a vertex set meeting every edge in exactly
    p_target vertices. Returns the lexicographically first witness (as a
    sorted vertex tuple) or None. Subsets are explored in lexicographic
    order of their sorted tuples, with admissible pruning."""
    if h.n_vertices > max_vertices:
        raise EnumerationBoundError(
            f"brute force over {h.n_vertices} vertices exceeds the bound "
            f"{max_vertices}"
        )
    edges = [frozenset(e) for e in h.edges]
    target = h.p_target

    def feasible(chosen: frozenset, next_start: int) -> bool:
        for e in edges:
            have = len(chosen & e)
            if have > target:
                return False
            open_slots = sum(1 for v in e if v >= next_start and v not in chosen)
            if have + open_slots < target:
                return False
        return True

    def dfs(chosen: list[int], start: int) -> tuple[int, ...] | None:
        cs = frozenset(chosen)
        if all(len(cs & e) == target for e in edges):
            return tuple(chosen)
        for v in range(start, h.n_vertices):
            chosen.append(v)
            if feasible(frozenset(chosen), v + 1):
                hit = dfs(chosen, v + 1)
                if hit is not None:
                    return hit
            chosen.pop()
        return None

    return dfs([], 0)


def is_pinr_certificate(h: Hypergraph, u: Sequence[int]) -> bool:
    us = set(u)
    if not all(0 <= v < h.n_vertices for v in us):
        return False
    return all(len(us & set(e)) == h.p_target for e in h.edges)


def enumerate_hypergraphs(
    max_vertices: int,
    max_edges: int,
    *,
    r: int = 3,
    p_target: int = 1,
    limit: int = 8,
) -> Iterator[Hypergraph]:
    """All r-uniform instances with at most max_vertices vertices and
    max_edges edges, one per isomorphism class, in a deterministic order.
    Canonical forms are taken by minimizing over all vertex permutations,
    so the bound is kept small."""
    if max_vertices > limit:
        raise EnumerationBoundError(
            f"hypergraph enumeration over {max_vertices} vertices exceeds "
            f"the bound {limit}"
        )
    for n in range(max_vertices + 1):
        all_edges = list(combinations(range(n), r))
        seen = set()
        for m in range(min(max_edges, len(all_edges)) + 1):
            level = []
            for chosen in combinations(all_edges, m):
                canon = min(
                    tuple(sorted(tuple(sorted(perm[v] for v in e)) for e in chosen))
                    for perm in permutations(range(n))
                ) if n else tuple(chosen)
                if canon not in seen:
                    seen.add(canon)
                    level.append(canon)
            for canon in sorted(level):
                yield Hypergraph(
                    n_vertices=n, r=r, p_target=p_target, edges=canon
                )


# ---------------------------------------------------------------------------
# the reduction proper


@dataclass(frozen=True)
class ReductionCertificateMap:
    """Index bookkeeping for one reduction: which output vertices realise
    the hypergraph vertices (always 0..n-1) and, per edge, where each
    cushion vertex landed."""

    hypergraph: Hypergraph
    graph: Graph
    cushion: PortedGadget
    edge_maps: tuple[dict[int, int], ...]

    def port_vertex(self, edge_index: int, hyper_vertex: int) -> int:
        """The graph vertex realising hyper_vertex inside edge_index's
        cushion copy. Shared hypergraph vertices get the same graph
        vertex in every cushion containing them."""
        e = self.hypergraph.edges[edge_index]
        if hyper_vertex not in e:
            raise ReductionError(
                f"vertex {hyper_vertex} is not on edge {edge_index}"
            )
        i = e.index(hyper_vertex)
        return self.edge_maps[edge_index][self.cushion.ports[f"S[{i}]"]]

    def cushion_region(self, edge_index: int) -> range:
        """The interior vertex range contributed by edge_index's cushion."""
        r = len(self.cushion.regions["S"])
        span = self.cushion.graph.n - r
        start = self.hypergraph.n_vertices + edge_index * span
        return range(start, start + span)


def predicted_reduction_size(h: Hypergraph, cushion: PortedGadget) -> int:
    r = len(cushion.regions["S"])
    return h.n_vertices + h.n_edges * (cushion.graph.n - r)


def reduce_hypergraph(
    h: Hypergraph,
    p: Property,
    q: Property,
    *,
    cushion: PortedGadget | None = None,
    verify: bool = True,
) -> tuple[Graph, ReductionCertificateMap]:
    """Build the (p,q)-colourability instance for h.

    Output vertices 0..n-1 are the hypergraph's vertices; each edge
    contributes a fresh cushion interior, its ports identified with the
    edge's vertices in sorted order. The pair must match the instance:
    r = p_count + q_count and p_target = p_count.
    """
    params = property_pair_params(p, q)
    r = params.p_count + params.q_count
    if h.r != r:
        raise ReductionError(
            f"instance arity {h.r} does not match the pair's {r} "
            f"(p_count={params.p_count}, q_count={params.q_count})"
        )
    if h.p_target != params.p_count:
        raise ReductionError(
            f"instance target {h.p_target} does not match p_count "
            f"{params.p_count}"
        )
    if cushion is None:
        cushion = build_verified_pincushion(p, q, verify=verify)
    s_ports = [cushion.ports[f"S[{i}]"] for i in range(r)]
    if sorted(s_ports) != list(range(r)):
        raise ReductionError("cushion ports are not the leading vertices")
    interior = list(range(r, cushion.graph.n))
    cushion_edges = cushion.graph.edges()
    edges: list[tuple[int, int]] = []
    edge_maps: list[dict[int, int]] = []
    base = h.n_vertices
    for e in h.edges:
        vmap = {s_ports[i]: e[i] for i in range(r)}
        for k, v in enumerate(interior):
            vmap[v] = base + k
        base += len(interior)
        edges += [(vmap[u], vmap[v]) for u, v in cushion_edges]
        edge_maps.append(vmap)
    graph = Graph(base, edges)
    return graph, ReductionCertificateMap(
        hypergraph=h,
        graph=graph,
        cushion=cushion,
        edge_maps=tuple(edge_maps),
    )


def _assignment_of(colouring: Sequence[int] | OrderedPartition) -> tuple[int, ...]:
    if isinstance(colouring, OrderedPartition):
        return colouring.assignment
    return tuple(colouring)


def lift_certificate(
    rmap: ReductionCertificateMap,
    colouring: Sequence[int] | OrderedPartition,
    p: Property,
    q: Property,
) -> tuple[int, ...]:
    """Turn a valid (p,q)-colouring of the reduced graph into a witness
    for the hypergraph instance. Raises CertificateError if the colouring
    is invalid or its restriction misses a target (which a verified
    cushion rules out)."""
    h = rmap.hypergraph
    g = rmap.graph
    assignment = _assignment_of(colouring)
    if len(assignment) != g.n:
        raise CertificateError(
            f"colouring length {len(assignment)} != graph order {g.n}"
        )
    if not partition_is_valid(g, [p, q], OrderedPartition(2, assignment)):
        raise CertificateError("colouring is not a valid (p,q)-partition")
    u = tuple(v for v in range(h.n_vertices) if assignment[v] == 0)
    if is_pinr_certificate(h, u):
        return u
    if p == q:
        flipped = tuple(v for v in range(h.n_vertices) if assignment[v] == 1)
        if is_pinr_certificate(h, flipped):
            return flipped
    bad = next(e for e in h.edges if len(set(u) & set(e)) != h.p_target)
    raise CertificateError(
        f"lifted set {u} meets edge {bad} in {len(set(u) & set(bad))} "
        f"vertices, not {h.p_target}"
    )


def encode_certificate(
    rmap: ReductionCertificateMap,
    u: Sequence[int],
    p: Property,
    q: Property,
) -> tuple[int, ...]:
    """Turn a hypergraph witness into a full colouring of the reduced
    graph, filling each cushion interior from the verified template's
    stored colourings (or by a per-edge solve when none are stored). The
    result is validated before being returned."""
    h = rmap.hypergraph
    if not is_pinr_certificate(h, u):
        raise CertificateError(f"{tuple(u)} is not a valid witness")
    us = set(u)
    assignment = [-1] * rmap.graph.n
    for v in range(h.n_vertices):
        assignment[v] = 0 if v in us else 1
    r = h.r
    stored = rmap.cushion.meta.get("pattern_colourings")
    for e, vmap in zip(h.edges, rmap.edge_maps):
        pattern = tuple(i for i in range(r) if e[i] in us)
        if stored is not None and pattern in stored:
            local = stored[pattern]
        else:
            preassigned = {
                rmap.cushion.ports[f"S[{i}]"]: (0 if i in pattern else 1)
                for i in range(r)
            }
            solved = find_partition(
                rmap.cushion.graph, [p, q], preassigned=preassigned
            )
            if solved is None:
                raise CertificateError(
                    f"cushion admits no colouring with pattern {pattern}"
                )
            local = solved.assignment
        for cv in range(rmap.cushion.graph.n):
            target = vmap[cv]
            if target >= h.n_vertices:
                assignment[target] = local[cv]
    out = tuple(assignment)
    if not partition_is_valid(rmap.graph, [p, q], OrderedPartition(2, out)):
        raise CertificateError("encoded colouring failed validation")
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    hypergraph: Hypergraph
    graph_order: int
    brute_witness: tuple[int, ...] | None
    reduced_satisfiable: bool
    agree: bool
    lift_ok: bool
    roundtrip_ok: bool

    @property
    def ok(self) -> bool:
        return self.agree and self.lift_ok and self.roundtrip_ok

    def to_json_dict(self) -> dict:
        return {
            "instance": {
                "r": self.hypergraph.r,
                "p_target": self.hypergraph.p_target,
                "n_vertices": self.hypergraph.n_vertices,
                "edges": [list(e) for e in self.hypergraph.edges],
            },
            "graph_order": self.graph_order,
            "brute_satisfiable": self.brute_witness is not None,
            "brute_witness": (
                list(self.brute_witness) if self.brute_witness is not None else None
            ),
            "reduced_satisfiable": self.reduced_satisfiable,
            "agree": self.agree,
            "lift_ok": self.lift_ok,
            "roundtrip_ok": self.roundtrip_ok,
            "ok": self.ok,
        }


def equivalence_check(
    h: Hypergraph,
    p: Property,
    q: Property,
    *,
    cushion: PortedGadget | None = None,
    max_nodes: int | None = None,
) -> EquivalenceReport:
    """Cross-check the reduction on one instance: brute force the
    hypergraph, solve the reduced graph, compare, and transport
    certificates both ways."""
    brute = brute_pinr(h)
    graph, rmap = reduce_hypergraph(h, p, q, cushion=cushion)
    colouring = find_partition(graph, [p, q], max_nodes=max_nodes)
    agree = (brute is None) == (colouring is None)
    lift_ok = True
    if colouring is not None:
        try:
            lift_certificate(rmap, colouring, p, q)
        except CertificateError:
            lift_ok = False
    roundtrip_ok = True
    if brute is not None:
        try:
            encoded = encode_certificate(rmap, brute, p, q)
            lifted = lift_certificate(rmap, encoded, p, q)
            roundtrip_ok = set(lifted) == set(brute)
        except CertificateError:
            roundtrip_ok = False
    return EquivalenceReport(
        hypergraph=h,
        graph_order=graph.n,
        brute_witness=brute,
        reduced_satisfiable=colouring is not None,
        agree=agree,
        lift_ok=lift_ok,
        roundtrip_ok=roundtrip_ok,
    )
