"""Finitely presented induced-hereditary graph properties.

A property is given by its set of minimal forbidden induced subgraphs:
a graph satisfies the property exactly when it contains none of them as
an induced subgraph. Such properties are induced-hereditary by
construction, and additive (closed under disjoint unions) precisely
when every forbidden graph is connected.

The module also supplies the end-block selection used by the gadget
builders, enumeration of small graphs with a property, a plain-text
definition format, and the built-in properties O (edgeless) and
T (triangle-free).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import GraphFormatError, PropertyError
from .graphs import (
    Graph,
    VertexSet,
    block_decomposition,
    canonical_form,
    canonical_key,
    complement,
    complete_graph,
    contains_induced,
    enumerate_graphs,
    graph_name,
    is_connected,
    named_graph,
    parse_edge_list,
    to_edge_list_text,
)

DEFAULT_ENUMERATION_LIMIT = 9


def minimalize(graphs: Iterable[Graph]) -> list[Graph]:
    """Reduce a family to its minimal members under induced containment.

    Isomorphic duplicates collapse to one canonical representative, any
    graph containing another member is dropped, and the result is sorted
    by (vertex count, canonical key).
    """
    canon: dict[bytes, Graph] = {}
    for g in graphs:
        key = canonical_key(g)
        if key not in canon:
            canon[key] = canonical_form(g)
    items = sorted(canon.values(), key=lambda g: (g.n, canonical_key(g)))
    kept: list[Graph] = []
    for g in items:
        if not any(contains_induced(g, h) is not None for h in kept):
            kept.append(g)
    return kept


@dataclass(frozen=True, eq=False)
class Property:
    """An induced-hereditary property presented by forbidden subgraphs.

    The forbidden family is normalized on construction: canonically
    labelled, deduplicated, and reduced to an antichain. Equality and
    hashing are extensional (the name is a label only).
    """

    name: str
    forbidden: tuple[Graph, ...]

    def __post_init__(self) -> None:
        fam = list(self.forbidden)
        if not fam:
            raise PropertyError("a property needs at least one forbidden graph")
        for g in fam:
            if g.n <= 1:
                raise PropertyError(
                    "forbidden graphs must have at least 2 vertices "
                    f"(got one on {g.n})"
                )
        object.__setattr__(self, "forbidden", tuple(minimalize(fam)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Property):
            return NotImplemented
        return self._keys() == other._keys()

    def __hash__(self) -> int:
        return hash(self._keys())

    def _keys(self) -> tuple[bytes, ...]:
        return tuple(canonical_key(g) for g in self.forbidden)

    def __repr__(self) -> str:
        return f"Property({self.name!r}, {len(self.forbidden)} forbidden)"


O = Property("O", (complete_graph(2),))
T = Property("T", (complete_graph(3),))
BUILTINS: dict[str, Property] = {"O": O, "T": T}


def satisfies(p: Property, g: Graph) -> bool:
    """Does g avoid every forbidden graph of p as an induced subgraph?"""
    return all(
        f.n > g.n or contains_induced(g, f) is None for f in p.forbidden
    )


def violation_witness(p: Property, g: Graph) -> tuple[Graph, VertexSet] | None:
    """First forbidden graph found inside g, with its witness vertices."""
    for f in p.forbidden:
        if f.n <= g.n:
            w = contains_induced(g, f)
            if w is not None:
                return f, w
    return None


def is_additive(p: Property) -> bool:
    """Additive (union-closed) iff every forbidden graph is connected."""
    return all(is_connected(f) for f in p.forbidden)


def intersect(d: Property, p: Property) -> Property:
    """The conjunction of two properties: forbid the union of the two
    families, re-minimalized."""
    return Property(f"({d.name}&{p.name})", d.forbidden + p.forbidden)


def complement_property(p: Property) -> Property:
    """The property of graphs whose complement satisfies p: forbid the
    complements of p's forbidden graphs."""
    return Property(f"co-{p.name}", tuple(complement(f) for f in p.forbidden))


def smallest_forbidden(p: Property) -> tuple[Graph, int]:
    """The smallest forbidden graph (ties broken by canonical key) and the
    largest k such that every graph on k vertices satisfies p."""
    h = p.forbidden[0]
    return h, h.n - 1


@dataclass(frozen=True)
class PropertyPairParams:
    """The derived parameters of a property pair: each side's smallest
    forbidden graph and its vertex count minus one. Every graph on at
    most p_count (resp. q_count) vertices satisfies the property."""

    h_p: Graph
    p_count: int
    h_q: Graph
    q_count: int


def property_pair_params(p: Property, q: Property) -> PropertyPairParams:
    h_p, p_count = smallest_forbidden(p)
    h_q, q_count = smallest_forbidden(q)
    return PropertyPairParams(h_p, p_count, h_q, q_count)


@dataclass(frozen=True)
class EndBlockChoice:
    """A globally minimal end-block over all forbidden graphs of a
    property: the chosen graph f, the end-block's vertex set, its size k,
    the block's cut vertex y (or the lowest-index block vertex when the
    block is the whole graph), and a neighbour x of y inside the block."""

    f: Graph
    block: VertexSet
    k: int
    y: int
    x: int


def minimal_end_block(p: Property) -> EndBlockChoice:
    """Pick the end-block of smallest vertex count over all forbidden
    graphs of an additive property, deterministically.

    Forbidden graphs are scanned in their stored order and blocks in
    sorted order; the first end-block achieving the global minimum wins.
    y is the block's unique cut vertex when there is one, else the
    lowest-index vertex of the block; x is the lowest-index neighbour of
    y inside the block.
    """
    if not is_additive(p):
        raise PropertyError(
            f"property {p.name} is not additive; end-block selection "
            "requires connected forbidden graphs"
        )
    best: EndBlockChoice | None = None
    for f in p.forbidden:
        decomp = block_decomposition(f)
        for idx in decomp.end_block_indices:
            block = decomp.blocks[idx]
            k = len(block)
            if best is not None and k >= best.k:
                continue
            cuts = block & decomp.cut_vertices
            y = min(cuts) if cuts else min(block)
            inside = [v for v in f.neighbours(y) if v in block]
            x = min(inside)
            best = EndBlockChoice(f, block, k, y, x)
    assert best is not None  # forbidden is non-empty and connected
    return best


def enumerate_graphs_satisfying(
    p: Property,
    max_n: int,
    limit: int | None = DEFAULT_ENUMERATION_LIMIT,
) -> Iterator[Graph]:
    """All isomorphism classes on <= max_n vertices satisfying p, in
    (vertex count, canonical key) order."""
    for g in enumerate_graphs(max_n, limit=limit):
        if satisfies(p, g):
            yield g


# ---------------------------------------------------------------------------
# plain-text property definitions
#
#   # comment lines and blanks are ignored
#   property <name>
#   graph <shorthand>          e.g. K2, K3, P3, P4, C4, C5, paw, bowtie
#   graph                      followed by an edge list: 'n m' + m edge lines
#   4 3
#   0 1
#   1 2
#   2 3

_SHORTHAND = ("K2", "K3", "P3", "P4", "C4", "C5", "paw", "bowtie")


def parse_property(text: str) -> Property:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty property definition")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "property":
        raise GraphFormatError(
            f"expected 'property <name>' header, got {lines[0]!r}"
        )
    name = head[1]
    graphs: list[Graph] = []
    i = 1
    while i < len(lines):
        parts = lines[i].split()
        if parts[0] != "graph":
            raise GraphFormatError(f"expected a 'graph' stanza, got {lines[i]!r}")
        if len(parts) == 2:
            if parts[1] not in _SHORTHAND:
                raise GraphFormatError(f"unknown shorthand {parts[1]!r}")
            graphs.append(named_graph(parts[1]))
            i += 1
            continue
        if len(parts) != 1:
            raise GraphFormatError(f"bad graph stanza {lines[i]!r}")
        i += 1
        if i >= len(lines):
            raise GraphFormatError("graph stanza missing its edge list")
        head_parts = lines[i].split()
        if len(head_parts) != 2:
            raise GraphFormatError(f"bad edge-list header {lines[i]!r}")
        try:
            m = int(head_parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad edge-list header {lines[i]!r}") from exc
        chunk = lines[i : i + 1 + m]
        if len(chunk) != 1 + m:
            raise GraphFormatError("edge list shorter than its header claims")
        graphs.append(parse_edge_list("\n".join(chunk)))
        i += 1 + m
    if not graphs:
        raise GraphFormatError("property definition lists no graphs")
    return Property(name, tuple(graphs))


def property_to_text(p: Property) -> str:
    """Emit a definition that parse_property reads back to an equal
    property; named shorthands are used where they apply."""
    out = [f"property {p.name}"]
    for f in p.forbidden:
        name = graph_name(f)
        if name in _SHORTHAND:
            out.append(f"graph {name}")
        else:
            out.append("graph")
            out.append(to_edge_list_text(f).rstrip("\n"))
    return "\n".join(out) + "\n"
