"""Immutable simple graphs on dense integer vertices.

This module carries the structural machinery everything else is built on:
induced subgraphs, disjoint unions, complements, connectivity, block
decomposition, induced-pattern search, isomorphism testing, canonical
labelling, isomorph-free enumeration of small graphs, and graph6 /
edge-list I/O.

Graphs are immutable after construction, hashable, and safe to share
between concurrent readers; every function here is pure and
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import EnumerationBoundError, GraphFormatError

VertexSet = frozenset[int]

# Ceiling for isomorph-free enumeration (vertex count). 9 is desk scale:
# 274668 classes, minutes of CPU. Overridable per call.
DEFAULT_ENUMERATION_LIMIT = 9


def _bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """A simple finite undirected graph on vertices 0..n-1.

    Adjacency is stored as one integer bitmask per vertex. Instances
    compare and hash by exact labelled structure; use are_isomorphic for
    label-free comparison.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> Graph:
        """Trusted fast constructor from per-vertex neighbour bitmasks."""
        g = object.__new__(cls)
        g.n = len(adj)
        g._adj = tuple(adj)
        return g

    def adjacency(self) -> tuple[int, ...]:
        return self._adj

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbour_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbours(self, v: int) -> list[int]:
        return list(_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            m = self._adj[u] >> (u + 1) << (u + 1)
            for v in _bits(m):
                out.append((u, v))
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph({self.n}, {self.edges()!r})"


# ---------------------------------------------------------------------------
# elementary operations


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by the vertex set s, re-indexed densely.

    Vertices of s are renumbered in ascending order; the old-to-new index
    map is returned alongside the graph.
    """
    kept = sorted(set(s))
    if kept and not (0 <= kept[0] and kept[-1] < g.n):
        raise GraphFormatError(f"vertex set {kept} out of range for n={g.n}")
    index = {old: new for new, old in enumerate(kept)}
    adj = []
    for old in kept:
        m = g.neighbour_mask(old)
        new_mask = 0
        for other in kept:
            if m >> other & 1:
                new_mask |= 1 << index[other]
        adj.append(new_mask)
    return Graph.from_adjacency(adj), index


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Complement view of induced_subgraph: drop the vertices in s."""
    drop = set(s)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def remove_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    """Copy of g with the given edges deleted; missing edges are an error."""
    adj = list(g._adj)
    for u, v in edges:
        if not (0 <= u < g.n and 0 <= v < g.n) or not (adj[u] >> v & 1):
            raise GraphFormatError(f"edge ({u},{v}) not present")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph.from_adjacency(adj)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; g keeps its indices, h is shifted by g.n."""
    off = g.n
    adj = list(g._adj) + [m << off for m in h._adj]
    return Graph.from_adjacency(adj)


def complement(g: Graph) -> Graph:
    """Complement on the same vertex labels; an involution on the nose."""
    full = (1 << g.n) - 1
    adj = [full & ~m & ~(1 << v) for v, m in enumerate(g._adj)]
    return Graph.from_adjacency(adj)


def relabelled(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply the permutation perm (old index -> new index)."""
    adj = [0] * g.n
    for u in range(g.n):
        m = 0
        for v in _bits(g._adj[u]):
            m |= 1 << perm[v]
        adj[perm[u]] = m
    return Graph.from_adjacency(adj)


def is_connected(g: Graph) -> bool:
    """BFS connectivity; the 0- and 1-vertex graphs count as connected."""
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g._adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


# ---------------------------------------------------------------------------
# induced-pattern search and isomorphism


def contains_induced(host: Graph, pattern: Graph) -> VertexSet | None:
    """Search for an induced copy of pattern inside host.

    Returns the witness vertex set of the first embedding found by the
    fixed backtracking order (pattern vertices by index, host candidates
    ascending), or None. The empty pattern is contained everywhere with
    witness frozenset().
    """
    k = pattern.n
    if k == 0:
        return frozenset()
    if k > host.n:
        return None
    pat_deg = [pattern.degree(i) for i in range(k)]
    assign = [0] * k
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        for cand in range(host.n):
            if used >> cand & 1:
                continue
            if host.degree(cand) < pat_deg[i]:
                continue
            ok = True
            for j in range(i):
                if pattern.adjacent(i, j) != host.adjacent(cand, assign[j]):
                    ok = False
                    break
            if not ok:
                continue
            assign[i] = cand
            used |= 1 << cand
            if i + 1 == k or extend(i + 1):
                return True
            used &= ~(1 << cand)
        return False

    if extend(0):
        return frozenset(assign)
    return None


def _refine_colours(adj: Sequence[int], n: int, colours: list[int]) -> list[int]:
    """Colour refinement: split classes by neighbour-colour multisets until
    stable. Resulting ids are normalized to 0..k-1 in signature order, so
    isomorphic graphs refine to identical colour sequences up to the
    isomorphism."""
    while True:
        sigs = []
        for v in range(n):
            counts: dict[int, int] = {}
            for u in _bits(adj[v]):
                counts[colours[u]] = counts.get(colours[u], 0) + 1
            sigs.append((colours[v], tuple(sorted(counts.items()))))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colours:
            return new
        colours = new


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Isomorphism by refinement-guided backtracking.

    Degree sequences and refinement colour histograms prune first; the
    remaining search maps vertices of g to colour-compatible vertices of
    h. Adequate for the desk-scale graphs this package builds (tens of
    vertices).
    """
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    n = g.n
    if n == 0:
        return True
    cg = _refine_colours(g._adj, n, [0] * n)
    ch = _refine_colours(h._adj, n, [0] * n)
    if sorted(cg) != sorted(ch):
        return False
    # map g's vertices rarest-colour-first
    freq: dict[int, int] = {}
    for c in cg:
        freq[c] = freq.get(c, 0) + 1
    order = sorted(range(n), key=lambda v: (freq[cg[v]], cg[v], v))
    by_colour: dict[int, list[int]] = {}
    for w in range(n):
        by_colour.setdefault(ch[w], []).append(w)
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in by_colour.get(cg[v], ()):
            if used >> w & 1:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if g.adjacent(v, u) != h.adjacent(w, image[u]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if extend(i + 1):
                return True
            used &= ~(1 << w)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# canonical labelling


def _canonical_search(g: Graph) -> tuple[bytes, tuple[int, ...]]:
    """Minimum adjacency encoding over an individualization-refinement
    search tree, with twin-skipping to tame symmetric cells. Returns the
    key and the permutation (old index -> canonical index) achieving it."""
    n = g.n
    adj = g._adj
    if n == 0:
        return n.to_bytes(4, "big"), ()
    best_key: bytes | None = None
    best_perm: tuple[int, ...] = ()

    def leaf(colours: list[int]) -> None:
        nonlocal best_key, best_perm
        order = sorted(range(n), key=colours.__getitem__)
        bits = bytearray()
        acc = 0
        count = 0
        for j in range(1, n):
            vj = order[j]
            for i in range(j):
                acc = acc << 1 | (adj[order[i]] >> vj & 1)
                count += 1
                if count == 8:
                    bits.append(acc)
                    acc = count = 0
        if count:
            bits.append(acc << (8 - count))
        key = n.to_bytes(4, "big") + bytes(bits)
        if best_key is None or key < best_key:
            best_key = key
            perm = [0] * n
            for pos, v in enumerate(order):
                perm[v] = pos
            best_perm = tuple(perm)

    def descend(colours: list[int]) -> None:
        colours = _refine_colours(adj, n, colours)
        cell_of: dict[int, list[int]] = {}
        for v in range(n):
            cell_of.setdefault(colours[v], []).append(v)
        target = None
        for c in sorted(cell_of):
            if len(cell_of[c]) > 1:
                target = cell_of[c]
                break
        if target is None:
            leaf(colours)
            return
        tried: list[int] = []
        for v in target:
            skip = False
            for u in tried:
                both = (1 << u) | (1 << v)
                if adj[u] & ~both == adj[v] & ~both:
                    skip = True  # u and v are twins; same subtree minimum
                    break
            if skip:
                continue
            tried.append(v)
            branched = [c * 2 for c in colours]
            branched[v] -= 1
            descend(branched)

    descend([0] * n)
    assert best_key is not None
    return best_key, best_perm


def canonical_key(g: Graph) -> bytes:
    """Bytes invariant: equal exactly for isomorphic graphs."""
    return _canonical_search(g)[0]


def canonical_form(g: Graph) -> Graph:
    """The canonically labelled representative of g's isomorphism class."""
    _, perm = _canonical_search(g)
    return relabelled(g, perm)


# ---------------------------------------------------------------------------
# isomorph-free enumeration of small graphs

_LEVEL_CACHE: dict[int, list[Graph]] = {}


def _graphs_on(n: int) -> list[Graph]:
    """Canonical representatives of all isomorphism classes on n vertices,
    sorted by canonical key. Built by extending every class on n-1
    vertices with one new vertex and every possible neighbourhood, then
    deduplicating by canonical key. Levels are cached."""
    if n in _LEVEL_CACHE:
        return _LEVEL_CACHE[n]
    if n == 0:
        level = [Graph(0)]
    else:
        seen: dict[bytes, Graph] = {}
        for parent in _graphs_on(n - 1):
            base = list(parent._adj)
            for mask in range(1 << (n - 1)):
                adj = list(base)
                for u in _bits(mask):
                    adj[u] |= 1 << (n - 1)
                adj.append(mask)
                child = Graph.from_adjacency(adj)
                key, perm = _canonical_search(child)
                if key not in seen:
                    seen[key] = relabelled(child, perm)
        level = [seen[k] for k in sorted(seen)]
    _LEVEL_CACHE[n] = level
    return level


def enumerate_graphs(
    max_n: int,
    min_n: int = 0,
    limit: int | None = DEFAULT_ENUMERATION_LIMIT,
) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, for every vertex
    count from min_n to max_n, in (vertex count, canonical key) order.

    Raises EnumerationBoundError when max_n exceeds the limit (default 9;
    pass limit=None to lift it, at your own CPU's peril).
    """
    if limit is not None and max_n > limit:
        raise EnumerationBoundError(
            f"enumeration up to {max_n} vertices exceeds the configured "
            f"limit {limit}"
        )
    for n in range(min_n, max_n + 1):
        yield from _graphs_on(n)


# ---------------------------------------------------------------------------
# block decomposition


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal 2-connected subgraphs, bridges and isolated
    vertices), the cut vertices, and which blocks are end-blocks (blocks
    containing at most one cut vertex)."""

    blocks: tuple[VertexSet, ...]
    cut_vertices: VertexSet
    end_block_indices: tuple[int, ...]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Iterative Hopcroft-Tarjan block/cut decomposition.

    Every edge lands in exactly one block; isolated vertices become
    singleton blocks; blocks are reported sorted by vertex tuple.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if g._adj[root] == 0:
            disc[root] = clock
            clock += 1
            blocks.append(frozenset((root,)))
            continue
        disc[root] = low[root] = clock
        clock += 1
        edge_stack: list[tuple[int, int]] = []
        # frame: vertex, parent, neighbour iterator, children count
        stack = [[root, -1, iter(g.neighbours(root)), 0]]
        root_children = 0
        while stack:
            frame = stack[-1]
            v = frame[0]
            advanced = False
            for w in frame[2]:
                if w == frame[1]:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    frame[3] += 1
                    stack.append([w, v, iter(g.neighbours(w)), 0])
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            parent_frame = stack[-1]
            u = parent_frame[0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                comp: set[int] = set()
                while True:
                    e = edge_stack.pop()
                    comp.update(e)
                    if e == (u, v):
                        break
                blocks.append(frozenset(comp))
                if u == root:
                    root_children += 1
                else:
                    cuts.add(u)
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=sorted)
    cut_set = frozenset(cuts)
    ends = tuple(
        i for i, b in enumerate(blocks) if len(b & cut_set) <= 1
    )
    return BlockDecomposition(tuple(blocks), cut_set, ends)


# ---------------------------------------------------------------------------
# graph6 I/O (bit-exact with the de-facto standard format)


def _g6_encode_n(n: int) -> bytes:
    if n < 0:
        raise GraphFormatError("negative vertex count")
    if n <= 62:
        return bytes((n + 63,))
    if n <= 258047:
        return bytes((126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63))
    if n <= 68719476735:
        return bytes((126, 126)) + bytes(
            ((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0)
        )
    raise GraphFormatError("vertex count too large for graph6")


def _g6_decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size")
        n = 0
        for b in data[1:4]:
            n = n << 6 | (b - 63)
        return n, data[4:]
    if len(data) < 8:
        raise GraphFormatError("truncated graph6 size")
    n = 0
    for b in data[2:8]:
        n = n << 6 | (b - 63)
    return n, data[8:]


def to_graph6(g: Graph) -> str:
    """graph6 encoding: size bytes, then the upper triangle x(i,j) for
    j = 1..n-1, i < j, packed big-endian six bits per byte, each + 63."""
    out = bytearray(_g6_encode_n(g.n))
    acc = 0
    count = 0
    for j in range(1, g.n):
        col = g._adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            count += 1
            if count == 6:
                out.append(acc + 63)
                acc = count = 0
    if count:
        out.append((acc << (6 - count)) + 63)
    return out.decode("ascii")


def from_graph6(text: str) -> Graph:
    """Decode a graph6 line; the optional '>>graph6<<' prefix is accepted."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    data = s.encode("ascii", errors="strict")
    if any(b < 63 or b > 126 for b in data):
        raise GraphFormatError("invalid graph6 byte")
    n, body = _g6_decode_n(data)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 body length {len(body)}, expected {need} for n={n}"
        )
    adj = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[idx // 6] - 63
            if byte >> (5 - idx % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            idx += 1
    return Graph.from_adjacency(adj)


# ---------------------------------------------------------------------------
# edge-list text I/O


def to_edge_list_text(g: Graph) -> str:
    """Plain text: a header line 'n m', then one 'u v' line per edge."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the 'n m' + edge-lines format; '#' comments and blank lines
    are ignored."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise GraphFormatError("no header line")
    head = rows[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"bad header {rows[0]!r}, expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header {rows[0]!r}") from exc
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header")
    if len(rows) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad edge line {line!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphFormatError(f"self-loop at {u}")
        edges.append((u, v))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# named small graphs


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphFormatError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _named_table() -> dict[str, Graph]:
    table: dict[str, Graph] = {}
    for k in range(6):
        table[f"K{k}"] = complete_graph(k)
    for k in range(2, 6):
        table[f"P{k}"] = path_graph(k)
    for k in range(3, 7):
        table[f"C{k}"] = cycle_graph(k)
    table["paw"] = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    table["bowtie"] = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    return table


NAMED_GRAPHS: dict[str, Graph] = _named_table()


def named_graph(name: str) -> Graph:
    try:
        return NAMED_GRAPHS[name]
    except KeyError:
        raise GraphFormatError(f"unknown graph name {name!r}") from None


def graph_name(g: Graph) -> str | None:
    """Reverse lookup into the named table, up to isomorphism."""
    for name, h in NAMED_GRAPHS.items():
        if g.n == h.n and g.edge_count == h.edge_count and are_isomorphic(g, h):
            return name
    return None
