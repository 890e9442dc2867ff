"""Exact search for ordered vertex partitions into hereditary properties.

Given a graph and a list of properties (P_1, ..., P_k), the solver
assigns vertices to parts by backtracking in fixed index order. A
partial assignment is abandoned as soon as some part's assigned vertices
already induce a forbidden graph of that part's property; the check is
incremental, anchored at the vertex just placed, and only ever looks at
forbidden graphs fully contained in assigned vertices, so no completion
is lost. Everything is single-threaded, pure and deterministic: the
first partition found is the lexicographically least assignment vector.

The module also decides strong uniqueness: a graph is strongly uniquely
partitionable when it has exactly one ordered partition up to (a) a
permutation of the parts that (b) only moves parts between positions
carrying equal properties (positions in a common cycle of the
permutation must agree extensionally).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import EnumerationBoundError, PropertyError
from .graphs import Graph, VertexSet, _bits, _graphs_on, induced_subgraph
from .properties import Property, is_additive, satisfies

# Default ceiling for full enumerations: n_parts ** n must stay within
# this unless a cap or an explicit override is given.
DEFAULT_ASSIGNMENT_BOUND = 2**24

DEFAULT_GRAPH_SEARCH_LIMIT = 9


@dataclass(frozen=True)
class OrderedPartition:
    """An assignment of every vertex to one of n_parts parts (parts may
    be empty)."""

    n_parts: int
    assignment: tuple[int, ...]

    def parts(self) -> list[VertexSet]:
        sets: list[set[int]] = [set() for _ in range(self.n_parts)]
        for v, i in enumerate(self.assignment):
            sets[i].add(v)
        return [frozenset(s) for s in sets]

    def to_json_dict(self) -> dict:
        return {
            "n_parts": self.n_parts,
            "parts": [sorted(s) for s in self.parts()],
        }


# ---------------------------------------------------------------------------
# the incremental forbidden-graph checkers

_EDGE = 0
_CLIQUE = 1
_INDEPENDENT = 2
_GENERAL = 3


def _classify(f: Graph) -> tuple[int, object]:
    full = f.n * (f.n - 1) // 2
    if f.n == 2 and f.edge_count == 1:
        return _EDGE, None
    if f.edge_count == full:
        return _CLIQUE, f.n
    if f.edge_count == 0:
        return _INDEPENDENT, f.n
    return _GENERAL, f


def _has_clique_within(adj: Sequence[int], cand: int, k: int) -> bool:
    """Is there a k-clique inside the candidate mask?"""
    if k == 0:
        return True
    while cand.bit_count() >= k:
        v = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        if _has_clique_within(adj, cand & adj[v], k - 1):
            return True
    return False


def _has_independent_within(adj: Sequence[int], cand: int, k: int) -> bool:
    """Is there an independent set of size k inside the candidate mask?"""
    if k == 0:
        return True
    while cand.bit_count() >= k:
        v = (cand & -cand).bit_length() - 1
        cand &= cand - 1
        if _has_independent_within(adj, cand & ~adj[v], k - 1):
            return True
    return False


def _anchored_induced(
    g: Graph, allowed: int, pattern: Graph, anchor: int
) -> bool:
    """Does g restricted to the allowed mask contain an induced copy of
    pattern that uses the anchor vertex?"""
    k = pattern.n
    if allowed.bit_count() < k:
        return False
    rest = allowed & ~(1 << anchor)
    assign = [0] * k

    def extend(i: int, used: int, order: list[int]) -> bool:
        if i == k:
            return True
        pv = order[i]
        for cand in _bits(rest & ~used):
            ok = True
            for j in range(i):
                if pattern.adjacent(pv, order[j]) != g.adjacent(
                    cand, assign[order[j]]
                ):
                    ok = False
                    break
            if not ok:
                continue
            assign[pv] = cand
            if extend(i + 1, used | 1 << cand, order):
                return True
        return False

    for root in range(k):
        assign[root] = anchor
        order = [root] + [v for v in range(k) if v != root]
        # consistency of the anchor with nothing yet to check; recurse
        if extend(1, 0, order):
            return True
    return False


class _PartChecker:
    """Per-property incremental detector: does adding v to the part with
    the given assigned-vertex mask complete a forbidden graph?"""

    __slots__ = ("shapes",)

    def __init__(self, p: Property) -> None:
        self.shapes = [_classify(f) for f in p.forbidden]

    def completes_forbidden(self, g: Graph, mask: int, v: int) -> bool:
        adj = g.adjacency()
        for kind, arg in self.shapes:
            if kind == _EDGE:
                if adj[v] & mask:
                    return True
            elif kind == _CLIQUE:
                if _has_clique_within(adj, adj[v] & mask, arg - 1):
                    return True
            elif kind == _INDEPENDENT:
                if _has_independent_within(adj, mask & ~adj[v], arg - 1):
                    return True
            else:
                if _anchored_induced(g, mask | 1 << v, arg, v):
                    return True
        return False


# ---------------------------------------------------------------------------
# the backtracking enumerator


def iter_partitions(
    g: Graph,
    props: Sequence[Property],
    *,
    preassigned: Mapping[int, int] | None = None,
    max_nodes: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every valid assignment vector in lexicographic order.

    preassigned pins chosen vertices to parts (they are still checked).
    max_nodes bounds the number of placement attempts; exceeding it
    raises EnumerationBoundError.
    """
    if not props:
        raise PropertyError("at least one property is required")
    n, k = g.n, len(props)
    if preassigned:
        for v, i in preassigned.items():
            if not (0 <= v < n and 0 <= i < k):
                raise PropertyError(f"preassignment {v}->{i} out of range")
    checkers = [_PartChecker(p) for p in props]
    assign = [-1] * n
    masks = [0] * k
    next_try = [0] * n
    nodes = 0
    v = 0
    if n == 0:
        yield ()
        return
    while True:
        if v == n:
            yield tuple(assign)
            v -= 1
            masks[assign[v]] ^= 1 << v
            assign[v] = -1
            continue
        placed = False
        i = next_try[v]
        pin = preassigned.get(v) if preassigned else None
        while i < k:
            if pin is not None and i != pin:
                i += 1
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise EnumerationBoundError(
                    f"partition search exceeded {max_nodes} nodes"
                )
            if not checkers[i].completes_forbidden(g, masks[i], v):
                assign[v] = i
                masks[i] |= 1 << v
                next_try[v] = i + 1
                v += 1
                if v < n:
                    next_try[v] = 0
                placed = True
                break
            i += 1
        if placed:
            continue
        next_try[v] = 0
        v -= 1
        if v < 0:
            return
        masks[assign[v]] ^= 1 << v
        assign[v] = -1


def find_partition(
    g: Graph,
    props: Sequence[Property],
    *,
    preassigned: Mapping[int, int] | None = None,
    max_nodes: int | None = None,
) -> OrderedPartition | None:
    """First valid ordered partition (lexicographically least assignment)
    or None when the graph admits none."""
    for assignment in iter_partitions(
        g, props, preassigned=preassigned, max_nodes=max_nodes
    ):
        return OrderedPartition(len(props), assignment)
    return None


def enumerate_partitions(
    g: Graph,
    props: Sequence[Property],
    cap: int | None = None,
    *,
    max_assignments: int | None = DEFAULT_ASSIGNMENT_BOUND,
    max_nodes: int | None = None,
) -> list[OrderedPartition]:
    """All valid ordered partitions in lexicographic order, up to cap.

    Without a cap the a-priori search space n_parts ** n must stay within
    max_assignments (pass None to waive the check when structural pruning
    is known to keep the search small).
    """
    k = len(props)
    if not props:
        raise PropertyError("at least one property is required")
    if cap is None and max_assignments is not None:
        if k**g.n > max_assignments:
            raise EnumerationBoundError(
                f"{k}^{g.n} assignments exceed the exhaustive bound "
                f"{max_assignments}; pass a cap or raise the bound"
            )
    out = []
    for assignment in iter_partitions(g, props, max_nodes=max_nodes):
        out.append(OrderedPartition(k, assignment))
        if cap is not None and len(out) >= cap:
            break
    return out


def partition_is_valid(
    g: Graph, props: Sequence[Property], partition: OrderedPartition
) -> bool:
    """Independent validity re-check: every part's induced subgraph must
    satisfy its property (this does not share the incremental pruning
    path)."""
    if len(partition.assignment) != g.n or partition.n_parts != len(props):
        return False
    if any(not 0 <= i < len(props) for i in partition.assignment):
        return False
    for p, part in zip(props, partition.parts()):
        sub, _ = induced_subgraph(g, part)
        if not satisfies(p, sub):
            return False
    return True


# ---------------------------------------------------------------------------
# strong uniqueness


@dataclass(frozen=True)
class UniquenessReport:
    is_strongly_unique: bool
    canonical_partition: OrderedPartition | None
    witnesses: tuple[OrderedPartition, ...]
    permutation_log: tuple[tuple[int, ...], ...]


def _part_permutation(
    canon: list[VertexSet],
    other: list[VertexSet],
    prop_equal: Sequence[Sequence[bool]],
) -> tuple[int, ...] | None:
    """A permutation phi with canon[i] == other[phi(i)] whose cycles stay
    within positions of extensionally equal properties, or None."""
    k = len(canon)
    candidates = [
        [j for j in range(k) if canon[i] == other[j]] for i in range(k)
    ]
    phi = [-1] * k
    used = [False] * k

    def cycles_ok(phi: Sequence[int]) -> bool:
        seen = [False] * k
        for start in range(k):
            if seen[start]:
                continue
            cycle = []
            j = start
            while not seen[j]:
                seen[j] = True
                cycle.append(j)
                j = phi[j]
            for a in cycle:
                if not prop_equal[cycle[0]][a]:
                    return False
        return True

    def extend(i: int) -> tuple[int, ...] | None:
        if i == k:
            return tuple(phi) if cycles_ok(phi) else None
        for j in candidates[i]:
            if used[j]:
                continue
            phi[i] = j
            used[j] = True
            got = extend(i + 1)
            if got is not None:
                return got
            used[j] = False
        return None

    return extend(0)


def check_strongly_unique(
    g: Graph,
    props: Sequence[Property],
    *,
    max_assignments: int | None = DEFAULT_ASSIGNMENT_BOUND,
    max_nodes: int | None = None,
) -> UniquenessReport:
    """Decide strong uniqueness by full enumeration.

    The canonical partition is the lexicographically least valid
    assignment. Every other valid partition must be reachable from it by
    a part permutation whose cycles only mix equal properties; the
    permutations found are logged. When the check fails the report
    carries the canonical partition and the first offender."""
    k = len(props)
    all_parts = enumerate_partitions(
        g, props, max_assignments=max_assignments, max_nodes=max_nodes
    )
    if not all_parts:
        return UniquenessReport(False, None, (), ())
    canonical = all_parts[0]
    canon_sets = canonical.parts()
    prop_equal = [[a == b for b in props] for a in props]
    log: list[tuple[int, ...]] = []
    for other in all_parts:
        phi = _part_permutation(canon_sets, other.parts(), prop_equal)
        if phi is None:
            return UniquenessReport(
                False, canonical, (canonical, other), tuple(log)
            )
        log.append(phi)
    return UniquenessReport(True, canonical, (canonical,), tuple(log))


def search_unique(
    props: Sequence[Property],
    max_n: int,
    require_last_nonempty: bool = True,
    *,
    limit: int | None = DEFAULT_GRAPH_SEARCH_LIMIT,
    seed: int | None = None,
) -> tuple[Graph, OrderedPartition] | None:
    """Sweep all graphs on 0..max_n vertices (one per isomorphism class,
    in enumeration order) for the first strongly uniquely partitionable
    one; absence within the bound is a valid result (None).

    require_last_nonempty filters on the canonical partition's last part.
    All properties must be additive. A seed only shuffles the visit order
    inside each vertex-count level; the sweep stays exhaustive.
    """
    for p in props:
        if not is_additive(p):
            raise PropertyError(
                f"search_unique needs additive properties; {p.name} is not"
            )
    if limit is not None and max_n > limit:
        raise EnumerationBoundError(
            f"search up to {max_n} vertices exceeds the configured limit {limit}"
        )
    rng = random.Random(seed) if seed is not None else None
    for n in range(max_n + 1):
        level = list(_graphs_on(n))
        if rng is not None:
            rng.shuffle(level)
        for g in level:
            report = check_strongly_unique(g, props)
            if not report.is_strongly_unique:
                continue
            canonical = report.canonical_partition
            assert canonical is not None
            if require_last_nonempty and not canonical.parts()[-1]:
                continue
            return g, canonical
    return None
