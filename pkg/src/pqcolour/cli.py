"""Batch command line front end.

Subcommands map onto the library modules: property checks, partition
solving, uniqueness search, gadget construction and the hypergraph
reduction, each usable standalone or piped through files. Exit codes
follow a fixed trichotomy so sweeps can be scripted:

  0  positive result (satisfies, colourable, unique, verified, all ok)
  1  mathematical negative (violates, not colourable, not unique,
     verification failed, unsatisfiable)
  2  usage or bound error (bad arguments, malformed files, enumeration
     limits exceeded)

Every command is deterministic given identical inputs and seed. With
--json the machine-readable result is printed to stdout as a single
document with sorted keys; human-readable messages go to stdout
otherwise and errors to stderr either way.

Searched fixtures and verified gadgets can be cached in a fixtures
directory (--fixtures-dir or the PQCOLOUR_FIXTURES_DIR environment
variable). Cache hits are re-checked cheaply: gadget graphs are rebuilt
deterministically and their stored certificate colourings re-validated,
rather than re-enumerating the full colouring space.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import (
    CertificateError,
    EnumerationBoundError,
    GadgetError,
    GadgetVerificationError,
    GraphFormatError,
    PropertyError,
    ReductionError,
)
from .gadgets import (
    DEFAULT_FIXTURE_SEARCH_MAX_N,
    PortedGadget,
    build_anchors,
    build_pincushion,
    build_replicator,
    build_verified_pincushion,
    build_verified_replicator,
    verify_pincushion,
    verify_replicator,
)
from .graphs import (
    Graph,
    canonical_form,
    from_graph6,
    graph_name,
    named_graph,
    parse_edge_list,
    to_graph6,
)
from .partition import (
    OrderedPartition,
    check_strongly_unique,
    find_partition,
    partition_is_valid,
    search_unique,
)
from .properties import (
    BUILTINS,
    Property,
    complement_property,
    intersect,
    parse_property,
    property_pair_params,
    property_to_text,
    satisfies,
    violation_witness,
)
from .reduction import (
    enumerate_hypergraphs,
    equivalence_check,
    parse_hypergraph,
    predicted_reduction_size,
    reduce_hypergraph,
)

FIXTURES_ENV = "PQCOLOUR_FIXTURES_DIR"


@dataclass
class RunConfig:
    """One parsed invocation: the subcommand plus the shared knobs."""

    command: str
    json_output: bool = False
    max_n: int | None = None
    cap: int | None = None
    seed: int | None = None
    fixtures_dir: Path | None = None
    verify: bool = True
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# input loading


def _read_text(token: str) -> str:
    path = Path(token)
    if not path.exists():
        raise GraphFormatError(f"no such file: {token}")
    return path.read_text()


def _load_graph(token: str) -> Graph:
    """A graph argument is a named graph (K3, C5, ...), a .g6 file, or an
    edge-list file."""
    try:
        return named_graph(token)
    except GraphFormatError:
        pass
    text = _read_text(token)
    if token.endswith(".g6"):
        for raw in text.splitlines():
            line = raw.strip()
            if line and not line.startswith("#"):
                return from_graph6(line)
        raise GraphFormatError(f"{token} holds no graph6 line")
    return parse_edge_list(text)


def _load_property(token: str) -> Property:
    if token in BUILTINS:
        return BUILTINS[token]
    path = Path(token)
    if path.exists():
        return parse_property(path.read_text())
    raise PropertyError(
        f"unknown property {token!r}: not a builtin name and not a file"
    )


def _parse_pair(text: str) -> tuple[Property, Property]:
    parts = [tok.strip() for tok in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise PropertyError(f"expected 'P,Q', got {text!r}")
    return _load_property(parts[0]), _load_property(parts[1])


def _load_colouring(token: str, n: int) -> tuple[int, ...]:
    """Accept solve's JSON output, a bare JSON array, or whitespace
    separated part indices."""
    text = _read_text(token)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        try:
            values = tuple(int(tok) for tok in text.split())
        except ValueError:
            raise GraphFormatError(f"{token} is neither JSON nor integers") from None
    else:
        if isinstance(doc, dict) and "assignment" in doc:
            values = tuple(int(v) for v in doc["assignment"])
        elif isinstance(doc, dict) and "parts" in doc:
            values = [-1] * n
            for i, part in enumerate(doc["parts"]):
                for v in part:
                    values[int(v)] = i
            values = tuple(values)
        elif isinstance(doc, list):
            values = tuple(int(v) for v in doc)
        else:
            raise GraphFormatError(f"{token}: unrecognized colouring document")
    if len(values) != n or any(v < 0 for v in values):
        raise GraphFormatError(
            f"colouring length {len(values)} does not cover {n} vertices"
        )
    return values


def _emit(config: RunConfig, lines: Sequence[str], payload: dict) -> None:
    if config.json_output:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _graph_label(g: Graph) -> str:
    return graph_name(g) or to_graph6(g)


# ---------------------------------------------------------------------------
# fixtures cache


class FixtureCache:
    """Flat directory of JSON artifacts keyed by a content hash."""

    def __init__(self, root: Path) -> None:
        self.root = root

    def _path(self, key: dict) -> Path:
        blob = json.dumps(key, sort_keys=True).encode()
        return self.root / (hashlib.sha256(blob).hexdigest()[:24] + ".json")

    def load(self, key: dict) -> dict | None:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def store(self, key: dict, payload: dict) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        self._path(key).write_text(json.dumps(payload, sort_keys=True))


def _cache_for(config: RunConfig) -> FixtureCache | None:
    if config.fixtures_dir is not None:
        return FixtureCache(config.fixtures_dir)
    return None


def _prop_key(p: Property) -> list[str]:
    return [to_graph6(canonical_form(f)) for f in p.forbidden]


def _find_fixture(
    config: RunConfig, props: Sequence[Property], max_n: int
) -> tuple[Graph, OrderedPartition] | None:
    cache = _cache_for(config)
    key = {
        "kind": "unique-fixture",
        "props": [_prop_key(p) for p in props],
        "max_n": max_n,
        "seed": config.seed,
    }
    if cache is not None:
        payload = cache.load(key)
        if payload is not None:
            if payload.get("found"):
                g = from_graph6(payload["graph6"])
                part = OrderedPartition(
                    len(props), tuple(payload["assignment"])
                )
                if partition_is_valid(g, props, part):
                    return g, part
            else:
                return None
    limit = config.cap if config.cap is not None else None
    if limit is not None:
        found = search_unique(props, max_n, seed=config.seed, limit=limit)
    else:
        found = search_unique(props, max_n, seed=config.seed)
    if cache is not None:
        if found is None:
            cache.store(key, {"found": False})
        else:
            cache.store(
                key,
                {
                    "found": True,
                    "graph6": to_graph6(found[0]),
                    "assignment": list(found[1].assignment),
                },
            )
    return found


def _obtain_replicator(
    config: RunConfig, p: Property, q: Property, max_n: int
) -> PortedGadget | None:
    """Verified replicator for the pair, via the cache when possible.
    None means no fixture exists within the bound."""
    fixture = _find_fixture(config, [p, q], max_n)
    if fixture is None:
        return None
    anchors = build_anchors(p, q, fixture[0], fixture[1], verify=False)
    gadget = build_replicator(p, q, anchors)
    if not config.verify:
        return gadget
    cache = _cache_for(config)
    key = {
        "kind": "replicator",
        "p": _prop_key(p),
        "q": _prop_key(q),
        "max_n": max_n,
        "seed": config.seed,
    }
    if cache is not None:
        payload = cache.load(key)
        if payload is not None and payload.get("graph6") == to_graph6(gadget.graph):
            c_p = tuple(payload["colouring_x_in_p"])
            c_q = tuple(payload["colouring_x_in_q"])
            x, y, xp = (gadget.ports[k] for k in ("x", "y", "x'"))
            certs_ok = all(
                partition_is_valid(gadget.graph, [p, q], OrderedPartition(2, c))
                and c[x] == c[xp] != c[y]
                for c in (c_p, c_q)
            ) and c_p[x] == 0 and c_q[x] == 1
            if certs_ok:
                meta = dict(gadget.meta)
                meta.update(
                    verified=True,
                    from_cache=True,
                    colouring_x_in_p=c_p,
                    colouring_x_in_q=c_q,
                )
                return PortedGadget(
                    gadget.graph, gadget.ports, gadget.anchors,
                    gadget.regions, meta,
                )
    verified = build_verified_replicator(p, q, anchors=anchors)
    if cache is not None:
        cache.store(
            key,
            {
                "graph6": to_graph6(verified.graph),
                "colouring_x_in_p": list(verified.meta["colouring_x_in_p"]),
                "colouring_x_in_q": list(verified.meta["colouring_x_in_q"]),
            },
        )
    return verified


def _obtain_pincushion(
    config: RunConfig, p: Property, q: Property, max_n: int
) -> PortedGadget | None:
    replicator = _obtain_replicator(config, p, q, max_n)
    if replicator is None:
        return None
    params = property_pair_params(p, q)
    gadget = build_pincushion(p, q, params, replicator)
    if not config.verify:
        return gadget
    cache = _cache_for(config)
    key = {
        "kind": "pincushion",
        "p": _prop_key(p),
        "q": _prop_key(q),
        "max_n": max_n,
        "seed": config.seed,
    }
    r = params.p_count + params.q_count
    if cache is not None:
        payload = cache.load(key)
        if payload is not None and payload.get("graph6") == to_graph6(gadget.graph):
            stored = {
                tuple(int(i) for i in pat.split(",") if i): tuple(col)
                for pat, col in payload["pattern_colourings"].items()
            }
            from itertools import combinations

            expected = set(combinations(range(r), params.p_count))
            certs_ok = set(stored) == expected and all(
                partition_is_valid(gadget.graph, [p, q], OrderedPartition(2, c))
                and tuple(
                    i for i in range(r) if c[gadget.ports[f"S[{i}]"]] == 0
                ) == pat
                for pat, c in stored.items()
            )
            if certs_ok:
                meta = dict(gadget.meta)
                meta.update(
                    verified=True, from_cache=True, pattern_colourings=stored
                )
                return PortedGadget(
                    gadget.graph, gadget.ports, gadget.anchors,
                    gadget.regions, meta,
                )
    verified = build_verified_pincushion(p, q, replicator=replicator)
    if cache is not None:
        cache.store(
            key,
            {
                "graph6": to_graph6(verified.graph),
                "pattern_colourings": {
                    ",".join(str(i) for i in pat): list(col)
                    for pat, col in verified.meta["pattern_colourings"].items()
                },
            },
        )
    return verified


# ---------------------------------------------------------------------------
# subcommands


def _cmd_prop(config: RunConfig) -> int:
    sub = config.options["prop_command"]
    if sub == "check":
        prop = _load_property(config.options["prop"])
        g = _load_graph(config.options["graph"])
        if satisfies(prop, g):
            _emit(
                config,
                [f"graph satisfies {prop.name}"],
                {"satisfies": True, "property": prop.name},
            )
            return 0
        witness = violation_witness(prop, g)
        assert witness is not None
        forbidden, vertices = witness
        _emit(
            config,
            [f"contains forbidden {_graph_label(forbidden)} "
             f"on vertices {sorted(vertices)}"],
            {
                "satisfies": False,
                "property": prop.name,
                "forbidden": to_graph6(forbidden),
                "forbidden_name": graph_name(forbidden),
                "witness": sorted(vertices),
            },
        )
        return 1
    if sub == "intersect":
        a = _load_property(config.options["prop_a"])
        b = _load_property(config.options["prop_b"])
        result = intersect(a, b)
    else:
        result = complement_property(_load_property(config.options["prop"]))
    _emit(
        config,
        [property_to_text(result).rstrip()],
        {
            "name": result.name,
            "forbidden": [to_graph6(f) for f in result.forbidden],
            "text": property_to_text(result),
        },
    )
    return 0


def _cmd_solve(config: RunConfig) -> int:
    g = _load_graph(config.options["graph"])
    props = [_load_property(tok) for tok in config.options["props"]]
    part = find_partition(g, props, max_nodes=config.cap)
    if part is None:
        _emit(
            config,
            ["no valid partition"],
            {"colourable": False, "n_parts": len(props)},
        )
        return 1
    _emit(
        config,
        [f"parts: {[sorted(s) for s in part.parts()]}"],
        {
            "colourable": True,
            "n_parts": part.n_parts,
            "properties": [p.name for p in props],
            "assignment": list(part.assignment),
            "parts": [sorted(s) for s in part.parts()],
        },
    )
    return 0


def _cmd_unique(config: RunConfig) -> int:
    sub = config.options["unique_command"]
    if sub == "check":
        g = _load_graph(config.options["graph"])
        props = [_load_property(tok) for tok in config.options["props"]]
        kwargs = {}
        if config.cap is not None:
            kwargs["max_assignments"] = config.cap
        report = check_strongly_unique(g, props, **kwargs)
        payload = {
            "strongly_unique": report.is_strongly_unique,
            "canonical_parts": (
                [sorted(s) for s in report.canonical_partition.parts()]
                if report.canonical_partition is not None
                else None
            ),
            "witnesses": [list(w.assignment) for w in report.witnesses],
            "permutations": [list(p) for p in report.permutation_log],
        }
        if report.is_strongly_unique:
            _emit(config, ["strongly uniquely partitionable"], payload)
            return 0
        _emit(config, ["not strongly uniquely partitionable"], payload)
        return 1
    props = [_load_property(tok) for tok in config.options["props"].split(",")]
    max_n = config.max_n if config.max_n is not None else DEFAULT_FIXTURE_SEARCH_MAX_N
    found = _find_fixture(config, props, max_n)
    if found is None:
        _emit(
            config,
            [f"no qualifying graph on <= {max_n} vertices"],
            {"found": False, "max_n": max_n},
        )
        return 1
    g, part = found
    _emit(
        config,
        [f"found on {g.n} vertices: {to_graph6(g)}",
         f"parts: {[sorted(s) for s in part.parts()]}"],
        {
            "found": True,
            "graph6": to_graph6(g),
            "n": g.n,
            "assignment": list(part.assignment),
            "parts": [sorted(s) for s in part.parts()],
        },
    )
    return 0


def _gadget_payload(gadget: PortedGadget) -> dict:
    return {
        "graph6": to_graph6(gadget.graph),
        "n": gadget.graph.n,
        "ports": dict(sorted(gadget.ports.items())),
        "verified": bool(gadget.meta.get("verified")),
        "from_cache": bool(gadget.meta.get("from_cache")),
    }


def _cmd_gadget(config: RunConfig) -> int:
    p, q = _parse_pair(config.options["pair"])
    max_n = config.max_n if config.max_n is not None else DEFAULT_FIXTURE_SEARCH_MAX_N
    kind = config.options["gadget_command"]
    if kind == "replicator":
        gadget = _obtain_replicator(config, p, q, max_n)
    else:
        gadget = _obtain_pincushion(config, p, q, max_n)
    if gadget is None:
        _emit(
            config,
            [f"no fixture for ({p.name},{q.name}) on <= {max_n} vertices; "
             "gadget unavailable"],
            {"built": False, "max_n": max_n},
        )
        return 1
    payload = _gadget_payload(gadget)
    payload["built"] = True
    status = "verified" if payload["verified"] else "UNVERIFIED"
    _emit(
        config,
        [f"{kind} for ({p.name},{q.name}): {gadget.graph.n} vertices, {status}",
         f"graph6: {payload['graph6']}"],
        payload,
    )
    return 0


def _cmd_reduce(config: RunConfig) -> int:
    h = parse_hypergraph(_read_text(config.options["hypergraph"]))
    p, q = _parse_pair(config.options["pair"])
    max_n = config.max_n if config.max_n is not None else DEFAULT_FIXTURE_SEARCH_MAX_N
    cushion = _obtain_pincushion(config, p, q, max_n)
    if cushion is None:
        _emit(
            config,
            [f"no fixture for ({p.name},{q.name}) on <= {max_n} vertices"],
            {"reduced": False},
        )
        return 1
    graph, rmap = reduce_hypergraph(h, p, q, cushion=cushion)
    assert graph.n == predicted_reduction_size(h, cushion)
    out = config.options.get("out")
    if out:
        Path(out).write_text(to_graph6(graph) + "\n")
    payload = {
        "reduced": True,
        "graph6": to_graph6(graph),
        "n": graph.n,
        "hypergraph": {
            "n_vertices": h.n_vertices,
            "r": h.r,
            "p_target": h.p_target,
            "n_edges": h.n_edges,
        },
        "cushion_n": cushion.graph.n,
        "out": out,
    }
    lines = [f"reduced to {graph.n} vertices"]
    lines.append(f"wrote {out}" if out else f"graph6: {payload['graph6']}")
    _emit(config, lines, payload)
    return 0


def _cmd_certify(config: RunConfig) -> int:
    g = _load_graph(config.options["graph"])
    props = [_load_property(tok) for tok in config.options["props"]]
    assignment = _load_colouring(config.options["colouring"], g.n)
    if any(v >= len(props) for v in assignment):
        raise GraphFormatError("colouring uses a part index out of range")
    hyp = config.options.get("hypergraph")
    if hyp is not None:
        if len(props) != 2:
            raise PropertyError("lifting needs exactly two properties")
        return _certify_lift(config, g, props[0], props[1], assignment, hyp)
    part = OrderedPartition(len(props), assignment)
    if partition_is_valid(g, props, part):
        _emit(config, ["colouring is valid"], {"valid": True})
        return 0
    violations = []
    for i, (prop, vertices) in enumerate(zip(props, part.parts())):
        sub, index = _induced(g, vertices)
        witness = violation_witness(prop, sub)
        if witness is not None:
            forbidden, where = witness
            back = {new: old for old, new in index.items()}
            violations.append(
                {
                    "part": i,
                    "property": prop.name,
                    "forbidden": to_graph6(forbidden),
                    "forbidden_name": graph_name(forbidden),
                    "witness": sorted(back[v] for v in where),
                }
            )
    _emit(
        config,
        [f"invalid: part {v['part']} contains forbidden "
         f"{v['forbidden_name'] or v['forbidden']} on {v['witness']}"
         for v in violations] or ["colouring is invalid"],
        {"valid": False, "violations": violations},
    )
    return 1


def _induced(g: Graph, vertices) -> tuple[Graph, dict[int, int]]:
    from .graphs import induced_subgraph

    return induced_subgraph(g, vertices)


def _certify_lift(
    config: RunConfig,
    g: Graph,
    p: Property,
    q: Property,
    assignment: tuple[int, ...],
    hypergraph_path: str,
) -> int:
    """Lift a colouring of a reduced graph back to a hypergraph witness.
    The graph argument must match the deterministic reduction of the
    instance, otherwise the lift would be meaningless."""
    from .reduction import lift_certificate

    h = parse_hypergraph(_read_text(hypergraph_path))
    max_n = config.max_n if config.max_n is not None else DEFAULT_FIXTURE_SEARCH_MAX_N
    cushion = _obtain_pincushion(config, p, q, max_n)
    if cushion is None:
        _emit(config, ["no fixture; cannot rebuild the reduction"],
              {"lifted": False})
        return 1
    reduced, rmap = reduce_hypergraph(h, p, q, cushion=cushion)
    if reduced != g:
        raise GraphFormatError(
            "graph does not match the reduction of the given hypergraph"
        )
    u = lift_certificate(rmap, assignment, p, q)
    _emit(
        config,
        [f"lifted witness: {list(u)}"],
        {"lifted": True, "witness": list(u)},
    )
    return 0


def _cmd_sweep(config: RunConfig) -> int:
    p, q = _parse_pair(config.options["pair"])
    params = property_pair_params(p, q)
    max_n = config.max_n if config.max_n is not None else DEFAULT_FIXTURE_SEARCH_MAX_N
    cushion = _obtain_pincushion(config, p, q, max_n)
    if cushion is None:
        _emit(
            config,
            [f"no fixture for ({p.name},{q.name}) on <= {max_n} vertices"],
            {"ok": False, "reports": []},
        )
        return 1
    reports = []
    for h in enumerate_hypergraphs(
        config.options["max_vertices"],
        config.options["max_edges"],
        r=params.p_count + params.q_count,
        p_target=params.p_count,
    ):
        reports.append(equivalence_check(h, p, q, cushion=cushion))
    all_ok = all(r.ok for r in reports)
    lines = [
        f"{'ok ' if r.ok else 'FAIL'} n={r.hypergraph.n_vertices} "
        f"m={r.hypergraph.n_edges} brute="
        f"{'sat' if r.brute_witness is not None else 'unsat'} "
        f"reduced={'sat' if r.reduced_satisfiable else 'unsat'}"
        for r in reports
    ]
    lines.append(f"{len(reports)} instances, all agree: {all_ok}")
    _emit(
        config,
        lines,
        {"ok": all_ok, "count": len(reports),
         "reports": [r.to_json_dict() for r in reports]},
    )
    return 0 if all_ok else 1


_HANDLERS = {
    "prop": _cmd_prop,
    "solve": _cmd_solve,
    "unique": _cmd_unique,
    "gadget": _cmd_gadget,
    "reduce": _cmd_reduce,
    "certify": _cmd_certify,
    "sweep": _cmd_sweep,
}


# ---------------------------------------------------------------------------
# parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="JSON output")
    shared.add_argument("--max-n", type=int, default=None, metavar="N",
                        help="fixture search bound")
    shared.add_argument("--cap", type=int, default=None, metavar="K",
                        help="enumeration cap / node budget")
    shared.add_argument("--seed", type=int, default=None,
                        help="search order seed (searches stay exhaustive)")
    shared.add_argument("--fixtures-dir", default=None, metavar="DIR",
                        help="cache directory for fixtures and gadgets")
    shared.add_argument("--no-verify", action="store_true",
                        help="emit UNVERIFIED gadgets without enumeration")

    top = argparse.ArgumentParser(
        prog="pqcolour",
        description="Vertex partitions into hereditary properties: "
                    "solving, uniqueness, gadgets and reductions.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    prop = sub.add_parser("prop", help="property algebra and membership")
    prop_sub = prop.add_subparsers(dest="prop_command", required=True)
    pc = prop_sub.add_parser("check", parents=[shared])
    pc.add_argument("prop")
    pc.add_argument("graph")
    pi = prop_sub.add_parser("intersect", parents=[shared])
    pi.add_argument("prop_a")
    pi.add_argument("prop_b")
    pk = prop_sub.add_parser("complement", parents=[shared])
    pk.add_argument("prop")

    sv = sub.add_parser("solve", parents=[shared],
                        help="find a valid ordered partition")
    sv.add_argument("graph")
    sv.add_argument("props", nargs="+")

    un = sub.add_parser("unique", help="strong uniqueness check and search")
    un_sub = un.add_subparsers(dest="unique_command", required=True)
    uc = un_sub.add_parser("check", parents=[shared])
    uc.add_argument("graph")
    uc.add_argument("props", nargs="+")
    us = un_sub.add_parser("search", parents=[shared])
    us.add_argument("--props", required=True, metavar="P,Q,...",
                    help="comma separated property list")

    ga = sub.add_parser("gadget", help="build and verify gadgets")
    ga_sub = ga.add_subparsers(dest="gadget_command", required=True)
    for name in ("replicator", "pincushion"):
        gp = ga_sub.add_parser(name, parents=[shared])
        gp.add_argument("--pair", required=True, metavar="P,Q")

    rd = sub.add_parser("reduce", parents=[shared],
                        help="reduce a hypergraph instance")
    rd.add_argument("hypergraph")
    rd.add_argument("--pair", required=True, metavar="P,Q")
    rd.add_argument("--out", default=None, metavar="PATH",
                    help="write the reduced graph6 here")

    ce = sub.add_parser("certify", parents=[shared],
                        help="validate a colouring against properties")
    ce.add_argument("graph")
    ce.add_argument("colouring")
    ce.add_argument("props", nargs="+")
    ce.add_argument("--hypergraph", default=None, metavar="FILE",
                    help="lift the colouring to a witness for this instance")

    sw = sub.add_parser("sweep", help="batch cross-checks")
    sw_sub = sw.add_subparsers(dest="sweep_command", required=True)
    se = sw_sub.add_parser("equivalence", parents=[shared])
    se.add_argument("--pair", required=True, metavar="P,Q")
    se.add_argument("--max-vertices", type=int, required=True)
    se.add_argument("--max-edges", type=int, required=True)

    return top


def _config_from(ns: argparse.Namespace) -> RunConfig:
    opts = dict(vars(ns))
    for key in ("json", "max_n", "cap", "seed", "fixtures_dir", "no_verify"):
        opts.pop(key, None)
    command = opts.pop("command")
    fixtures = getattr(ns, "fixtures_dir", None) or os.environ.get(FIXTURES_ENV)
    for bound in ("max_n", "cap"):
        value = getattr(ns, bound, None)
        if value is not None and value <= 0:
            raise EnumerationBoundError(f"--{bound.replace('_', '-')} must be positive")
    return RunConfig(
        command=command,
        json_output=getattr(ns, "json", False),
        max_n=getattr(ns, "max_n", None),
        cap=getattr(ns, "cap", None),
        seed=getattr(ns, "seed", None),
        fixtures_dir=Path(fixtures) if fixtures else None,
        verify=not getattr(ns, "no_verify", False),
        options=opts,
    )


def run(config: RunConfig) -> int:
    try:
        return _HANDLERS[config.command](config)
    except GadgetVerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except CertificateError as exc:
        print(f"invalid certificate: {exc}", file=sys.stderr)
        return 1
    except (
        GraphFormatError,
        PropertyError,
        ReductionError,
        GadgetError,
        EnumerationBoundError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        config = _config_from(ns)
    except EnumerationBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
