"""Two-layer network data model: underlying graph, peers, routing scheme, overlay.

An instance bundles an undirected simple connected graph G, a peer set P,
a symmetric routing scheme rho (unordered peer pair -> simple path in G) and
an overlay graph H on P.  Instances are immutable after validation and every
operation here is a pure function.
"""

from __future__ import annotations

import json
import re
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import BudgetExceededError, FormatError, ValidationError

# An undirected edge is a name pair sorted lexicographically.
Edge = tuple[str, str]
Path = tuple[str, ...]

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")

DEFAULT_PATH_CAP = 100_000


def edge_key(u: str, v: str) -> Edge:
    """Canonical unordered edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Instance:
    """A validated (G, P, rho, H) bundle.

    ``routes`` maps the canonical unordered pair to the route path, oriented
    so that it starts at the smaller endpoint.  ``total`` is True when every
    unordered pair of distinct peers has a route.
    """

    nodes: tuple[str, ...]
    edges: frozenset[Edge]
    peers: tuple[str, ...]
    overlay_edges: frozenset[Edge]
    routes: dict[Edge, Path]
    total: bool = field(default=False)

    # -- adjacency helpers -------------------------------------------------

    def g_neighbors(self, u: str) -> list[str]:
        return sorted(v for v in self.nodes if edge_key(u, v) in self.edges)

    def h_neighbors(self, u: str) -> list[str]:
        out = []
        for v in self.peers:
            if v != u and edge_key(u, v) in self.overlay_edges:
                out.append(v)
        return sorted(out)

    def route(self, u: str, v: str) -> Path:
        """Route oriented to start at u."""
        key = edge_key(u, v)
        if key not in self.routes:
            raise ValidationError(f"no route for peer pair {key}")
        path = self.routes[key]
        return path if path[0] == u else tuple(reversed(path))

    def route_support(self, u: str, v: str) -> frozenset[Edge]:
        path = self.routes[edge_key(u, v)]
        return frozenset(edge_key(a, b) for a, b in zip(path, path[1:]))


def _connected(nodes, adjacency) -> bool:
    if not nodes:
        return True
    seen = {nodes[0]}
    queue = deque([nodes[0]])
    while queue:
        u = queue.popleft()
        for v in adjacency(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(nodes)


def build_instance(nodes, edges, peers, overlay_edges, routes) -> Instance:
    """Validate raw components and assemble an Instance.

    ``routes`` is a mapping from unordered pair to node sequence; orientation
    is normalized here.  Raises ValidationError naming the first violated
    invariant.
    """
    nodes = tuple(nodes)
    node_set = set(nodes)
    for name in nodes:
        if not NAME_RE.match(name):
            raise ValidationError(f"invalid node name {name!r}")
    if len(node_set) != len(nodes):
        raise ValidationError("duplicate node name")

    canon_edges = set()
    for u, v in edges:
        if u == v:
            raise ValidationError(f"self-loop at {u}")
        if u not in node_set or v not in node_set:
            raise ValidationError(f"edge ({u},{v}) references unknown node")
        key = edge_key(u, v)
        if key in canon_edges:
            raise ValidationError(f"duplicate edge {key}")
        canon_edges.add(key)
    canon_edges = frozenset(canon_edges)

    adj: dict[str, list[str]] = {u: [] for u in nodes}
    for u, v in canon_edges:
        adj[u].append(v)
        adj[v].append(u)
    if not _connected(list(nodes), lambda u: adj[u]):
        raise ValidationError("underlying graph disconnected")

    peers = tuple(peers)
    peer_set = set(peers)
    if len(peer_set) != len(peers):
        raise ValidationError("duplicate peer")
    if not peer_set <= node_set:
        raise ValidationError("peer not a node of the underlying graph")
    if len(peers) < 2:
        raise ValidationError("fewer than two peers")

    canon_routes: dict[Edge, Path] = {}
    for pair, path in routes.items():
        u, v = pair
        key = edge_key(u, v)
        path = tuple(path)
        if len(path) < 2:
            raise ValidationError(f"route for {key} shorter than one edge")
        if {path[0], path[-1]} != {u, v}:
            raise ValidationError(f"route for {key} does not connect its endpoints")
        if u not in peer_set or v not in peer_set:
            raise ValidationError(f"route endpoints {key} are not peers")
        if len(set(path)) != len(path):
            raise ValidationError("route not vertex-simple")
        for a, b in zip(path, path[1:]):
            if edge_key(a, b) not in canon_edges:
                raise ValidationError(
                    f"route for {key} uses non-edge ({a},{b})"
                )
        if key in canon_routes:
            raise ValidationError(f"duplicate route for pair {key}")
        canon_routes[key] = path if path[0] == key[0] else tuple(reversed(path))

    canon_overlay = set()
    for u, v in overlay_edges:
        if u == v:
            raise ValidationError(f"overlay self-loop at {u}")
        if u not in peer_set or v not in peer_set:
            raise ValidationError(f"overlay edge ({u},{v}) endpoint is not a peer")
        key = edge_key(u, v)
        if key in canon_overlay:
            raise ValidationError(f"duplicate overlay edge {key}")
        if key not in canon_routes:
            raise ValidationError(f"overlay edge {key} has no route")
        canon_overlay.add(key)

    n_peer_pairs = len(peers) * (len(peers) - 1) // 2
    return Instance(
        nodes=nodes,
        edges=canon_edges,
        peers=peers,
        overlay_edges=frozenset(canon_overlay),
        routes=canon_routes,
        total=len(canon_routes) == n_peer_pairs,
    )


# -- document format -------------------------------------------------------


def parse_instance(text: str) -> Instance:
    """Parse a JSON instance document and validate it."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise FormatError("document root must be an object")
    for key in ("nodes", "edges", "peers", "overlay_edges", "routes"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    try:
        routes = {}
        for entry in doc["routes"]:
            pair = tuple(entry["pair"])
            if len(pair) != 2:
                raise FormatError(f"route pair {pair} is not a 2-array")
            if edge_key(*pair) in routes:
                raise ValidationError(f"duplicate route for pair {edge_key(*pair)}")
            routes[edge_key(*pair)] = tuple(entry["path"])
        edges = [tuple(e) for e in doc["edges"]]
        overlay = [tuple(e) for e in doc["overlay_edges"]]
        if any(len(e) != 2 for e in edges) or any(len(e) != 2 for e in overlay):
            raise FormatError("edges must be 2-arrays")
    except (TypeError, KeyError) as exc:
        raise FormatError(f"malformed document: {exc}") from exc
    return build_instance(doc["nodes"], edges, doc["peers"], overlay, routes)


def serialize_instance(instance: Instance) -> str:
    """Canonical JSON serialization; parse(serialize(x)) == x."""
    doc = {
        "nodes": list(instance.nodes),
        "edges": [list(e) for e in sorted(instance.edges)],
        "peers": list(instance.peers),
        "overlay_edges": [list(e) for e in sorted(instance.overlay_edges)],
        "routes": [
            {"pair": list(pair), "path": list(instance.routes[pair])}
            for pair in sorted(instance.routes)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


# -- route images ----------------------------------------------------------


def concatenated_walk(instance: Instance, path: Path) -> list[str]:
    """The walk in G obtained by concatenating the routes of an overlay path."""
    _check_overlay_path(instance, path)
    walk = [path[0]]
    for u, v in zip(path, path[1:]):
        walk.extend(instance.route(u, v)[1:])
    return walk


def route_image(instance: Instance, path: Path) -> Counter:
    """Multiplicity of each G-edge along the concatenated implementation.

    counts[e] is the number of appearances of e; absent keys mean 0.
    """
    walk = concatenated_walk(instance, path)
    return Counter(edge_key(a, b) for a, b in zip(walk, walk[1:]))


def image_support(instance: Instance, path: Path) -> frozenset[Edge]:
    """The set of G-edges used by an overlay path's implementation."""
    return frozenset(route_image(instance, path))


def is_simple_concatenation(instance: Instance, path: Path) -> bool:
    """True iff the concatenated walk in G visits no vertex twice."""
    walk = concatenated_walk(instance, path)
    return len(set(walk)) == len(walk)


def _check_overlay_path(instance: Instance, path: Path) -> None:
    if len(path) < 2:
        raise ValidationError("overlay path needs at least two peers")
    if len(set(path)) != len(path):
        raise ValidationError("overlay path not vertex-simple")
    for u, v in zip(path, path[1:]):
        if edge_key(u, v) not in instance.overlay_edges:
            raise ValidationError(f"({u},{v}) is not an overlay edge")


def enumerate_simple_paths(
    instance: Instance, s: str, t: str, cap: int = DEFAULT_PATH_CAP
) -> list[Path]:
    """All vertex-simple (s,t)-paths of H in lexicographic order.

    Raises BudgetExceededError when more than ``cap`` paths exist.
    """
    if s == t or s not in instance.peers or t not in instance.peers:
        raise ValidationError("endpoints must be distinct peers")
    out: list[Path] = []
    stack = [s]
    on_stack = {s}

    def visit(u: str) -> None:
        if u == t:
            out.append(tuple(stack))
            if len(out) > cap:
                raise BudgetExceededError(
                    f"more than {cap} simple paths between {s} and {t}"
                )
            return
        for v in instance.h_neighbors(u):
            if v not in on_stack:
                stack.append(v)
                on_stack.add(v)
                visit(v)
                stack.pop()
                on_stack.remove(v)

    visit(s)
    return out
