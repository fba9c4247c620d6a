"""Instance generators: set-system encodings, the layered simple-path
reduction, the Hamiltonian-path reduction, and random test instances.

The encoders return the constructed instance together with a labels map
recording which nodes/edges play which construction role, so structural
properties can be audited exactly.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceededError, ValidationError
from .model import Edge, Instance, build_instance, edge_key

APEX_X = "apex_x"
APEX_Y = "apex_y"


@dataclass(frozen=True)
class SetSystem:
    """m elements (1-based) and an ordered collection of subsets.

    m may be 0: compacting away unused elements can leave a system of empty
    sets, which the encoders still accept.
    """

    m: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.m < 0 or not self.sets:
            raise ValidationError("set system dimensions out of range")
        for s in self.sets:
            if any(i < 1 or i > self.m for i in s):
                raise ValidationError("set element out of range")

    @property
    def n(self) -> int:
        return len(self.sets)

    def membership(self, i: int, j: int) -> bool:
        """1-based characteristic function: element i in set j."""
        return i in self.sets[j - 1]

    @staticmethod
    def from_lists(m: int, sets) -> "SetSystem":
        return SetSystem(m, tuple(frozenset(s) for s in sets))


@dataclass
class GadgetOutput:
    instance: Instance
    labels: dict


def set_packing_brute_force(system: SetSystem, k: int, budget: int = 1_000_000) -> bool:
    """True iff k pairwise disjoint sets exist; exhaustive search."""
    if k < 1:
        raise ValidationError("k must be positive")
    explored = 0
    for combo in combinations(system.sets, k):
        explored += 1
        if explored > budget:
            raise BudgetExceededError(f"set packing search exceeded {budget} subsets")
        union = set()
        total = 0
        for s in combo:
            union |= s
            total += len(s)
        if len(union) == total:
            return True
    return False


def encode_set_system(h_nodes, h_edges, f, system: SetSystem) -> GadgetOutput:
    """Build an underlying graph and routing scheme realizing a set system.

    Overlay edges outside f are routed as themselves.  The j-th edge of f is
    routed through the element edges of the j-th set (ascending element
    order), with every connector edge subdivided through a fresh z vertex.
    Requires every element to appear in some set, otherwise the element's
    edge would form its own underlying component.
    """
    h_nodes = list(h_nodes)
    h_edges = [edge_key(*e) for e in h_edges]
    f = [edge_key(*e) for e in f]
    if len(f) != system.n:
        raise ValidationError("f must list one overlay edge per set")
    if len(set(f)) != len(f):
        raise ValidationError("duplicate edges in f")
    if not set(f) <= set(h_edges):
        raise ValidationError("f must be a subset of the overlay edges")
    used = set().union(*system.sets) if system.sets else set()
    for i in range(1, system.m + 1):
        if i not in used:
            raise ValidationError(
                f"element {i} appears in no set; its edge would be disconnected"
            )

    nodes = list(h_nodes)
    taken = set(nodes)

    def fresh(name: str) -> str:
        if name in taken:
            raise ValidationError(f"node name {name} collides with an overlay vertex")
        taken.add(name)
        nodes.append(name)
        return name

    element_vertices = {}
    element_edges = []
    for i in range(1, system.m + 1):
        a = fresh(f"v{i}_a")
        b = fresh(f"v{i}_b")
        element_vertices[i] = (a, b)
        element_edges.append(edge_key(a, b))

    identity_edges = [e for e in h_edges if e not in set(f)]
    edges = list(identity_edges) + list(element_edges)
    route_edges = []
    subdivision_vertices = []
    routes = {e: e for e in identity_edges}
    route_paths = {}
    for j, (pair, members) in enumerate(zip(f, system.sets), start=1):
        x, y = pair
        waypoints = [x]
        for i in sorted(members):
            waypoints.extend(element_vertices[i])
        waypoints.append(y)
        path = [x]
        connector = 0
        for a, b in zip(waypoints, waypoints[1:]):
            if edge_key(a, b) in set(element_edges):
                path.append(b)
                continue
            connector += 1
            z = fresh(f"z{j}_{connector}")
            subdivision_vertices.append(z)
            for half in (edge_key(a, z), edge_key(z, b)):
                edges.append(half)
                route_edges.append(half)
            path.extend([z, b])
        routes[pair] = tuple(path)
        route_paths[pair] = tuple(path)

    instance = build_instance(nodes, edges, h_nodes, h_edges, routes)
    labels = {
        "element_vertices": {i: list(v) for i, v in element_vertices.items()},
        "element_edges": [list(e) for e in element_edges],
        "route_edges": [list(e) for e in route_edges],
        "identity_edges": [list(e) for e in identity_edges],
        "subdivision_vertices": list(subdivision_vertices),
        "f": [list(e) for e in f],
        "routes": {f"{u},{v}": list(p) for (u, v), p in route_paths.items()},
    }
    return GadgetOutput(instance, labels)


def _compact(system: SetSystem) -> SetSystem:
    """Drop elements that appear in no set; packing structure is unchanged."""
    used = sorted(set().union(*system.sets)) if system.sets else []
    relabel = {old: new for new, old in enumerate(used, start=1)}
    return SetSystem(
        len(used), tuple(frozenset(relabel[i] for i in s) for s in system.sets)
    )


def build_spddc_reduction(
    system: SetSystem, k: int
) -> tuple[GadgetOutput, str, str]:
    """Layered overlay whose simply-implemented (s,t)-paths encode size-k
    packings: k layers, each offering one copy of every set on its odd hop.
    """
    if k < 1:
        raise ValidationError("k must be positive")
    compact = _compact(system)
    n = compact.n
    layer_u = [f"u{l}" for l in range(k + 1)]
    layer_v = {(l, j): f"v{l}_{j}" for l in range(1, k + 1) for j in range(1, n + 1)}
    h_nodes = list(layer_u) + [layer_v[key] for key in sorted(layer_v)]
    odd_edges = []
    copied_sets = []
    even_edges = []
    for l in range(1, k + 1):
        for j in range(1, n + 1):
            odd_edges.append(edge_key(layer_u[l - 1], layer_v[(l, j)]))
            copied_sets.append(compact.sets[j - 1])
            even_edges.append(edge_key(layer_v[(l, j)], layer_u[l]))
    h_edges = odd_edges + even_edges
    copied = SetSystem(compact.m, tuple(copied_sets))
    out = encode_set_system(h_nodes, h_edges, odd_edges, copied)
    out.labels["layer_vertices"] = {
        "u": list(layer_u),
        "v": {f"{l},{j}": name for (l, j), name in sorted(layer_v.items())},
    }
    out.labels["source"] = layer_u[0]
    out.labels["sink"] = layer_u[-1]
    return out, layer_u[0], layer_u[-1]


def build_hamiltonian_reduction(g0_nodes, g0_edges) -> Instance:
    """Apex construction: non-adjacent peer pairs route through the shared
    (apex_x, apex_y) edge, so a sparse 2-survivable overlay forces a
    Hamiltonian cycle with at most one virtual edge.
    """
    g0_nodes = list(g0_nodes)
    if len(g0_nodes) < 3:
        raise ValidationError("need at least three vertices")
    if APEX_X in g0_nodes or APEX_Y in g0_nodes:
        raise ValidationError("input vertex names collide with apex names")
    g0_set = {edge_key(*e) for e in g0_edges}
    nodes = g0_nodes + [APEX_X, APEX_Y]
    edges = sorted(g0_set) + [edge_key(APEX_X, APEX_Y)]
    for v in g0_nodes:
        edges.append(edge_key(v, APEX_X))
        edges.append(edge_key(v, APEX_Y))
    routes = {}
    overlay = []
    ordered = sorted(g0_nodes)
    for i, u in enumerate(ordered):
        for v in ordered[i + 1 :]:
            pair = edge_key(u, v)
            overlay.append(pair)
            if pair in g0_set:
                routes[pair] = pair
            else:
                routes[pair] = (u, APEX_X, APEX_Y, v)
    return build_instance(nodes, edges, g0_nodes, overlay, routes)


# -- random instances ------------------------------------------------------

ROUTE_POLICIES = ("shortest_path", "random_simple")


def random_instance(
    n_nodes: int,
    n_peers: int,
    edge_probability: float,
    route_policy: str = "shortest_path",
    seed: int = 0,
    retries: int = 1000,
) -> Instance:
    """Seeded random instance: connected G, total routing, complete overlay."""
    if n_nodes < 2 or not 2 <= n_peers <= n_nodes:
        raise ValidationError("node/peer counts out of range")
    if not 0.0 <= edge_probability <= 1.0:
        raise ValidationError("edge probability out of range")
    if route_policy not in ROUTE_POLICIES:
        raise ValidationError(f"unknown route policy {route_policy!r}")
    rng = random.Random(seed)
    nodes = [f"n{i:02d}" for i in range(n_nodes)]
    for _ in range(retries):
        edges = [
            edge_key(u, v)
            for u, v in combinations(nodes, 2)
            if rng.random() < edge_probability
        ]
        adj = {u: [] for u in nodes}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        if _connected(nodes, adj):
            break
    else:
        raise ValidationError(f"no connected graph within {retries} attempts")
    for u in adj:
        adj[u].sort()
    peers = sorted(rng.sample(nodes, n_peers))
    routes = {}
    overlay = []
    for i, u in enumerate(peers):
        for v in peers[i + 1 :]:
            pair = edge_key(u, v)
            overlay.append(pair)
            if route_policy == "shortest_path":
                routes[pair] = _lex_shortest_path(adj, u, v)
            else:
                routes[pair] = _random_simple_path(adj, u, v, rng)
    return build_instance(nodes, edges, peers, overlay, routes)


def _connected(nodes, adj) -> bool:
    seen = {nodes[0]}
    queue = deque([nodes[0]])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(nodes)


def _lex_shortest_path(adj, s, t) -> tuple[str, ...]:
    """Lexicographically smallest among the BFS-shortest (s,t)-paths."""
    dist = {t: 0}
    queue = deque([t])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    path = [s]
    while path[-1] != t:
        u = path[-1]
        path.append(
            min(v for v in adj[u] if dist.get(v, -1) == dist[u] - 1)
        )
    return tuple(path)


def _random_simple_path(adj, s, t, rng) -> tuple[str, ...]:
    """Random simple path via randomized depth-first search."""
    stack = [s]
    on_stack = {s}

    def walk(u) -> bool:
        if u == t:
            return True
        for v in rng.sample(adj[u], len(adj[u])):
            if v not in on_stack:
                stack.append(v)
                on_stack.add(v)
                if walk(v):
                    return True
                stack.pop()
                on_stack.remove(v)
        return False

    if not walk(s):
        raise AssertionError("connected graph must admit a path")
    return tuple(stack)
