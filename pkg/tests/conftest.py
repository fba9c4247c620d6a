import itertools
import random

import pytest

from deepconn import fixtures
from deepconn.model import build_instance, edge_key


@pytest.fixture
def fig1():
    return fixtures.fig1()


@pytest.fixture
def shared_edge():
    return fixtures.shared_edge()


@pytest.fixture
def triangle():
    return fixtures.triangle()


@pytest.fixture
def k2():
    return fixtures.k2()


def random_connected_graph(rng: random.Random, n: int, p: float):
    """Random connected simple graph as (nodes, edges), retried until connected."""
    nodes = [f"n{i}" for i in range(n)]
    while True:
        edges = [
            edge_key(u, v)
            for u, v in itertools.combinations(nodes, 2)
            if rng.random() < p
        ]
        adj = {u: set() for u in nodes}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) == n:
            return nodes, edges


def subsample_overlay(rng: random.Random, instance, keep: float):
    """Same instance with a random connected-ish subset of overlay edges."""
    overlay = sorted(instance.overlay_edges)
    kept = [e for e in overlay if rng.random() < keep]
    if not kept:
        kept = [overlay[0]]
    return build_instance(
        instance.nodes, instance.edges, instance.peers, kept, instance.routes
    )


def disconnected_overlay_instance():
    """Connected G whose overlay has no edge between its two peers."""
    return build_instance(
        nodes=["a", "b", "c"],
        edges=[("a", "b"), ("b", "c")],
        peers=["a", "c"],
        overlay_edges=[],
        routes={},
    )
