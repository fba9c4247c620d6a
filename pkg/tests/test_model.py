import json
import random

import pytest

from conftest import disconnected_overlay_instance, random_connected_graph
from deepconn import fixtures
from deepconn.errors import BudgetExceededError, FormatError, ValidationError
from deepconn.gadgets import random_instance
from deepconn.model import (
    build_instance,
    edge_key,
    enumerate_simple_paths,
    image_support,
    is_simple_concatenation,
    parse_instance,
    route_image,
    serialize_instance,
)


def test_fig1_counts(fig1):
    assert len(fig1.nodes) == 14
    # Route-induced edges plus the extremes give 18; three extra row edges
    # raise the underlying (S,T) connectivity to the expected 3.
    assert len(fig1.edges) == 21
    assert len(fig1.peers) == 8
    assert len(fig1.overlay_edges) == 9
    assert not fig1.total


def test_parse_rejects_non_simple_route():
    doc = {
        "nodes": ["U1", "M1", "U4"],
        "edges": [["U1", "M1"], ["M1", "U4"]],
        "peers": ["U1", "U4"],
        "overlay_edges": [["U1", "U4"]],
        "routes": [{"pair": ["U1", "U4"], "path": ["U1", "M1", "M1", "U4"]}],
    }
    with pytest.raises(ValidationError, match="route not vertex-simple"):
        parse_instance(json.dumps(doc))


def test_parse_rejects_disconnected_graph():
    doc = {
        "nodes": ["a", "b", "c", "d"],
        "edges": [["a", "b"], ["c", "d"]],
        "peers": ["a", "b"],
        "overlay_edges": [["a", "b"]],
        "routes": [{"pair": ["a", "b"], "path": ["a", "b"]}],
    }
    with pytest.raises(ValidationError, match="underlying graph disconnected"):
        parse_instance(json.dumps(doc))


def test_parse_reports_syntax_position():
    with pytest.raises(FormatError, match="line 2"):
        parse_instance('{\n"nodes": [}')


def test_route_image_fig1(fig1):
    counts = route_image(fig1, ("S", "U1", "U4", "T"))
    expected = {
        edge_key("S", "U1"),
        edge_key("U1", "M1"),
        edge_key("M1", "M2"),
        edge_key("M2", "U2"),
        edge_key("U2", "U3"),
        edge_key("U3", "U4"),
        edge_key("U4", "T"),
    }
    assert set(counts) == expected
    assert all(m == 1 for m in counts.values())


def test_route_image_single_edge(k2):
    assert route_image(k2, ("a", "b")) == {("a", "b"): 1}


def test_route_image_shared_edge_multiplicity(shared_edge):
    counts = route_image(shared_edge, ("s", "x", "t"))
    assert counts[edge_key("a", "b")] == 2


def test_is_simple_concatenation(fig1, shared_edge):
    assert is_simple_concatenation(fig1, ("S", "U1", "U4", "T"))
    assert not is_simple_concatenation(shared_edge, ("s", "x", "t"))
    assert is_simple_concatenation(fig1, ("S", "U1"))


def test_enumerate_fig1(fig1):
    paths = enumerate_simple_paths(fig1, "S", "T")
    assert len(paths) == 3
    assert paths == sorted(paths)


def test_enumerate_disconnected_pair():
    inst = disconnected_overlay_instance()
    assert enumerate_simple_paths(inst, "a", "c") == []


def test_enumerate_triangle(triangle):
    assert enumerate_simple_paths(triangle, "a", "b") == [("a", "b"), ("a", "c", "b")]


def test_enumerate_cap(triangle):
    with pytest.raises(BudgetExceededError):
        enumerate_simple_paths(triangle, "a", "b", cap=1)


def test_roundtrip(fig1, shared_edge, triangle):
    for inst in (fig1, shared_edge, triangle):
        assert parse_instance(serialize_instance(inst)) == inst
        assert serialize_instance(parse_instance(serialize_instance(inst))) == (
            serialize_instance(inst)
        )


def test_image_support_is_union_of_hops():
    rng = random.Random(5)
    for seed in range(5):
        inst = random_instance(9, 5, 0.5, "random_simple", seed=seed)
        peers = sorted(inst.peers)
        for s, t in [(peers[0], peers[-1]), (peers[1], peers[2])]:
            for path in enumerate_simple_paths(inst, s, t)[:20]:
                union = frozenset().union(
                    *(inst.route_support(u, v) for u, v in zip(path, path[1:]))
                )
                assert image_support(inst, path) == union


def test_one_hop_multiplicities_are_one():
    for seed in range(3):
        inst = random_instance(8, 4, 0.5, "random_simple", seed=seed)
        for e in inst.overlay_edges:
            assert all(m == 1 for m in route_image(inst, e).values())


def test_simple_concatenation_implies_unit_multiplicities():
    for seed in range(4):
        inst = random_instance(8, 4, 0.5, "shortest_path", seed=seed)
        peers = sorted(inst.peers)
        for path in enumerate_simple_paths(inst, peers[0], peers[1])[:30]:
            if is_simple_concatenation(inst, path):
                assert all(m == 1 for m in route_image(inst, path).values())


def test_overlay_edge_requires_route():
    with pytest.raises(ValidationError, match="has no route"):
        build_instance(
            nodes=["a", "b"],
            edges=[("a", "b")],
            peers=["a", "b"],
            overlay_edges=[("a", "b")],
            routes={},
        )
