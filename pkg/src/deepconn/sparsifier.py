"""Sparse 2-edge-survivable overlay construction.

Implements the feasibility precondition, the per-tracked-edge component
counting (kappa), the marginal-gain function (delta), the greedy submodular
augmentation, a brute-force optimal augmenter for ratio tests, and the
identity-routing special case that achieves at most 2n-2 overlay edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetExceededError, PreconditionError, ValidationError
from .model import Edge, Instance, edge_key

DEFAULT_AUGMENT_BUDGET = 200_000


class _DSU:
    """Union-find over a fixed universe, tracking the component count."""

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.components = len(self.parent)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.components -= 1
        return True


def _require_total(instance: Instance) -> None:
    if not instance.total:
        raise ValidationError("sparsifier requires a total routing scheme")


def _peer_pairs(instance: Instance):
    ordered = sorted(instance.peers)
    for i, u in enumerate(ordered):
        for v in ordered[i + 1 :]:
            yield (u, v)


def check_precondition(instance: Instance) -> tuple[bool, Edge | None]:
    """Feasibility of the 2-survivable target on the complete peer graph.

    ok iff no single underlying edge disconnects K_P once every peer pair
    routed through it is removed.  Returns the first violating edge in
    canonical order otherwise.
    """
    _require_total(instance)
    pairs = list(_peer_pairs(instance))
    supports = {p: instance.route_support(*p) for p in pairs}
    routed = set().union(*supports.values()) if supports else set()
    for e in sorted(instance.edges):
        if e not in routed:
            continue
        dsu = _DSU(instance.peers)
        for p in pairs:
            if e not in supports[p]:
                dsu.union(*p)
        if dsu.components > 1:
            return False, e
    return True, None


@dataclass
class AugmentationState:
    """Mutable greedy state: per-tracked-edge peer partitions and deficits."""

    instance: Instance
    tree: frozenset[Edge]
    overlay: set[Edge]
    tracked: tuple[Edge, ...]
    partitions: list[_DSU]
    kappa_i: list[int] = field(default_factory=list)

    @property
    def kappa(self) -> int:
        return sum(self.kappa_i)

    def snapshot_partitions(self) -> list[dict]:
        return [dict(d.parent) for d in self.partitions]


def _build_state(instance: Instance, overlay, tree) -> AugmentationState:
    tracked = tuple(
        sorted(set().union(*(instance.route_support(*e) for e in tree)))
    )
    partitions = []
    kappa_i = []
    for e_i in tracked:
        dsu = _DSU(instance.peers)
        for f in overlay:
            if e_i not in instance.route_support(*f):
                dsu.union(*f)
        partitions.append(dsu)
        kappa_i.append(dsu.components - 1)
    return AugmentationState(
        instance=instance,
        tree=frozenset(tree),
        overlay=set(overlay),
        tracked=tracked,
        partitions=partitions,
        kappa_i=kappa_i,
    )


def compute_kappa(instance: Instance, overlay, tree) -> AugmentationState:
    """Distance of the overlay from 2-survivability, tracked against tree routes."""
    _require_total(instance)
    overlay = {edge_key(*e) for e in overlay}
    tree = {edge_key(*e) for e in tree}
    if not tree <= overlay:
        raise ValidationError("overlay must contain the base tree")
    _check_spanning_tree(instance, tree)
    return _build_state(instance, overlay, tree)


def tracked_state(instance: Instance, overlay, tree) -> AugmentationState:
    """State for an arbitrary overlay edge set (not necessarily containing
    the tree); the tree argument only fixes the tracked underlying edges.
    """
    _require_total(instance)
    return _build_state(instance, {edge_key(*e) for e in overlay}, tree)


def kappa_of(instance: Instance, overlay, tree) -> int:
    """kappa for an arbitrary overlay edge set against a given tree's tracked edges."""
    _require_total(instance)
    state = _build_state(instance, {edge_key(*e) for e in overlay}, tree)
    return state.kappa


def _check_spanning_tree(instance: Instance, tree) -> None:
    if len(tree) != len(instance.peers) - 1:
        raise ValidationError("base tree has wrong edge count")
    dsu = _DSU(instance.peers)
    for u, v in tree:
        if u not in dsu.parent or v not in dsu.parent:
            raise ValidationError("tree edge endpoint is not a peer")
        if not dsu.union(u, v):
            raise ValidationError("base tree contains a cycle")
    if dsu.components != 1:
        raise ValidationError("base tree does not span the peers")


def delta(state: AugmentationState, e: Edge) -> int:
    """Drop in kappa from adding candidate overlay edge e; sum of 0/1 terms."""
    e = edge_key(*e)
    if e in state.overlay:
        raise ValidationError(f"candidate edge {e} already in the overlay")
    support = state.instance.route_support(*e)
    gain = 0
    for e_i, dsu in zip(state.tracked, state.partitions):
        if e_i in support:
            continue
        if dsu.find(e[0]) != dsu.find(e[1]):
            gain += 1
    return gain


def add_edge(state: AugmentationState, e: Edge) -> None:
    e = edge_key(*e)
    support = state.instance.route_support(*e)
    state.overlay.add(e)
    for idx, e_i in enumerate(state.tracked):
        if e_i not in support and state.partitions[idx].union(*e):
            state.kappa_i[idx] -= 1


def greedy_augment(
    instance: Instance, tree, trace: list | None = None
) -> frozenset[Edge]:
    """Add maximum-gain peer pairs to the tree until kappa reaches zero."""
    ok, witness = check_precondition(instance)
    if not ok:
        raise PreconditionError(
            f"precondition ERDC(K_P) >= 2 violated at edge ({witness[0]},{witness[1]})",
            witness,
        )
    state = compute_kappa(instance, tree, tree)
    while state.kappa > 0:
        if trace is not None:
            trace.append(state.kappa)
        best_edge = None
        best_gain = 0
        for cand in _peer_pairs(instance):
            if cand in state.overlay:
                continue
            gain = delta(state, cand)
            if gain > best_gain:
                best_gain, best_edge = gain, cand
        if best_edge is None:
            raise AssertionError("no improving edge despite positive kappa")
        add_edge(state, best_edge)
    if trace is not None:
        trace.append(0)
    return frozenset(state.overlay)


def star_tree(instance: Instance) -> frozenset[Edge]:
    """Deterministic base tree: star centered at the smallest peer."""
    center = min(instance.peers)
    return frozenset(edge_key(center, v) for v in instance.peers if v != center)


def sparsify(instance: Instance) -> frozenset[Edge]:
    """Two-stage construction: star base tree, then greedy augmentation."""
    return greedy_augment(instance, star_tree(instance))


def sparsified_instance(instance: Instance, overlay: frozenset[Edge]) -> Instance:
    """The input instance with its overlay replaced by a constructed edge set."""
    from .model import build_instance

    return build_instance(
        instance.nodes, instance.edges, instance.peers, overlay, instance.routes
    )


def brute_force_augment(
    instance: Instance, tree, budget: int = DEFAULT_AUGMENT_BUDGET
) -> frozenset[Edge]:
    """Minimum-cardinality superset of the tree with kappa zero; exhaustive."""
    ok, witness = check_precondition(instance)
    if not ok:
        raise PreconditionError(
            f"precondition ERDC(K_P) >= 2 violated at edge ({witness[0]},{witness[1]})",
            witness,
        )
    tree = frozenset(edge_key(*e) for e in tree)
    candidates = [p for p in _peer_pairs(instance) if p not in tree]
    explored = 0
    for size in range(len(candidates) + 1):
        for extra in combinations(candidates, size):
            explored += 1
            if explored > budget:
                raise BudgetExceededError(
                    f"augmentation search exceeded budget of {budget} subsets"
                )
            overlay = tree | set(extra)
            if kappa_of(instance, overlay, tree) == 0:
                return frozenset(overlay)
    raise AssertionError("complete peer graph must be feasible under the precondition")


def special_case_construct(nodes, edges) -> frozenset[Edge]:
    """Identity-routing special case: spanning tree plus one cover edge per
    tree edge; at most 2n-2 overlay edges, survivable against any single
    underlying edge failure.  Requires a 2-edge-connected graph.
    """
    nodes = list(nodes)
    canon = sorted(edge_key(*e) for e in edges)
    # Minimum-lexicographic Kruskal tree.
    dsu = _DSU(nodes)
    tree: list[Edge] = []
    for e in canon:
        if dsu.union(*e):
            tree.append(e)
    if dsu.components != 1:
        raise ValidationError("underlying graph disconnected")
    overlay = set(tree)
    tree_set = set(tree)
    for e in tree:
        # Peers on e[0]'s side of the cut induced by removing e from the tree.
        side = {e[0]}
        stack = [e[0]]
        while stack:
            u = stack.pop()
            for f in tree_set:
                if f == e or u not in f:
                    continue
                v = f[0] if f[1] == u else f[1]
                if v not in side:
                    side.add(v)
                    stack.append(v)
        cover = next(
            (
                f
                for f in canon
                if f != e and (f[0] in side) != (f[1] in side)
            ),
            None,
        )
        if cover is None:
            raise PreconditionError(
                f"underlying graph has a bridge at ({e[0]},{e[1]})", e
            )
        overlay.add(cover)
    return frozenset(overlay)
