"""Flow parameter via LP column generation with a shortest-path pricing step.

The primal packs flow on images of overlay (s,t)-paths under unit underlying
capacities; the dual fractionally buys underlying edges so every image costs
at least 1.  Columns (paths) are generated by the separation routine: weight
each overlay edge by the dual mass of its route and look for an (s,t)-path of
weight below 1 in H.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .model import Edge, Instance, Path, edge_key, route_image
from .simplex import PackingSimplex

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class FlowResult:
    """Exact flow value with primal and dual certificates."""

    value: Fraction
    primal: dict[Path, Fraction]
    dual: dict[Edge, Fraction]
    generated_paths: list[Path]

    def validate(self, instance: Instance, s: str, t: str) -> None:
        """Re-check both certificates independently of the solver."""
        load: dict[Edge, Fraction] = {}
        total = ZERO
        for path, flow in self.primal.items():
            if flow < 0:
                raise ValidationError("negative primal flow")
            total += flow
            for e, mult in route_image(instance, path).items():
                load[e] = load.get(e, ZERO) + mult * flow
        if any(v > 1 for v in load.values()):
            raise ValidationError("primal violates an edge capacity")
        dual_total = sum(self.dual.values(), ZERO)
        if any(v < 0 for v in self.dual.values()):
            raise ValidationError("negative dual weight")
        for path in self.generated_paths:
            cost = sum(
                mult * self.dual.get(e, ZERO)
                for e, mult in route_image(instance, path).items()
            )
            if self.value > 0 and cost < 1:
                raise ValidationError("dual violates a generated path constraint")
        if total != self.value or dual_total != self.value:
            raise ValidationError("primal/dual objectives differ from value")
        if separation_oracle(instance, s, t, self.dual) is not None:
            raise ValidationError("dual infeasible over the full path space")


def _check_pair(instance: Instance, s: str, t: str) -> None:
    if s not in instance.peers or t not in instance.peers:
        raise ValidationError(f"{s} or {t} is not a peer")
    if s == t:
        raise ValidationError("endpoints must be distinct")


def overlay_weights(instance: Instance, y: dict[Edge, Fraction]) -> dict[Edge, Fraction]:
    """w(e) = total dual mass on the route implementing overlay edge e."""
    return {
        e: sum((y.get(g, ZERO) for g in instance.route_support(*e)), ZERO)
        for e in instance.overlay_edges
    }


def separation_oracle(
    instance: Instance, s: str, t: str, y: dict[Edge, Fraction]
) -> Path | None:
    """Return an overlay (s,t)-path whose image costs < 1 under y, if any.

    The returned path is the lexicographically smallest among the
    minimum-weight simple (s,t)-paths of the weighted overlay graph.
    """
    _check_pair(instance, s, t)
    if any(v < 0 for v in y.values()):
        raise ValidationError("dual weights must be nonnegative")
    w = overlay_weights(instance, y)

    # Dijkstra from t; dist[v] = cheapest (v,t) overlay distance.
    dist: dict[str, Fraction] = {t: ZERO}
    heap = [(ZERO, t)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v in instance.h_neighbors(u):
            nd = d + w[edge_key(u, v)]
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    if s not in dist or dist[s] >= 1:
        return None

    # Lexicographically smallest shortest simple path: DFS in neighbor order,
    # pruning prefixes that cannot complete a minimum-weight path.
    target = dist[s]
    stack = [s]
    on_stack = {s}

    def extend(u: str, spent: Fraction) -> Path | None:
        if u == t:
            return tuple(stack)
        for v in instance.h_neighbors(u):
            if v in on_stack or v not in dist:
                continue
            nd = spent + w[edge_key(u, v)]
            if nd + dist[v] != target:
                continue
            stack.append(v)
            on_stack.add(v)
            found = extend(v, nd)
            stack.pop()
            on_stack.remove(v)
            if found is not None:
                return found
        return None

    path = extend(s, ZERO)
    assert path is not None  # a shortest walk always shortcuts to a simple path
    return path


def _bfs_overlay_path(instance: Instance, s: str, t: str) -> Path | None:
    prev: dict[str, str] = {s: s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v in instance.h_neighbors(u):
            if v not in prev:
                prev[v] = u
                queue.append(v)
    if t not in prev:
        return None
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


def fdc_pair(instance: Instance, s: str, t: str) -> FlowResult:
    """Exact flow value between two peers with primal/dual certificates."""
    _check_pair(instance, s, t)
    seed = _bfs_overlay_path(instance, s, t)
    if seed is None:
        return FlowResult(ZERO, {}, {}, [])

    # Fix the row set once so the program only ever grows by columns and the
    # solver can warm-start from the previous optimal basis.
    row_edges = sorted(
        {e for pair in instance.overlay_edges for e in instance.route_support(*pair)}
    )
    row_index = {e: i for i, e in enumerate(row_edges)}
    lp = PackingSimplex(len(row_edges))

    generated: list[Path] = []
    seen: set[Path] = set()
    violated: Path | None = seed
    while violated is not None:
        assert violated not in seen, "oracle returned an already generated path"
        seen.add(violated)
        generated.append(violated)
        image = route_image(instance, violated)
        lp.add_column({row_index[e]: mult for e, mult in image.items()})
        lp.solve()
        value, x, y_rows = lp.solution()
        y = {e: y_rows[i] for e, i in row_index.items() if y_rows[i] != 0}
        violated = separation_oracle(instance, s, t, y)
    primal = {p: x[j] for j, p in enumerate(generated) if x[j] != 0}
    return FlowResult(value, primal, y, generated)


def fdc_all_pairs(instance: Instance) -> tuple[Fraction, tuple[str, str], FlowResult]:
    """Minimum of fdc_pair over unordered peer pairs, with lexicographic argmin."""
    best = None
    for u, v in _sorted_pairs(instance.peers):
        result = fdc_pair(instance, u, v)
        if best is None or result.value < best[0]:
            best = (result.value, (u, v), result)
    return best


def _sorted_pairs(peers):
    ordered = sorted(peers)
    for i, u in enumerate(ordered):
        for v in ordered[i + 1 :]:
            yield u, v


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
