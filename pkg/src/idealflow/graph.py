"""Directed networks: ingestion, adjacency matrices, strong connectivity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DanglingNodeError, GraphError
from .matrix import SquareMatrix, infer_domain, zero


@dataclass(frozen=True)
class DirectedNetwork:
    node_count: int
    edges: tuple  # ((from, to, weight), ...)
    labels: tuple | None = None

    def __post_init__(self):
        if self.node_count < 1:
            raise GraphError("node_count must be >= 1")
        if self.labels is not None and len(self.labels) != self.node_count:
            raise GraphError(f"{len(self.labels)} labels for {self.node_count} nodes")
        seen = set()
        for u, v, w in self.edges:
            for x in (u, v):
                if not (0 <= x < self.node_count):
                    raise GraphError(f"node index {x} out of range 0..{self.node_count - 1}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge {u}->{v}")
            seen.add((u, v))
            if not w > 0:
                raise GraphError(f"edge {u}->{v} has non-positive weight {w}")

    @property
    def domain(self) -> str:
        return infer_domain(w for _, _, w in self.edges)

    def successors(self) -> list[list[int]]:
        out = [[] for _ in range(self.node_count)]
        for u, v, _ in self.edges:
            out[u].append(v)
        return out

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else i


def parse_weight(w):
    """Weights are ints, floats, Fractions, or ``"p/q"`` strings."""
    if isinstance(w, str):
        try:
            return Fraction(w) if "/" in w or "." not in w else float(w)
        except (ValueError, ZeroDivisionError):
            raise GraphError(f"bad weight {w!r}") from None
    if isinstance(w, bool) or not isinstance(w, (int, float, Fraction)):
        raise GraphError(f"bad weight {w!r}")
    return w


def from_edge_list(records: Iterable, node_count: int | None = None,
                   labels: Sequence | None = None) -> DirectedNetwork:
    """Build a validated network.

    ``records`` holds ``(from, to[, weight])`` tuples or dicts with keys
    ``from``, ``to`` and optional ``weight`` (default 1).  Endpoints are
    0-based indices, or labels when ``labels`` is given.
    """
    if labels is not None:
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise GraphError("duplicate node labels")
        if node_count is not None and node_count != len(labels):
            raise GraphError("node_count disagrees with labels")
        node_count = len(labels)
    index = {lab: i for i, lab in enumerate(labels)} if labels is not None else None

    def resolve(x):
        if index is not None and x in index:
            return index[x]
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        raise GraphError(f"unknown node {x!r}")

    edges = []
    for rec in records:
        if isinstance(rec, dict):
            try:
                u, v = rec["from"], rec["to"]
            except KeyError as exc:
                raise GraphError(f"edge record missing {exc.args[0]!r}") from None
            w = rec.get("weight", 1)
        else:
            rec = tuple(rec)
            if len(rec) not in (2, 3):
                raise GraphError(f"malformed edge record {rec!r}")
            u, v = rec[0], rec[1]
            w = rec[2] if len(rec) == 3 else 1
        edges.append((resolve(u), resolve(v), parse_weight(w)))
    if node_count is None:
        node_count = 1 + max((max(u, v) for u, v, _ in edges), default=0)
    return DirectedNetwork(node_count, tuple(edges), labels)


def from_json(data: dict) -> DirectedNetwork:
    """Edge-list JSON: ``{"nodes": int | [labels], "edges": [{"from", "to", "weight"}]}``."""
    if not isinstance(data, dict) or "edges" not in data:
        raise GraphError("edge-list JSON needs an 'edges' array")
    nodes = data.get("nodes")
    if isinstance(nodes, list):
        return from_edge_list(data["edges"], labels=nodes)
    if nodes is not None and not (isinstance(nodes, int) and not isinstance(nodes, bool)):
        raise GraphError("'nodes' must be an integer or a list of labels")
    return from_edge_list(data["edges"], node_count=nodes)


def adjacency_matrix(g: DirectedNetwork) -> SquareMatrix:
    dom = g.domain
    n = g.node_count
    rows = [[0] * n for _ in range(n)]
    for u, v, w in g.edges:
        rows[u][v] = w
    return SquareMatrix.from_rows(rows, dom)


def from_matrix(m: SquareMatrix, labels: Sequence | None = None) -> DirectedNetwork:
    """Network whose edges are the nonzero entries of ``m``."""
    edges = tuple(
        (i, j, x) for i, r in enumerate(m.rows) for j, x in enumerate(r) if x != 0
    )
    return DirectedNetwork(m.order, edges, tuple(labels) if labels is not None else None)


def support_network(m: SquareMatrix) -> DirectedNetwork:
    """Unit-weight network on the nonzero pattern of ``m`` (signs ignored)."""
    edges = tuple(
        (i, j, 1) for i, r in enumerate(m.rows) for j, x in enumerate(r) if x != 0
    )
    return DirectedNetwork(m.order, edges)


@dataclass(frozen=True)
class IrreducibilityReport:
    strongly_connected: bool
    component_count: int
    component_assignment: tuple = field(default=())

    def components(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for node, c in enumerate(self.component_assignment):
            groups.setdefault(c, []).append(node)
        return [groups[c] for c in sorted(groups)]


def tarjan_scc(n: int, successors: Sequence[Sequence[int]]) -> list[int]:
    """Iterative Tarjan; returns a component id per node (ids in discovery order)."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            succ = successors[v]
            if k < len(succ):
                work[-1] = (v, k + 1)
                w = succ[k]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def strong_connectivity(g: DirectedNetwork) -> IrreducibilityReport:
    comp = tarjan_scc(g.node_count, g.successors())
    # relabel so that node 0's component is 0, next new one 1, ...
    relabel: dict[int, int] = {}
    for c in comp:
        relabel.setdefault(c, len(relabel))
    assignment = tuple(relabel[c] for c in comp)
    count = len(relabel)
    return IrreducibilityReport(count == 1, count, assignment)


def period(g: DirectedNetwork) -> int:
    """Period of a strongly connected network (gcd of its cycle lengths).

    Computed from BFS levels: gcd over edges ``u -> v`` of ``level[u] + 1 - level[v]``.
    """
    succ = g.successors()
    level = [-1] * g.node_count
    level[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in succ[u]:
                if level[v] == -1:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    d = 0
    for u, v, _ in g.edges:
        if level[u] >= 0 and level[v] >= 0:
            d = gcd(d, level[u] + 1 - level[v])
    return abs(d)


def uniform_walk_matrix(g: DirectedNetwork):
    """Row-normalized adjacency ``D^-1 A`` with weighted out-degrees."""
    from .markov import StochasticMatrix

    a = adjacency_matrix(g)
    rows = []
    for i, r in enumerate(a.rows):
        deg = sum(r, zero(a.domain))
        if deg == 0:
            raise DanglingNodeError(g.label(i), f"node {g.label(i)} has no outgoing edge")
        rows.append([x / deg for x in r])
    return StochasticMatrix.from_rows(rows, a.domain)
