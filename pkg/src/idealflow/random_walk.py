"""Monte-Carlo random walks: link traversal counts and empirical relative flow.

Each agent draws from its own Philox stream keyed by ``(seed, agent)``, so
results do not depend on how agents are batched or scheduled.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import graph
from .errors import DegenerateError, ReducibleError
from .ideal_flow import IdealFlowMatrix
from .markov import StochasticMatrix
from .matrix import FLOAT, SquareMatrix

DEFAULT_AGENTS = 100
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SimulationConfig:
    agents: int
    steps: int
    seed: int = 0
    start: tuple | None = None  # None means uniform over nodes

    def __post_init__(self):
        if self.agents < 1 or self.steps < 1:
            raise ValueError("agents and steps must both be >= 1")
        if self.start is not None:
            start = tuple(float(x) for x in self.start)
            if any(x < 0 for x in start) or abs(sum(start) - 1.0) > 1e-12:
                raise ValueError("start distribution must be non-negative and sum to 1")
            object.__setattr__(self, "start", start)

    @property
    def budget(self) -> int:
        return self.agents * self.steps


@dataclass(frozen=True)
class TraversalCounts:
    counts: np.ndarray  # n x n int64
    agents: int
    steps: int

    @property
    def total(self) -> int:
        return self.agents * self.steps

    def imbalance(self) -> np.ndarray:
        """Per-node ``|outflow - inflow|`` of the counts."""
        return np.abs(self.counts.sum(axis=1) - self.counts.sum(axis=0))


def agent_stream(seed: int, agent: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & _MASK64, agent]))


def _cumulative(p: np.ndarray) -> np.ndarray:
    cum = np.cumsum(p, axis=1)
    # snap the tail to exactly 1 from the last positive entry on, so a draw
    # u < 1 never lands past the support
    for i, row in enumerate(p):
        last = np.flatnonzero(row > 0)[-1]
        cum[i, last:] = 1.0
    return cum


def _validate(g: graph.DirectedNetwork, s: SquareMatrix) -> np.ndarray:
    rep = graph.strong_connectivity(g)
    if not rep.strongly_connected:
        raise ReducibleError(rep.components())
    s = StochasticMatrix.of(s if s.domain == FLOAT else s.to_float())
    if s.order != g.node_count:
        raise ValueError(f"transition matrix order {s.order} != {g.node_count} nodes")
    edges = {(u, v) for u, v, _ in g.edges}
    for i, r in enumerate(s.rows):
        for j, x in enumerate(r):
            if x > 0 and (i, j) not in edges:
                raise ValueError(f"transition {i}->{j} has probability {x} but no edge")
    return s.to_numpy()


def simulate(g: graph.DirectedNetwork, s: SquareMatrix, cfg: SimulationConfig) -> TraversalCounts:
    """Walk ``cfg.agents`` agents for ``cfg.steps`` steps and count link traversals."""
    p = _validate(g, s)
    n = g.node_count
    cum = _cumulative(p)
    start = np.full(n, 1.0 / n) if cfg.start is None else np.array(cfg.start)
    if start.size != n:
        raise ValueError(f"start distribution has {start.size} entries for {n} nodes")
    start_cum = _cumulative(start[None, :])[0]

    # one row of uniforms per agent: column 0 picks the start node
    u = np.stack([agent_stream(cfg.seed, a).random(cfg.steps + 1) for a in range(cfg.agents)])
    pos = np.searchsorted(start_cum, u[:, 0], side="right")
    counts = np.zeros(n * n, dtype=np.int64)
    for t in range(1, cfg.steps + 1):
        nxt = (u[:, t, None] >= cum[pos]).sum(axis=1)
        np.add.at(counts, pos * n + nxt, 1)
        pos = nxt
    return TraversalCounts(counts.reshape(n, n), cfg.agents, cfg.steps)


def relative_flow(r: TraversalCounts | np.ndarray) -> SquareMatrix:
    """Counts divided by the smallest nonzero count."""
    c = np.asarray(r.counts if isinstance(r, TraversalCounts) else r)
    nz = c[c > 0]
    if nz.size == 0:
        raise DegenerateError("no traversals recorded")
    return SquareMatrix.from_rows((c / nz.min()).tolist(), FLOAT)


def split_budget(budget: int, agents: int = DEFAULT_AGENTS) -> tuple[int, int]:
    """``(N, T)`` with ``N * T == budget`` and ``N`` the largest divisor <= ``agents``.

    Budgets grow ``T`` at a fixed moderate ``N``, which averages over time and
    therefore also handles periodic chains.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    for a in range(min(agents, budget), 0, -1):
        if budget % a == 0:
            return a, budget // a
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class ConvergenceRow:
    budget: int
    max_rel_err: float
    mean_rel_err: float


def flow_errors(empirical: SquareMatrix, reference: SquareMatrix) -> tuple[float, float]:
    """Max and mean elementwise relative error on the reference's support."""
    e = empirical.to_numpy()
    ref = reference.to_numpy()
    mask = ref != 0
    rel = np.abs(e[mask] - ref[mask]) / ref[mask]
    return float(rel.max()), float(rel.mean())


def convergence_report(g: graph.DirectedNetwork, s: SquareMatrix, budgets: Sequence[int],
                       reference: IdealFlowMatrix | SquareMatrix, seed: int = 0,
                       agents: int = DEFAULT_AGENTS) -> list[ConvergenceRow]:
    if any(b2 <= b1 for b1, b2 in zip(budgets, budgets[1:])):
        raise ValueError("budgets must be strictly increasing")
    ref = reference.matrix if isinstance(reference, IdealFlowMatrix) else reference
    rows = []
    for b in budgets:
        n_agents, steps = split_budget(b, agents)
        counts = simulate(g, s, SimulationConfig(n_agents, steps, seed))
        mx, mean = flow_errors(relative_flow(counts), ref)
        rows.append(ConvergenceRow(b, mx, mean))
    return rows


def report_to_csv(rows: Sequence[ConvergenceRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["budget", "max_rel_err", "mean_rel_err"])
    for r in rows:
        w.writerow([r.budget, repr(r.max_rel_err), repr(r.mean_rel_err)])
    return buf.getvalue()
