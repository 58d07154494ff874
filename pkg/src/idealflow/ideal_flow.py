"""Ideal flow matrices: construction from a chain, min-scaling, integerization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import graph
from .errors import DegenerateError, DomainError, NotPremagicError, ReducibleError
from .markov import StochasticMatrix, stationary_exact
from .matrix import SquareMatrix, coerce, col_sums, is_premagic, row_sums, scale, total

MIN_SCALED = "min-scaled"
TOTAL_SCALED = "total-scaled"
RAW = "raw"


@dataclass(frozen=True)
class IdealFlowMatrix:
    matrix: SquareMatrix
    kappa: object
    scaling: str = RAW

    def __post_init__(self):
        m = self.matrix
        if not m.is_nonnegative():
            raise DomainError("ideal flow must be non-negative")
        if m.is_rational and not is_premagic(m):
            raise NotPremagicError("ideal flow must be premagic")
        rep = graph.strong_connectivity(graph.support_network(m))
        if not rep.strongly_connected:
            raise ReducibleError(rep.components())

    @property
    def throughputs(self) -> tuple:
        return tuple(row_sums(self.matrix))


def min_scale(m: SquareMatrix) -> tuple[SquareMatrix, object]:
    """Divide by the smallest nonzero entry; zeros are structural and ignored."""
    nonzero = [x for x in m.entries() if x != 0]
    if not nonzero:
        raise DegenerateError("all-zero matrix cannot be min-scaled")
    if any(x < 0 for x in nonzero):
        raise DomainError("min_scale expects a non-negative matrix")
    d = min(nonzero)
    inv = Fraction(1) / d if m.is_rational else 1.0 / d
    return scale(m, inv), d


def raw_flow(s: SquareMatrix) -> SquareMatrix:
    """``diag(pi) S``: row sums are ``pi`` and column sums ``pi S = pi``."""
    s = StochasticMatrix.of(s)
    pi = stationary_exact(s).values
    return SquareMatrix(tuple(tuple(p * x for x in r) for p, r in zip(pi, s.rows)), s.domain)


def ideal_flow_from_stochastic(s: SquareMatrix) -> IdealFlowMatrix:
    f, _ = min_scale(raw_flow(s))
    return IdealFlowMatrix(f, total(f), MIN_SCALED)


def to_whole_numbers(f) -> tuple[SquareMatrix, int]:
    """Multiply by the LCM of all denominators; returns ``(integer matrix, multiplier)``."""
    m = f.matrix if isinstance(f, IdealFlowMatrix) else f
    if not m.is_rational:
        raise DomainError("integerization needs a rational matrix")
    mult = lcm(*(x.denominator for x in m.entries()))
    return scale(m, mult), mult


def rescale_to_total(f: IdealFlowMatrix, kappa_target) -> IdealFlowMatrix:
    if not kappa_target > 0:
        raise ValueError("kappa_target must be positive")
    m = f.matrix
    k = coerce(kappa_target, m.domain) / f.kappa
    out = scale(m, k)
    return IdealFlowMatrix(out, total(out), TOTAL_SCALED)


@dataclass(frozen=True)
class NodeBalance:
    node: int
    inflow: object
    outflow: object
    conserved: bool


def verify_node_conservation(f, tol: float = 0.0) -> list[NodeBalance]:
    """Per-node inflow (column sum) against outflow (row sum)."""
    m = f.matrix if isinstance(f, IdealFlowMatrix) else f
    if m.is_rational and tol:
        raise DomainError("rational conservation is exact; tol must be 0")
    return [
        NodeBalance(i, cin, cout, abs(cout - cin) <= tol)
        for i, (cin, cout) in enumerate(zip(col_sums(m), row_sums(m)))
    ]
