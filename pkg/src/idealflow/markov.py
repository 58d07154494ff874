"""Premagic <-> stochastic conversions and stationary distributions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import graph
from .errors import (
    ConvergenceError,
    DanglingNodeError,
    DegenerateError,
    DomainError,
    NotConservingError,
    NotPremagicError,
    ReducibleError,
    SingularMatrixError,
)
from .matrix import SquareMatrix, coerce, is_premagic, scale, solve_exact, total, zero

FLOAT_ROW_TOL = 1e-9


@dataclass(frozen=True, repr=False, eq=False)
class StochasticMatrix(SquareMatrix):
    """Row-stochastic matrix: non-negative, rows sum to 1 (exactly for rationals)."""

    def __post_init__(self):
        super().__post_init__()
        for i, r in enumerate(self.rows):
            if any(x < 0 for x in r):
                raise DomainError(f"row {i} has a negative probability")
            s = sum(r, zero(self.domain))
            bad = s != 1 if self.is_rational else abs(s - 1.0) > FLOAT_ROW_TOL
            if bad:
                raise ValueError(f"row {i} sums to {s}, not 1")

    @classmethod
    def of(cls, m: SquareMatrix) -> "StochasticMatrix":
        return m if isinstance(m, cls) else cls(m.rows, m.domain)

    def __repr__(self):
        return f"StochasticMatrix({self.tolist()!r}, domain={self.domain!r})"


@dataclass(frozen=True)
class StationaryDistribution:
    values: tuple
    method: str  # "exact-solve" or "power-iteration"
    residual: float = 0.0
    iterations: int = 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _require_nonneg_premagic(m: SquareMatrix):
    if not m.is_nonnegative():
        raise DomainError("matrix has negative entries")
    if not is_premagic(m):
        raise NotPremagicError("matrix is not premagic (row sums differ from column sums)")


def to_row_stochastic(m: SquareMatrix) -> tuple[StochasticMatrix, tuple]:
    """Divide each row by its sum; returns ``(S, throughputs)``."""
    _require_nonneg_premagic(m)
    z = zero(m.domain)
    n = []
    rows = []
    for i, r in enumerate(m.rows):
        ni = sum(r, z)
        if ni == 0:
            raise DanglingNodeError(i)
        n.append(ni)
        rows.append([x / ni for x in r])
    return StochasticMatrix.from_rows(rows, m.domain), tuple(n)


def conservation_defect(s: SquareMatrix, n) -> tuple[int, object]:
    """Worst node and deviation of ``|(n^T S)_j - n_j|``."""
    z = zero(s.domain)
    flows = [sum((n[i] * s.rows[i][j] for i in range(s.order)), z) for j in range(s.order)]
    dev = [abs(f - nj) for f, nj in zip(flows, n)]
    worst = max(range(len(dev)), key=dev.__getitem__)
    return worst, dev[worst]


def premagic_from_stochastic(s: SquareMatrix, n, tol: float | None = None) -> SquareMatrix:
    """``m_ij = n_i s_ij``, validated to be flow conserving.

    The product is premagic only when ``n^T S = n^T``; otherwise
    :class:`NotConservingError` names the worst node.
    """
    s = StochasticMatrix.of(s)
    if len(n) != s.order:
        raise ValueError(f"{len(n)} throughputs for order {s.order}")
    n = [coerce(x, s.domain) for x in n]
    if any(x <= 0 for x in n):
        raise DomainError("throughputs must be strictly positive")
    worst, dev = conservation_defect(s, n)
    if s.is_rational:
        ok = dev == 0
    else:
        ok = dev <= (1e-9 * max(n) if tol is None else tol)
    if not ok:
        raise NotConservingError(worst, dev)
    return SquareMatrix(tuple(tuple(n[i] * x for x in r) for i, r in enumerate(s.rows)), s.domain)


def normalize_total(m: SquareMatrix) -> tuple[SquareMatrix, object]:
    """Divide by the total ``kappa``; entries then sum to 1 and stay premagic.

    The result is doubly stochastic only when every node throughput is equal.
    """
    _require_nonneg_premagic(m)
    kappa = total(m)
    if kappa == 0:
        raise DegenerateError("zero matrix has no total flow")
    inv = Fraction(1) / kappa if m.is_rational else 1.0 / kappa
    return scale(m, inv), kappa


def from_total_normalized(s: SquareMatrix, kappa) -> SquareMatrix:
    """``m_ij = kappa * s_ij``."""
    return scale(s, kappa)


def _check_irreducible(s: SquareMatrix):
    rep = graph.strong_connectivity(graph.support_network(s))
    if not rep.strongly_connected:
        raise ReducibleError(rep.components())


def stationary_exact(s: SquareMatrix) -> StationaryDistribution:
    """Solve ``pi S = pi``, ``sum(pi) = 1`` exactly by rational elimination."""
    s = StochasticMatrix.of(s)
    if not s.is_rational:
        raise DomainError("stationary_exact needs a rational matrix")
    _check_irreducible(s)
    n = s.order
    # (S^T - I) pi = 0 plus the normalization row
    a = [[s.rows[j][i] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    a.append([Fraction(1)] * n)
    b = [Fraction(0)] * n + [Fraction(1)]
    try:
        pi = solve_exact(a, b)
    except (SingularMatrixError, ValueError) as exc:  # pragma: no cover - irreducible S has rank n-1
        raise AssertionError(f"irreducible chain gave a singular system: {exc}") from exc
    return StationaryDistribution(tuple(pi), "exact-solve", 0.0)


def stationary_power(s: SquareMatrix, tol: float = 1e-12, max_iters: int = 100_000) -> StationaryDistribution:
    """Plain power iteration ``pi <- pi S`` from the uniform start.

    Periodic chains do not converge under undamped iteration and are refused
    with :class:`ConvergenceError` up front; use :func:`stationary_exact`.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = StochasticMatrix.of(s)
    _check_irreducible(s)
    d = graph.period(graph.support_network(s))
    if d > 1:
        raise ConvergenceError(f"chain has period {d}; plain power iteration does not converge", float("nan"))
    p = s.to_numpy()
    n = s.order
    pi = np.full(n, 1.0 / n)
    res = prev = float("inf")
    for it in range(1, max_iters + 1):
        nxt = pi @ p
        nxt /= nxt.sum()
        res = float(np.max(np.abs(nxt - pi)))
        pi = nxt
        # geometric tail estimate of the remaining error, rho ~ res / prev
        rho = min(res / prev, 0.999) if prev > 0 and np.isfinite(prev) else 0.0
        prev = res
        if res <= tol and res * rho / (1.0 - rho) <= tol:
            res = float(np.max(np.abs(pi @ p - pi)))
            return StationaryDistribution(tuple(float(x) for x in pi), "power-iteration", res, it)
    raise ConvergenceError(f"no convergence within {max_iters} iterations", res)
