"""Floating-point eigen-analysis and numerical sweeps over premagic matrices.

The sweeps probe three open statements about non-negative premagic matrices:

1. the dominant eigenvector has unit 2-norm and unit Frobenius norm;
2. premagic matrices are diagonalizable (eigenvector matrix of full rank);
3. scaling ``M`` by ``k > 0`` scales the dominant eigenvalue by ``k`` and
   keeps the eigenvector.

Statement 1 depends on how an eigenvector is normalized, so it is only
recorded.  Statement 3 is a theorem and is asserted.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import graph
from .errors import ConvergenceError, DomainError, ReducibleError
from .matrix import PermutationMatrix, SquareMatrix, add, random_premagic

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigenPair:
    eigenvalue: float
    eigenvector: np.ndarray
    residual: float
    iterations: int = 0


@dataclass
class ConjectureReport:
    conjecture: int
    cases: int = 0
    consistent: int = 0
    worst_deviation: float = 0.0
    details: list = field(default_factory=list)

    def add(self, ok: bool, deviation: float, detail: dict):
        self.cases += 1
        self.consistent += bool(ok)
        if np.isfinite(deviation):
            self.worst_deviation = max(self.worst_deviation, float(deviation))
        else:
            self.worst_deviation = float("inf")
        self.details.append(detail)

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), **kw)


def _as_array(m) -> np.ndarray:
    if isinstance(m, SquareMatrix):
        return m.to_numpy()
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    return a


def dominant_eigenpair(m, tol: float = 1e-13, max_iters: int = 200_000, shift: float = 1.0) -> EigenPair:
    """Perron root and vector of a non-negative irreducible matrix.

    Power iteration runs on ``M + shift*I`` so that periodic matrices (whose
    peripheral spectrum has several eigenvalues of maximal modulus) still
    converge.  Stops once ``||Mv - lam v||_inf <= tol * max(1, ||M||_inf)``.
    The vector is returned with unit 2-norm and non-negative orientation.
    """
    a = _as_array(m)
    if (a < 0).any():
        raise DomainError("dominant_eigenpair needs a non-negative matrix")
    rep = graph.strong_connectivity(graph.support_network(SquareMatrix.from_rows((a != 0).astype(int).tolist())))
    if not rep.strongly_connected:
        raise ReducibleError(rep.components())
    n = a.shape[0]
    shifted = a + shift * np.eye(n)
    bound = tol * max(1.0, float(np.abs(a).sum(axis=1).max()))
    v = np.full(n, 1.0 / np.sqrt(n))
    res = float("inf")
    for it in range(1, max_iters + 1):
        w = shifted @ v
        v = w / np.linalg.norm(w)
        mu = float(v @ shifted @ v)
        lam = mu - shift
        res = float(np.max(np.abs(a @ v - lam * v)))
        if res <= bound:
            if v.sum() < 0:
                v = -v
            return EigenPair(lam, v, res, it)
    raise ConvergenceError(f"power iteration did not converge in {max_iters} iterations", res)


def eigenvector_rank(m, factor: float | None = None) -> tuple[int, np.ndarray]:
    """Numerical rank of the eigenvector matrix and its singular values.

    The threshold is ``n * ||V||_2 * eps * factor``.  The default factor
    ``1/sqrt(eps)`` is needed because rounding splits a defective eigenvalue
    by about ``sqrt(eps)``, leaving ``V`` with singular values of that size
    instead of exact zeros.
    """
    a = _as_array(m)
    n = a.shape[0]
    factor = 1.0 / np.sqrt(EPS) if factor is None else factor
    _, vecs = np.linalg.eig(a)
    s = np.linalg.svd(vecs, compute_uv=False)
    threshold = n * s[0] * EPS * factor
    return int((s > threshold).sum()), s


def sweep_case(order: int, seed: int) -> SquareMatrix:
    """Non-negative, irreducible, generally asymmetric premagic test matrix.

    A random permutation combination plus the cyclic shift, which keeps the
    support strongly connected.
    """
    base = random_premagic(order, seed)
    cycle = PermutationMatrix(tuple((i + 1) % order for i in range(order))).dense()
    return add(base, cycle).to_float()


def _case_seeds(seed: int, cases: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(cases)]


def _case_order(order: int | Sequence[int], i: int) -> int:
    if isinstance(order, int):
        return order
    return order[i % len(order)]


def check_conjecture_1(order: int | Sequence[int] = 5, cases: int = 100, seed: int = 0) -> ConjectureReport:
    """Record the norms of unit-normalized dominant eigenvectors.

    Alongside the 2-norm and Frobenius norm, each detail also reports the
    2-norm under sum-to-one scaling, which shows the norms are a choice of
    normalization rather than a property of the matrix.
    """
    rep = ConjectureReport(1)
    for i, s in enumerate(_case_seeds(seed, cases)):
        n = _case_order(order, i)
        m = sweep_case(n, s)
        try:
            ep = dominant_eigenpair(m)
        except ConvergenceError as exc:
            rep.add(False, float("inf"), {"case": i, "order": n, "seed": s, "error": str(exc)})
            continue
        v = ep.eigenvector
        n2 = float(np.linalg.norm(v, 2))
        fro = float(np.linalg.norm(v.reshape(-1, 1), "fro"))
        dev = max(abs(n2 - 1.0), abs(fro - 1.0))
        rep.add(dev <= 1e-12, dev, {
            "case": i, "order": n, "seed": s, "eigenvalue": ep.eigenvalue,
            "norm_2": n2, "norm_fro": fro,
            "norm_2_sum_normalized": float(np.linalg.norm(v / v.sum())),
        })
    return rep


def check_conjecture_2(order: int | Sequence[int] = 5, cases: int = 100, seed: int = 0,
                       factor: float | None = None) -> ConjectureReport:
    """Record whether each sampled matrix has a full-rank eigenvector matrix.

    ``worst_deviation`` is the largest condition number of an eigenvector matrix.
    """
    rep = ConjectureReport(2)
    for i, s in enumerate(_case_seeds(seed, cases)):
        n = _case_order(order, i)
        m = sweep_case(n, s)
        try:
            rank, sv = eigenvector_rank(m, factor)
        except np.linalg.LinAlgError as exc:
            rep.add(False, float("inf"), {"case": i, "order": n, "seed": s, "error": str(exc)})
            continue
        cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
        rep.add(rank == n, cond, {
            "case": i, "order": n, "seed": s, "rank": rank, "eigenvector_condition": cond,
        })
    return rep


def _angle(u: np.ndarray, v: np.ndarray) -> float:
    # chord length of unit vectors, stable for tiny angles
    return float(min(np.linalg.norm(u - v), np.linalg.norm(u + v)))


def check_conjecture_3(order: int | Sequence[int] = 5, cases: int = 50, seed: int = 0,
                       k_values: Sequence[float] = (0.5, 2.0, 3.0, 10.0), tol: float = 1e-9) -> ConjectureReport:
    """Assert ``lam(kM) = k lam(M)`` and ``v(kM) = v(M)`` to relative ``tol``."""
    if any(k <= 0 for k in k_values):
        raise ValueError("k values must be positive")
    rep = ConjectureReport(3)
    for i, s in enumerate(_case_seeds(seed, cases)):
        n = _case_order(order, i)
        a = sweep_case(n, s).to_numpy()
        base = dominant_eigenpair(a)
        worst = 0.0
        for k in k_values:
            scaled = dominant_eigenpair(k * a)
            lam_dev = abs(scaled.eigenvalue - k * base.eigenvalue) / (k * base.eigenvalue)
            worst = max(worst, lam_dev, _angle(scaled.eigenvector, base.eigenvector))
        rep.add(worst <= tol, worst, {
            "case": i, "order": n, "seed": s, "eigenvalue": base.eigenvalue, "deviation": worst,
        })
    return rep


CHECKERS = {1: check_conjecture_1, 2: check_conjecture_2, 3: check_conjecture_3}
