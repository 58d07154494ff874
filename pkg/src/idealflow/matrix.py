"""Dense square matrices over exact rationals or float-64, with premagic predicates.

A matrix is *premagic* when its vector of row sums equals its vector of
column sums.  Every operation here is a pure function over immutable
:class:`SquareMatrix` values.  Rational arithmetic uses :class:`fractions.Fraction`
and is exact; float arithmetic is plain IEEE double.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, DomainError, NotPremagicError, SingularMatrixError

RATIONAL = "rational"
FLOAT = "float"
DOMAINS = (RATIONAL, FLOAT)

DEFAULT_REL_TOL = 1e-9


def scalar_domain(x) -> str:
    if isinstance(x, bool):
        raise DomainError("booleans are not matrix scalars")
    if isinstance(x, Rational):
        return RATIONAL
    if isinstance(x, (float, np.floating)):
        return FLOAT
    raise DomainError(f"unsupported scalar type {type(x).__name__}")


def coerce(x, domain: str):
    """Convert ``x`` into ``domain`` without crossing domains.

    Integers are valid in both domains.  Floats are never silently turned into
    rationals and rationals are never silently rounded to floats.
    """
    kind = scalar_domain(x)
    if domain == RATIONAL:
        if kind != RATIONAL:
            raise DomainError(f"float value {x!r} in a rational matrix")
        return Fraction(x)
    if domain == FLOAT:
        if isinstance(x, Integral):
            return float(x)
        if kind != FLOAT:
            raise DomainError(f"rational value {x!r} in a float matrix")
        return float(x)
    raise DomainError(f"unknown domain {domain!r}")


def infer_domain(values: Iterable) -> str:
    kinds = set()
    for v in values:
        if isinstance(v, Integral) and not isinstance(v, bool):
            continue
        kinds.add(scalar_domain(v))
    if len(kinds) > 1:
        raise DomainError("mixed rational and float entries")
    return kinds.pop() if kinds else RATIONAL


def zero(domain: str):
    return Fraction(0) if domain == RATIONAL else 0.0


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """Immutable dense ``n x n`` matrix.

    Construct with :meth:`from_rows`, which infers the scalar domain from the
    entries (all integers default to rational).
    """

    rows: tuple
    domain: str

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise DomainError(f"unknown domain {self.domain!r}")
        rows = tuple(tuple(r) for r in self.rows)
        n = len(rows)
        if n == 0:
            raise DimensionError("a square matrix needs order >= 1")
        for i, r in enumerate(rows):
            if len(r) != n:
                raise DimensionError(f"row {i} has {len(r)} entries, expected {n}")
        rows = tuple(tuple(coerce(x, self.domain) for x in r) for r in rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], domain: str | None = None) -> "SquareMatrix":
        rows = [list(r) for r in rows]
        if domain is None:
            domain = infer_domain(x for r in rows for x in r)
        return cls(tuple(tuple(r) for r in rows), domain)

    @classmethod
    def identity(cls, n: int, domain: str = RATIONAL) -> "SquareMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), domain)

    @classmethod
    def ones(cls, n: int, domain: str = RATIONAL) -> "SquareMatrix":
        return cls(tuple(tuple(1 for _ in range(n)) for _ in range(n)), domain)

    @classmethod
    def zeros(cls, n: int, domain: str = RATIONAL) -> "SquareMatrix":
        return cls(tuple(tuple(0 for _ in range(n)) for _ in range(n)), domain)

    @classmethod
    def diagonal(cls, values: Sequence, domain: str | None = None) -> "SquareMatrix":
        n = len(values)
        if domain is None:
            domain = infer_domain(values)
        return cls(
            tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)),
            domain,
        )

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def is_rational(self) -> bool:
        return self.domain == RATIONAL

    def __getitem__(self, ij):
        i, j = ij
        n = self.order
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"entry ({i}, {j}) outside order-{n} matrix")
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)

    def to_float(self) -> "SquareMatrix":
        return SquareMatrix(tuple(tuple(float(x) for x in r) for r in self.rows), FLOAT)

    def support(self) -> tuple:
        """Boolean pattern of nonzero entries."""
        return tuple(tuple(x != 0 for x in r) for r in self.rows)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries())

    def is_symmetric(self) -> bool:
        n = self.order
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def __eq__(self, other):
        # value semantics across subclasses (a StochasticMatrix equals the plain matrix)
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.domain == other.domain and self.rows == other.rows

    def __hash__(self):
        return hash((self.domain, self.rows))

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return subtract(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self):
        return f"SquareMatrix({self.tolist()!r}, domain={self.domain!r})"


@dataclass(frozen=True)
class SumVector:
    values: tuple
    orientation: str  # "row" or "column"

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(v) <= tol for v in self.values)


@dataclass(frozen=True)
class PermutationMatrix:
    """Permutation ``p`` whose dense form has a 1 at ``(i, p[i])`` in each row."""

    permutation: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.permutation)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"{p} is not a bijection on 0..{len(p) - 1}")
        object.__setattr__(self, "permutation", p)

    @property
    def order(self) -> int:
        return len(self.permutation)

    @classmethod
    def swap(cls, n: int, a: int, b: int) -> "PermutationMatrix":
        p = list(range(n))
        p[a], p[b] = p[b], p[a]
        return cls(tuple(p))

    def inverse(self) -> "PermutationMatrix":
        inv = [0] * self.order
        for i, pi in enumerate(self.permutation):
            inv[pi] = i
        return PermutationMatrix(tuple(inv))

    def dense(self, domain: str = RATIONAL) -> SquareMatrix:
        n = self.order
        p = self.permutation
        return SquareMatrix(tuple(tuple(int(p[i] == j) for j in range(n)) for i in range(n)), domain)


def _check_pair(a: SquareMatrix, b: SquareMatrix):
    if a.order != b.order:
        raise DimensionError(f"order mismatch: {a.order} vs {b.order}")
    if a.domain != b.domain:
        raise DomainError(f"domain mismatch: {a.domain} vs {b.domain}")


def _map2(a: SquareMatrix, b: SquareMatrix, f) -> SquareMatrix:
    _check_pair(a, b)
    return SquareMatrix(
        tuple(tuple(f(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)),
        a.domain,
    )


def _map(m: SquareMatrix, f) -> SquareMatrix:
    return SquareMatrix(tuple(tuple(f(x) for x in r) for r in m.rows), m.domain)


# -- sums and predicates -----------------------------------------------------


def row_sums(m: SquareMatrix) -> SumVector:
    return SumVector(tuple(sum(r, zero(m.domain)) for r in m.rows), "row")


def col_sums(m: SquareMatrix) -> SumVector:
    return SumVector(tuple(sum(c, zero(m.domain)) for c in zip(*m.rows)), "column")


def total(m: SquareMatrix):
    return sum(m.entries(), zero(m.domain))


def _resolve_tol(m: SquareMatrix, tol):
    if m.is_rational:
        if tol not in (None, 0):
            raise DomainError("rational predicates are exact; tol must be 0")
        return 0
    if tol is None:
        return DEFAULT_REL_TOL * float(norm_inf(m))
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return tol


def premagic_deviation(m: SquareMatrix):
    """Largest ``|row_sum[i] - col_sum[i]|``."""
    return max(abs(r - c) for r, c in zip(row_sums(m), col_sums(m)))


def is_premagic(m: SquareMatrix, tol: float | None = None) -> bool:
    """Row sums equal column sums.

    Rational matrices are tested exactly.  For floats ``tol`` is an absolute
    bound; when omitted it defaults to ``1e-9 * norm_inf(m)``.
    """
    return premagic_deviation(m) <= _resolve_tol(m, tol)


def antisymmetric_kernel_residual(m: SquareMatrix) -> SumVector:
    """``(M - M^T) j``; zero exactly when ``m`` is premagic."""
    return SumVector(
        tuple(r - c for r, c in zip(row_sums(m), col_sums(m))),
        "row",
    )


# -- closure operations ------------------------------------------------------


def add(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    return _map2(a, b, lambda x, y: x + y)


def subtract(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    return _map2(a, b, lambda x, y: x - y)


def hadamard(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    return _map2(a, b, lambda x, y: x * y)


def scale(m: SquareMatrix, k) -> SquareMatrix:
    k = coerce(k, m.domain)
    return _map(m, lambda x: k * x)


def shift(m: SquareMatrix, k) -> SquareMatrix:
    """``M + kJ``; pass a negative ``k`` for ``M - kJ``."""
    k = coerce(k, m.domain)
    return _map(m, lambda x: x + k)


def add_diagonal(m: SquareMatrix, values: Sequence) -> SquareMatrix:
    """Add ``values[i]`` to diagonal entry ``i``; any diagonal change keeps premagic."""
    if len(values) != m.order:
        raise DimensionError(f"{len(values)} diagonal values for order {m.order}")
    vals = [coerce(v, m.domain) for v in values]
    return SquareMatrix(
        tuple(
            tuple(x + vals[i] if i == j else x for j, x in enumerate(r))
            for i, r in enumerate(m.rows)
        ),
        m.domain,
    )


def add_scaled_identity(m: SquareMatrix, k) -> SquareMatrix:
    return add_diagonal(m, [k] * m.order)


def strip_diagonal(m: SquareMatrix) -> SquareMatrix:
    z = zero(m.domain)
    return SquareMatrix(
        tuple(tuple(z if i == j else x for j, x in enumerate(r)) for i, r in enumerate(m.rows)),
        m.domain,
    )


def transpose(m: SquareMatrix) -> SquareMatrix:
    return SquareMatrix(tuple(zip(*m.rows)), m.domain)


def linear_combination(coeffs: Sequence, matrices: Sequence[SquareMatrix]) -> SquareMatrix:
    if len(coeffs) != len(matrices) or not matrices:
        raise DimensionError("need one coefficient per matrix and at least one matrix")
    out = scale(matrices[0], coeffs[0])
    for k, m in zip(coeffs[1:], matrices[1:]):
        out = add(out, scale(m, k))
    return out


def permute(m: SquareMatrix, p: PermutationMatrix) -> SquareMatrix:
    """``P^T M P`` computed by reindexing: entry ``(a, b)`` is ``M[q[a]][q[b]]``, ``q = p^-1``."""
    if p.order != m.order:
        raise DimensionError(f"permutation of order {p.order} on matrix of order {m.order}")
    q = p.inverse().permutation
    return SquareMatrix(tuple(tuple(m.rows[q[a]][q[b]] for b in range(m.order)) for a in range(m.order)), m.domain)


def matmul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    _check_pair(a, b)
    cols = list(zip(*b.rows))
    z = zero(a.domain)
    return SquareMatrix(
        tuple(tuple(sum((x * y for x, y in zip(r, c)), z) for c in cols) for r in a.rows),
        a.domain,
    )


def inverse(m: SquareMatrix) -> SquareMatrix:
    """Exact Gauss-Jordan inverse for rationals, LAPACK for floats."""
    if not m.is_rational:
        try:
            inv = np.linalg.inv(m.to_numpy())
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError(str(exc)) from None
        return SquareMatrix.from_rows(inv.tolist(), FLOAT)
    n = m.order
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if aug[piv][col] == 0:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return SquareMatrix(tuple(tuple(r[n:]) for r in aug), RATIONAL)


def solve_exact(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of a consistent ``m x n`` rational system (``m >= n``).

    Partial pivoting by largest magnitude keeps intermediate sizes down.
    Raises :class:`SingularMatrixError` when the rank is below ``n`` and
    ``ValueError`` when the system is inconsistent.
    """
    rows = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(a, b)]
    m = len(rows)
    n = len(rows[0]) - 1 if rows else 0
    for col in range(n):
        piv = max(range(col, m), key=lambda r: abs(rows[r][col]), default=None)
        if piv is None or rows[piv][col] == 0:
            raise SingularMatrixError(f"rank deficient at column {col}")
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(m):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    for r in range(n, m):
        if rows[r][n] != 0:
            raise ValueError("inconsistent system")
    return [rows[i][n] for i in range(n)]


# -- theorem-level constructions ---------------------------------------------


def symmetric_antisymmetric_parts(c: SquareMatrix) -> tuple[SquareMatrix, SquareMatrix]:
    """Return ``(B, A)`` with ``B = (C + C^T)/2`` and ``A = (C - C^T)/2``."""
    t = transpose(c)
    half = Fraction(1, 2) if c.is_rational else 0.5
    return scale(add(c, t), half), scale(subtract(c, t), half)


def hadamard_with_transpose(a: SquareMatrix) -> SquareMatrix:
    return hadamard(a, transpose(a))


def gram_product(a: Sequence[Sequence], domain: str | None = None) -> SquareMatrix:
    """``A A^T`` for a rectangular ``r x c`` matrix given as nested rows."""
    rows = [list(r) for r in a]
    if not rows or not rows[0]:
        raise DimensionError("need at least one row and one column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionError("ragged rectangular matrix")
    if domain is None:
        domain = infer_domain(x for r in rows for x in r)
    rows = [[coerce(x, domain) for x in r] for r in rows]
    z = zero(domain)
    return SquareMatrix(
        tuple(tuple(sum((x * y for x, y in zip(r, s)), z) for s in rows) for r in rows),
        domain,
    )


def norm_1(m: SquareMatrix):
    """Maximum absolute column sum."""
    return max(sum((abs(x) for x in c), zero(m.domain)) for c in zip(*m.rows))


def norm_inf(m: SquareMatrix):
    """Maximum absolute row sum."""
    return max(sum((abs(x) for x in r), zero(m.domain)) for r in m.rows)


@dataclass(frozen=True)
class Premagic2x2Report:
    offdiag_equal: bool
    t: object
    det: object
    identity_a_holds: bool
    identity_b_holds: bool
    inverse: SquareMatrix | None


def premagic_2x2_report(m: SquareMatrix) -> Premagic2x2Report:
    """Closed-form facts about an order-2 premagic matrix ``[[a, b], [c, d]]``.

    ``identity_b`` uses ``e1*e2 + det == c*(a + d) + 2*a*d``, where ``e1, e2``
    are the (common) row/column sums.
    """
    if m.order != 2:
        raise DimensionError("order-2 matrix required")
    if not is_premagic(m):
        raise NotPremagicError("premagic_2x2_report needs a premagic matrix")
    (a, b), (c, d) = m.rows
    offdiag_equal = b == c if m.is_rational else abs(b - c) <= DEFAULT_REL_TOL * float(norm_inf(m))
    e1, e2 = a + b, b + d
    t = a + 2 * b + d
    det = a * d - b * b
    lhs_a, rhs_a = t + det, -b * b + 2 * b + (a + d + a * d)
    lhs_b, rhs_b = e1 * e2 + det, c * (a + d) + 2 * a * d
    if m.is_rational:
        ok_a, ok_b = lhs_a == rhs_a, lhs_b == rhs_b
    else:
        scale_ = 1e-9 * max(1.0, abs(lhs_a), abs(lhs_b))
        ok_a, ok_b = abs(lhs_a - rhs_a) <= scale_, abs(lhs_b - rhs_b) <= scale_
    inv = None
    if det != 0:
        k = Fraction(1) / det if m.is_rational else 1.0 / det
        inv = scale(SquareMatrix(((d, -b), (-b, a)), m.domain), k)
    return Premagic2x2Report(offdiag_equal, t, det, ok_a, ok_b, inv)


# -- generators ----------------------------------------------------------------


def random_permutation(n: int, rng: random.Random) -> PermutationMatrix:
    p = list(range(n))
    rng.shuffle(p)
    return PermutationMatrix(tuple(p))


def random_premagic(order: int, seed: int, domain: str = RATIONAL, terms: int | None = None,
                    max_weight: int = 9) -> SquareMatrix:
    """Non-negative premagic matrix built from random permutation matrices.

    Each permutation matrix has unit row and column sums, so any non-negative
    combination of them is premagic.  The result is generally asymmetric.
    Rational weights are integers in ``[0, max_weight]``; float weights are
    uniform in ``[0, max_weight)``.
    """
    if order < 1:
        raise DimensionError("order must be >= 1")
    rng = random.Random(seed)
    terms = order + 1 if terms is None else terms
    acc = [[0] * order for _ in range(order)]
    for _ in range(terms):
        p = random_permutation(order, rng).permutation
        w = rng.randint(0, max_weight) if domain == RATIONAL else rng.uniform(0, max_weight)
        for i in range(order):
            acc[i][p[i]] += w
    return SquareMatrix.from_rows(acc, domain)
