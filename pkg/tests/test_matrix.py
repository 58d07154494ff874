from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idealflow import matrix as mx
from idealflow.errors import DimensionError, DomainError, NotPremagicError, SingularMatrixError
from idealflow.matrix import PermutationMatrix, SquareMatrix

from conftest import premagic_matrices, square_matrices, symmetric_matrices

R = SquareMatrix.from_rows
F = Fraction


# -- construction ------------------------------------------------------------


def test_rejects_non_square():
    with pytest.raises(DimensionError):
        R([[1, 2], [3]])
    with pytest.raises(DimensionError):
        R([])


def test_domain_inference_and_no_mixing():
    assert R([[1, 2], [3, 4]]).domain == "rational"
    assert R([[1.0, 2], [3, 4]]).domain == "float"
    assert R([[F(1, 2), 0], [0, 1]]).domain == "rational"
    with pytest.raises(DomainError):
        R([[F(1, 2), 0.5], [0, 1]])
    with pytest.raises(DomainError):
        mx.add(R([[1]]), R([[1.0]]))
    with pytest.raises(DomainError):
        mx.scale(R([[1]]), 0.5)


def test_rationals_stay_reduced():
    m = R([[F(2, 4), F(3, -6)], [0, 1]])
    assert m[0, 0].numerator == 1 and m[0, 0].denominator == 2
    assert m[0, 1].denominator > 0


def test_entry_access_bounds():
    m = R([[1, 2], [3, 4]])
    assert m[1, 0] == 3
    with pytest.raises(IndexError):
        m[2, 0]
    with pytest.raises(IndexError):
        m[0, -1]


# -- sums and predicates -----------------------------------------------------


@pytest.mark.parametrize("rows, rs, cs", [
    ([[1, 2], [3, 4]], (3, 7), (4, 6)),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], (1, 1, 1), (1, 1, 1)),
    ([[0, 1, 1], [0, 0, 1], [2, 0, 0]], (2, 1, 2), (2, 1, 2)),
])
def test_sums(rows, rs, cs):
    m = R(rows)
    assert tuple(mx.row_sums(m)) == rs and mx.row_sums(m).orientation == "row"
    assert tuple(mx.col_sums(m)) == cs and mx.col_sums(m).orientation == "column"


@given(symmetric_matrices())
def test_col_sums_equal_row_sums_for_symmetric(m):
    assert tuple(mx.col_sums(m)) == tuple(mx.row_sums(m))


@pytest.mark.parametrize("rows, expected", [
    ([[1, 2], [2, 3]], True),
    ([[1, 2], [3, 4]], False),
    ([[0, 1, 1], [0, 0, 1], [2, 0, 0]], True),
])
def test_is_premagic(rows, expected):
    assert mx.is_premagic(R(rows), 0) is expected


def test_is_premagic_tolerance_rules():
    with pytest.raises(DomainError):
        mx.is_premagic(R([[1]]), 1e-9)
    m = R([[0.0, 1.0], [1.0 + 1e-12, 0.0]])
    assert mx.is_premagic(m)  # default 1e-9 * norm_inf
    assert not mx.is_premagic(m, 0.0)
    assert mx.is_premagic(R([[0.0, 1.0], [1.1, 0.0]]), 0.2)


@pytest.mark.parametrize("rows, expected", [
    ([[0, 1, 1], [0, 0, 1], [2, 0, 0]], (0, 0, 0)),
    ([[1, 2], [3, 4]], (-1, 1)),
])
def test_kernel_residual(rows, expected):
    assert tuple(mx.antisymmetric_kernel_residual(R(rows))) == expected


# -- closure operations --------------------------------------------------------


def test_basic_operations():
    i2 = SquareMatrix.identity(2)
    assert mx.add(i2, i2) == mx.scale(i2, 2)
    assert mx.add(R([[0, 1], [1, 0]]), R([[2, 0], [0, 2]])) == R([[2, 1], [1, 2]])
    assert mx.strip_diagonal(R([[5, 1], [1, 7]])) == R([[0, 1], [1, 0]])
    assert mx.shift(R([[0, 1], [1, 0]]), 2) == R([[2, 3], [3, 2]])
    with pytest.raises(DimensionError):
        mx.add(i2, SquareMatrix.identity(3))


@given(square_matrices())
def test_hadamard_identity_is_ones(m):
    assert mx.hadamard(m, SquareMatrix.ones(m.order)) == m


def test_permute_swap_example():
    m = R([[0, 1, 1], [0, 0, 1], [2, 0, 0]])
    assert mx.permute(m, PermutationMatrix.swap(3, 0, 1)) == R([[0, 0, 1], [1, 0, 1], [0, 2, 0]])
    assert mx.permute(m, PermutationMatrix((0, 1, 2))) == m


@given(square_matrices(), st.data())
def test_permute_matches_dense_product(m, data):
    p = PermutationMatrix(tuple(data.draw(st.permutations(range(m.order)))))
    pd = p.dense()
    assert mx.permute(m, p) == mx.matmul(mx.matmul(mx.transpose(pd), m), pd)


def test_permutation_must_be_bijection():
    with pytest.raises(ValueError):
        PermutationMatrix((0, 0, 1))
    d = PermutationMatrix((2, 0, 1)).dense()
    assert all(sum(r) == 1 for r in d.rows) and all(sum(c) == 1 for c in zip(*d.rows))


@given(premagic_matrices(), premagic_matrices(), st.fractions(-5, 5, max_denominator=7))
def test_closure_properties(m1, m2, k):
    if m1.order != m2.order:
        m2 = mx.random_premagic(m1.order, seed=m2.order)
    results = [
        mx.add(m1, m2), mx.subtract(m1, m2), mx.scale(m1, k), mx.hadamard(m1, mx.scale(SquareMatrix.ones(m1.order), k)),
        mx.transpose(m1), mx.shift(m1, k), mx.shift(m1, -k), mx.add_diagonal(m1, [k] * m1.order),
        mx.strip_diagonal(m1), mx.add_scaled_identity(m1, k), mx.linear_combination([k, -k, 3], [m1, m2, m1]),
    ]
    for r in results:
        assert mx.is_premagic(r, 0)


@given(square_matrices(), square_matrices())
def test_algebraic_identities(a, b):
    if a.order != b.order:
        return
    c = mx.transpose(a)
    assert mx.add(a, b) == mx.add(b, a)
    assert mx.hadamard(a, b) == mx.hadamard(b, a)
    assert mx.add(mx.add(a, b), c) == mx.add(a, mx.add(b, c))
    assert mx.hadamard(mx.hadamard(a, b), c) == mx.hadamard(a, mx.hadamard(b, c))
    assert mx.hadamard(mx.add(a, b), c) == mx.add(mx.hadamard(a, c), mx.hadamard(b, c))
    assert mx.hadamard(mx.subtract(a, b), c) == mx.subtract(mx.hadamard(a, c), mx.hadamard(b, c))


def test_hadamard_of_two_premagic_is_not_premagic_in_general():
    # closure only holds for the Hadamard product with a constant matrix
    a = R([[0, 1, 1], [0, 0, 1], [2, 0, 0]])
    b = R([[0, 2, 0], [0, 0, 2], [2, 0, 0]])
    assert mx.is_premagic(a) and mx.is_premagic(b)
    assert not mx.is_premagic(mx.hadamard(a, b))


# -- theorem-level constructions ---------------------------------------------


def test_symmetric_antisymmetric_parts_examples():
    b, a = mx.symmetric_antisymmetric_parts(R([[0, 2], [0, 0]]))
    assert b == R([[0, 1], [1, 0]]) and a == R([[0, 1], [-1, 0]])
    s = R([[1, 2], [2, 5]])
    assert mx.symmetric_antisymmetric_parts(s) == (s, SquareMatrix.zeros(2))


@given(square_matrices())
def test_decomposition_recombines(c):
    b, a = mx.symmetric_antisymmetric_parts(c)
    assert mx.add(b, a) == c
    assert b.is_symmetric() and mx.is_premagic(b, 0)
    assert mx.transpose(a) == mx.scale(a, -1)


def test_hadamard_with_transpose_example():
    assert mx.hadamard_with_transpose(R([[1, 2], [3, 4]])) == R([[1, 6], [6, 16]])
    assert mx.hadamard_with_transpose(SquareMatrix.diagonal([2, -3])) == SquareMatrix.diagonal([4, 9])


@pytest.mark.parametrize("a, expected", [
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
    ([[1, 2]], [[5]]),
    ([[1, 1], [0, 1]], [[2, 1], [1, 1]]),
])
def test_gram_product(a, expected):
    assert mx.gram_product(a) == R(expected)


def test_norms():
    m = R([[0, 1, 1], [0, 0, 1], [2, 0, 0]])
    assert mx.norm_1(m) == mx.norm_inf(m) == 2
    assert mx.norm_1(SquareMatrix.identity(3)) == 1
    assert mx.norm_1(R([[1, 2], [3, 4]])) == 6 and mx.norm_inf(R([[1, 2], [3, 4]])) == 7


def test_signed_premagic_norm_counterexample():
    # P - 2Q (3-cycle minus twice a swap) with a free diagonal entry
    m = R([[5, -1, 0], [-2, 0, 1], [1, 0, -2]])
    assert mx.is_premagic(m, 0)
    assert (mx.norm_1(m), mx.norm_inf(m)) == (8, 6)
    # the antisymmetric [[0, -1], [1, 0]] is not premagic at all
    assert not mx.is_premagic(R([[0, -1], [1, 0]]), 0)


def test_2x2_report_worked_example():
    rep = mx.premagic_2x2_report(R([[1, 2], [2, 3]]))
    assert rep.offdiag_equal
    assert rep.t == 8 and rep.det == -1
    assert rep.identity_a_holds and rep.identity_b_holds
    assert rep.inverse == R([[-3, 2], [2, -1]])
    assert mx.is_premagic(rep.inverse)


def test_2x2_report_uncorrected_second_identity_fails():
    # e1*e2 + det = 14 here; c + (a + d) + 2ad would give 12
    a, b, c, d = 1, 2, 2, 3
    assert (a + b) * (b + d) + (a * d - b * b) == 14
    assert c + (a + d) + 2 * a * d == 12


def test_2x2_report_singular_and_diagonal():
    assert mx.premagic_2x2_report(R([[1, 1], [1, 1]])).inverse is None
    rep = mx.premagic_2x2_report(R([[4, 0], [0, 7]]))
    assert rep.identity_a_holds and rep.identity_b_holds and rep.det == 28
    with pytest.raises(NotPremagicError):
        mx.premagic_2x2_report(R([[1, 2], [3, 4]]))


@given(st.fractions(-9, 9, max_denominator=5), st.fractions(-9, 9, max_denominator=5),
       st.fractions(-9, 9, max_denominator=5))
def test_2x2_report_property(a, b, d):
    rep = mx.premagic_2x2_report(R([[a, b], [b, d]]))
    assert rep.offdiag_equal and rep.identity_a_holds and rep.identity_b_holds
    if rep.det != 0:
        assert mx.is_premagic(rep.inverse, 0)
        assert mx.matmul(R([[a, b], [b, d]]), rep.inverse) == SquareMatrix.identity(2)


def test_inverse_exact_and_singular():
    m = R([[2, 1], [1, 1]])
    assert mx.matmul(m, mx.inverse(m)) == SquareMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        mx.inverse(R([[1, 2], [2, 4]]))


def test_solve_exact():
    x = mx.solve_exact([[2, 1], [1, 3], [3, 4]], [3, 5, 8])
    assert x == [F(4, 5), F(7, 5)]
    with pytest.raises(ValueError):
        mx.solve_exact([[1, 0], [0, 1], [1, 1]], [1, 1, 3])


# -- generator -----------------------------------------------------------------


def test_random_premagic_generator():
    assert mx.random_premagic(1, seed=3).order == 1
    assert mx.random_premagic(5, seed=11) == mx.random_premagic(5, seed=11)
    mats = [mx.random_premagic(n, seed=s) for n in range(1, 7) for s in range(20)]
    assert all(mx.is_premagic(m, 0) and m.is_nonnegative() for m in mats)
    assert any(not m.is_symmetric() for m in mats)
    f = mx.random_premagic(4, seed=2, domain="float")
    assert f.domain == "float" and mx.is_premagic(f)
