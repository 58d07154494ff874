"""Concrete matrices where stated premagic facts stop holding.

1. The entrywise product of two premagic matrices need not be premagic.
2. A non-negative premagic matrix can be defective (no full eigenvector basis).
3. Norm equality fails for signed premagic matrices.
"""

import numpy as np

from idealflow import spectral
from idealflow.formats import format_matrix
from idealflow.matrix import SquareMatrix, hadamard, is_premagic, norm_1, norm_inf, row_sums, col_sums

R = SquareMatrix.from_rows


def main():
    a = R([[0, 1, 1], [0, 0, 1], [2, 0, 0]])
    b = R([[0, 2, 0], [0, 0, 2], [2, 0, 0]])
    h = hadamard(a, b)
    print("hadamard of two premagic matrices:")
    print(format_matrix(h), end="")
    print(f"  premagic inputs: {is_premagic(a, 0)}, {is_premagic(b, 0)}")
    print(f"  row sums {tuple(map(str, row_sums(h)))}, column sums {tuple(map(str, col_sums(h)))}\n")

    d = R([[3, 3, 0], [1, 1, 4], [2, 2, 2]])
    rank, sv = spectral.eigenvector_rank(d)
    print("defective non-negative premagic matrix:")
    print(format_matrix(d), end="")
    print(f"  premagic: {is_premagic(d, 0)}, eigenvalues {np.round(np.linalg.eigvals(d.to_numpy()).real, 6) + 0.0}")
    print(f"  eigenvector matrix rank {rank} of 3, singular values {sv}\n")

    s = R([[5, -1, 0], [-2, 0, 1], [1, 0, -2]])
    print("signed premagic matrix:")
    print(format_matrix(s), end="")
    print(f"  premagic: {is_premagic(s, 0)}, norm_1 = {norm_1(s)}, norm_inf = {norm_inf(s)}")


if __name__ == "__main__":
    main()
