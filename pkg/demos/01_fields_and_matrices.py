"""Fields and exact matrices: the arithmetic layer everything sits on.

Builds a few fields, shows element arithmetic, Frobenius powers over a
designated subfield, subfield embeddings, and the core matrix verbs
(rank, kernel, Kronecker product, column restriction).
"""

import random

from mrgrid import (
    FMatrix,
    embed,
    frobenius,
    kron,
    make_extension,
    make_field,
    rank,
    restrict_cols,
    right_kernel,
)


def main():
    print("== prime and extension fields ==")
    gf5 = make_field(5)
    gf8 = make_field(2, 3)
    print(f"{gf5}: 2 + 4 = {(gf5.element(2) + gf5.element(4)).code}, "
          f"1/2 = {(gf5.one() / gf5.element(2)).code}")
    x = gf8.gen()
    print(f"{gf8} with modulus {list(gf8.modulus)} (x^3 + x + 1)")
    print(f"  x * x^2 = {list((x * x * x).coeffs)}  (reduces to x + 1)")

    print("\n== Frobenius over a designated subfield ==")
    gf4 = make_field(2, 2, subfield_degree=1)
    y = gf4.gen()
    print(f"{gf4}: x^2 = {list(frobenius(y, 1).coeffs)}, "
          f"1^2 = {frobenius(gf4.one(), 1).code} (subfield is fixed)")

    print("\n== embedding GF(8) into GF(8^2) ==")
    big = make_extension(gf8, 2)
    rng = random.Random(0)
    a, b = gf8.random_element(rng), gf8.random_element(rng)
    lhs = embed(a * b, big)
    rhs = embed(a, big) * embed(b, big)
    print(f"embed(a*b) == embed(a)*embed(b): {lhs == rhs}")

    print("\n== exact linear algebra ==")
    M = FMatrix(gf5, [[1, 2, 3], [2, 4, 1], [3, 6, 4]])
    print(f"rank of a 3x3 with a repeated-column pattern: {rank(M)}")
    ker = right_kernel(M)
    print(f"kernel basis rows: {ker.rows}; M @ ker^T is zero: "
          f"{(M @ ker.transpose()).is_zero()}")
    A = FMatrix(gf5, [[1, 1]])
    B = FMatrix(gf5, [[1, 0], [0, 1]])
    print(f"kron 1x2 with I2 has shape "
          f"{kron(A, B).rows}x{kron(A, B).cols}")
    print(f"first two columns of M: {restrict_cols(M, [0, 1]).code_rows}")


if __name__ == "__main__":
    main()
