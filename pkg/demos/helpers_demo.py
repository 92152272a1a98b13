"""Tiny shared helper for the demo scripts."""

from mrgrid import FMatrix, LinearCode, rank


def random_code_over(field, n, k, rng) -> LinearCode:
    while True:
        M = FMatrix(field, [[rng.randrange(field.order) for _ in range(n)]
                            for _ in range(k)])
        if rank(M) == k:
            return LinearCode(M)
