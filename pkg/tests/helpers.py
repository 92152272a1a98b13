"""Shared test utilities: random code generation and small oracles."""

import itertools

from mrgrid import FMatrix, LinearCode, rank, restrict_cols, right_kernel


def random_full_rank(field, rows, cols, rng):
    while True:
        M = FMatrix(field, [[rng.randrange(field.order) for _ in range(cols)]
                            for _ in range(rows)])
        if rank(M) == rows:
            return M


def random_code(field, n, k, rng) -> LinearCode:
    return LinearCode(random_full_rank(field, k, n, rng))


def shorten_oracle(code, I):
    """Shortening straight from the definition: codewords vanishing on I,
    restricted to the kept positions.  Independent of the parity-check
    route used by the implementation."""
    keep = [j for j in range(code.n) if j not in set(I)]
    if not I:
        return code.gen
    sub = restrict_cols(code.gen, sorted(set(I)))
    left = right_kernel(sub.transpose())     # messages encoding to zero on I
    vanishing = left @ code.gen
    return restrict_cols(vanishing, keep)


def brute_force_regular(topo, pattern):
    """Double-loop regularity oracle: enumerate every row subset and
    every column subset directly, with no pruning, and count erased
    cells in each subgrid."""
    row_words = [0] * (topo.m + 1)
    for r, c in pattern.cells:
        row_words[r] |= 1 << c
    for u in range(topo.a, topo.m + 1):
        for rows in itertools.combinations(range(1, topo.m + 1), u):
            for v in range(topo.b, topo.n + 1):
                for cols in itertools.combinations(range(1, topo.n + 1), v):
                    vmask = 0
                    for c in cols:
                        vmask |= 1 << c
                    hit = 0
                    for r in rows:
                        hit += (row_words[r] & vmask).bit_count()
                    if hit > v * topo.a + u * topo.b - topo.a * topo.b:
                        return False
    return True


def random_pattern(m, n, size, rng):
    from mrgrid import ErasurePattern
    cells = rng.sample([(r, c) for r in range(1, m + 1)
                        for c in range(1, n + 1)], size)
    return ErasurePattern.from_cells(m, n, cells)
