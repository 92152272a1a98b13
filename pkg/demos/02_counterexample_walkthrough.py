"""The 16-cell pattern that regularity does not save.

On the 5x5 grid with two parity constraints per row and per column,
regular patterns (those meeting the subgrid counting bound) are usually
correctable, and one might hope the bound characterizes correctability.
This walkthrough builds the known 16-cell regular pattern for which no
code of the topology works: for any MDS column/row pair we construct a
nonzero array supported exactly on the pattern whose rows and columns
are all codewords, so two different codewords agree on every non-erased
cell and decoding is ambiguous.
"""

from mrgrid import (
    GridTopology,
    counterexample_pattern,
    erasure_decode,
    is_regular,
    kernel_codeword,
    product_code,
    make_field,
    sample_mds_pair,
)
from mrgrid.errors import AmbiguousErasure

TOPO = GridTopology(5, 5, 2, 2, 0)


def show(grid):
    for row in grid:
        out = []
        for v in row:
            if v is None:
                out.append("  ?  ")   # erased cell, value not yet chosen
            elif v == 0:
                out.append("  .  ")   # intact cell, must stay zero
            else:
                out.append(f"{v:^5}")
        print("   ", "  ".join(out))


def main():
    pattern = counterexample_pattern()
    print("the erasure pattern (.: intact, *: erased):")
    print(pattern.ascii_grid())
    print(f"cells: {len(pattern)}  regular: {is_regular(TOPO, pattern)}")

    field = make_field(13)
    col, row = sample_mds_pair(TOPO, field, seed=0, trial=0)
    print(f"\nrandom [5,3] MDS pair over {field}; building the kernel "
          f"array step by step:")
    kernel, steps = kernel_codeword(col, row, trace=True)
    for label, grid in steps:
        print(f"\n step ({label}):")
        show(grid)

    print("\nfinal array (element codes):")
    for r in kernel.code_rows:
        print("   ", "  ".join(f"{v:^5}" for v in r))

    print("\nevery row is a row-code codeword and every column a "
          "column-code codeword; the support is exactly the pattern.")

    prod = product_code(col, row)
    erased = pattern.to_indices()
    received = [None if i in erased else field.zero() for i in range(25)]
    try:
        erasure_decode(prod, received, erased)
    except AmbiguousErasure as err:
        w1, w2 = err.witnesses
        agree = sum(1 for a, b in zip(w1, w2) if a == b)
        print(f"\ndecoding the all-zero word with this pattern erased is "
              f"ambiguous:\n  two completions agree on {agree} of 25 "
              f"positions (the 9 intact ones) and differ inside the "
              f"pattern.")


if __name__ == "__main__":
    main()
