"""Adding global parities without losing recoverability.

Start from a code that protects each grid row independently (one parity
per row, the b = 1 case with no column constraints) and add h = 1 global
parity by re-encoding the message through a Gabidulin code over a large
extension field.  The composed code corrects every maximal base pattern
plus any h extra erasures, and its restriction to the complement of any
maximal base pattern is an MDS code of redundancy h.
"""

import itertools

from mrgrid import (
    GridTopology,
    add_global_redundancy,
    corrects,
    emax_global,
    enumerate_regular_max,
    is_mds,
    make_field,
    pmds_block_code,
    puncture,
)


def main():
    field = make_field(2, 3)
    topo0 = GridTopology(2, 4, 0, 1, 0)
    topo1 = GridTopology(2, 4, 0, 1, 1)

    base = pmds_block_code(2, 4, 1, field)
    print(f"base code: {base!r} (two independent [4,3] MDS rows)")

    emax0 = enumerate_regular_max(topo0)
    print(f"maximal base patterns (one erasure per row): {len(emax0)}")

    code = add_global_redundancy(base, topo1.h)
    print(f"after one global parity: {code!r}")
    print(f"dimension m(n-b) - h = {code.k}")

    targets = emax_global(emax0, topo1)
    good = sum(corrects(code, p.to_indices(), cross_check=False)
               for p in targets)
    print(f"corrects {good}/{len(targets)} maximal patterns "
          f"(base pattern plus one extra cell)")

    print("\nrestrictions to complements of base patterns:")
    shapes = set()
    for p in emax0:
        r = puncture(code, p.to_indices())
        shapes.add((r.n, r.k, is_mds(r)))
    print(f"  all are {sorted(shapes)} -> [6,5] MDS, distance 2")

    beyond = [E for E in itertools.combinations(range(8), 4)
              if corrects(code, E, cross_check=False)]
    print(f"\nno pattern of size 4 is corrected "
          f"(dimension leaves h = 1 spare): {len(beyond) == 0}")


if __name__ == "__main__":
    main()
