"""Uncorrectable patterns propagate to larger topologies.

Two lifting moves take the 5x5 pattern to bigger grids:

* extend: the same cells on a larger grid with the same (a, b); the
  larger code shortens back onto the original grid, so the pattern is
  still uncorrectable.  Padding fills the appended rows/columns up to
  the maximal pattern size while preserving regularity.
* puncture: append fully erased rows/columns and raise (a, b) by the
  same amounts; puncturing the appended positions maps back down.

Classification of the lifted patterns finds no certificate, as expected
(Monte Carlo: a certificate could in principle hide outside the sampled
family, but none exists by the shortening/puncturing arguments).
"""

from mrgrid import (
    GridTopology,
    classify_patterns,
    counterexample_pattern,
    is_regular,
    lift_extend,
    lift_puncture,
    make_field,
)

BASE = GridTopology(5, 5, 2, 2, 0)


def main():
    pattern = counterexample_pattern()
    field = make_field(2, 13)

    extended = lift_extend(BASE, pattern, 1, 1)
    t22 = GridTopology(6, 6, 2, 2, 0)
    print(f"extend to {t22}: {len(extended)} cells, "
          f"regular={is_regular(t22, extended)}")
    padded = lift_extend(BASE, pattern, 1, 1, pad_to_maximal=True)
    print(f"padded to maximal size: {len(padded)} cells")
    print(padded.ascii_grid())

    punctured = lift_puncture(BASE, pattern, 1, 1)
    t33 = GridTopology(6, 6, 3, 3, 0)
    print(f"\npuncture-lift to {t33}: {len(punctured)} cells, "
          f"regular={is_regular(t33, punctured)}")
    print(punctured.ascii_grid())

    print("\nclassifying both lifts (200 trials each)...")
    (s1, t1), = classify_patterns(t22, [extended], field, trials=200, seed=0)
    (s2, t2), = classify_patterns(t33, [punctured], field, trials=200, seed=0)
    print(f"  extend lift:   {s1} after {t1} trials")
    print(f"  puncture lift: {s2} after {t2} trials")


if __name__ == "__main__":
    main()
