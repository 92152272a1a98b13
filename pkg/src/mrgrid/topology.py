"""Grid topologies, erasure patterns, and the classification pipeline.

A topology T_{m x n}(a, b, h) constrains codes laid out on an m x n
grid: a parity constraints per column, b per row, and h unconstrained
global parity rows.  The central questions handled here:

* regularity of an erasure pattern (the subgrid counting bound, which
  is necessary for correctability but not sufficient);
* classification of maximal-size regular patterns into correctable
  (exhibiting a certificate code) and uncorrectable ones;
* the explicit 16-cell regular pattern on the 5 x 5 grid with two
  constraints per row and column that no code of the topology corrects,
  together with its orbit of 450 row/column permutations and the
  kernel-codeword construction that proves each of them uncorrectable;
* lifting uncorrectable patterns into larger grids, with or without
  extra per-row/per-column constraints;
* adding h global parities to a maximally recoverable base code via a
  two-stage Gabidulin encoding, and the induced description of the
  maximal correctable patterns;
* the bridge between product-topology codes and tensor-product codes
  through duality.

"Correctable" verdicts are exact (a verified certificate is attached);
"uncorrectable" verdicts are exact only for the kernel-construction
family, otherwise they report that no certificate was found within the
requested number of Monte Carlo trials.  Every randomized operation
takes an explicit seed and is a pure function of its inputs.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionMismatch,
    EnumerationTooLarge,
    FieldMismatch,
    FieldTooSmallForMDS,
    NotMDS,
    PaddingBreaksRegularity,
    TooLargeToEnumerate,
    ZeroGamma,
)
from .gf import FieldElement, FieldSpec, make_extension
from .fmatrix import FMatrix, embed_matrix, kron, rank, restrict_cols, rref, solve_right
from . import codes as codes_mod
from .codes import (
    GridCode,
    LinearCode,
    corrects,
    dual,
    gabidulin,
    grid_code,
    is_mds,
    product_code,
    rs_code,
)

# verdict status labels (also the values written to census CSV files)
CORRECTABLE = "Correctable"
NO_CERTIFICATE_FOUND = "NoCertificateFound"
PROVEN_UNCORRECTABLE = "ProvenUncorrectable"

ENUMERATION_CAP = 10 ** 7
DEFAULT_TRIALS = 20


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridTopology:
    """The tuple (m, n, a, b, h) describing a grid-like topology."""

    m: int
    n: int
    a: int
    b: int
    h: int = 0

    def __post_init__(self):
        if not (self.m > self.a >= 0):
            raise ValueError(f"need m > a >= 0, got m={self.m}, a={self.a}")
        if not (self.n > self.b >= 0):
            raise ValueError(f"need n > b >= 0, got n={self.n}, b={self.b}")
        bound = (self.m - self.a) * (self.n - self.b) - max(
            self.m - self.a, self.n - self.b)
        if not 0 <= self.h <= bound:
            raise ValueError(
                f"need 0 <= h <= (m-a)(n-b)-max(m-a,n-b) = {bound}, got {self.h}")

    @property
    def shape(self):
        return (self.m, self.n)

    @property
    def cells(self) -> int:
        return self.m * self.n

    def key(self):
        return (self.m, self.n, self.a, self.b, self.h)

    def __str__(self):
        return f"{self.m}x{self.n}:{self.a},{self.b},{self.h}"


class ErasurePattern:
    """A set of erased cells of an m x n grid.

    Cells are 1-based (row, column) pairs in displays and JSON, matching
    the usual grid notation; flat 0-based indices (row-major) are used
    when a pattern meets a length m*n code.  Stored as a bitmask, so
    equality, hashing and set arithmetic on large censuses stay cheap.
    """

    __slots__ = ("m", "n", "bits")

    def __init__(self, m: int, n: int, bits: int):
        self.m = m
        self.n = n
        self.bits = bits

    @classmethod
    def from_cells(cls, m: int, n: int, cells) -> "ErasurePattern":
        bits = 0
        for r, c in cells:
            if not (1 <= r <= m and 1 <= c <= n):
                raise ValueError(f"cell ({r},{c}) outside the {m}x{n} grid")
            bits |= 1 << ((r - 1) * n + (c - 1))
        return cls(m, n, bits)

    @property
    def cells(self):
        """Cells as 1-based (row, col) pairs, sorted row-major."""
        n = self.n
        return tuple((i // n + 1, i % n + 1) for i in self._indices())

    def _indices(self):
        bits = self.bits
        out = []
        i = 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return out

    def to_indices(self):
        """Flat 0-based positions, ascending (row-major order)."""
        return tuple(self._indices())

    def complement_indices(self):
        bits = self.bits
        return tuple(i for i in range(self.m * self.n) if not (bits >> i) & 1)

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, cell):
        r, c = cell
        if not (1 <= r <= self.m and 1 <= c <= self.n):
            return False
        return bool((self.bits >> ((r - 1) * self.n + (c - 1))) & 1)

    def __eq__(self, other):
        return (isinstance(other, ErasurePattern) and self.m == other.m
                and self.n == other.n and self.bits == other.bits)

    def __hash__(self):
        return hash((self.m, self.n, self.bits))

    def __repr__(self):
        return f"ErasurePattern({self.m}x{self.n}, {len(self)} cells)"

    def __reduce__(self):
        return (ErasurePattern, (self.m, self.n, self.bits))

    def ascii_grid(self) -> str:
        rows = []
        for r in range(self.m):
            rows.append("".join(
                "*" if (self.bits >> (r * self.n + c)) & 1 else "."
                for c in range(self.n)))
        return "\n".join(rows)

    def to_dict(self):
        return {"m": self.m, "n": self.n, "cells": [list(c) for c in self.cells]}

    @classmethod
    def from_dict(cls, data) -> "ErasurePattern":
        return cls.from_cells(data["m"], data["n"],
                              [tuple(c) for c in data["cells"]])


@dataclass(frozen=True)
class KernelCertificate:
    """Proof object for an uncorrectable pattern: a nonzero array whose
    rows/columns are codewords of an MDS pair and whose support is the
    pattern."""

    kernel: FMatrix
    col_code: LinearCode
    row_code: LinearCode
    row_perm: tuple
    col_perm: tuple


@dataclass(frozen=True)
class Verdict:
    """Outcome of classifying one pattern.

    Correctable verdicts carry a verified GridCode certificate;
    ProvenUncorrectable ones carry a KernelCertificate when the kernel
    construction applies (None when the pattern is simply not regular).
    """

    status: str
    certificate: object = None
    trials_used: int = 0
    reason: str = ""


# ---------------------------------------------------------------------------
# regularity
# ---------------------------------------------------------------------------

def max_pattern_size(topo: GridTopology) -> int:
    """The counting bound at the full grid: n*a + m*b - a*b."""
    return topo.n * topo.a + topo.m * topo.b - topo.a * topo.b


@functools.lru_cache(maxsize=None)
def _regularity_tables(m, n, a, b):
    """Per-shape constraint data.

    Constraints with u = a or v = b are vacuous (the bound then meets or
    exceeds u*v), so only u > a, v > b contribute.  Returns
    (groups, flat, col_masks) where groups drive the early-exit path of
    is_regular and flat is the plain list used by bulk enumeration.
    """
    col_masks = []
    for c in range(n):
        mask = 0
        for r in range(m):
            mask |= 1 << (r * n + c)
        col_masks.append(mask)
    row_masks = [((1 << n) - 1) << (r * n) for r in range(m)]

    groups = []
    flat = []
    for u in range(a + 1, m + 1):
        for v in range(b + 1, n + 1):
            threshold = v * a + u * b - a * b
            if threshold >= u * v:
                continue
            masks = []
            for rows_sel in itertools.combinations(range(m), u):
                rmask = 0
                for r in rows_sel:
                    rmask |= row_masks[r]
                for cols_sel in itertools.combinations(range(n), v):
                    cmask = 0
                    for c in cols_sel:
                        cmask |= col_masks[c]
                    masks.append(rmask & cmask)
            groups.append((u, v, threshold, tuple(masks)))
            flat.extend((mk, threshold) for mk in masks)
    flat.sort(key=lambda t: (t[1], t[0].bit_count()))
    return tuple(groups), tuple(flat), tuple(col_masks)


def is_regular(topo: GridTopology, pattern: ErasurePattern) -> bool:
    """The subgrid counting bound: every u x v subgrid with u > a rows
    and v > b columns contains at most v*a + u*b - a*b erased cells.

    Subgrid enumeration is skipped for (u, v) classes that the densest
    u rows and v columns cannot violate.
    """
    if (pattern.m, pattern.n) != topo.shape:
        raise ValueError("pattern shape does not match the topology")
    groups, _, col_masks = _regularity_tables(topo.m, topo.n, topo.a, topo.b)
    bits = pattern.bits
    n = topo.n
    row_counts = sorted(
        (((bits >> (r * n)) & ((1 << n) - 1)).bit_count() for r in range(topo.m)),
        reverse=True)
    col_counts = sorted(((bits & cm).bit_count() for cm in col_masks),
                        reverse=True)
    for u, v, threshold, masks in groups:
        if min(sum(row_counts[:u]), sum(col_counts[:v])) <= threshold:
            continue
        for mask in masks:
            if (bits & mask).bit_count() > threshold:
                return False
    return True


def _iter_regular_max_bits(topo: GridTopology):
    """All maximal-size regular patterns as bitmasks, ascending."""
    mn = topo.cells
    size = max_pattern_size(topo)
    _, flat, _ = _regularity_tables(topo.m, topo.n, topo.a, topo.b)
    full = (1 << mn) - 1
    comp_size = mn - size
    out = []
    for comp in itertools.combinations(range(mn), comp_size):
        bits = full
        for i in comp:
            bits ^= 1 << i
        for mask, threshold in flat:
            if (bits & mask).bit_count() > threshold:
                break
        else:
            out.append(bits)
    out.sort()
    return out


def enumerate_regular_max(topo: GridTopology,
                          cap: int = ENUMERATION_CAP):
    """All regular patterns of exactly max_pattern_size cells, in a
    deterministic order.  Patterns of smaller size that happen to be
    maximal correctable are out of scope and reported separately by the
    census pipeline."""
    size = max_pattern_size(topo)
    if math.comb(topo.cells, size) > cap:
        raise EnumerationTooLarge(
            f"C({topo.cells},{size}) exceeds the cap of {cap}")
    m, n = topo.shape
    return [ErasurePattern(m, n, bits) for bits in _iter_regular_max_bits(topo)]


# ---------------------------------------------------------------------------
# the 5x5 pattern family
# ---------------------------------------------------------------------------

# row -> erased columns of the base 16-cell pattern (1-based)
_BASE_5X5_ROWS = {1: (2, 3, 4, 5), 2: (1, 2, 3), 3: (1, 2, 3),
                  4: (1, 4, 5), 5: (1, 4, 5)}

_IDENTITY5 = (1, 2, 3, 4, 5)


def _check_perm(perm):
    perm = tuple(perm)
    if sorted(perm) != [1, 2, 3, 4, 5]:
        raise ValueError(f"{perm} is not a permutation of 1..5")
    return perm


def counterexample_pattern(row_perm=_IDENTITY5,
                           col_perm=_IDENTITY5) -> ErasurePattern:
    """The 16-cell regular-but-uncorrectable pattern of the 5 x 5 grid
    with two constraints per row and column, rows and columns relabeled
    by the given permutations (canonical position i moves to perm[i-1])."""
    row_perm = _check_perm(row_perm)
    col_perm = _check_perm(col_perm)
    cells = [(row_perm[r - 1], col_perm[c - 1])
             for r, cols in _BASE_5X5_ROWS.items() for c in cols]
    return ErasurePattern.from_cells(5, 5, cells)


@functools.lru_cache(maxsize=1)
def counterexample_orbit():
    """bits -> (row_perm, col_perm) for the full permutation orbit of
    the base pattern; exactly 450 distinct patterns."""
    orbit = {}
    for rp in itertools.permutations(_IDENTITY5):
        for cp in itertools.permutations(_IDENTITY5):
            bits = counterexample_pattern(rp, cp).bits
            orbit.setdefault(bits, (rp, cp))
    return orbit


def kernel_codeword(col: LinearCode, row: LinearCode,
                    gamma2: Optional[FieldElement] = None,
                    perms=None, trace: bool = False):
    """Construct the nonzero 5 x 5 array supported exactly on the
    (permuted) 16-cell pattern whose rows are codewords of `row` and
    columns codewords of `col`.

    Both codes must be [5,3] MDS.  The array is unique once its anchor
    entry at canonical position (2,1) is fixed; `gamma2` sets that value
    (default: the second coefficient of the column code's weight-3
    codeword, which makes the construction self-normalizing).  With
    `trace=True` also returns the list of (label, partial grid)
    snapshots for steps (a) through (g).
    """
    if (col.n, col.k) != (5, 3) or (row.n, row.k) != (5, 3):
        raise ValueError("both codes must be [5,3]")
    if col.field != row.field:
        raise FieldMismatch("codes over different fields")
    f = col.field
    if not is_mds(col) or not is_mds(row):
        raise NotMDS("kernel construction needs an MDS pair")
    if perms is None:
        row_perm, col_perm = _IDENTITY5, _IDENTITY5
    else:
        row_perm, col_perm = _check_perm(perms[0]), _check_perm(perms[1])

    a_col = _read_through(col, row_perm)
    a_row = _read_through(row, col_perm)
    p_col, (g2, g3) = _weight3_data(a_col)
    p_row, (al2, al3) = _weight3_data(a_row)
    pr11, pr12 = p_row[0]
    pc11, pc12 = p_col[0]
    # MDS guarantees every quantity below is nonzero
    assert all((al2, al3, g2, g3, pr11, pr12, pc11, pc12))

    if gamma2 is None:
        lam = 1
    else:
        g_in = gamma2.code if isinstance(gamma2, FieldElement) else f.element(gamma2).code
        if g_in == 0:
            raise ZeroGamma("anchor value must be nonzero")
        lam = f.div(g_in, g2)

    mul, neg = f.mul, f.neg
    sc = lambda v: mul(lam, v)
    grid = [[0] * 5 for _ in range(5)]
    steps = []

    # (a) anchor the entry at canonical position (2,1)
    grid[1][0] = sc(g2)
    _snap(steps, grid, "a", trace)
    # (b) second row: anchor times the weight-3 row codeword
    grid[1][1] = sc(mul(g2, al2))
    grid[1][2] = sc(mul(g2, al3))
    _snap(steps, grid, "b", trace)
    # (c) second and third columns: multiples of the weight-3 column codeword
    grid[0][1] = sc(al2)
    grid[0][2] = sc(al3)
    grid[2][1] = sc(mul(g3, al2))
    grid[2][2] = sc(mul(g3, al3))
    _snap(steps, grid, "c", trace)
    # (d) first entry of the third row
    grid[2][0] = sc(g3)
    _snap(steps, grid, "d", trace)
    # (e) encode first row and first column systematically
    grid[0][3] = sc(neg(pr11))
    grid[0][4] = sc(neg(pr12))
    grid[3][0] = sc(neg(pc11))
    grid[4][0] = sc(neg(pc12))
    _snap(steps, grid, "e", trace)
    # (f) the parity identities rewrite (e) in closed form; values agree
    _snap(steps, grid, "f", trace)
    # (g) fourth and fifth rows: multiples of the weight-3 systematic row
    grid[3][3] = sc(mul(neg(pc11), pr11))
    grid[3][4] = sc(mul(neg(pc11), pr12))
    grid[4][3] = sc(mul(neg(pc12), pr11))
    grid[4][4] = sc(mul(neg(pc12), pr12))
    _snap(steps, grid, "g", trace)

    # scatter into the permuted orientation
    out = [[0] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(5):
            out[row_perm[i] - 1][col_perm[j] - 1] = grid[i][j]
    kernel = FMatrix(f, out, cols=5)
    _verify_kernel(kernel, col, row,
                   counterexample_pattern(row_perm, col_perm))
    return (kernel, steps) if trace else kernel


_BASE_CELLS = frozenset(
    (r, c) for r, cols in _BASE_5X5_ROWS.items() for c in cols)


def _snap(steps, grid, label, trace):
    # snapshot holds 0 outside the pattern, None for a pattern cell not
    # yet assigned, otherwise the (nonzero) value written so far
    if not trace:
        return
    snapshot = [[(grid[r][c] or None) if (r + 1, c + 1) in _BASE_CELLS else 0
                 for c in range(5)] for r in range(5)]
    steps.append((label, snapshot))


def _read_through(code: LinearCode, perm):
    """The code with coordinates read through the permutation: column i
    of the result is column perm[i]-1 of the original generator."""
    rows = [[r[perm[i] - 1] for i in range(5)] for r in code.gen.code_rows]
    return LinearCode(FMatrix(code.field, rows, cols=5))


def _weight3_data(code: LinearCode):
    """Systematic parity block on the first three positions, plus the
    unique monic weight-3 codeword (1, w2, w3, 0, 0)."""
    reduced, pivots = rref(code.gen)
    assert pivots == (0, 1, 2)
    f = code.field
    p = [[reduced.code_rows[i][3], reduced.code_rows[i][4]] for i in range(3)]
    rhs = (f.neg(p[0][0]), f.neg(p[0][1]))
    system = FMatrix(f, [[p[1][0], p[2][0]], [p[1][1], p[2][1]]])
    sol = solve_right(system, rhs)
    assert sol is not None
    return p, sol


def _verify_kernel(kernel: FMatrix, col: LinearCode, row: LinearCode,
                   pattern: ErasurePattern):
    assert not kernel.is_zero(), "kernel array is zero"
    support = {(r + 1, c + 1)
               for r in range(5) for c in range(5) if kernel.code_rows[r][c]}
    assert support == set(pattern.cells), "support differs from the pattern"
    hrow = row.parity_check()
    hcol = col.parity_check()
    for r in range(5):
        assert not any(hrow.mul_vector(kernel.code_rows[r])), f"row {r} off-code"
    for c in range(5):
        column = kernel.column_codes(c)
        assert not any(hcol.mul_vector(column)), f"column {c} off-code"


# ---------------------------------------------------------------------------
# certificate sampling and classification
# ---------------------------------------------------------------------------

def _derive_seed(seed: int, trial: int) -> int:
    return seed * (1 << 24) + trial + 1


def sample_mds_pair(topo: GridTopology, field: FieldSpec,
                    seed: int = 0, trial: int = 0):
    """Deterministic random Reed-Solomon pair: a column code [m, m-a]
    and a row code [n, n-b] at evaluation points drawn without
    replacement from the field."""
    return _sample_pair_cached(topo.key(), field, seed, trial)[:2]


@functools.lru_cache(maxsize=256)
def _sample_pair_cached(topo_key, field, seed, trial):
    m, n, a, b, _ = topo_key
    if field.order < max(m, n):
        raise FieldTooSmallForMDS(
            f"field of order {field.order} cannot host {max(m, n)} points")
    rng = random.Random(_derive_seed(seed, trial))
    col = rs_code(field, m, m - a, evals=rng.sample(range(field.order), m))
    row = rs_code(field, n, n - b, evals=rng.sample(range(field.order), n))
    gen = kron(col.gen, row.gen)
    columns = tuple(tuple(r[c] for r in gen.code_rows)
                    for c in range(gen.cols))
    return col, row, columns, gen.rows


def _full_rank_on(columns, comp, k, field):
    """Whether the k x |comp| submatrix (selected product-generator
    columns) has rank k.  The workhorse of bulk classification."""
    rows = [[columns[c][r] for c in comp] for r in range(k)]
    mul, sub, inv = field.mul, field.sub, field.inv
    nc = len(comp)
    r = 0
    for c in range(nc):
        sel = -1
        for i in range(r, k):
            if rows[i][c]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            rows[r], rows[sel] = rows[sel], rows[r]
        prow = rows[r]
        pinv = inv(prow[c])
        for i in range(r + 1, k):
            irow = rows[i]
            if irow[c]:
                fct = mul(irow[c], pinv)
                for j in range(c, nc):
                    pj = prow[j]
                    if pj:
                        irow[j] = sub(irow[j], mul(fct, pj))
        r += 1
        if r == k:
            return True
    return False


def classify_pattern(topo: GridTopology, pattern: ErasurePattern,
                     field: FieldSpec, trials: int = DEFAULT_TRIALS,
                     seed: int = 0) -> Verdict:
    """Classify one pattern for a topology with h = 0.

    Non-regular patterns are uncorrectable outright.  For regular ones,
    `trials` random MDS pairs are sampled; the first whose product code
    corrects the pattern becomes a verified certificate.  Patterns in
    the 5 x 5 counterexample orbit are proven uncorrectable via the
    kernel construction instead of being sampled.
    """
    if topo.h != 0:
        raise ValueError("classification works on the h = 0 topology")
    if (pattern.m, pattern.n) != topo.shape:
        raise ValueError("pattern shape does not match the topology")
    if not is_regular(topo, pattern):
        return Verdict(PROVEN_UNCORRECTABLE, None, 0, reason="not-regular")
    if (topo.m, topo.n, topo.a, topo.b) == (5, 5, 2, 2):
        perms = counterexample_orbit().get(pattern.bits)
        if perms is not None:
            col, row = sample_mds_pair(topo, field, seed, 0)
            kernel = kernel_codeword(col, row, perms=perms)
            cert = KernelCertificate(kernel, col, row, perms[0], perms[1])
            return Verdict(PROVEN_UNCORRECTABLE, cert, 0, reason="kernel")
    idx = pattern.to_indices()
    for t in range(trials):
        col, row = sample_mds_pair(topo, field, seed, t)
        prod = product_code(col, row)
        if corrects(prod, idx, cross_check=False):
            cert = grid_code(col, row, FMatrix.zeros(field, 0, topo.cells))
            assert corrects(cert.code, idx, cross_check=False)
            return Verdict(CORRECTABLE, cert, t + 1)
    return Verdict(NO_CERTIFICATE_FOUND, None, trials)


def classify_patterns(topo: GridTopology, patterns, field: FieldSpec,
                      trials: int = DEFAULT_TRIALS, seed: int = 0,
                      jobs: int = 1, assume_regular: bool = False):
    """Bulk classification: returns a (status, trials_used) tuple per
    pattern, in input order.

    Verdict-equivalent to calling classify_pattern on each pattern but
    without certificate materialization, so censuses with hundreds of
    thousands of patterns stay cheap.  With jobs > 1 the patterns fan
    out over a process pool; results are assembled in input order, so
    the output is independent of scheduling.
    """
    bits_list = [p.bits if isinstance(p, ErasurePattern) else int(p)
                 for p in patterns]
    if jobs <= 1:
        return _classify_bits_chunk(topo.key(), field, trials, seed,
                                    assume_regular, bits_list)
    import concurrent.futures as cf

    chunk = max(256, len(bits_list) // (jobs * 8) or 1)
    chunks = [bits_list[i:i + chunk] for i in range(0, len(bits_list), chunk)]
    out = []
    with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_classify_bits_chunk, topo.key(), field,
                               trials, seed, assume_regular, ch)
                   for ch in chunks]
        for fut in futures:
            out.extend(fut.result())
    return out


def _classify_bits_chunk(topo_key, field, trials, seed, assume_regular,
                         bits_list):
    m, n, a, b, h = topo_key
    topo = GridTopology(m, n, a, b, h)
    mn = m * n
    orbit = (frozenset(counterexample_orbit())
             if (m, n, a, b) == (5, 5, 2, 2) else frozenset())
    pair_cols = [None] * trials

    def pair(t):
        if pair_cols[t] is None:
            pair_cols[t] = _sample_pair_cached(topo_key, field, seed, t)[2:]
        return pair_cols[t]

    out = []
    for bits in bits_list:
        if not assume_regular and not is_regular(
                topo, ErasurePattern(m, n, bits)):
            out.append((PROVEN_UNCORRECTABLE, 0))
            continue
        if bits in orbit:
            out.append((PROVEN_UNCORRECTABLE, 0))
            continue
        comp = [i for i in range(mn) if not (bits >> i) & 1]
        for t in range(trials):
            columns, k = pair(t)
            if _full_rank_on(columns, comp, k, field):
                out.append((CORRECTABLE, t + 1))
                break
        else:
            out.append((NO_CERTIFICATE_FOUND, trials))
    return out


# ---------------------------------------------------------------------------
# lifting uncorrectable patterns
# ---------------------------------------------------------------------------

def lift_extend(topo: GridTopology, pattern: ErasurePattern,
                delta: int, gamma: int,
                pad_to_maximal: bool = False) -> ErasurePattern:
    """Rebind the pattern to an (m+delta) x (n+gamma) grid with the same
    (a, b); an uncorrectable pattern stays uncorrectable (shortening the
    larger code back to the original grid reproduces the original
    topology class).

    With pad_to_maximal, each appended row receives exactly b erasures
    and each appended column exactly a, placed greedily at the leftmost
    and topmost free cells that keep the pattern regular.  If a quota
    cannot be met, a PaddingBreaksRegularity warning is issued and the
    unpadded pattern is returned.
    """
    m2, n2 = topo.m + delta, topo.n + gamma
    lifted = ErasurePattern.from_cells(m2, n2, pattern.cells)
    if not pad_to_maximal or (delta == 0 and gamma == 0):
        return lifted
    target = GridTopology(m2, n2, topo.a, topo.b, 0)
    cells = set(lifted.cells)

    def regular_with(cs):
        return is_regular(target, ErasurePattern.from_cells(m2, n2, cs))

    for r in range(topo.m + 1, m2 + 1):
        placed = 0
        for c in range(1, n2 + 1):
            if placed == topo.b:
                break
            if (r, c) in cells:
                continue
            cells.add((r, c))
            if regular_with(cells):
                placed += 1
            else:
                cells.discard((r, c))
        if placed < topo.b:
            warnings.warn("row padding quota unreachable; returning the "
                          "unpadded lift", PaddingBreaksRegularity)
            return lifted
    for c in range(topo.n + 1, n2 + 1):
        have = sum(1 for (r, cc) in cells if cc == c)
        for r in range(1, m2 + 1):
            if have == topo.a:
                break
            if (r, c) in cells:
                continue
            cells.add((r, c))
            if regular_with(cells):
                have += 1
            else:
                cells.discard((r, c))
        if have < topo.a:
            warnings.warn("column padding quota unreachable; returning the "
                          "unpadded lift", PaddingBreaksRegularity)
            return lifted
    return ErasurePattern.from_cells(m2, n2, cells)


def lift_puncture(topo: GridTopology, pattern: ErasurePattern,
                  delta: int, gamma: int) -> ErasurePattern:
    """Append delta fully erased rows and gamma fully erased columns;
    the result is regular for (a+delta, b+gamma) on the larger grid,
    and uncorrectable there whenever the input was uncorrectable for
    (a, b) (puncturing the appended positions maps the topology class
    back down)."""
    m2, n2 = topo.m + delta, topo.n + gamma
    cells = set(pattern.cells)
    for r in range(topo.m + 1, m2 + 1):
        for c in range(1, n2 + 1):
            cells.add((r, c))
    for c in range(topo.n + 1, n2 + 1):
        for r in range(1, m2 + 1):
            cells.add((r, c))
    out = ErasurePattern.from_cells(m2, n2, cells)
    target = GridTopology(m2, n2, topo.a + delta, topo.b + gamma, 0)
    assert is_regular(target, out), "lifted pattern must be regular"
    return out


# ---------------------------------------------------------------------------
# global redundancy
# ---------------------------------------------------------------------------

def emax_global(emax0: Sequence[ErasurePattern],
                topo: GridTopology):
    """All patterns E' union I with E' from the h = 0 maximal list and I
    any h extra cells outside E', deduplicated and sorted."""
    if topo.h == 0:
        return list(emax0)
    seen = {}
    m, n = topo.shape
    for base in emax0:
        comp = base.complement_indices()
        for extra in itertools.combinations(comp, topo.h):
            bits = base.bits
            for i in extra:
                bits |= 1 << i
            seen.setdefault(bits, None)
    return [ErasurePattern(m, n, bits) for bits in sorted(seen)]


def pmds_block_code(m: int, n: int, b: int, field: FieldSpec) -> LinearCode:
    """Block-diagonal stack of m copies of an [n, n-b] MDS generator:
    each grid row is protected independently, which is maximally
    recoverable for the (0, b, 0) topology."""
    base = rs_code(field, n, n - b)
    k1 = n - b
    rows = []
    for blk in range(m):
        for r in base.gen.code_rows:
            row = [0] * (m * n)
            row[blk * n:(blk + 1) * n] = list(r)
            rows.append(row)
    return LinearCode(FMatrix(field, rows, cols=m * n))


def add_global_redundancy(C_out: LinearCode, h: int) -> LinearCode:
    """Two-stage encoding that adds h global parities to a maximally
    recoverable base code.

    The inner code is a Gabidulin code of length k_out and dimension
    k_out - h over GF(q^k_out); because restricting the composed
    generator to any information set of the outer code is again a
    Gabidulin (hence MDS) code, the result corrects every maximal
    h = 0 pattern with any h extra erasures on top.
    """
    k_out = C_out.k
    if not 0 <= h <= k_out - 1:
        raise DimensionMismatch(f"h must lie in 0..{k_out - 1}")
    ext = make_extension(C_out.field, k_out)
    inner = gabidulin(ext, k_out, k_out - h)
    lifted = embed_matrix(C_out.gen, ext)
    return LinearCode(inner.gen @ lifted)


def is_mr(C, emax: Iterable[ErasurePattern], cross_check=False) -> bool:
    """Whether the code corrects every pattern in the supplied list."""
    code = C.code if isinstance(C, GridCode) else C
    return all(corrects(code, p.to_indices(), cross_check=cross_check)
               for p in emax)


def find_mr_code(topo: GridTopology, field: FieldSpec, trials: int = 50,
                 seed: int = 0,
                 emax: Optional[Sequence[ErasurePattern]] = None,
                 classify_trials: int = DEFAULT_TRIALS):
    """Randomized search for a maximally recoverable h = 0 instance.

    Samples MDS pairs and returns the first whose product code corrects
    every classified-correctable maximal pattern, as a verified
    GridCode; None when the trial budget runs out.  When `emax` is not
    supplied it is computed by the classification pipeline over the
    same field.
    """
    if topo.h != 0:
        raise ValueError("searching h = 0 instances only")
    if emax is None:
        patterns = enumerate_regular_max(topo)
        statuses = classify_patterns(topo, patterns, field,
                                     trials=classify_trials, seed=seed,
                                     assume_regular=True)
        emax = [p for p, (st, _) in zip(patterns, statuses)
                if st == CORRECTABLE]
    comp_lists = [p.complement_indices() for p in emax]
    for t in range(trials):
        _, _, columns, k = _sample_pair_cached(topo.key(), field, seed, t)
        if all(_full_rank_on(columns, comp, k, field) for comp in comp_lists):
            col, row = sample_mds_pair(topo, field, seed, t)
            cert = grid_code(col, row, FMatrix.zeros(field, 0, topo.cells))
            assert is_mr(cert, emax)
            return cert
    return None


# ---------------------------------------------------------------------------
# duality and tensor-product codes
# ---------------------------------------------------------------------------

def dual_correctable(C: LinearCode, E: Iterable[int]) -> bool:
    """Whether E is correctable in the dual of C.

    Equivalent characterizations: the generator columns of C at E are
    linearly independent; E extends to the complement of an information
    set of the dual; corrects(dual(C), E).
    """
    idx = sorted(set(E))
    if idx and (idx[0] < 0 or idx[-1] >= C.n):
        raise ValueError(f"index set not contained in 0..{C.n - 1}")
    primary = rank(restrict_cols(C.gen, idx)) == len(idx)
    if codes_mod.CROSS_CHECK:
        keep = [j for j in range(C.n) if j not in set(idx)]
        via_dual = rank(restrict_cols(C.parity_check(), keep)) == C.n - C.k
        assert via_dual == primary, "dual correctability criteria disagree"
    return primary


@dataclass(frozen=True)
class TPReport:
    """Outcome of comparing a tensor-product code's maximal correctable
    patterns with the complements of the h = 0 maximal pattern list."""

    m: int
    n: int
    a: int
    b: int
    subset_holds: bool
    dual_is_mr: bool
    equality_holds: bool
    n_maximal_correctable: int
    n_complements: int
    missing_from_complements: int = 0

    def to_dict(self):
        return {
            "m": self.m, "n": self.n, "a": self.a, "b": self.b,
            "subset_holds": self.subset_holds,
            "dual_is_mr": self.dual_is_mr,
            "equality_holds": self.equality_holds,
            "n_maximal_correctable": self.n_maximal_correctable,
            "n_complements": self.n_complements,
            "missing_from_complements": self.missing_from_complements,
        }


def tp_correctable_check(col: LinearCode, row: LinearCode,
                         emax0: Sequence[ErasurePattern],
                         cap: int = 10 ** 6) -> TPReport:
    """Exhaustively compare the maximal erasure patterns correctable by
    the tensor-product code TP(col, row) against the complements of the
    classified maximal patterns.

    The containment direction holds for every instance; when the dual
    of the TP code (the product of the two dual codes) is maximally
    recoverable, the two collections coincide.
    """
    from .codes import tensor_product_code

    m, n = col.n, row.n
    mn = m * n
    tp = tensor_product_code(col, row)
    h = tp.parity_check()
    r = h.rows
    if math.comb(mn, r) > cap:
        raise TooLargeToEnumerate(f"C({mn},{r}) exceeds the cap of {cap}")
    columns = tuple(tuple(rw[c] for rw in h.code_rows) for c in range(mn))
    field = tp.field
    maximal = set()
    for subset in itertools.combinations(range(mn), r):
        if _full_rank_on(columns, subset, r, field):
            bits = 0
            for i in subset:
                bits |= 1 << i
            maximal.add(bits)
    full = (1 << mn) - 1
    complements = {full ^ p.bits for p in emax0}
    subset_holds = maximal <= complements
    dual_tp = product_code(dual(col), dual(row))
    dual_is_mr = is_mr(dual_tp, emax0)
    equality = subset_holds and complements <= maximal
    return TPReport(
        m=m, n=n, a=col.k, b=row.k,
        subset_holds=subset_holds,
        dual_is_mr=dual_is_mr,
        equality_holds=equality,
        n_maximal_correctable=len(maximal),
        n_complements=len(complements),
        missing_from_complements=len(maximal - complements),
    )
