"""Linear-code constructions and transforms over exact finite fields.

A LinearCode is an [n, k] code given by a full-rank generator matrix.
The module supplies MDS generators (Vandermonde Reed-Solomon), Moore
matrix (Gabidulin) codes over a designated subfield, duals, shortening
and puncturing, product and tensor-product codes for grid layouts, and
erasure correctability tests with decodable witnesses.

Correctability of an erased index set E uses the puncturing criterion,
rank(G restricted off E) = k, optionally cross-asserted against the
dual criterion, rank(H restricted to E) = |E|.  Both tests are exact.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Optional, Sequence

from .errors import (
    AmbiguousErasure,
    DependentLocators,
    DuplicateEvaluationPoints,
    FieldMismatch,
    FieldTooSmall,
    InconsistentWord,
    LengthExceedsExtensionDegree,
    ShapeMismatch,
    TooLargeToEnumerate,
    WrongSize,
)
from .gf import FieldElement, FieldSpec, field_from_dict, make_field
from .fmatrix import (
    FMatrix,
    kron,
    rank,
    restrict_cols,
    right_kernel,
    row_space_equal,
    solve_right,
)

# When true, corrects() recomputes the verdict through the parity-check
# criterion and asserts agreement.  Bulk classification pipelines use
# their own single-criterion fast path.
CROSS_CHECK = __debug__

MDS_ENUMERATION_CAP = 10 ** 6


class LinearCode:
    """An [n, k] linear code represented by a full-rank generator."""

    __slots__ = ("field", "n", "k", "gen", "_parity")

    def __init__(self, gen: FMatrix, _parity: Optional[FMatrix] = None):
        if rank(gen) != gen.rows:
            raise ValueError("generator matrix does not have full row rank")
        self.field = gen.field
        self.n = gen.cols
        self.k = gen.rows
        self.gen = gen
        self._parity = _parity

    def parity_check(self) -> FMatrix:
        """An (n-k) x n matrix whose rows span the dual code (cached)."""
        if self._parity is None:
            self._parity = right_kernel(self.gen)
        return self._parity

    def encode(self, message: Sequence[int]):
        if len(message) != self.k:
            raise WrongSize(f"message length {len(message)} != k={self.k}")
        return self.gen.transpose().mul_vector(message)

    def contains(self, word: Sequence[int]) -> bool:
        return not any(self.parity_check().mul_vector(word))

    def random_codeword(self, rng):
        msg = [rng.randrange(self.field.order) for _ in range(self.k)]
        return self.encode(msg)

    def same_code(self, other: "LinearCode") -> bool:
        """Row-space equality of the generators."""
        return (self.field == other.field and self.n == other.n
                and self.k == other.k and row_space_equal(self.gen, other.gen))

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "field": self.field.to_dict(),
            "gen": [list(self.field.code_to_coeffs(v))
                    for r in self.gen.code_rows for v in r],
        }

    @classmethod
    def from_dict(cls, data) -> "LinearCode":
        field = field_from_dict(data["field"])
        n, k = data["n"], data["k"]
        flat = [field.coeffs_to_code(tuple(e)) for e in data["gen"]]
        if len(flat) != n * k:
            raise ShapeMismatch("generator entry count != n*k")
        gen = FMatrix(field, [flat[i * n:(i + 1) * n] for i in range(k)], cols=n)
        return cls(gen)

    def __repr__(self):
        return f"[{self.n},{self.k}] code over {self.field!r}"

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.gen == other.gen

    def __hash__(self):
        return hash(self.gen)


class GridCode:
    """A code for an m x n grid layout: column/row constraints plus an
    arbitrary block of h global parity checks."""

    __slots__ = ("topo", "col_code", "row_code", "h_global", "code")

    def __init__(self, topo, col_code: LinearCode, row_code: LinearCode,
                 h_global: FMatrix, code: LinearCode):
        self.topo = topo
        self.col_code = col_code
        self.row_code = row_code
        self.h_global = h_global
        self.code = code

    def to_dict(self):
        out = self.code.to_dict()
        out["topo"] = {"m": self.topo.m, "n": self.topo.n, "a": self.topo.a,
                       "b": self.topo.b, "h": self.topo.h}
        out["col_gen"] = self.col_code.to_dict()["gen"]
        out["row_gen"] = self.row_code.to_dict()["gen"]
        out["h_global"] = self.h_global.to_dict()["entries"]
        return out

    def __repr__(self):
        t = self.topo
        return (f"grid code T_{t.m}x{t.n}({t.a},{t.b},{t.h}) "
                f"dim {self.code.k} over {self.code.field!r}")


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def rs_code(field: FieldSpec, n: int, k: int,
            evals: Optional[Sequence] = None) -> LinearCode:
    """Vandermonde Reed-Solomon code: certified MDS for distinct points.

    Row i of the generator holds the i-th powers of the evaluation
    points, so every k columns form an invertible Vandermonde block.
    Defaults to the first n field elements as evaluation points.
    """
    if n > field.order:
        raise FieldTooSmall(f"need {n} distinct points, field has {field.order}")
    if k > n:
        raise ValueError(f"dimension {k} exceeds length {n}")
    if evals is None:
        points = list(range(n))
    else:
        points = [field.element(e).code for e in evals]
        if len(points) != n:
            raise WrongSize(f"expected {n} evaluation points")
        if len(set(points)) != n:
            raise DuplicateEvaluationPoints("evaluation points must be distinct")
    rows = []
    current = [1] * n
    for i in range(k):
        if i:
            current = [field.mul(c, p) for c, p in zip(current, points)]
        rows.append(list(current))
    return LinearCode(FMatrix(field, rows, cols=n))


def gabidulin(field: FieldSpec, n: int, k: int,
              g: Optional[Sequence] = None) -> LinearCode:
    """Moore-matrix code of length n over GF(q^s), q the designated
    subfield order: row i holds the q^i-th powers of the locators.

    The locators must be linearly independent over GF(q), which forces
    n <= s and makes the code MDS.  Defaults to the locator vector
    (1, x, ..., x^(n-1)), which is always independent because x
    generates the extension.
    """
    if field.subfield_degree is None:
        raise LengthExceedsExtensionDegree(
            "field must designate a subfield GF(q)")
    t = field.subfield_degree
    s = field.d // t
    if n > s:
        raise LengthExceedsExtensionDegree(f"length {n} exceeds s={s}")
    if k > n:
        raise ValueError(f"dimension {k} exceeds length {n}")
    if g is None:
        locators = [field.pow(field.p if field.d > 1 else 1, i) for i in range(n)]
    else:
        locators = [field.element(e).code for e in g]
        if len(locators) != n:
            raise WrongSize(f"expected {n} locators")
    if not _independent_over_subfield(field, locators):
        raise DependentLocators("locators are dependent over the subfield")
    rows = [list(locators)]
    for _ in range(1, k):
        rows.append([field.frob_code(v, 1) for v in rows[-1]])
    return LinearCode(FMatrix(field, rows[:k] if k else [], cols=n))


def _independent_over_subfield(field: FieldSpec, locators) -> bool:
    # dependence over GF(q) reduces to GF(p)-dependence of the products
    # of locators with a GF(p)-basis of the subfield
    basis = field.subfield_basis()
    prime = make_field(field.p, 1)
    cols = []
    for loc in locators:
        for e in basis:
            cols.append(field.code_to_coeffs(field.mul(e, loc)))
    mat = FMatrix(prime, [[col[i] for col in cols] for i in range(field.d)],
                  cols=len(cols))
    return rank(mat) == len(cols)


def dual(C: LinearCode) -> LinearCode:
    """The [n, n-k] dual code; its parity check is C's generator."""
    return LinearCode(C.parity_check(), _parity=C.gen)


def shorten(C: LinearCode, I: Iterable[int]) -> LinearCode:
    """Codewords vanishing on I, restricted to the kept positions.

    The parity check of the result is the parity check of C restricted
    to the kept positions.
    """
    idx = _index_set(C.n, I)
    keep = [j for j in range(C.n) if j not in idx]
    h_restricted = restrict_cols(C.parity_check(), keep)
    return LinearCode(right_kernel(h_restricted))


def puncture(C: LinearCode, I: Iterable[int]) -> LinearCode:
    """Coordinates in I deleted; generator is G restricted to the kept
    positions with dependent rows removed (first independent rows win,
    in elimination order, so the representative is canonical)."""
    idx = _index_set(C.n, I)
    keep = [j for j in range(C.n) if j not in idx]
    restricted = restrict_cols(C.gen, keep)
    field = C.field
    echelon: list[list[int]] = []
    chosen = []
    for row in restricted.code_rows:
        residue = _reduce_against(list(row), echelon, field)
        if any(residue):
            echelon.append(residue)
            chosen.append(row)
    return LinearCode(FMatrix(field, chosen, cols=len(keep)))


def _reduce_against(row, echelon, field):
    mul, sub, div = field.mul, field.sub, field.div
    for erow in echelon:
        lead = next((j for j, v in enumerate(erow) if v), None)
        if lead is not None and row[lead]:
            f = div(row[lead], erow[lead])
            for j in range(lead, len(row)):
                if erow[j]:
                    row[j] = sub(row[j], mul(f, erow[j]))
    return row


def _index_set(n, I):
    idx = set(I)
    if idx and (min(idx) < 0 or max(idx) >= n):
        raise WrongSize(f"index set not contained in 0..{n - 1}")
    return idx


# ---------------------------------------------------------------------------
# correctability
# ---------------------------------------------------------------------------

def corrects(C: LinearCode, E: Iterable[int],
             cross_check: Optional[bool] = None) -> bool:
    """Whether the code recovers every codeword from the positions
    outside E, i.e. whether the generator keeps full rank off E."""
    idx = _index_set(C.n, E)
    keep = [j for j in range(C.n) if j not in idx]
    primary = rank(restrict_cols(C.gen, keep)) == C.k
    if cross_check is None:
        cross_check = CROSS_CHECK
    if cross_check:
        via_parity = rank(restrict_cols(C.parity_check(), sorted(idx))) == len(idx)
        assert via_parity == primary, "correctability criteria disagree"
    return primary


def is_information_set(C: LinearCode, I: Iterable[int]) -> bool:
    idx = sorted(_index_set(C.n, I))
    if len(idx) != C.k:
        raise WrongSize(f"information set must have size k={C.k}")
    return rank(restrict_cols(C.gen, idx)) == C.k


def is_mds(C: LinearCode, cap: int = MDS_ENUMERATION_CAP) -> bool:
    """Exhaustive check that every k-subset of positions is an
    information set.  Refuses to enumerate beyond `cap` subsets."""
    if math.comb(C.n, C.k) > cap:
        raise TooLargeToEnumerate(
            f"C({C.n},{C.k}) exceeds the {cap} subset cap")
    for subset in itertools.combinations(range(C.n), C.k):
        if rank(restrict_cols(C.gen, subset)) != C.k:
            return False
    return True


# ---------------------------------------------------------------------------
# grid constructions
# ---------------------------------------------------------------------------

def product_code(col: LinearCode, row: LinearCode) -> LinearCode:
    """Code of m x n arrays whose columns lie in `col` and rows in
    `row`; generated by the Kronecker product of the two generators."""
    if col.field != row.field:
        raise FieldMismatch("factors over different fields")
    return LinearCode(kron(col.gen, row.gen))


def grid_code(col: LinearCode, row: LinearCode, h_global: FMatrix):
    """Member of the grid topology class: the product-code constraints
    stacked with h arbitrary global parity rows."""
    from .topology import GridTopology  # local import avoids a cycle

    if col.field != row.field or h_global.field != col.field:
        raise FieldMismatch("components over different fields")
    m, n = col.n, row.n
    if h_global.cols != m * n:
        raise ShapeMismatch(f"h_global must have {m * n} columns")
    topo = GridTopology(m, n, m - col.k, n - row.k, h_global.rows)
    prod = product_code(col, row)
    if h_global.rows == 0:
        code = prod
    else:
        stacked = prod.parity_check().vstack(h_global)
        code = LinearCode(right_kernel(stacked))
    return GridCode(topo, col, row, h_global, code)


def tensor_product_code(col: LinearCode, row: LinearCode) -> LinearCode:
    """The dual of the span of H_col Kronecker H_row; length m*n and
    dimension m*n - (m-a)(n-b) for col [m,a] and row [n,b]."""
    if col.field != row.field:
        raise FieldMismatch("factors over different fields")
    h = kron(col.parity_check(), row.parity_check())
    return LinearCode(right_kernel(h), _parity=h)


# ---------------------------------------------------------------------------
# erasure decoding
# ---------------------------------------------------------------------------

def erasure_decode(C: LinearCode, word, E: Iterable[int]):
    """Recover the unique codeword agreeing with `word` off E.

    `word` holds FieldElements (or codes) at non-erased positions and
    None at erased ones.  If the pattern is not correctable, raises
    AmbiguousErasure carrying two distinct valid completions; if no
    codeword matches the received positions, raises InconsistentWord.
    """
    idx = _index_set(C.n, E)
    keep = [j for j in range(C.n) if j not in idx]
    received = []
    for j in keep:
        v = word[j]
        if v is None:
            raise InconsistentWord(f"position {j} is not erased but missing")
        received.append(v.code if isinstance(v, FieldElement) else
                        C.field.element(v).code)
    sub_gen = restrict_cols(C.gen, keep)
    x = solve_right(sub_gen.transpose(), received)
    if x is None:
        raise InconsistentWord("received word is outside the code")
    codeword = C.encode(x)
    free = right_kernel(sub_gen.transpose())
    if free.rows:
        other = C.encode([C.field.add(a, b) for a, b in
                          zip(x, free.code_rows[0])])
        raise AmbiguousErasure(
            tuple(FieldElement(C.field, v) for v in codeword),
            tuple(FieldElement(C.field, v) for v in other),
        )
    return [FieldElement(C.field, v) for v in codeword]
