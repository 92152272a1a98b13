"""Exact arithmetic for prime fields and extension fields GF(p^d).

An element is stored as an integer code: the little-endian coefficient
vector (c0, c1, ..., c_{d-1}) of its residue polynomial packed as
c0 + c1*p + ... + c_{d-1}*p^(d-1).  For p = 2 the code is the familiar
bit representation and products are carry-less multiplications; small
fields additionally build discrete log/antilog tables so that bulk
linear algebra stays fast.

A field may designate a subfield GF(q) = GF(p^t) with t | d.  The
designation fixes the meaning of the q-power Frobenius map (used by
Moore-matrix constructions) and of explicit embeddings GF(q) -> GF(p^d)
(used when a matrix over the small field is lifted into the big one).
Extension towers are always flattened: GF(q^s) is represented as
GF(p^(t*s)) carrying subfield_degree = t.

All operations are pure and FieldSpec instances are immutable after
construction, so values can be shared freely between threads or worker
processes.
"""

from __future__ import annotations

import functools
from typing import Iterator, Optional, Sequence

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    IncompatibleSubfield,
    NoDesignatedSubfield,
    NonPrimeCharacteristic,
    ReducibleModulus,
)

_TABLE_LIMIT = 1 << 16   # build log/exp tables up to this field order
_ORDER_LIMIT = 1 << 64   # hard cap on supported field order


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); polys are little-endian tuples of residues
# ---------------------------------------------------------------------------

def _ptrim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, f, p):
    # remainder of a modulo the monic polynomial f
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)  # f monic in practice, kept general
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            c = (c * inv_lead) % p
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _ptrim(a[:df])


def _pmulmod(a, b, f, p):
    return _pmod(_pmul(a, b, p), f, p)


def _ppowmod(a, e, f, p):
    r = (1,)
    a = _pmod(a, f, p)
    while e:
        if e & 1:
            r = _pmulmod(r, a, f, p)
        a = _pmulmod(a, a, f, p)
        e >>= 1
    return r


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        db = len(b) - 1
        while len(_ptrim(r)) - 1 >= db and _ptrim(r):
            r = list(_ptrim(r))
            c = (r[-1] * inv_lead) % p
            shift = len(r) - 1 - db
            for j in range(db + 1):
                r[shift + j] = (r[shift + j] - c * b[j]) % p
        a, b = b, _ptrim(r)
    return a


def _psub_x(t, p):
    # t(x) - x
    diff = list(t) + [0] * max(0, 2 - len(t))
    diff[1] = (diff[1] - 1) % p
    return _ptrim(diff)


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility of a polynomial over GF(p).

    Uses the classical x^(p^d) fixed-point test together with gcd
    checks at the maximal proper subfield degrees.
    """
    f = _ptrim([c % p for c in coeffs])
    d = len(f) - 1
    if d < 1:
        return False
    if f[0] == 0:
        return d == 1  # divisible by x
    if d == 1:
        return True
    x = (0, 1)
    t = x
    for _ in range(d):
        t = _ppowmod(t, p, f, p)
    if _psub_x(t, p):
        return False  # x^(p^d) != x mod f
    for r in _prime_divisors(d):
        t = x
        for _ in range(d // r):
            t = _ppowmod(t, p, f, p)
        g = _pgcd(f, _psub_x(t, p), p)
        if len(g) - 1 != 0:
            return False
    return True


def _prime_divisors(n: int):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _smallest_irreducible(p: int, d: int):
    """Monic irreducible of degree d over GF(p) with the smallest value
    c0 + c1*p + ... when read as a base-p integer."""
    if d == 1:
        return (0, 1)  # the polynomial x
    for low in range(p ** d):
        coeffs = []
        v = low
        for _ in range(d):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# field specification
# ---------------------------------------------------------------------------

class FieldSpec:
    """A concrete finite field GF(p^d) with explicit modulus.

    Instances are created through :func:`make_field`.  All arithmetic
    methods act on integer element codes; use :class:`FieldElement` or
    :meth:`element` for the wrapped scalar interface.
    """

    def __init__(self, p, d, modulus, subfield_degree=None):
        self.p = p
        self.d = d
        self.modulus = tuple(modulus)
        self.subfield_degree = subfield_degree
        self.order = p ** d
        self.q = p ** subfield_degree if subfield_degree else None
        self._powers = tuple(p ** i for i in range(d + 1))
        if p == 2:
            self._mod_int = sum(1 << i for i, c in enumerate(self.modulus) if c)
        self._exp = None
        self._log = None
        self._install_ops()
        if 4 <= self.order <= _TABLE_LIMIT and d > 1:
            self._build_tables()

    # -- representation plumbing --

    def code_to_coeffs(self, code: int):
        p, d = self.p, self.d
        out = []
        for _ in range(d):
            out.append(code % p)
            code //= p
        return tuple(out)

    def coeffs_to_code(self, coeffs) -> int:
        if len(coeffs) > self.d:
            extra = coeffs[self.d:]
            if any(c % self.p for c in extra):
                raise ValueError("coefficient list longer than field degree")
            coeffs = coeffs[: self.d]
        code = 0
        for c, pw in zip(coeffs, self._powers):
            code += (c % self.p) * pw
        return code

    # -- arithmetic on codes --

    def _install_ops(self):
        p, d = self.p, self.d
        if d == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: (a * b) % p
        elif p == 2:
            self.add = lambda a, b: a ^ b
            self.sub = self.add
            self.neg = lambda a: a
            self.mul = self._mul_cl
        else:
            self.add = self._add_digits
            self.sub = self._sub_digits
            self.neg = lambda a: self._sub_digits(0, a)
            self.mul = self._mul_poly

    def _add_digits(self, a, b):
        p = self.p
        out = 0
        for pw in self._powers[:-1]:
            out += ((a % p + b % p) % p) * pw
            a //= p
            b //= p
        return out

    def _sub_digits(self, a, b):
        p = self.p
        out = 0
        for pw in self._powers[:-1]:
            out += ((a % p - b % p) % p) * pw
            a //= p
            b //= p
        return out

    def _mul_cl(self, a, b):
        # carry-less product followed by reduction (p = 2 only)
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        d = self.d
        m = self._mod_int
        bl = r.bit_length()
        while bl > d:
            r ^= m << (bl - 1 - d)
            bl = r.bit_length()
        return r

    def _mul_poly(self, a, b):
        ca = self.code_to_coeffs(a)
        cb = self.code_to_coeffs(b)
        prod = _pmul(ca, cb, self.p)
        red = _pmod(prod, self.modulus, self.p)
        return self.coeffs_to_code(red)

    def _build_tables(self):
        order = self.order
        mul = self.mul
        g = self._find_generator()
        exp = [1] * (2 * (order - 1))
        log = [0] * order
        acc = 1
        for i in range(order - 1):
            exp[i] = acc
            exp[i + order - 1] = acc
            log[acc] = i
            acc = mul(acc, g)
        assert acc == 1
        self._exp = exp
        self._log = log
        self._generator = g

        def mul_t(a, b, exp=exp, log=log):
            if a and b:
                return exp[log[a] + log[b]]
            return 0

        self.mul = mul_t

    def _find_generator(self):
        n = self.order - 1
        primes = _prime_divisors(n)
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, n // r) != 1 for r in primes):
                return cand
        raise AssertionError("no multiplicative generator found")

    def _pow_raw(self, a, e):
        # table-free square and multiply, used while building tables
        if self.d == 1:
            return pow(a, e, self.p)
        m = self._mul_cl if self.p == 2 else self._mul_poly
        r = 1
        while e:
            if e & 1:
                r = m(r, a)
            a = m(a, a)
            e >>= 1
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        if self.d == 1:
            return pow(a, e, self.p)
        r = 1
        mul = self.mul
        e %= self.order - 1
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._log is not None:
            return self._exp[self.order - 1 - self._log[a]]
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob_code(self, a: int, i: int = 1) -> int:
        """a^(q^i) on codes, q the designated subfield order."""
        if self.subfield_degree is None:
            raise NoDesignatedSubfield(
                "field has no designated subfield for Frobenius powers")
        if a == 0 or i == 0:
            return a
        if self._log is not None:
            e = pow(self.q, i, self.order - 1)
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self.pow(a, pow(self.q, i, self.order - 1))

    # -- element interface --

    def element(self, value) -> "FieldElement":
        """Wrap a coefficient list, an integer code, or another element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            if self.d == 1:
                return FieldElement(self, value % self.p)
            if not 0 <= value < self.order:
                raise ValueError(
                    f"integer code {value} outside 0..{self.order - 1}; "
                    f"pass a coefficient list for extension fields")
            return FieldElement(self, value)
        return FieldElement(self, self.coeffs_to_code(tuple(value)))

    def from_code(self, code: int) -> "FieldElement":
        return FieldElement(self, code)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def gen(self) -> "FieldElement":
        """The residue class of x (for d >= 2), else 1."""
        return FieldElement(self, self.p if self.d > 1 else 1)

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.order):
            yield FieldElement(self, c)

    def random_element(self, rng) -> "FieldElement":
        return FieldElement(self, rng.randrange(self.order))

    def subfield_basis(self):
        """Codes of a GF(p)-basis of the designated subfield, cached."""
        if self.subfield_degree is None:
            raise NoDesignatedSubfield("no designated subfield")
        basis = getattr(self, "_subfield_basis", None)
        if basis is None:
            basis = self._compute_subfield_basis()
            self._subfield_basis = basis
        return basis

    def _compute_subfield_basis(self):
        # kernel of (Frobenius_t - id) as a GF(p)-linear map on GF(p^d)
        p, d, t = self.p, self.d, self.subfield_degree
        if t == d:
            return tuple(self._powers[i] for i in range(d))
        cols = []
        for j in range(d):
            img = self.pow(self._powers[j], p ** t)
            coeffs = list(self.code_to_coeffs(img))
            coeffs[j] = (coeffs[j] - 1) % p
            cols.append(coeffs)
        # rows of the map matrix: rows[i][j] = cols[j][i]
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        kernel = _gfp_kernel(rows, p)
        assert len(kernel) == t
        return tuple(self.coeffs_to_code(v) for v in kernel)

    def subfield_elements(self):
        """All codes of the designated subfield, in ascending order."""
        basis = self.subfield_basis()
        p = self.p
        out = [0]
        for b in basis:
            scaled = [self.mul(c, b) for c in range(1, p)]
            out = [self.add(x, s) for s in [0] + scaled for x in out]
        return tuple(sorted(set(out)))

    # -- misc --

    def to_dict(self):
        out = {"p": self.p, "d": self.d, "modulus": list(self.modulus)}
        if self.subfield_degree is not None:
            out["subfield_degree"] = self.subfield_degree
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.d == other.d
            and self.modulus == other.modulus
            and self.subfield_degree == other.subfield_degree
        )

    def __hash__(self):
        return hash((self.p, self.d, self.modulus, self.subfield_degree))

    def __reduce__(self):
        return (make_field, (self.p, self.d, self.modulus, self.subfield_degree))

    def __repr__(self):
        sub = f", q={self.q}" if self.subfield_degree else ""
        return f"GF({self.p}^{self.d}{sub})" if self.d > 1 else f"GF({self.p})"


def _gfp_kernel(rows, p):
    """Kernel basis of a small matrix over GF(p), used only internally
    by FieldSpec (keeps gf free of a dependency on fmatrix)."""
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        sel = next((i for i in range(r, nr) if rows[i][c] % p), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * nc
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-rows[i][f]) % p
        basis.append(v)
    return basis


@functools.lru_cache(maxsize=None)
def _make_field_cached(p, d, modulus, subfield_degree):
    return FieldSpec(p, d, modulus, subfield_degree)


def make_field(p: int, d: int = 1, modulus: Optional[Sequence[int]] = None,
               subfield_degree: Optional[int] = None) -> FieldSpec:
    """Construct GF(p^d).

    When the modulus is omitted, the monic irreducible polynomial of
    degree d over GF(p) with the smallest base-p value is selected, so
    repeated runs agree on the same field representation.  An explicit
    modulus is given little-endian including the leading 1.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if d < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** d > _ORDER_LIMIT:
        raise FieldTooLarge(f"order {p}^{d} exceeds 2^64")
    if subfield_degree is not None and d % subfield_degree != 0:
        raise ValueError("subfield degree must divide the extension degree")
    if modulus is None:
        modulus = _smallest_irreducible(p, d)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree d")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
    return _make_field_cached(p, d, tuple(modulus), subfield_degree)


def make_extension(base: FieldSpec, s: int) -> FieldSpec:
    """GF(q^s) for q = base field order, with base designated as subfield."""
    return make_field(base.p, base.d * s, subfield_degree=base.d)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class FieldElement:
    """A field scalar: an integer code bound to its FieldSpec.

    Supports +, -, *, / and ** with the usual semantics.  Mixing
    elements of different FieldSpec values raises FieldMismatch.
    """

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self):
        return self.field.code_to_coeffs(self.code)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.add(self.code, other.code))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.sub(self.code, other.code))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul(self.code, other.code))

    def __truediv__(self, other):
        other = self._check(other)
        if other.code == 0:
            raise DivisionByZero("division by zero element")
        return FieldElement(self.field, self.field.div(self.code, other.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other if other in (0, 1) else NotImplemented
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.field!r}:{list(self.coeffs)}"

    def __reduce__(self):
        return (FieldElement, (self.field, self.code))


def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    """Dispatch {add, sub, mul, div} on two elements of the same field."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def frobenius(x: FieldElement, i: int) -> FieldElement:
    """x^(q^i) where q is the order of the designated subfield."""
    if i < 0:
        raise ValueError("Frobenius power must be non-negative")
    return FieldElement(x.field, x.field.frob_code(x.code, i))


@functools.lru_cache(maxsize=None)
def _embedding_table(src: FieldSpec, dst: FieldSpec):
    """code -> code map realising the ring embedding GF(q) -> GF(q^s)."""
    if src.p != dst.p:
        raise IncompatibleSubfield("different characteristics")
    if src.d == 1:
        # prime subfield embeds canonically as the constants
        return tuple(range(src.p))
    if dst.subfield_degree != src.d:
        raise IncompatibleSubfield(
            f"target designates GF({dst.p}^{dst.subfield_degree}), "
            f"source is GF({src.p}^{src.d})")
    # the image of the source generator must be a root of the source
    # modulus inside the designated subfield of dst
    root = None
    for cand in dst.subfield_elements():
        acc = 0
        for c in reversed(src.modulus):
            acc = dst.add(dst.mul(acc, cand), c % dst.p)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise IncompatibleSubfield("source modulus has no root in target subfield")
    table = []
    for code in range(src.order):
        coeffs = src.code_to_coeffs(code)
        acc = 0
        for c in reversed(coeffs):
            acc = dst.add(dst.mul(acc, root), c)
        table.append(acc)
    return tuple(table)


def embed(x: FieldElement, target: FieldSpec) -> FieldElement:
    """Embed an element of GF(q) into a field designating GF(q) as subfield.

    The map is an injective ring homomorphism, fixed once per
    (source, target) pair so that repeated lifts agree.
    """
    table = _embedding_table(x.field, target)
    return FieldElement(target, table[x.code])


def field_from_dict(data) -> FieldSpec:
    return make_field(
        data["p"], data["d"],
        modulus=tuple(data["modulus"]),
        subfield_degree=data.get("subfield_degree"),
    )
