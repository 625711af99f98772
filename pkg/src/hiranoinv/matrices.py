"""Dense square matrices over the supported exact rings.

Entries are raw ring values held in nested tuples, so matrices are
immutable, hashable and safe to share.  All predicates every theorem needs
live here: nilpotence, matrix quasinilpotence, centralizers and the double
commutant, and the Peirce decomposition relative to an idempotent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    InputFormatError,
    PreconditionError,
    RingMismatchError,
    UnsupportedRingError,
)
from .polys import Polynomial
from .rings import IntegersMod, PLocal, Q, Ring, Rationals, factorize


class SquareMatrix:
    __slots__ = ("ring", "dim", "rows", "_hash")

    def __init__(self, ring: Ring, rows):
        entries = tuple(tuple(ring.element(v) for v in row) for row in rows)
        k = len(entries)
        if k == 0 or any(len(row) != k for row in entries):
            raise InputFormatError("matrix must be square and non-empty")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "dim", k)
        object.__setattr__(self, "rows", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("SquareMatrix is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, ring: Ring, k: int) -> SquareMatrix:
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(k)] for i in range(k)])

    @classmethod
    def zero(cls, ring: Ring, k: int) -> SquareMatrix:
        zero = ring.zero()
        return cls(ring, [[zero] * k for _ in range(k)])

    @classmethod
    def diagonal(cls, ring: Ring, values) -> SquareMatrix:
        values = [ring.element(v) for v in values]
        k = len(values)
        zero = ring.zero()
        return cls(ring, [[values[i] if i == j else zero for j in range(k)] for i in range(k)])

    # -- basics ------------------------------------------------------------

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def _check_compatible(self, other: SquareMatrix):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
        if self.dim != other.dim:
            raise RingMismatchError(f"dimension {self.dim} vs {other.dim}")

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, self.rows)))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.rows)
        return f"[{body}] over {self.ring!r}"

    def is_zero(self) -> bool:
        z = self.ring.zero()
        return all(v == z for row in self.rows for v in row)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: SquareMatrix) -> SquareMatrix:
        self._check_compatible(other)
        add = self.ring.add
        return SquareMatrix(
            self.ring,
            [
                [add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: SquareMatrix) -> SquareMatrix:
        return self + (-other)

    def __neg__(self) -> SquareMatrix:
        neg = self.ring.neg
        return SquareMatrix(self.ring, [[neg(v) for v in row] for row in self.rows])

    def __mul__(self, other: SquareMatrix) -> SquareMatrix:
        self._check_compatible(other)
        ring = self.ring
        k = self.dim
        cols = tuple(zip(*other.rows))
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = ring.zero()
                for m in range(k):
                    acc = ring.add(acc, ring.mul(row[m], col[m]))
                new_row.append(acc)
            out.append(new_row)
        return SquareMatrix(ring, out)

    def scale(self, c) -> SquareMatrix:
        c = self.ring.element(c)
        mul = self.ring.mul
        return SquareMatrix(self.ring, [[mul(c, v) for v in row] for row in self.rows])

    def __pow__(self, n: int) -> SquareMatrix:
        if n < 0:
            raise ValueError("negative matrix power")
        out = SquareMatrix.identity(self.ring, self.dim)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def transpose(self) -> SquareMatrix:
        return SquareMatrix(self.ring, tuple(zip(*self.rows)))

    # -- ring-theoretic structure ----------------------------------------------

    def trace(self):
        acc = self.ring.zero()
        for i in range(self.dim):
            acc = self.ring.add(acc, self.rows[i][i])
        return acc

    def char_poly(self) -> Polynomial:
        """Monic char polynomial det(tI - A), division-free (Berkowitz)."""
        return _char_poly_cached(self)

    def det(self):
        # constant term of det(tI - A) is (-1)^k det(A)
        c0 = self.char_poly().coeff(0)
        return c0 if self.dim % 2 == 0 else self.ring.neg(c0)

    def minor(self, i: int, j: int) -> SquareMatrix:
        rows = [
            [v for jj, v in enumerate(row) if jj != j]
            for ii, row in enumerate(self.rows)
            if ii != i
        ]
        return SquareMatrix(self.ring, rows)

    def adjugate(self) -> SquareMatrix:
        ring = self.ring
        if self.dim == 1:
            return SquareMatrix(ring, [[ring.one()]])
        out = [[None] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                c = self.minor(i, j).det()
                if (i + j) % 2:
                    c = ring.neg(c)
                out[j][i] = c
        return SquareMatrix(ring, out)

    def try_inverse(self) -> SquareMatrix | None:
        """Adjugate inverse; exists exactly when det is a unit in the base ring."""
        u = self.ring.try_invert(self.det())
        if u is None:
            return None
        inv = self.adjugate().scale(u)
        assert (self * inv) == SquareMatrix.identity(self.ring, self.dim)
        return inv

    def is_nilpotent(self) -> bool:
        return (self ** self.dim).is_zero()

    def nilpotency_index(self) -> int | None:
        power = SquareMatrix.identity(self.ring, self.dim)
        for m in range(1, self.dim + 1):
            power = power * self
            if power.is_zero():
                return m
        return None

    def is_quasinilpotent(self) -> bool:
        """1 + A X is invertible for every X commuting with A.

        Decided as: the image of A in M_k(R/J) is nilpotent, i.e. every
        entry of A^k lies in J(R).  Over Q and Z (J = 0) this is plain
        nilpotence; for 2x2 it is the A^2-over-J criterion.
        """
        in_j = self.ring.in_jacobson_radical
        power = self ** self.dim
        return all(in_j(v) for row in power.rows for v in row)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> list:
        fmt = self.ring.format_element
        return [[fmt(v) for v in row] for row in self.rows]


@lru_cache(maxsize=8192)
def _char_poly_cached(a: SquareMatrix) -> Polynomial:
    ring = a.ring
    n = a.dim
    coeffs = [ring.one()]  # char poly of the empty matrix, leading term first
    for start in range(n - 1, -1, -1):
        m = n - start
        pivot = a.rows[start][start]
        row = a.rows[start][start + 1 :]
        col = [a.rows[i][start] for i in range(start + 1, n)]
        sub = [r[start + 1 :] for r in a.rows[start + 1 :]]
        # Toeplitz column: 1, -pivot, -R C, -R M C, -R M^2 C, ...
        tcol = [ring.one(), ring.neg(pivot)]
        v = col
        for j in range(m - 1):
            acc = ring.zero()
            for x, y in zip(row, v):
                acc = ring.add(acc, ring.mul(x, y))
            tcol.append(ring.neg(acc))
            if j < m - 2:
                v = [
                    _dot(ring, sub_row, v)
                    for sub_row in sub
                ]
        new = []
        for i in range(m + 1):
            acc = ring.zero()
            for j in range(m):
                d = i - j
                if 0 <= d < len(tcol):
                    acc = ring.add(acc, ring.mul(tcol[d], coeffs[j]))
            new.append(acc)
        coeffs = new
    return Polynomial(ring, tuple(reversed(coeffs)))


def _dot(ring, xs, ys):
    acc = ring.zero()
    for x, y in zip(xs, ys):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


# ---------------------------------------------------------------------------
# Peirce decomposition


@dataclass(frozen=True)
class BlockView:
    """The four Peirce components of x relative to an idempotent p."""

    p: SquareMatrix
    pp: SquareMatrix  # p x p
    pq: SquareMatrix  # p x (1-p)
    qp: SquareMatrix  # (1-p) x p
    qq: SquareMatrix  # (1-p) x (1-p)

    def recompose(self) -> SquareMatrix:
        return self.pp + self.pq + self.qp + self.qq


def peirce_blocks(x: SquareMatrix, p: SquareMatrix) -> BlockView:
    x._check_compatible(p)
    if p * p != p:
        raise PreconditionError("peirce_blocks needs an idempotent")
    q = SquareMatrix.identity(x.ring, x.dim) - p
    view = BlockView(p, p * x * p, p * x * q, q * x * p, q * x * q)
    assert view.recompose() == x
    return view


# ---------------------------------------------------------------------------
# ring changes


def embed_to_rationals(a: SquareMatrix) -> SquareMatrix:
    """View a matrix over Z or Z_(p) (entries already Fractions) inside Q."""
    if isinstance(a.ring, Rationals):
        return a
    if isinstance(a.ring, IntegersMod):
        raise UnsupportedRingError("residues do not embed into Q")
    return SquareMatrix(Q, a.rows)


def matrix_over(ring: Ring, a: SquareMatrix) -> SquareMatrix:
    """Reinterpret entries under another descriptor (validating each)."""
    return SquareMatrix(ring, a.rows)


def crt_project_matrix(a: SquareMatrix, modulus: int) -> SquareMatrix:
    if not isinstance(a.ring, IntegersMod):
        raise UnsupportedRingError("CRT projection needs a Z/n matrix")
    target = IntegersMod(modulus)
    return SquareMatrix(target, [[v % modulus for v in row] for row in a.rows])


def crt_reconstruct_matrix(parts: list[SquareMatrix], ring: IntegersMod) -> SquareMatrix:
    from .rings import crt_reconstruct

    moduli = [p**e for p, e in factorize(ring.n)]
    if len(parts) != len(moduli):
        raise InputFormatError("component count does not match the factorization")
    k = parts[0].dim
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            row.append(crt_reconstruct([m.rows[i][j] for m in parts], moduli))
        rows.append(row)
    return SquareMatrix(ring, rows)


# ---------------------------------------------------------------------------
# centralizers and the double commutant


def _commutation_system(a: SquareMatrix):
    """Rows of the k^2 x k^2 system  A X - X A = 0  in row-major unknowns."""
    ring = a.ring
    k = a.dim
    zero = ring.zero()
    rows = []
    for i in range(k):
        for j in range(k):
            row = [zero] * (k * k)
            for r in range(k):
                for c in range(k):
                    coeff = zero
                    if c == j:
                        coeff = ring.add(coeff, a.rows[i][r])
                    if r == i:
                        coeff = ring.sub(coeff, a.rows[c][j])
                    row[r * k + c] = coeff
            rows.append(row)
    return rows


def _nullspace_field(rows, ring: Ring):
    """Basis of the right kernel over a field, by Gauss-Jordan elimination."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if not ring.is_zero(mat[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = ring.try_invert(mat[r][c])
        mat[r] = [ring.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not ring.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ring.zero()] * ncols
        vec[fc] = ring.one()
        for pr, pc in enumerate(pivots):
            vec[pc] = ring.neg(mat[pr][fc])
        basis.append(vec)
    return basis


def _solve_field(columns, target, ring: Ring):
    """Solve V m = t for m where V has the given full-rank columns; exact."""
    k = len(target)
    r = len(columns)
    aug = [[columns[j][i] for j in range(r)] + [target[i]] for i in range(k)]
    row = 0
    pivots = []
    for c in range(r):
        pivot = None
        for i in range(row, k):
            if not ring.is_zero(aug[i][c]):
                pivot = i
                break
        if pivot is None:
            raise InputFormatError("columns are not independent")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = ring.try_invert(aug[row][c])
        aug[row] = [ring.mul(inv, v) for v in aug[row]]
        for i in range(k):
            if i != row and not ring.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(aug[i], aug[row])]
        pivots.append(c)
        row += 1
    for i in range(row, k):
        if not ring.is_zero(aug[i][-1]):
            raise InputFormatError("inconsistent system")
    sol = [ring.zero()] * r
    for pr, pc in enumerate(pivots):
        sol[pc] = aug[pr][-1]
    return sol


# -- Howell-form machinery mod n ------------------------------------------------


def _gcdex(a: int, b: int):
    """g = gcd(a, b) with a unimodular 2x2 transform: s a + t b = g, u a + v b = 0."""
    g, s, t = _xgcd(a, b)
    if g == 0:
        return 0, 1, 0, 0, 1
    return g, s, t, -b // g, a // g


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _unit_lift(u0: int, n: int, m: int) -> int:
    """A unit mod n congruent to u0 mod m (m | n, gcd(u0, m) = 1)."""
    step = m
    cand = u0 % n
    while math.gcd(cand, n) != 1:
        cand = (cand + step) % n
    return cand


def _howell_form(rows, n: int):
    """Howell basis of the row module of `rows` over Z/n.

    Returns rows sorted by pivot column; the row span is preserved and the
    Howell property holds: any span element vanishing left of column j lies
    in the span of the basis rows with pivot >= j.
    """
    width = len(rows[0]) if rows else 0
    basis = {}  # pivot column -> row
    stack = [[v % n for v in r] for r in rows]
    while stack:
        r = stack.pop()
        j = 0
        while j < width:
            if r[j] % n == 0:
                j += 1
                continue
            if j in basis:
                b = basis[j]
                g, s, t, u, v = _gcdex(b[j], r[j])
                new_b = [(s * x + t * y) % n for x, y in zip(b, r)]
                new_r = [(u * x + v * y) % n for x, y in zip(b, r)]
                basis[j] = new_b
                r = new_r
                j += 1
            else:
                # normalize the pivot to the canonical divisor of n
                d = math.gcd(r[j], n)
                u0 = pow(r[j] // d, -1, n // d) if n // d > 1 else 1
                u = _unit_lift(u0, n, n // d)
                r = [(u * x) % n for x in r]
                assert r[j] == d
                basis[j] = r
                ann = n // d
                extra = [(ann * x) % n for x in r]
                if any(extra):
                    stack.append(extra)
                break
    # reduce entries above each pivot
    cols = sorted(basis)
    for j in cols:
        b = basis[j]
        for i in cols:
            if i >= j:
                break
            q = basis[i][j] // b[j]
            if q:
                basis[i] = [(x - q * y) % n for x, y in zip(basis[i], b)]
    return [basis[j] for j in cols]


def _howell_kernel(system_rows, n: int):
    """Generators of {x : M x = 0 mod n} via a Howell form of [cols(M) | I]."""
    m = len(system_rows)
    c = len(system_rows[0]) if m else 0
    work = []
    for i in range(c):
        row = [system_rows[r][i] % n for r in range(m)] + [0] * c
        row[m + i] = 1
        work.append(row)
    reduced = _howell_form(work, n)
    gens = []
    for row in reduced:
        if all(v == 0 for v in row[:m]):
            gens.append(row[m:])
    return gens


def _howell_span_size(rows, n: int) -> int:
    """Cardinality of the row span of `rows` over Z/n."""
    if not rows or all(all(v % n == 0 for v in r) for r in rows):
        return 1
    basis = _howell_form(rows, n)
    size = 1
    for r in basis:
        pivot = next(v for v in r if v % n != 0)
        size *= n // math.gcd(pivot, n)
    return size


# -- public centralizer API -----------------------------------------------------


@lru_cache(maxsize=4096)
def centralizer_generators(a: SquareMatrix) -> tuple[SquareMatrix, ...]:
    """A finite generating set of {X : A X = X A} over Q, Z/p or Z/n.

    Over Q the set is a basis (Gaussian elimination); over Z/n it is a
    complete generating set of the solution module (Howell-form kernel).
    Z and Z_(p) are handled by the callers via the embedding into Q.
    """
    ring = a.ring
    k = a.dim
    system = _commutation_system(a)
    if isinstance(ring, Rationals):
        vecs = _nullspace_field(system, ring)
    elif isinstance(ring, IntegersMod):
        vecs = _howell_kernel([[int(v) for v in row] for row in system], ring.n)
    else:
        raise UnsupportedRingError(
            f"centralizers over {ring!r} are computed through the embedding into Q"
        )
    gens = []
    for vec in vecs:
        rows = [vec[i * k : (i + 1) * k] for i in range(k)]
        m = SquareMatrix(ring, rows)
        assert m * a == a * m
        gens.append(m)
    return tuple(gens)


def in_double_commutant(b: SquareMatrix, a: SquareMatrix) -> bool:
    """Whether b commutes with everything that commutes with a.

    Commuting with y is linear in y, so checking b against a generating
    set of comm(a) decides membership exactly.
    """
    b._check_compatible(a)
    if isinstance(a.ring, (PLocal,)) or a.ring.kind == "Z":
        return in_double_commutant(embed_to_rationals(b), embed_to_rationals(a))
    return all(b * g == g * b for g in centralizer_generators(a))
