"""Definitional brute force on finite rings: the independent ground truth.

Everything here evaluates the definitions literally by enumeration --
commutants by scanning the whole ring, quasinilpotence by testing that
1 + a x is a unit for every commuting x -- and deliberately reuses none of
the constructive paths it is used to check.  Speed is not a goal;
trustworthiness is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .errors import AxiomVerificationError, BudgetExceededError, InputFormatError
from .matrices import SquareMatrix
from .rings import IntegersMod

DEFAULT_BUDGET = 10**6
_TABLE_LIMIT = 1024  # build full op tables when the ring has at most this many elements


class FiniteRingEnumeration:
    """Exhaustive, deterministic enumeration of M_k(Z/n) (k = 1 for scalars).

    Elements are flat index-addressed tuples; operations go through
    precomputed tables for small rings and are computed on the fly above
    the table limit.
    """

    def __init__(self, modulus: int, dim: int = 1, budget: int = DEFAULT_BUDGET):
        count = modulus ** (dim * dim)
        if count > budget:
            raise BudgetExceededError(
                f"M_{dim}(Z/{modulus}) has {count} elements, budget is {budget}"
            )
        self.modulus = modulus
        self.dim = dim
        self.ring = IntegersMod(modulus)
        self.count = count
        self.elements = tuple(product(range(modulus), repeat=dim * dim))
        self.index = {e: i for i, e in enumerate(self.elements)}
        k = dim
        self.zero = self.index[(0,) * (k * k)]
        ident = tuple(1 if i == j else 0 for i in range(k) for j in range(k))
        self.one = self.index[ident]
        self._mul_table = None
        self._add_table = None
        if count <= _TABLE_LIMIT:
            self._mul_table = [
                [self.index[self._mul_raw(x, y)] for y in self.elements]
                for x in self.elements
            ]
            self._add_table = [
                [self.index[self._add_raw(x, y)] for y in self.elements]
                for x in self.elements
            ]
        self._units = frozenset(
            i for i in range(count) if self._is_unit_raw(self.elements[i])
        )
        self._comm_cache: dict[int, tuple[int, ...]] = {}
        self._qnil_cache: dict[int, bool] = {}

    # raw flat-tuple arithmetic ------------------------------------------------

    def _mul_raw(self, x, y):
        k, n = self.dim, self.modulus
        out = []
        for i in range(k):
            for j in range(k):
                acc = 0
                for m in range(k):
                    acc += x[i * k + m] * y[m * k + j]
                out.append(acc % n)
        return tuple(out)

    def _add_raw(self, x, y):
        n = self.modulus
        return tuple((a + b) % n for a, b in zip(x, y))

    def _det_raw(self, x):
        k, n = self.dim, self.modulus
        if k == 1:
            return x[0] % n
        total = 0
        for j in range(k):
            sub = tuple(
                x[i * k + c] for i in range(1, k) for c in range(k) if c != j
            )
            minor = FiniteRingEnumeration._det_static(sub, k - 1, n)
            term = x[j] * minor
            total += term if j % 2 == 0 else -term
        return total % n

    @staticmethod
    def _det_static(flat, k, n):
        if k == 1:
            return flat[0] % n
        total = 0
        for j in range(k):
            sub = tuple(
                flat[i * k + c] for i in range(1, k) for c in range(k) if c != j
            )
            minor = FiniteRingEnumeration._det_static(sub, k - 1, n)
            term = flat[j] * minor
            total += term if j % 2 == 0 else -term
        return total % n

    def _is_unit_raw(self, x) -> bool:
        return math.gcd(self._det_raw(x), self.modulus) == 1

    # index-level operations ---------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[i][j]
        return self.index[self._mul_raw(self.elements[i], self.elements[j])]

    def add(self, i: int, j: int) -> int:
        if self._add_table is not None:
            return self._add_table[i][j]
        return self.index[self._add_raw(self.elements[i], self.elements[j])]

    def neg(self, i: int) -> int:
        n = self.modulus
        return self.index[tuple((-v) % n for v in self.elements[i])]

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    def is_unit(self, i: int) -> bool:
        return i in self._units

    def commutant(self, i: int) -> tuple[int, ...]:
        if i not in self._comm_cache:
            self._comm_cache[i] = tuple(
                j for j in range(self.count) if self.mul(i, j) == self.mul(j, i)
            )
        return self._comm_cache[i]

    def double_commutant(self, i: int) -> tuple[int, ...]:
        comm = self.commutant(i)
        return tuple(
            z
            for z in range(self.count)
            if all(self.mul(z, y) == self.mul(y, z) for y in comm)
        )

    def is_qnil(self, i: int) -> bool:
        """Literal quasinilpotence: 1 + a x is a unit for all commuting x."""
        if i not in self._qnil_cache:
            self._qnil_cache[i] = all(
                self.is_unit(self.add(self.one, self.mul(i, x)))
                for x in self.commutant(i)
            )
        return self._qnil_cache[i]

    def idempotents(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.count) if self.mul(i, i) == i)

    # conversions ----------------------------------------------------------------

    def to_matrix(self, i: int) -> SquareMatrix:
        k = self.dim
        flat = self.elements[i]
        return SquareMatrix(self.ring, [flat[r * k : (r + 1) * k] for r in range(k)])

    def from_matrix(self, m: SquareMatrix) -> int:
        if m.ring != self.ring or m.dim != self.dim:
            raise InputFormatError("matrix does not belong to this enumeration")
        return self.index[tuple(v for row in m.rows for v in row)]


def _hirano_candidates(enum: FiniteRingEnumeration, a: int) -> list[int]:
    sq = enum.mul(a, a)
    found = []
    for b in enum.double_commutant(a):
        if enum.mul(enum.mul(b, a), b) != b:
            continue
        if enum.is_qnil(enum.sub(sq, enum.mul(a, b))):
            found.append(b)
    return found


def brute_force_hirano(a, enum: FiniteRingEnumeration) -> SquareMatrix | None:
    """The unique element satisfying all three axioms, by full enumeration.

    Raises if two distinct witnesses appear -- that would falsify
    uniqueness and must never happen.
    """
    idx = a if isinstance(a, int) else enum.from_matrix(a)
    found = _hirano_candidates(enum, idx)
    if len(found) > 1:
        raise AxiomVerificationError(
            f"uniqueness violated: {len(found)} witnesses for element {idx}"
        )
    return enum.to_matrix(found[0]) if found else None


def brute_force_drazin(a, enum: FiniteRingEnumeration) -> SquareMatrix | None:
    """Same search with the Drazin tail axiom a - a^2 b quasinilpotent."""
    idx = a if isinstance(a, int) else enum.from_matrix(a)
    sq = enum.mul(idx, idx)
    found = []
    for b in enum.double_commutant(idx):
        if enum.mul(enum.mul(b, idx), b) != b:
            continue
        if enum.is_qnil(enum.sub(idx, enum.mul(sq, b))):
            found.append(b)
    if len(found) > 1:
        raise AxiomVerificationError(
            f"Drazin uniqueness violated for element {idx}"
        )
    return enum.to_matrix(found[0]) if found else None


# ---------------------------------------------------------------------------
# property registry


@dataclass
class OracleReport:
    property_id: str
    description: str
    total: int
    passes: int
    counterexample: dict | None = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "property": self.property_id,
            "description": self.description,
            "total": self.total,
            "passes": self.passes,
            "ok": self.ok,
            "counterexample": self.counterexample,
            "notes": self.notes,
        }


def _report(pid, desc, cases) -> OracleReport:
    total = passes = 0
    counterexample = None
    for label, ok in cases:
        total += 1
        if ok:
            passes += 1
        elif counterexample is None:
            counterexample = {"instance": label}
    return OracleReport(pid, desc, total, passes, counterexample)


def _prop_idempotent_split(enum):
    def cases():
        idems = enum.idempotents()
        for a in range(enum.count):
            sq = enum.mul(a, a)
            direct = bool(_hirano_candidates(enum, a))
            comm2 = set(enum.double_commutant(a))
            split = any(
                p in comm2 and enum.is_qnil(enum.sub(sq, p)) for p in idems
            )
            yield str(enum.elements[a]), direct == split
    return cases()


def _prop_hirano_implies_drazin(enum):
    def cases():
        for a in range(enum.count):
            found = _hirano_candidates(enum, a)
            if not found:
                yield str(enum.elements[a]), True
                continue
            b = found[0]
            sq = enum.mul(a, a)
            drazin_tail = enum.is_qnil(enum.sub(a, enum.mul(sq, b)))
            same = brute_force_drazin(a, enum) == enum.to_matrix(b)
            yield str(enum.elements[a]), drazin_tail and same
    return cases()


def _prop_unique_idempotent(enum):
    def cases():
        idems = enum.idempotents()
        for a in range(enum.count):
            sq = enum.mul(a, a)
            commuting = [
                p
                for p in idems
                if enum.mul(p, a) == enum.mul(a, p)
                and enum.is_qnil(enum.sub(sq, p))
            ]
            witnesses = _hirano_candidates(enum, a)
            yield str(enum.elements[a]), len(commuting) <= 1 and len(witnesses) <= 1
    return cases()


def _prop_qnil_times_idempotent(enum):
    def cases():
        qnils = [a for a in range(enum.count) if enum.is_qnil(a)]
        idems = enum.idempotents()
        for a in qnils:
            for e in idems:
                if enum.mul(a, e) != enum.mul(e, a):
                    continue
                yield f"{enum.elements[a]},{enum.elements[e]}", enum.is_qnil(enum.mul(a, e))
    return cases()


def _prop_qnil_commuting_closure(enum):
    def cases():
        qnils = [a for a in range(enum.count) if enum.is_qnil(a)]
        for a in qnils:
            for b in qnils:
                if enum.mul(a, b) != enum.mul(b, a):
                    continue
                ok = enum.is_qnil(enum.add(a, b)) and enum.is_qnil(enum.mul(a, b))
                yield f"{enum.elements[a]},{enum.elements[b]}", ok
    return cases()


def _prop_cline_transfer(enum):
    def cases():
        witness = {a: _hirano_candidates(enum, a) for a in range(enum.count)}
        for a in range(enum.count):
            for b in range(enum.count):
                aba = enum.mul(enum.mul(a, b), a)
                for c in range(enum.count):
                    if enum.mul(enum.mul(a, c), a) != aba:
                        continue
                    ac, ba = enum.mul(a, c), enum.mul(b, a)
                    w_ac, w_ba = witness[ac], witness[ba]
                    if bool(w_ac) != bool(w_ba):
                        yield f"a={a},b={b},c={c}", False
                        continue
                    if w_ac:
                        d = w_ac[0]
                        formula = enum.mul(
                            enum.mul(b, enum.mul(d, d)), a
                        )
                        yield f"a={a},b={b},c={c}", formula == w_ba[0]
                    else:
                        yield f"a={a},b={b},c={c}", True
    return cases()


def _prop_orthogonal_sum(enum):
    def cases():
        witness = {a: _hirano_candidates(enum, a) for a in range(enum.count)}
        for a in range(enum.count):
            for b in range(enum.count):
                if enum.mul(a, b) != enum.zero or enum.mul(b, a) != enum.zero:
                    continue
                if not witness[a] or not witness[b]:
                    continue
                s = enum.add(a, b)
                expect = enum.add(witness[a][0], witness[b][0])
                yield f"a={a},b={b}", witness[s] == [expect]
    return cases()


def _prop_scalar_radical(enum):
    def cases():
        ring = enum.ring
        for a in range(enum.count):
            lib = all(
                ring.in_jacobson_radical(v) for v in enum.elements[a]
            )
            yield str(enum.elements[a]), lib == enum.is_qnil(a)
    return cases()


def _prop_matrix_qnil(enum):
    def cases():
        for a in range(enum.count):
            lib = enum.to_matrix(a).is_quasinilpotent()
            yield str(enum.elements[a]), lib == enum.is_qnil(a)
    return cases()


PROPERTIES = {
    "idempotent-split": (
        "an element has a Hirano inverse iff some commuting idempotent p has a^2 - p qnil",
        _prop_idempotent_split,
    ),
    "hirano-implies-drazin": (
        "every Hirano-invertible element is Drazin-invertible with the same witness",
        _prop_hirano_implies_drazin,
    ),
    "unique-idempotent": (
        "at most one commuting idempotent splits a^2, and at most one witness exists",
        _prop_unique_idempotent,
    ),
    "qnil-times-idempotent": (
        "a quasinilpotent times a commuting idempotent stays quasinilpotent",
        _prop_qnil_times_idempotent,
    ),
    "qnil-commuting-closure": (
        "sums and products of commuting quasinilpotents are quasinilpotent",
        _prop_qnil_commuting_closure,
    ),
    "cline-transfer": (
        "with aba = aca, existence transfers between ac and ba and b d^2 a is the witness",
        _prop_cline_transfer,
    ),
    "orthogonal-sum": (
        "for ab = ba = 0 the witness of a + b is the sum of the witnesses",
        _prop_orthogonal_sum,
    ),
    "scalar-radical-is-qnil": (
        "radical membership coincides with definitional quasinilpotence entrywise",
        _prop_scalar_radical,
    ),
    "matrix-qnil-characterization": (
        "the nilpotent-mod-J test coincides with definitional quasinilpotence",
        _prop_matrix_qnil,
    ),
}


def exhaustive_check(property_id: str, enum: FiniteRingEnumeration) -> OracleReport:
    """Evaluate a registered property over the whole enumeration."""
    if property_id not in PROPERTIES:
        known = ", ".join(sorted(PROPERTIES))
        raise InputFormatError(f"unknown property {property_id!r}; known: {known}")
    desc, runner = PROPERTIES[property_id]
    return _report(property_id, desc, runner(enum))
