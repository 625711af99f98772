"""Exact arithmetic in the four supported coefficient rings.

A ring descriptor is a small frozen object.  Element values are plain
``fractions.Fraction`` (rationals, integers, p-local integers) or canonical
residues in ``range(n)`` (integers mod n), always interpreted under exactly
one descriptor.  Descriptors compare structurally; values are immutable and
every operation is a pure function, so everything here can be shared freely
between concurrent callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputFormatError, UnsupportedRingError

Element = Fraction | int


# ---------------------------------------------------------------------------
# integer helpers


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
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


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 2 as (prime, exponent) pairs, ascending."""
    if n < 2:
        raise InputFormatError(f"cannot factorize {n}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def crt_split(n: int) -> list[tuple[int, int]]:
    """Local factors of Z/n: the (prime, exponent) pairs with n = prod p**e."""
    return list(factorize(n))


@lru_cache(maxsize=None)
def squarefree_radical(n: int) -> int:
    """Product of the distinct primes dividing n; generates J(Z/n)."""
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def crt_reconstruct(residues: list[int], moduli: list[int]) -> int:
    """Inverse of componentwise reduction for pairwise coprime moduli."""
    n = math.prod(moduli)
    x = 0
    for r, m in zip(residues, moduli):
        q = n // m
        x += r * q * pow(q, -1, m)
    return x % n


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Base descriptor; subclasses implement exact arithmetic on raw values."""

    kind = "?"
    is_field = False
    is_local = False

    # construction -----------------------------------------------------
    def element(self, value) -> Element:
        """Canonicalize `value` (int, Fraction or "a/b" string) or reject it."""
        raise NotImplementedError

    def zero(self) -> Element:
        raise NotImplementedError

    def one(self) -> Element:
        raise NotImplementedError

    def from_int(self, i: int) -> Element:
        return self.element(i)

    # arithmetic --------------------------------------------------------
    def add(self, x: Element, y: Element) -> Element:
        raise NotImplementedError

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def mul(self, x: Element, y: Element) -> Element:
        raise NotImplementedError

    def neg(self, x: Element) -> Element:
        raise NotImplementedError

    def is_zero(self, x: Element) -> bool:
        return x == self.zero()

    # predicates ---------------------------------------------------------
    def try_invert(self, x: Element) -> Element | None:
        """The y with x*y = 1, when x is a unit; None otherwise."""
        raise NotImplementedError

    def is_unit(self, x: Element) -> bool:
        return self.try_invert(x) is not None

    def in_jacobson_radical(self, x: Element) -> bool:
        raise NotImplementedError

    def is_quasinilpotent(self, x: Element) -> bool:
        """1 + x*y is a unit for every y; equals radical membership here.

        All four rings are commutative, where the quasinilpotents are
        exactly the Jacobson radical.
        """
        return self.in_jacobson_radical(x)

    # serialization -------------------------------------------------------
    def format_element(self, x: Element):
        """JSON-friendly form: int residues, or "a/b" / "a" strings."""
        if isinstance(x, int):
            return x
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def to_json(self) -> dict:
        raise NotImplementedError

    @staticmethod
    def _as_fraction(value) -> Fraction:
        if isinstance(value, bool):
            raise InputFormatError("boolean is not a ring element")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise InputFormatError(f"bad element literal {value!r}") from exc
        raise InputFormatError(f"bad element {value!r}")


@dataclass(frozen=True)
class Rationals(Ring):
    kind = "Q"
    is_field = True
    is_local = True  # field: J = 0

    def element(self, value):
        return self._as_fraction(value)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def try_invert(self, x):
        return 1 / x if x else None

    def in_jacobson_radical(self, x):
        return x == 0

    def to_json(self):
        return {"kind": "Q"}

    def __repr__(self):
        return "Q"


@dataclass(frozen=True)
class Integers(Ring):
    kind = "Z"

    def element(self, value):
        f = self._as_fraction(value)
        if f.denominator != 1:
            raise InputFormatError(f"{f} is not an integer")
        return f

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def try_invert(self, x):
        return x if x in (1, -1) else None

    def in_jacobson_radical(self, x):
        return x == 0

    def to_json(self):
        return {"kind": "Z"}

    def __repr__(self):
        return "Z"


@dataclass(frozen=True)
class IntegersMod(Ring):
    """Z/nZ with canonical residues in range(n)."""

    n: int
    kind = "Zn"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InputFormatError(f"modulus must be an integer >= 2, got {self.n}")

    @property
    def is_field(self):
        return is_prime(self.n)

    @property
    def is_local(self):
        return len(factorize(self.n)) == 1

    def element(self, value):
        f = self._as_fraction(value)
        if f.denominator == 1:
            return f.numerator % self.n
        inv = self.try_invert(f.denominator % self.n)
        if inv is None:
            raise InputFormatError(f"{f} has no meaning mod {self.n}")
        return (f.numerator * inv) % self.n

    def zero(self):
        return 0

    def one(self):
        return 1 % self.n

    def add(self, x, y):
        return (x + y) % self.n

    def mul(self, x, y):
        return (x * y) % self.n

    def neg(self, x):
        return (-x) % self.n

    def try_invert(self, x):
        try:
            return pow(x, -1, self.n)
        except ValueError:
            return None

    def in_jacobson_radical(self, x):
        # J(Z/n) is generated by the squarefree radical of n.
        return x % squarefree_radical(self.n) == 0

    def to_json(self):
        return {"kind": "Zn", "n": self.n}

    def __repr__(self):
        return f"Z/{self.n}"


@dataclass(frozen=True)
class PLocal(Ring):
    """Z localized at a prime p: rationals with denominator coprime to p."""

    p: int
    kind = "Zp_local"
    is_local = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputFormatError(f"p-local ring needs a prime, got {self.p}")

    def element(self, value):
        f = self._as_fraction(value)
        if f.denominator % self.p == 0:
            raise InputFormatError(f"{f} is not {self.p}-local (denominator divisible by {self.p})")
        return f

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, x, y):
        r = x + y
        assert r.denominator % self.p != 0  # closure: reduced denominator divides x.den*y.den
        return r

    def mul(self, x, y):
        r = x * y
        assert r.denominator % self.p != 0
        return r

    def neg(self, x):
        return -x

    def try_invert(self, x):
        if x == 0 or x.numerator % self.p == 0:
            return None
        return 1 / x

    def in_jacobson_radical(self, x):
        return x.numerator % self.p == 0

    def to_json(self):
        return {"kind": "Zp_local", "p": self.p}

    def __repr__(self):
        return f"Z_({self.p})"


Q = Rationals()
Z = Integers()


# ---------------------------------------------------------------------------
# descriptor (de)serialization


def ring_from_json(obj) -> Ring:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputFormatError(f"bad ring descriptor {obj!r}")
    kind = obj["kind"]
    if kind == "Q":
        return Q
    if kind == "Z":
        return Z
    if kind == "Zn":
        if "n" not in obj:
            raise InputFormatError("Zn descriptor needs \"n\"")
        return IntegersMod(obj["n"])
    if kind == "Zp_local":
        if "p" not in obj:
            raise InputFormatError("Zp_local descriptor needs \"p\"")
        return PLocal(obj["p"])
    raise InputFormatError(f"unknown ring kind {kind!r}")


def ring_from_compact(text: str) -> Ring:
    """Parse "Q", "Z", "Zn:26", "Zp_local:2" (also "Zp:2")."""
    text = text.strip()
    if text == "Q":
        return Q
    if text == "Z":
        return Z
    head, sep, tail = text.partition(":")
    if sep:
        try:
            value = int(tail)
        except ValueError as exc:
            raise InputFormatError(f"bad ring spec {text!r}") from exc
        if head == "Zn":
            return IntegersMod(value)
        if head in ("Zp_local", "Zp"):
            return PLocal(value)
    raise InputFormatError(f"bad ring spec {text!r}")


# ---------------------------------------------------------------------------
# square roots and quadratics


def rational_square_root(q: Fraction) -> Fraction | None:
    """The r >= 0 with r*r == q when q is a rational square, else None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _roots_prime_power(t: int, d: int, p: int, e: int) -> int | None:
    """One root of x^2 - t x + d = 0 in Z/p^e by exhaustive search.

    Under the mixed-case preconditions (d in J, t in 1+J) prefers the root
    in the maximal ideal, which always exists when the equation is solvable.
    """
    m = p**e
    t %= m
    d %= m
    roots = [x for x in range(m) if (x * x - t * x + d) % m == 0]
    if not roots:
        return None
    if d % p == 0 and (t - 1) % p == 0:
        in_j = [x for x in roots if x % p == 0]
        if in_j:
            return in_j[0]
    return roots[0]


def quadratic_roots(ring: Ring, t: Element, d: Element) -> tuple[Element, Element] | None:
    """Roots (x1, x2) of x^2 - t x + d = 0 with x1 + x2 = t, x1 x2 = d.

    Returns None when the equation is unsolvable in the ring.  When d lies
    in J(R) and t in 1 + J(R), the output is ordered with x1 in J(R) and
    x2 in 1 + J(R) (the two cosets cannot both occur for one root pair).
    """
    if isinstance(ring, IntegersMod):
        n = ring.n
        comps, moduli = [], []
        for p, e in factorize(n):
            r = _roots_prime_power(t, d, p, e)
            if r is None:
                return None
            comps.append(r)
            moduli.append(p**e)
        x1 = crt_reconstruct(comps, moduli)
        x2 = ring.sub(t, x1)
    elif isinstance(ring, (Rationals, Integers, PLocal)):
        disc = Fraction(t) * t - 4 * Fraction(d)
        s = rational_square_root(disc)
        if s is None:
            return None
        x1 = (t - s) / 2
        x2 = (t + s) / 2
        try:  # Z and Z_(p) are integrally closed in Q, so roots of a monic
            x1 = ring.element(x1)  # quadratic over them are automatically
            x2 = ring.element(x2)  # members; rejecting here is a bug guard.
        except InputFormatError:
            return None
    else:
        raise UnsupportedRingError(f"no quadratic solver for {ring!r}")

    assert ring.is_zero(ring.add(ring.sub(ring.mul(x1, x1), ring.mul(t, x1)), d))
    assert ring.is_zero(ring.add(ring.sub(ring.mul(x2, x2), ring.mul(t, x2)), d))
    if ring.in_jacobson_radical(d) and ring.in_jacobson_radical(ring.sub(t, ring.one())):
        if ring.in_jacobson_radical(x2):
            x1, x2 = x2, x1
        assert ring.in_jacobson_radical(x1) and not ring.in_jacobson_radical(x2)
    return x1, x2


# ---------------------------------------------------------------------------
# CRT maps for Z/n elements


def crt_project_element(ring: IntegersMod, x: int) -> list[int]:
    return [x % p**e for p, e in factorize(ring.n)]


def crt_reconstruct_element(ring: IntegersMod, residues: list[int]) -> int:
    moduli = [p**e for p, e in factorize(ring.n)]
    return crt_reconstruct(residues, moduli)
