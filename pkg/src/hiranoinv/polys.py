"""Dense univariate polynomials over a supported ring.

Coefficients are stored lowest degree first with no trailing zeros; the
empty tuple is the zero polynomial.  Division, gcd and the extended
Euclidean algorithm require a field coefficient ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedRingError
from .rings import Ring


@dataclass(frozen=True)
class Polynomial:
    ring: Ring
    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while c and self.ring.is_zero(c[-1]):
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_coeffs(cls, ring, values) -> Polynomial:
        return cls(ring, tuple(ring.element(v) for v in values))

    @classmethod
    def zero(cls, ring) -> Polynomial:
        return cls(ring, ())

    @classmethod
    def constant(cls, ring, c) -> Polynomial:
        return cls(ring, (ring.element(c),))

    @classmethod
    def x_minus(cls, ring, c) -> Polynomial:
        return cls(ring, (ring.neg(ring.element(c)), ring.one()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1]

    def coeff(self, k: int):
        return self.coeffs[k] if k < len(self.coeffs) else self.ring.zero()

    def __add__(self, other: Polynomial) -> Polynomial:
        r = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(r, tuple(r.add(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __neg__(self) -> Polynomial:
        r = self.ring
        return Polynomial(r, tuple(r.neg(c) for c in self.coeffs))

    def __mul__(self, other: Polynomial) -> Polynomial:
        r = self.ring
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(r)
        out = [r.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = r.add(out[i + j], r.mul(a, b))
        return Polynomial(r, tuple(out))

    def scale(self, c) -> Polynomial:
        r = self.ring
        return Polynomial(r, tuple(r.mul(c, x) for x in self.coeffs))

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.ring, self.ring.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, x):
        r = self.ring
        acc = r.zero()
        for c in reversed(self.coeffs):
            acc = r.add(r.mul(acc, x), c)
        return acc

    def evaluate_matrix(self, a):
        """Horner evaluation at a square matrix over the same ring."""
        acc = a.__class__.zero(a.ring, a.dim)
        ident = a.__class__.identity(a.ring, a.dim)
        for c in reversed(self.coeffs):
            acc = acc * a + ident.scale(c)
        return acc

    # field-only operations -------------------------------------------------

    def _require_field(self):
        if not self.ring.is_field:
            raise UnsupportedRingError(f"polynomial division needs a field, got {self.ring!r}")

    def monic(self) -> Polynomial:
        self._require_field()
        if self.is_zero():
            return self
        inv = self.ring.try_invert(self.leading())
        return self.scale(inv)

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._require_field()
        r = self.ring
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = r.try_invert(other.leading())
        rem = list(self.coeffs)
        q = [r.zero()] * max(0, len(rem) - len(other.coeffs) + 1)
        while len(rem) >= len(other.coeffs):
            f = r.mul(rem[-1], inv_lead)
            k = len(rem) - len(other.coeffs)
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = r.sub(rem[k + i], r.mul(f, c))
            while rem and r.is_zero(rem[-1]):
                rem.pop()
        return Polynomial(r, tuple(q)), Polynomial(r, tuple(rem))

    def mod(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def xgcd(self, other: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
        """(g, s, t) with s*self + t*other = g and g monic (or zero)."""
        self._require_field()
        r = self.ring
        one = Polynomial.constant(r, r.one())
        zero = Polynomial.zero(r)
        r0, r1 = self, other
        s0, s1 = one, zero
        t0, t1 = zero, one
        while not r1.is_zero():
            q, rem = r0.divmod(r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = r.try_invert(r0.leading())
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def split_at(self, point) -> tuple[int, Polynomial]:
        """Write self = (x - point)^r * g with g(point) != 0; return (r, g)."""
        self._require_field()
        point = self.ring.element(point)
        lin = Polynomial.x_minus(self.ring, point)
        r, g = 0, self
        while not g.is_zero() and self.ring.is_zero(g.evaluate(point)):
            g = g.divmod(lin)[0]
            r += 1
        return r, g

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return "Poly(" + " + ".join(parts) + f" over {self.ring!r})"
