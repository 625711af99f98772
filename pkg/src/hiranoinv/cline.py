"""Cline-style transfer and the multiplicative calculus of Hirano inverses.

Under a b a = a c a the inverse transfers between a c and b a with
(ba)^h = b ((ac)^h)^2 a; commuting products multiply witnesses and powers
raise them.  Every formula output is wrapped through full axiom
verification before being returned.
"""

from __future__ import annotations

from .errors import AxiomVerificationError, PreconditionError
from .hirano import HiranoWitness, hirano_inverse, witness_from_h
from .matrices import SquareMatrix


def cline_generalized(
    a: SquareMatrix, b: SquareMatrix, c: SquareMatrix
) -> HiranoWitness | None:
    """Witness for b a from the witness of a c, given a b a = a c a.

    Absence for a c forces absence for b a (checked directly, so the
    bidirectional transfer is asserted rather than assumed).
    """
    a._check_compatible(b)
    a._check_compatible(c)
    if a * b * a != a * c * a:
        raise PreconditionError("cline transfer needs a b a = a c a")
    ac = a * c
    ba = b * a
    w_ac = hirano_inverse(ac)
    if w_ac is None:
        if hirano_inverse(ba) is not None:
            raise AxiomVerificationError(
                "existence failed to transfer from a c to b a"
            )
        return None
    d = w_ac.h
    return witness_from_h(ba, b * (d * d) * a, case="cline")


def cline_classic(a: SquareMatrix, b: SquareMatrix) -> HiranoWitness | None:
    """(ba)^h = b ((ab)^h)^2 a; the b = c specialization."""
    return cline_generalized(a, b, b)


def product_commuting(a: SquareMatrix, b: SquareMatrix) -> HiranoWitness | None:
    """(ab)^h = a^h b^h for commuting a, b; absent when either inverse is."""
    a._check_compatible(b)
    if a * b != b * a:
        raise PreconditionError("product formula needs a b = b a")
    wa = hirano_inverse(a)
    if wa is None:
        return None
    wb = hirano_inverse(b)
    if wb is None:
        return None
    return witness_from_h(a * b, wa.h * wb.h, case="commuting-product")


def power_formula(a: SquareMatrix, n: int) -> HiranoWitness | None:
    """(a^n)^h = (a^h)^n for n >= 1; absent when a has no inverse."""
    if n < 1:
        raise PreconditionError(f"power must be >= 1, got {n}")
    wa = hirano_inverse(a)
    if wa is None:
        return None
    return witness_from_h(a**n, wa.h**n, case="power")
