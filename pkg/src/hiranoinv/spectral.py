"""Spectral idempotents and generalized Drazin inverses over fields.

Projectors are always built as explicit polynomials in the input matrix:
split the characteristic polynomial at the chosen point, then run the
extended Euclidean algorithm on the coprime factors.  Staying inside the
polynomial algebra keeps everything exact, works over Z/p as well as Q,
and makes double-commutant membership automatic and certifiable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomVerificationError, UnsupportedRingError
from .matrices import SquareMatrix, in_double_commutant
from .polys import Polynomial


def _require_field(a: SquareMatrix):
    if not a.ring.is_field:
        raise UnsupportedRingError(f"operation needs a field base ring, got {a.ring!r}")


def split_char_poly(chi: Polynomial, at) -> tuple[int, Polynomial]:
    """Write chi(t) = (t - at)^r * g(t) with g(at) != 0; r may be zero."""
    return chi.split_at(at)


@dataclass(frozen=True)
class SpectralSplit:
    """Projector onto the complement of the generalized `at`-eigenspace.

    `certificate` is the polynomial e with projector = e(source):
    e = 0 mod (t - at)^r and e = 1 mod the cofactor, so the projector kills
    the generalized eigenspace at `at` and fixes its complement.
    """

    at: object
    projector: SquareMatrix
    multiplicity: int
    certificate: Polynomial


def spectral_idempotent(a: SquareMatrix, at) -> SpectralSplit:
    _require_field(a)
    ring = a.ring
    at = ring.element(at)
    chi = a.char_poly()
    r, g = split_char_poly(chi, at)
    factor = Polynomial.x_minus(ring, at) ** r
    gcd, s1, _s2 = factor.xgcd(g)
    assert gcd.degree == 0  # the split factors are coprime by construction
    inv = ring.try_invert(gcd.coeff(0))
    e = (s1.scale(inv) * factor).mod(chi) if r > 0 else Polynomial.constant(ring, ring.one())
    proj = e.evaluate_matrix(a)
    ident = SquareMatrix.identity(ring, a.dim)
    shifted = a - ident.scale(at)
    if proj * proj != proj or proj * a != a * proj:
        raise AxiomVerificationError("spectral projector failed its structural checks")
    # (a - at) is invertible on the projector's range, nilpotent off it
    if (shifted * proj + (ident - proj)).try_inverse() is None:
        raise AxiomVerificationError("spectral projector has a singular core part")
    if not (shifted * (ident - proj)).is_nilpotent():
        raise AxiomVerificationError("spectral projector left a non-nilpotent tail")
    return SpectralSplit(at=at, projector=proj, multiplicity=r, certificate=e)


def drazin_field(a: SquareMatrix) -> SquareMatrix:
    """The generalized Drazin inverse; always exists for matrices over a field.

    With P the projector complementary to the generalized nullspace and
    Q = I - P, the inverse is (A + Q)^-1 (I - Q): a single matrix inversion,
    no rank decisions.
    """
    _require_field(a)
    ring = a.ring
    ident = SquareMatrix.identity(ring, a.dim)
    core = spectral_idempotent(a, ring.zero()).projector
    q = ident - core
    shifted_inv = (a + q).try_inverse()
    if shifted_inv is None:
        raise AxiomVerificationError("core-shifted matrix must be invertible")
    d = shifted_inv * core
    if d * a * d != d:
        raise AxiomVerificationError("Drazin fixed-point axiom failed")
    if not (a - a * a * d).is_nilpotent():
        raise AxiomVerificationError("Drazin tail is not quasinilpotent")
    if not in_double_commutant(d, a):
        raise AxiomVerificationError("Drazin inverse left the double commutant")
    return d
